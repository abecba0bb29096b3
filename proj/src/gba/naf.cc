// Copyright 2026 The imsibc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "imsibc/gba/naf.h"

#include <utility>

#include "imsibc/core/errors.h"

namespace imsibc::gba {

Naf::Naf(NafConfig config, std::string params_ref, pairing::Rng& rng)
    : config_(std::move(config)), params_ref_(std::move(params_ref)), rng_(rng) {}

absl::StatusOr<std::vector<ProtocolMessage>> Naf::Handle(
    const ProtocolMessage& msg) {
  if (const auto* m = msg.As<ServiceRequest>()) {
    if (m->naf_id != config_.naf_id) {
      return MakeError(ErrorReason::kInvalidArgument, "request for another NAF");
    }
    if (m->gba_params.has_value()) {
      return MakeError(ErrorReason::kInvalidArgument,
                       "GBA parameters belong in service-request-gba");
    }
    return std::vector<ProtocolMessage>{
        Reply(msg, BootstrapInitiation{config_.naf_id})};
  }

  if (const auto* m = msg.As<ServiceRequestGba>()) {
    if (m->naf_id != config_.naf_id) {
      return MakeError(ErrorReason::kInvalidArgument, "request for another NAF");
    }
    if (!m->use_gba || !config_.gba_capable) {
      return MakeError(ErrorReason::kGbaNotSupported,
                       "UE and NAF do not agree on GBA keys");
    }
    if (m->a_kpub1.IsIdentity()) {
      return MakeError(ErrorReason::kIdentityPoint, "a*Kpub1 is the identity");
    }
    if (pending_.count(msg.session_id) || keys_.count(msg.session_id)) {
      return MakeError(ErrorReason::kBadState, "session id already in use");
    }
    pending_[msg.session_id] = Pending{m->impu, m->btid, m->a_kpub1};
    return std::vector<ProtocolMessage>{Reply(
        msg, AuthInfoRequest{config_.naf_id, config_.hostname, m->impu, m->btid,
                             m->sig2})};
  }

  if (const auto* m = msg.As<AuthInfoResponse>()) {
    const auto it = pending_.find(msg.session_id);
    if (it == pending_.end()) {
      return MakeError(ErrorReason::kBadState, "unsolicited auth-info-response");
    }
    const Pending p = it->second;
    pending_.erase(it);
    if (m->impu != p.impu) {
      return MakeError(ErrorReason::kBadState, "BSF answered for another IMPU");
    }
    if (m->params_ref != params_ref_) {
      return MakeError(ErrorReason::kConfigInvalid, "unknown PKG params");
    }
    if (!m->guss.Allows(config_.naf_id)) {
      return MakeError(ErrorReason::kServiceDenied,
                       "GUSS does not allow this NAF");
    }
    IMSIBC_ASSIGN_OR_RETURN(Scalar b, Scalar::Random(rng_));
    IMSIBC_ASSIGN_OR_RETURN(G1Point shared, ibc::DhShare(b, p.a_kpub1));
    IMSIBC_ASSIGN_OR_RETURN(
        ibc::SessionKey ks,
        ibc::DeriveKsNaf(shared, ibc::KsNafContext(p.impu, p.btid, config_.naf_id)));
    IMSIBC_ASSIGN_OR_RETURN(G1Point b_kpub1, ibc::DhShare(b, m->pub.kpub1));
    keys_[msg.session_id] = ks;
    return std::vector<ProtocolMessage>{Reply(msg, ServiceResponse{b_kpub1})};
  }

  return MakeError(ErrorReason::kBadState,
                   "NAF cannot handle " + std::string(msg.type()));
}

std::optional<ibc::SessionKey> Naf::KeyFor(uint64_t session_id) const {
  const auto it = keys_.find(session_id);
  if (it == keys_.end()) return std::nullopt;
  return it->second;
}

}  // namespace imsibc::gba

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

#include "imsibc/gba/user_equipment.h"

#include <utility>

#include "imsibc/core/errors.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/key_wrap.h"
#include "imsibc/ibc/signature.h"

namespace imsibc::gba {

UserEquipment::UserEquipment(UeIdentity id, ibc::MasterPublicKey master,
                             pairing::Rng& rng)
    : id_(std::move(id)),
      master_(std::move(master)),
      params_ref_(master_.params.DigestHex()),
      rng_(rng) {}

absl::StatusOr<ProtocolMessage> UserEquipment::Start(const std::string& naf_id,
                                                     uint64_t session_id) {
  if (contacts_.count(session_id)) {
    return MakeError(ErrorReason::kBadState, "session id already in use");
  }
  contacts_[session_id] = Contact{naf_id, std::nullopt};
  if (bootstrapped()) return ContactNaf(session_id, 0);
  return ProtocolMessage{session_id, 1, ServiceRequest{naf_id, std::nullopt}};
}

absl::StatusOr<ProtocolMessage> UserEquipment::ContactNaf(uint64_t session_id,
                                                          uint64_t seq) {
  Contact& c = contacts_.at(session_id);
  IMSIBC_ASSIGN_OR_RETURN(Scalar a, Scalar::Random(rng_));
  IMSIBC_ASSIGN_OR_RETURN(G1Point a_kpub1, ibc::DhShare(a, keys_->pub.kpub1));
  c.a = a;
  return ProtocolMessage{
      session_id, seq + 1,
      ServiceRequestGba{c.naf_id, id_.impu, btid_, a_kpub1, *sig2_, true}};
}

absl::StatusOr<std::vector<ProtocolMessage>> UserEquipment::Handle(
    const ProtocolMessage& msg) {
  const auto contact = contacts_.find(msg.session_id);
  if (contact == contacts_.end()) {
    return MakeError(ErrorReason::kBadState, "message for unknown session");
  }

  if (msg.As<BootstrapInitiation>() != nullptr) {
    return std::vector<ProtocolMessage>{
        Reply(msg, BootstrapRequest{id_.impi, id_.impu})};
  }

  if (const auto* m = msg.As<UnauthorizedChallenge>()) {
    if (m->impu != id_.impu) {
      return MakeError(ErrorReason::kBadState, "challenge for another IMPU");
    }
    if (m->params_ref != params_ref_) {
      return MakeError(ErrorReason::kConfigInvalid, "challenge names unknown params");
    }
    IMSIBC_ASSIGN_OR_RETURN(ibc::UserPrivateKey priv,
                            ibc::UnwrapPrivateKeys(id_.sk, m->wrapped));
    ibc::UserKeyMaterial keys;
    keys.impu = id_.impu;
    keys.pub = m->pub;
    keys.priv = priv;
    IMSIBC_ASSIGN_OR_RETURN(ibc::OneTimeSignature sig,
                            ibc::SignOnce(keys, master_.params, m->rand));
    keys_ = std::move(keys);
    rand_ = m->rand;
    btid_.clear();
    return std::vector<ProtocolMessage>{
        Reply(msg, ChallengeResponse{id_.impu, m->rand, sig.sig})};
  }

  if (const auto* m = msg.As<BootstrapOk>()) {
    if (!keys_) return MakeError(ErrorReason::kBadState, "no challenge answered");
    IMSIBC_ASSIGN_OR_RETURN(Bytes btid, ibc::IbeDecrypt(keys_->priv->kpriv1, m->btid));
    btid_.assign(btid.begin(), btid.end());
    IMSIBC_ASSIGN_OR_RETURN(ibc::OneTimeSignature sig2,
                            ibc::SignOnce(*keys_, master_.params, btid));
    sig2_ = sig2.sig;
    IMSIBC_ASSIGN_OR_RETURN(ProtocolMessage next, ContactNaf(msg.session_id, msg.seq));
    return std::vector<ProtocolMessage>{std::move(next)};
  }

  if (const auto* m = msg.As<ServiceResponse>()) {
    const Contact& c = contact->second;
    if (!c.a) return MakeError(ErrorReason::kBadState, "NAF not contacted");
    IMSIBC_ASSIGN_OR_RETURN(G1Point shared, ibc::DhShare(*c.a, m->b_kpub1));
    IMSIBC_ASSIGN_OR_RETURN(
        ibc::SessionKey ks,
        ibc::DeriveKsNaf(shared, ibc::KsNafContext(id_.impu, btid_, c.naf_id)));
    ks_[msg.session_id] = ks;
    return std::vector<ProtocolMessage>{};
  }

  return MakeError(ErrorReason::kBadState,
                   "UE cannot handle " + std::string(msg.type()));
}

std::optional<ibc::SessionKey> UserEquipment::KeyFor(uint64_t session_id) const {
  const auto it = ks_.find(session_id);
  if (it == ks_.end()) return std::nullopt;
  return it->second;
}

}  // namespace imsibc::gba

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

#include "imsibc/gba/hss.h"

#include <utility>

#include "imsibc/core/errors.h"

namespace imsibc::gba {

Hss::Hss(ibc::MasterKeyPair master, SubscriberStore store, pairing::Rng& rng)
    : master_(std::move(master)),
      store_(std::move(store)),
      params_ref_(master_.pub.params.DigestHex()),
      rng_(rng) {}

absl::StatusOr<AuthVector> Hss::Issue(std::string_view impi,
                                      std::string_view impu) {
  IMSIBC_ASSIGN_OR_RETURN(const SubscriberRecord* sub, store_.Find(impi, impu));
  std::lock_guard<std::mutex> lock(mu_);
  AuthVector av;
  av.pkg_params_ref = params_ref_;
  do {
    IMSIBC_RETURN_IF_ERROR(rng_.Fill(av.rand));
  } while (!issued_rands_.insert(av.rand).second);

  IMSIBC_ASSIGN_OR_RETURN(ibc::UserKeyMaterial keys,
                          ibc::ExtractUserKeys(impu, master_, rng_));
  av.user_pub = keys.pub;
  IMSIBC_ASSIGN_OR_RETURN(av.wrapped_priv,
                          ibc::WrapPrivateKeys(sub->sk, *keys.priv, rng_));
  return av;
}

absl::StatusOr<ProtocolMessage> Hss::Handle(const ProtocolMessage& msg) {
  const auto* req = msg.As<AvRequest>();
  if (req == nullptr) {
    return MakeError(ErrorReason::kBadState,
                     "HSS cannot handle " + std::string(msg.type()));
  }
  IMSIBC_ASSIGN_OR_RETURN(AuthVector av, Issue(req->impi, req->impu));
  IMSIBC_ASSIGN_OR_RETURN(const SubscriberRecord* sub,
                          store_.Find(req->impi, req->impu));
  return Reply(msg, AvResponse{av.rand, av.pkg_params_ref, av.user_pub,
                               av.wrapped_priv, sub->guss});
}

}  // namespace imsibc::gba

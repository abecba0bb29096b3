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

#ifndef IMSIBC_GBA_HSS_H_
#define IMSIBC_GBA_HSS_H_

#include <mutex>
#include <set>
#include <string>

#include "absl/status/statusor.h"
#include "imsibc/gba/messages.h"
#include "imsibc/gba/subscriber_store.h"
#include "imsibc/ibc/keys.h"

namespace imsibc::gba {

struct AuthVector {
  Rand rand{};
  std::string pkg_params_ref;
  UserPublicKey user_pub;
  WrappedPrivateKeys wrapped_priv;
};

// HSS with the co-located PKG.
class Hss {
 public:
  Hss(ibc::MasterKeyPair master, SubscriberStore store, pairing::Rng& rng);

  // Fresh one-time keys for the couple, wrapped under its sk.
  absl::StatusOr<AuthVector> Issue(std::string_view impi, std::string_view impu);

  // Message 4 in, message 5 out.
  absl::StatusOr<ProtocolMessage> Handle(const ProtocolMessage& msg);

  const ibc::MasterPublicKey& master_public() const { return master_.pub; }
  const SubscriberStore& store() const { return store_; }
  size_t issued_count() const { return issued_rands_.size(); }

 private:
  ibc::MasterKeyPair master_;
  SubscriberStore store_;
  std::string params_ref_;
  pairing::Rng& rng_;
  std::mutex mu_;
  std::set<Rand> issued_rands_;
};

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_HSS_H_

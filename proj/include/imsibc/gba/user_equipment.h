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

#ifndef IMSIBC_GBA_USER_EQUIPMENT_H_
#define IMSIBC_GBA_USER_EQUIPMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/gba/messages.h"
#include "imsibc/ibc/key_agreement.h"
#include "imsibc/ibc/keys.h"

namespace imsibc::gba {

struct UeIdentity {
  std::string impi;
  std::string impu;
  Bytes sk;
};

class UserEquipment {
 public:
  UserEquipment(UeIdentity id, ibc::MasterPublicKey master, pairing::Rng& rng);

  // Message 1, or message 9 straight away when a bootstrap is already held.
  absl::StatusOr<ProtocolMessage> Start(const std::string& naf_id,
                                        uint64_t session_id);

  // Messages 2, 6, 8 and 12.
  absl::StatusOr<std::vector<ProtocolMessage>> Handle(const ProtocolMessage& msg);

  bool bootstrapped() const { return keys_.has_value() && !btid_.empty(); }
  const std::string& btid() const { return btid_; }
  const std::string& impu() const { return id_.impu; }
  // One-time key material after unwrapping; public half plus Kpriv1/Kpriv2.
  const std::optional<ibc::UserKeyMaterial>& keys() const { return keys_; }
  std::optional<ibc::SessionKey> KeyFor(uint64_t session_id) const;

 private:
  struct Contact {
    std::string naf_id;
    std::optional<Scalar> a;
  };

  absl::StatusOr<ProtocolMessage> ContactNaf(uint64_t session_id, uint64_t seq);

  UeIdentity id_;
  ibc::MasterPublicKey master_;
  std::string params_ref_;
  pairing::Rng& rng_;
  std::optional<ibc::UserKeyMaterial> keys_;
  std::optional<Rand> rand_;
  std::string btid_;
  std::optional<G1Point> sig2_;
  std::map<uint64_t, Contact> contacts_;
  std::map<uint64_t, ibc::SessionKey> ks_;
};

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_USER_EQUIPMENT_H_

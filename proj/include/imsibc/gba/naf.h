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

#ifndef IMSIBC_GBA_NAF_H_
#define IMSIBC_GBA_NAF_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/gba/messages.h"
#include "imsibc/ibc/key_agreement.h"

namespace imsibc::gba {

struct NafConfig {
  std::string naf_id = "naf.ims.example.org";
  std::string hostname = "naf.ims.example.org";
  bool gba_capable = true;
};

class Naf {
 public:
  Naf(NafConfig config, std::string params_ref, pairing::Rng& rng);

  // Messages 1, 9 and 11.
  absl::StatusOr<std::vector<ProtocolMessage>> Handle(const ProtocolMessage& msg);

  std::optional<ibc::SessionKey> KeyFor(uint64_t session_id) const;
  const NafConfig& config() const { return config_; }

 private:
  struct Pending {
    std::string impu;
    std::string btid;
    G1Point a_kpub1;
  };

  NafConfig config_;
  std::string params_ref_;
  pairing::Rng& rng_;
  std::map<uint64_t, Pending> pending_;
  std::map<uint64_t, ibc::SessionKey> keys_;
};

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_NAF_H_

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

#ifndef IMSIBC_PAIRING_PARAMS_H_
#define IMSIBC_PAIRING_PARAMS_H_

#include <string>

#include "absl/status/statusor.h"
#include "imsibc/core/hash.h"
#include "imsibc/pairing/group.h"
#include "json.hpp"

namespace imsibc::pairing {

inline constexpr std::string_view kCurveName = "BLS12-381";
inline constexpr int kParamsVersion = 1;

// Public group parameters. Every participant holds an identical copy; the
// digest of its canonical JSON is what protocol messages refer to.
struct PairingParams {
  std::string curve{kCurveName};
  G1Point generator_a;  // P_A, base of the user public point Kpub1
  G2Point generator_b;  // P, base of Ppub1 and Ppub2
  std::string ueid_tag;      // UEID = H(IMPU)
  std::string binding_tag;   // H(encode(Kpub1) || Kpub2)
  std::string scalar_tag;    // h(token)

  // Standard generators and the library's fixed tags.
  static PairingParams Default();

  // Curve name, non-identity generators in the subgroup, non-degenerate
  // pairing of the generators, distinct non-empty tags.
  absl::Status Validate() const;

  nlohmann::json ToJson() const;
  static absl::StatusOr<PairingParams> FromJson(const nlohmann::json& j);

  // SHA-256 of the compact JSON dump.
  Sha256Digest Digest() const;
  std::string DigestHex() const { return HexEncode(Digest()); }
};

}  // namespace imsibc::pairing

#endif  // IMSIBC_PAIRING_PARAMS_H_

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

#include "imsibc/pairing/params.h"

#include "imsibc/core/errors.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::pairing {

PairingParams PairingParams::Default() {
  PairingParams p;
  p.generator_a = G1Point::Generator();
  p.generator_b = G2Point::Generator();
  p.ueid_tag = "IMSIBC-V01-CS01-with-BLS12381G1_XMD:SHA-256_SSWU_RO_UEID_";
  p.binding_tag = "IMSIBC-V01-CS02-with-BLS12381G1_XMD:SHA-256_SSWU_RO_KEYBIND_";
  p.scalar_tag = "IMSIBC-V01-H2S-SHA256_TOKEN_";
  return p;
}

absl::Status PairingParams::Validate() const {
  if (curve != kCurveName) {
    return MakeError(ErrorReason::kConfigInvalid, "unsupported curve " + curve);
  }
  if (generator_a.IsIdentity() || generator_b.IsIdentity()) {
    return MakeError(ErrorReason::kConfigInvalid, "identity generator");
  }
  if (!generator_a.IsInSubgroup() || !generator_b.IsInSubgroup()) {
    return MakeError(ErrorReason::kConfigInvalid, "generator outside subgroup");
  }
  if (ueid_tag.empty() || binding_tag.empty() || scalar_tag.empty()) {
    return MakeError(ErrorReason::kConfigInvalid, "empty hash tag");
  }
  if (ueid_tag == binding_tag) {
    return MakeError(ErrorReason::kConfigInvalid,
                     "hash-to-group tags must differ per use site");
  }
  if (Pair(generator_a, generator_b).IsOne()) {
    return MakeError(ErrorReason::kConfigInvalid, "degenerate generators");
  }
  return absl::OkStatus();
}

nlohmann::json PairingParams::ToJson() const {
  return {
      {"version", kParamsVersion},
      {"curve", curve},
      {"order", Scalar::OrderHex()},
      {"generator_a", generator_a.ToHex()},
      {"generator_b", generator_b.ToHex()},
      {"tags",
       {{"ueid", ueid_tag}, {"binding", binding_tag}, {"scalar", scalar_tag}}},
  };
}

absl::StatusOr<PairingParams> PairingParams::FromJson(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kParamsVersion) {
      return MakeError(ErrorReason::kConfigInvalid, "unsupported params version");
    }
    if (j.at("order").get<std::string>() != Scalar::OrderHex()) {
      return MakeError(ErrorReason::kConfigInvalid, "group order mismatch");
    }
    PairingParams p;
    p.curve = j.at("curve").get<std::string>();
    IMSIBC_ASSIGN_OR_RETURN(
        p.generator_a, G1Point::FromHex(j.at("generator_a").get<std::string>()));
    IMSIBC_ASSIGN_OR_RETURN(
        p.generator_b, G2Point::FromHex(j.at("generator_b").get<std::string>()));
    const auto& tags = j.at("tags");
    p.ueid_tag = tags.at("ueid").get<std::string>();
    p.binding_tag = tags.at("binding").get<std::string>();
    p.scalar_tag = tags.at("scalar").get<std::string>();
    IMSIBC_RETURN_IF_ERROR(p.Validate());
    return p;
  } catch (const nlohmann::json::exception& e) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("params json: ") + e.what());
  }
}

Sha256Digest PairingParams::Digest() const {
  return Sha256(AsBytes(ToJson().dump()));
}

}  // namespace imsibc::pairing

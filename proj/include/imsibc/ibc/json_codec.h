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

// Canonical JSON forms. Binary fields are lower-case hex; every top-level
// object carries "version": 1. Decoders validate all points.

#ifndef IMSIBC_IBC_JSON_CODEC_H_
#define IMSIBC_IBC_JSON_CODEC_H_

#include "absl/status/statusor.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/key_wrap.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/ibc/signature.h"
#include "json.hpp"

namespace imsibc::ibc {

inline constexpr int kCodecVersion = 1;

nlohmann::json ToJson(const MasterPublicKey& mpk);
absl::StatusOr<MasterPublicKey> MasterPublicKeyFromJson(const nlohmann::json& j);

// Secret half only: s1 and s2. Kept in its own file.
nlohmann::json MasterSecretsToJson(const MasterKeyPair& master);
absl::StatusOr<MasterKeyPair> MasterKeyPairFromJson(
    const nlohmann::json& secrets, const MasterPublicKey& pub);

nlohmann::json ToJson(const UserPublicKey& pub);
absl::StatusOr<UserPublicKey> UserPublicKeyFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const WrappedPrivateKeys& w);
absl::StatusOr<WrappedPrivateKeys> WrappedPrivateKeysFromJson(
    const nlohmann::json& j);

nlohmann::json ToJson(const IbeCiphertext& ct);
absl::StatusOr<IbeCiphertext> IbeCiphertextFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const OneTimeSignature& sig);
absl::StatusOr<OneTimeSignature> OneTimeSignatureFromJson(
    const nlohmann::json& j);

// Field helpers shared with the protocol codec.
absl::StatusOr<Bytes> HexField(const nlohmann::json& j, const char* key);
template <size_t N>
absl::StatusOr<std::array<uint8_t, N>> FixedHexField(const nlohmann::json& j,
                                                     const char* key);
absl::StatusOr<std::string> StringField(const nlohmann::json& j,
                                        const char* key);
absl::Status CheckVersion(const nlohmann::json& j);

}  // namespace imsibc::ibc

#include "imsibc/core/errors.h"

namespace imsibc::ibc {

template <size_t N>
absl::StatusOr<std::array<uint8_t, N>> FixedHexField(const nlohmann::json& j,
                                                     const char* key) {
  IMSIBC_ASSIGN_OR_RETURN(Bytes raw, HexField(j, key));
  if (raw.size() != N) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("field '") + key + "' has wrong length");
  }
  std::array<uint8_t, N> out;
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_JSON_CODEC_H_

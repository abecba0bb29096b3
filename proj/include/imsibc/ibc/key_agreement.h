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

// Diffie-Hellman over G1 with Kpub1 as the base: the UE sends a Kpub1, the
// NAF replies b Kpub1, and both arrive at a b Kpub1. The point is fed to
// HKDF together with the session context to produce Ks-NAF.

#ifndef IMSIBC_IBC_KEY_AGREEMENT_H_
#define IMSIBC_IBC_KEY_AGREEMENT_H_

#include <array>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/ibc/keys.h"

namespace imsibc::ibc {

inline constexpr size_t kSessionKeySize = 32;

struct SessionKey {
  std::array<uint8_t, kSessionKeySize> key{};

  // First 8 bytes of SHA-256(key), hex. Safe to log.
  std::string Fingerprint() const;

  friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

// secret * base. Rejects a zero secret and an identity base.
absl::StatusOr<G1Point> DhShare(const Scalar& secret, const G1Point& base);

// HKDF-SHA-256(enc(shared), info = label || context). Rejects the identity.
absl::StatusOr<SessionKey> DeriveKsNaf(const G1Point& shared, ByteSpan context);

// Length-prefixed IMPU || B-TID || NAF-ID.
Bytes KsNafContext(std::string_view impu, std::string_view btid,
                   std::string_view naf_id);

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_KEY_AGREEMENT_H_

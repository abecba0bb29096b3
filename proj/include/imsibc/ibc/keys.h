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

// PKG master keys and per-subscriber one-time key material.
//
//   Ppub1 = s1 P            Ppub2 = s2 P                  (P in G2)
//   Kpub1 = r P_A           Kpub2 = enc(UEID) ^ KDF(enc(r Ppub1))
//   Kpriv1 = s1 Kpub1       Kpriv2 = s2 H(enc(Kpub1) || Kpub2)
//
// with UEID = H(IMPU). Kpub2 is an opaque byte string; it is never decoded
// back into a point by anyone but the PKG.

#ifndef IMSIBC_IBC_KEYS_H_
#define IMSIBC_IBC_KEYS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/pairing/group.h"
#include "imsibc/pairing/params.h"
#include "imsibc/pairing/rng.h"
#include "imsibc/pairing/scalar.h"

namespace imsibc::ibc {

using pairing::G1Point;
using pairing::G2Point;
using pairing::PairingParams;
using pairing::Rng;
using pairing::Scalar;

struct MasterPublicKey {
  PairingParams params;
  G2Point ppub1;
  G2Point ppub2;
};

struct MasterKeyPair {
  Scalar s1;
  Scalar s2;
  MasterPublicKey pub;
};

absl::StatusOr<MasterKeyPair> PkgSetup(const PairingParams& params, Rng& rng);

inline constexpr size_t kKpub2Size = G1Point::kEncodedSize;
using Kpub2 = std::array<uint8_t, kKpub2Size>;

struct UserPublicKey {
  G1Point kpub1;
  Kpub2 kpub2{};

  // enc(Kpub1) || Kpub2, the input of the key-binding hash.
  Bytes BindingInput() const;

  friend bool operator==(const UserPublicKey& a, const UserPublicKey& b) {
    return a.kpub1 == b.kpub1 && a.kpub2 == b.kpub2;
  }
};

struct UserPrivateKey {
  G1Point kpriv1;
  G1Point kpriv2;

  friend bool operator==(const UserPrivateKey& a, const UserPrivateKey& b) {
    return a.kpriv1 == b.kpriv1 && a.kpriv2 == b.kpriv2;
  }
};

// PKG-side issuance carries r; a UE holding unwrapped keys has no r. The
// BSF only ever sees `pub`.
struct UserKeyMaterial {
  std::string impu;
  std::optional<Scalar> r;
  UserPublicKey pub;
  std::optional<UserPrivateKey> priv;
};

// Fresh r on every call, so each issuance is a one-time key set.
absl::StatusOr<UserKeyMaterial> ExtractUserKeys(std::string_view impu,
                                                const MasterKeyPair& master,
                                                Rng& rng);

absl::StatusOr<G1Point> UeidFor(const PairingParams& params,
                                std::string_view impu);

// H(enc(Kpub1) || Kpub2).
absl::StatusOr<G1Point> KeyBindingPoint(const PairingParams& params,
                                        const UserPublicKey& pub);

// KDF(enc(r Ppub1)) stretched to the Kpub2 length.
Kpub2 Kpub2Mask(const G2Point& r_ppub1);

// Undoes the Kpub2 mask given r. Fails if the unmasked bytes are not a point.
absl::StatusOr<G1Point> RecoverUeid(const UserPublicKey& pub, const Scalar& r,
                                    const MasterPublicKey& master);

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_KEYS_H_

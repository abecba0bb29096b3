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

// Encryption to the holder of Kpriv1 = s1 Kpub1.
//
//   U    = t P
//   g    = e(Kpub1, Ppub1)^t        (computed as e(Kpub1, t Ppub1))
//   V    = m ^ mask,  (mac_key, mask) = HKDF(g, salt = enc(U))
//   tag  = HMAC-SHA-256(mac_key, enc(U) || V)
//
// The recipient recomputes g as e(Kpriv1, U).

#ifndef IMSIBC_IBC_IBE_H_
#define IMSIBC_IBC_IBE_H_

#include <array>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/core/hash.h"
#include "imsibc/ibc/keys.h"

namespace imsibc::ibc {

struct IbeCiphertext {
  G2Point u;
  Bytes v;
  Sha256Digest tag{};
};

absl::StatusOr<IbeCiphertext> IbeEncrypt(const G1Point& kpub1,
                                         const MasterPublicKey& master,
                                         ByteSpan plaintext, Rng& rng);

// kDecryptFailed when the tag does not verify, which is also what a wrong
// Kpriv1 produces.
absl::StatusOr<Bytes> IbeDecrypt(const G1Point& kpriv1,
                                 const IbeCiphertext& ct);

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_IBE_H_

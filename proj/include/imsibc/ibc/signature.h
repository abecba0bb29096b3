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

// One-time identity-based signatures.
//
//   Sig = Kpriv1 + h(m) Kpriv2
//
// A single signature is accepted when
//
//   e(Sig, P) == e(Kpub1, Ppub1) * e(h(m) H(Kpub1 || Kpub2), Ppub2)
//
// and n signatures are accepted together when the same identity holds for
// the sums of Sig_i, Kpub1_i and h(m_i) H_i. Either check costs exactly three
// pairings.

#ifndef IMSIBC_IBC_SIGNATURE_H_
#define IMSIBC_IBC_SIGNATURE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/ibc/keys.h"

namespace imsibc::ibc {

struct OneTimeSignature {
  G1Point sig;
  Bytes signed_token;  // the RAND or B-TID that was hashed
};

// h(token) with the value 0 replaced by 1, so a signature never degenerates
// to Kpriv1 alone.
absl::StatusOr<Scalar> TokenDigest(const PairingParams& params, ByteSpan token);

// kKeyMissing without private keys, kInvalidArgument for an empty token.
absl::StatusOr<OneTimeSignature> SignOnce(const UserKeyMaterial& keys,
                                          const PairingParams& params,
                                          ByteSpan token);

absl::StatusOr<bool> VerifyOne(const UserPublicKey& pub, ByteSpan token,
                               const G1Point& sig,
                               const MasterPublicKey& master);

struct SignedEntry {
  UserPublicKey pub;
  Bytes token;
  G1Point sig;
};

// Wire-level entry prior to point decoding.
struct EncodedEntry {
  Bytes kpub1;
  Bytes kpub2;
  Bytes token;
  Bytes sig;
};

// kMalformedInput for any bad encoding; never a boolean false.
absl::StatusOr<SignedEntry> DecodeEntry(const EncodedEntry& entry);
// The error message names the first offending index ("entry 7: ...").
absl::StatusOr<std::vector<SignedEntry>> DecodeBatch(
    std::span<const EncodedEntry> entries);

// Decodes then verifies; malformed input is an error, not `false`.
absl::StatusOr<bool> VerifyOneEncoded(const EncodedEntry& entry,
                                      const MasterPublicKey& master);

absl::StatusOr<bool> VerifyBatch(std::span<const SignedEntry> entries,
                                 const MasterPublicKey& master);

inline constexpr int kBatchWeightBits = 64;

// Same equation with every entry scaled by an independent non-zero 64-bit
// weight before summation. An invalid set slips through with probability at
// most 2^-64 per flush instead of being constructible.
absl::StatusOr<bool> VerifyBatchRandomized(std::span<const SignedEntry> entries,
                                           const MasterPublicKey& master,
                                           Rng& rng);

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_SIGNATURE_H_

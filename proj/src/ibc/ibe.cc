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

#include "imsibc/ibc/ibe.h"

#include "imsibc/core/errors.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::ibc {
namespace {

constexpr std::string_view kInfo = "imsibc ibe v1";

struct DerivedKeys {
  Bytes mac_key;
  Bytes mask;
};

DerivedKeys Derive(const pairing::GtElement& g, const Bytes& u_bytes,
                   size_t length) {
  Bytes okm = HkdfSha256(g.ToBytes(), u_bytes, AsBytes(kInfo),
                         kSha256Size + length);
  DerivedKeys k;
  k.mac_key.assign(okm.begin(), okm.begin() + kSha256Size);
  k.mask.assign(okm.begin() + kSha256Size, okm.end());
  return k;
}

Sha256Digest Tag(const Bytes& mac_key, const Bytes& u_bytes, const Bytes& v) {
  return HmacSha256(mac_key, Concat(u_bytes, v));
}

}  // namespace

absl::StatusOr<IbeCiphertext> IbeEncrypt(const G1Point& kpub1,
                                         const MasterPublicKey& master,
                                         ByteSpan plaintext, Rng& rng) {
  if (plaintext.empty()) {
    return MakeError(ErrorReason::kInvalidArgument, "empty plaintext");
  }
  if (kpub1.IsIdentity()) {
    return MakeError(ErrorReason::kIdentityPoint, "recipient key is identity");
  }
  IMSIBC_ASSIGN_OR_RETURN(Scalar t, Scalar::Random(rng));
  IbeCiphertext ct;
  ct.u = master.params.generator_b * t;
  const Bytes u_bytes = ct.u.ToBytes();
  const DerivedKeys keys =
      Derive(pairing::Pair(kpub1, master.ppub1 * t), u_bytes, plaintext.size());
  ct.v.resize(plaintext.size());
  for (size_t i = 0; i < plaintext.size(); ++i) {
    ct.v[i] = plaintext[i] ^ keys.mask[i];
  }
  ct.tag = Tag(keys.mac_key, u_bytes, ct.v);
  return ct;
}

absl::StatusOr<Bytes> IbeDecrypt(const G1Point& kpriv1,
                                 const IbeCiphertext& ct) {
  if (ct.v.empty()) {
    return MakeError(ErrorReason::kMalformedInput, "empty ciphertext");
  }
  const Bytes u_bytes = ct.u.ToBytes();
  const DerivedKeys keys =
      Derive(pairing::Pair(kpriv1, ct.u), u_bytes, ct.v.size());
  const Sha256Digest expected = Tag(keys.mac_key, u_bytes, ct.v);
  if (!ConstantTimeEquals(expected, ct.tag)) {
    return MakeError(ErrorReason::kDecryptFailed, "IBE tag mismatch");
  }
  Bytes out(ct.v.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = ct.v[i] ^ keys.mask[i];
  return out;
}

}  // namespace imsibc::ibc

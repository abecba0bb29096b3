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

#include "imsibc/ibc/key_agreement.h"

#include "imsibc/core/errors.h"
#include "imsibc/core/hash.h"

namespace imsibc::ibc {

std::string SessionKey::Fingerprint() const {
  const Sha256Digest d = Sha256(key);
  return HexEncode(ByteSpan(d).first(8));
}

absl::StatusOr<G1Point> DhShare(const Scalar& secret, const G1Point& base) {
  if (secret.IsZero()) {
    return MakeError(ErrorReason::kInvalidArgument, "DH secret must be non-zero");
  }
  if (base.IsIdentity()) {
    return MakeError(ErrorReason::kIdentityPoint, "DH base is the identity");
  }
  return base * secret;
}

absl::StatusOr<SessionKey> DeriveKsNaf(const G1Point& shared,
                                       ByteSpan context) {
  if (shared.IsIdentity()) {
    return MakeError(ErrorReason::kIdentityPoint, "shared point is identity");
  }
  Bytes info = ToBytes("imsibc ks-naf v1");
  Append(info, context);
  const Bytes okm = HkdfSha256(shared.ToBytes(), {}, info, kSessionKeySize);
  SessionKey k;
  std::copy(okm.begin(), okm.end(), k.key.begin());
  return k;
}

Bytes KsNafContext(std::string_view impu, std::string_view btid,
                   std::string_view naf_id) {
  Bytes out;
  AppendLengthPrefixed(out, AsBytes(impu));
  AppendLengthPrefixed(out, AsBytes(btid));
  AppendLengthPrefixed(out, AsBytes(naf_id));
  return out;
}

}  // namespace imsibc::ibc

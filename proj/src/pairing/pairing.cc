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

#include "imsibc/pairing/pairing.h"

#include "imsibc/core/errors.h"
#include "imsibc/core/hash.h"

namespace imsibc::pairing {

GtElement Pair(const G1Point& a, const G2Point& b) {
  PairingCounter::Increment();
  if (a.IsIdentity() || b.IsIdentity()) return GtElement::One();
  const blst_p1_affine pa = a.ToAffine();
  const blst_p2_affine pb = b.ToAffine();
  blst_fp12 ml;
  blst_miller_loop(&ml, &pb, &pa);
  blst_fp12 out;
  blst_final_exp(&out, &ml);
  return GtElement(out);
}

absl::StatusOr<G1Point> HashToG1(ByteSpan msg, std::string_view dst) {
  if (msg.empty()) {
    return MakeError(ErrorReason::kInvalidArgument, "hash_to_g1 of empty input");
  }
  if (dst.empty()) {
    return MakeError(ErrorReason::kInvalidArgument, "empty domain tag");
  }
  blst_p1 out;
  blst_hash_to_g1(&out, msg.data(), msg.size(),
                  reinterpret_cast<const uint8_t*>(dst.data()), dst.size(),
                  nullptr, 0);
  return G1Point(out);
}

absl::StatusOr<Scalar> HashToScalar(ByteSpan msg, std::string_view dst) {
  if (msg.empty()) {
    return MakeError(ErrorReason::kInvalidArgument,
                     "hash_to_scalar of empty input");
  }
  Bytes wide;
  wide.reserve(2 * kSha256Size);
  for (uint8_t i = 0; i < 2; ++i) {
    Bytes block{i};
    Append(block, AsBytes(dst), msg);
    const Sha256Digest d = Sha256(block);
    wide.insert(wide.end(), d.begin(), d.end());
  }
  return Scalar::FromBytesReduced(wide);
}

}  // namespace imsibc::pairing

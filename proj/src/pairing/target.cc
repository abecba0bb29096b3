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

#include "imsibc/pairing/target.h"

#include "blst_aux.h"
#include "imsibc/core/errors.h"

namespace imsibc::pairing {

Bytes GtElement::ToBytes() const {
  Bytes out(kEncodedSize);
  blst_bendian_from_fp12(out.data(), &v_);
  return out;
}

absl::StatusOr<GtElement> GtElement::FromBytes(ByteSpan data) {
  if (data.size() != kEncodedSize) {
    return MakeError(ErrorReason::kMalformedInput, "GT encoding length");
  }
  // Inverse of blst_bendian_from_fp12: coefficient order is fp2 index, then
  // fp6 index, then the two Fp limbs.
  blst_fp12 v;
  const uint8_t* in = data.data();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        blst_fp_from_bendian(&v.fp6[j].fp2[i].fp[k], in);
        in += 48;
      }
    }
  }
  GtElement out(v);
  // blst_fp_from_bendian reduces silently; re-encoding catches inputs >= p.
  if (out.ToBytes() != Bytes(data.begin(), data.end())) {
    return MakeError(ErrorReason::kMalformedInput, "non-canonical GT value");
  }
  if (!out.IsInGroup()) {
    return MakeError(ErrorReason::kMalformedInput, "GT value outside subgroup");
  }
  return out;
}

GtElement GtElement::operator*(const GtElement& o) const {
  GtElement r;
  blst_fp12_mul(&r.v_, &v_, &o.v_);
  return r;
}

GtElement& GtElement::operator*=(const GtElement& o) {
  blst_fp12_mul(&v_, &v_, &o.v_);
  return *this;
}

GtElement GtElement::Inverse() const {
  // Unit-norm elements: the inverse is the conjugate.
  GtElement r = *this;
  blst_fp12_conjugate(&r.v_);
  return r;
}

GtElement GtElement::Pow(const Scalar& k) const {
  const Bytes be = k.ToBytes();
  GtElement acc;
  for (uint8_t byte : be) {
    for (int bit = 7; bit >= 0; --bit) {
      blst_fp12_cyclotomic_sqr(&acc.v_, &acc.v_);
      if ((byte >> bit) & 1) acc *= *this;
    }
  }
  return acc;
}

}  // namespace imsibc::pairing

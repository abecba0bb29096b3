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

#ifndef IMSIBC_PAIRING_TARGET_H_
#define IMSIBC_PAIRING_TARGET_H_

#include "absl/status/statusor.h"
#include "blst.h"
#include "imsibc/core/bytes.h"
#include "imsibc/pairing/scalar.h"

namespace imsibc::pairing {

// Element of the order-q multiplicative subgroup of Fp12.
class GtElement {
 public:
  static constexpr size_t kEncodedSize = 48 * 12;

  GtElement() : GtElement(*blst_fp12_one()) {}  // identity
  explicit GtElement(const blst_fp12& raw) : v_(raw) {}

  static GtElement One() { return GtElement(); }
  // Rejects non-canonical coordinates and values outside the subgroup.
  static absl::StatusOr<GtElement> FromBytes(ByteSpan data);

  Bytes ToBytes() const;

  bool IsOne() const { return blst_fp12_is_one(&v_); }
  bool IsInGroup() const { return blst_fp12_in_group(&v_); }

  GtElement operator*(const GtElement& o) const;
  GtElement& operator*=(const GtElement& o);
  GtElement Inverse() const;
  GtElement Pow(const Scalar& k) const;

  friend bool operator==(const GtElement& a, const GtElement& b) {
    return blst_fp12_is_equal(&a.v_, &b.v_);
  }

  const blst_fp12& raw() const { return v_; }

 private:
  blst_fp12 v_;
};

}  // namespace imsibc::pairing

#endif  // IMSIBC_PAIRING_TARGET_H_

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

#include "imsibc/pairing/scalar.h"

#include <cstring>

#include "imsibc/core/errors.h"

namespace imsibc::pairing {

Scalar::Scalar() { std::memset(&fr_, 0, sizeof(fr_)); }

Scalar Scalar::FromUint64(uint64_t v) {
  const uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar s;
  blst_fr_from_uint64(&s.fr_, limbs);
  return s;
}

Scalar Scalar::FromBytesReduced(ByteSpan data) {
  blst_scalar raw;
  blst_scalar_from_be_bytes(&raw, data.data(), data.size());
  Scalar s;
  blst_fr_from_scalar(&s.fr_, &raw);
  return s;
}

absl::StatusOr<Scalar> Scalar::FromBytes(ByteSpan data) {
  if (data.size() != kEncodedSize) {
    return MakeError(ErrorReason::kMalformedInput, "scalar must be 32 bytes");
  }
  blst_scalar raw;
  blst_scalar_from_bendian(&raw, data.data());
  if (!blst_scalar_fr_check(&raw)) {
    return MakeError(ErrorReason::kMalformedInput, "scalar not below q");
  }
  Scalar s;
  blst_fr_from_scalar(&s.fr_, &raw);
  return s;
}

absl::StatusOr<Scalar> Scalar::FromHex(std::string_view hex) {
  IMSIBC_ASSIGN_OR_RETURN(Bytes raw, HexDecode(hex));
  return FromBytes(raw);
}

absl::StatusOr<Scalar> Scalar::Random(Rng& rng) {
  // 64 bytes reduced mod q: statistical distance from uniform is ~2^-256.
  for (;;) {
    uint8_t wide[64];
    IMSIBC_RETURN_IF_ERROR(rng.Fill(wide));
    Scalar s = FromBytesReduced(wide);
    if (!s.IsZero()) return s;
  }
}

std::string Scalar::OrderHex() {
  return "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";
}

Bytes Scalar::ToBytes() const {
  blst_scalar raw;
  blst_scalar_from_fr(&raw, &fr_);
  Bytes out(kEncodedSize);
  blst_bendian_from_scalar(out.data(), &raw);
  return out;
}

bool Scalar::IsZero() const {
  static const blst_fr kZero{};
  return std::memcmp(&fr_, &kZero, sizeof(fr_)) == 0;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  blst_fr_add(&r.fr_, &fr_, &o.fr_);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  blst_fr_sub(&r.fr_, &fr_, &o.fr_);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  blst_fr_mul(&r.fr_, &fr_, &o.fr_);
  return r;
}

Scalar Scalar::operator-() const { return Scalar() - *this; }

Scalar Scalar::Inverse() const {
  Scalar r;
  blst_fr_inverse(&r.fr_, &fr_);
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return std::memcmp(&a.fr_, &b.fr_, sizeof(a.fr_)) == 0;
}

blst_scalar Scalar::ToBlst() const {
  blst_scalar raw;
  blst_scalar_from_fr(&raw, &fr_);
  return raw;
}

}  // namespace imsibc::pairing

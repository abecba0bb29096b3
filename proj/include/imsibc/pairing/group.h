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

// Source groups of the BLS12-381 pairing.
//
//   G1Point  the "A" group: user public points, signatures, hash outputs.
//   G2Point  the "B" group: the system generator and the PKG public keys.
//
// Both share one implementation parameterised over a traits struct that binds
// the matching blst entry points.

#ifndef IMSIBC_PAIRING_GROUP_H_
#define IMSIBC_PAIRING_GROUP_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "blst.h"
#include "imsibc/core/bytes.h"
#include "imsibc/core/errors.h"
#include "imsibc/pairing/scalar.h"

namespace imsibc::pairing {

struct G1Traits {
  using Point = blst_p1;
  using Affine = blst_p1_affine;
  static constexpr size_t kEncodedSize = 48;
  static constexpr std::string_view kName = "G1";

  static void Add(Point* out, const Point* a, const Point* b) {
    blst_p1_add_or_double(out, a, b);
  }
  static void Mult(Point* out, const Point* p, const uint8_t* k, size_t bits) {
    blst_p1_mult(out, p, k, bits);
  }
  static void Negate(Point* p) { blst_p1_cneg(p, true); }
  static bool Equal(const Point* a, const Point* b) {
    return blst_p1_is_equal(a, b);
  }
  static bool IsInfinity(const Point* p) { return blst_p1_is_inf(p); }
  static bool InGroup(const Point* p) { return blst_p1_in_g1(p); }
  static const Point* Generator() { return blst_p1_generator(); }
  static void Compress(uint8_t* out, const Point* p) {
    blst_p1_compress(out, p);
  }
  static BLST_ERROR Uncompress(Affine* out, const uint8_t* in) {
    return blst_p1_uncompress(out, in);
  }
  static void FromAffine(Point* out, const Affine* in) {
    blst_p1_from_affine(out, in);
  }
  static void ToAffine(Affine* out, const Point* in) {
    blst_p1_to_affine(out, in);
  }
};

struct G2Traits {
  using Point = blst_p2;
  using Affine = blst_p2_affine;
  static constexpr size_t kEncodedSize = 96;
  static constexpr std::string_view kName = "G2";

  static void Add(Point* out, const Point* a, const Point* b) {
    blst_p2_add_or_double(out, a, b);
  }
  static void Mult(Point* out, const Point* p, const uint8_t* k, size_t bits) {
    blst_p2_mult(out, p, k, bits);
  }
  static void Negate(Point* p) { blst_p2_cneg(p, true); }
  static bool Equal(const Point* a, const Point* b) {
    return blst_p2_is_equal(a, b);
  }
  static bool IsInfinity(const Point* p) { return blst_p2_is_inf(p); }
  static bool InGroup(const Point* p) { return blst_p2_in_g2(p); }
  static const Point* Generator() { return blst_p2_generator(); }
  static void Compress(uint8_t* out, const Point* p) {
    blst_p2_compress(out, p);
  }
  static BLST_ERROR Uncompress(Affine* out, const uint8_t* in) {
    return blst_p2_uncompress(out, in);
  }
  static void FromAffine(Point* out, const Affine* in) {
    blst_p2_from_affine(out, in);
  }
  static void ToAffine(Affine* out, const Point* in) {
    blst_p2_to_affine(out, in);
  }
};

template <typename Traits>
class EcPoint {
 public:
  using Raw = typename Traits::Point;
  using RawAffine = typename Traits::Affine;
  static constexpr size_t kEncodedSize = Traits::kEncodedSize;

  // The identity element.
  EcPoint() { std::memset(&p_, 0, sizeof(p_)); }
  explicit EcPoint(const Raw& raw) : p_(raw) {}

  static EcPoint Identity() { return EcPoint(); }
  static EcPoint Generator() { return EcPoint(*Traits::Generator()); }

  // Canonical compressed form. Rejects bad encodings, off-curve points and
  // points outside the prime-order subgroup. The identity decodes.
  static absl::StatusOr<EcPoint> FromBytes(ByteSpan data) {
    if (data.size() != kEncodedSize) {
      return MakeError(ErrorReason::kMalformedInput,
                       std::string(Traits::kName) + " encoding has length " +
                           std::to_string(data.size()));
    }
    RawAffine affine;
    const BLST_ERROR err = Traits::Uncompress(&affine, data.data());
    if (err != BLST_SUCCESS) {
      return MakeError(ErrorReason::kMalformedInput,
                       std::string(Traits::kName) +
                           (err == BLST_POINT_NOT_ON_CURVE
                                ? " point not on curve"
                                : " bad point encoding"));
    }
    EcPoint out;
    Traits::FromAffine(&out.p_, &affine);
    if (!out.IsIdentity() && !Traits::InGroup(&out.p_)) {
      return MakeError(ErrorReason::kMalformedInput,
                       std::string(Traits::kName) +
                           " point outside prime-order subgroup");
    }
    return out;
  }

  static absl::StatusOr<EcPoint> FromHex(std::string_view hex) {
    IMSIBC_ASSIGN_OR_RETURN(Bytes raw, HexDecode(hex));
    return FromBytes(raw);
  }

  Bytes ToBytes() const {
    Bytes out(kEncodedSize);
    Traits::Compress(out.data(), &p_);
    return out;
  }
  std::string ToHex() const { return HexEncode(ToBytes()); }

  bool IsIdentity() const { return Traits::IsInfinity(&p_); }
  bool IsInSubgroup() const { return IsIdentity() || Traits::InGroup(&p_); }

  EcPoint operator+(const EcPoint& o) const {
    EcPoint r;
    Traits::Add(&r.p_, &p_, &o.p_);
    return r;
  }
  EcPoint& operator+=(const EcPoint& o) {
    Traits::Add(&p_, &p_, &o.p_);
    return *this;
  }
  EcPoint operator-() const {
    EcPoint r = *this;
    Traits::Negate(&r.p_);
    return r;
  }
  EcPoint operator-(const EcPoint& o) const { return *this + (-o); }

  EcPoint operator*(const Scalar& k) const {
    const blst_scalar raw = k.ToBlst();
    EcPoint r;
    Traits::Mult(&r.p_, &p_, raw.b, 255);
    return r;
  }
  friend EcPoint operator*(const Scalar& k, const EcPoint& p) { return p * k; }

  // Multiplication by a 64-bit integer; cheaper than a full-width scalar.
  EcPoint MulSmall(uint64_t k) const {
    uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<uint8_t>(k >> (8 * i));
    EcPoint r;
    Traits::Mult(&r.p_, &p_, le, 64);
    return r;
  }

  friend bool operator==(const EcPoint& a, const EcPoint& b) {
    return Traits::Equal(&a.p_, &b.p_);
  }

  const Raw& raw() const { return p_; }
  RawAffine ToAffine() const {
    RawAffine a;
    Traits::ToAffine(&a, &p_);
    return a;
  }

 private:
  Raw p_;
};

using G1Point = EcPoint<G1Traits>;
using G2Point = EcPoint<G2Traits>;

}  // namespace imsibc::pairing

#endif  // IMSIBC_PAIRING_GROUP_H_

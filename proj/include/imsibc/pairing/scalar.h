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

#ifndef IMSIBC_PAIRING_SCALAR_H_
#define IMSIBC_PAIRING_SCALAR_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "blst.h"
#include "imsibc/core/bytes.h"
#include "imsibc/pairing/rng.h"

namespace imsibc::pairing {

// Element of Z_q, q the prime order shared by G1, G2 and GT.
class Scalar {
 public:
  static constexpr size_t kEncodedSize = 32;

  Scalar();  // zero

  static Scalar Zero() { return Scalar(); }
  static Scalar One() { return FromUint64(1); }
  static Scalar FromUint64(uint64_t v);
  // Interprets `data` as a big-endian integer of any length and reduces it.
  static Scalar FromBytesReduced(ByteSpan data);
  // Canonical 32-byte big-endian encoding; rejects values >= q.
  static absl::StatusOr<Scalar> FromBytes(ByteSpan data);
  static absl::StatusOr<Scalar> FromHex(std::string_view hex);
  // Uniform in [1, q).
  static absl::StatusOr<Scalar> Random(Rng& rng);

  // Big-endian hex of q.
  static std::string OrderHex();

  Bytes ToBytes() const;
  std::string ToHex() const { return HexEncode(ToBytes()); }
  bool IsZero() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  // Inverse of a non-zero scalar (zero maps to zero).
  Scalar Inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  // Little-endian canonical form consumed by blst's point multiplication.
  blst_scalar ToBlst() const;

 private:
  blst_fr fr_;
};

}  // namespace imsibc::pairing

#endif  // IMSIBC_PAIRING_SCALAR_H_

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

#ifndef IMSIBC_PAIRING_PAIRING_H_
#define IMSIBC_PAIRING_PAIRING_H_

#include <atomic>
#include <cstdint>
#include <string_view>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/pairing/group.h"
#include "imsibc/pairing/scalar.h"
#include "imsibc/pairing/target.h"

namespace imsibc::pairing {

// Process-wide count of full pairing evaluations (Miller loop plus final
// exponentiation).
class PairingCounter {
 public:
  static uint64_t Count() { return count_.load(std::memory_order_relaxed); }
  // Returns the count accumulated since the previous reset.
  static uint64_t Reset() { return count_.exchange(0); }
  static void Increment() { count_.fetch_add(1, std::memory_order_relaxed); }

 private:
  static inline std::atomic<uint64_t> count_{0};
};

// Measures the pairings evaluated while it is alive, without disturbing the
// global counter.
class PairingScope {
 public:
  PairingScope() : start_(PairingCounter::Count()) {}
  uint64_t Elapsed() const { return PairingCounter::Count() - start_; }

 private:
  uint64_t start_;
};

// e: G1 x G2 -> GT. Identity in either slot yields the GT identity.
GtElement Pair(const G1Point& a, const G2Point& b);

// RFC 9380 hash_to_curve (BLS12381G1_XMD:SHA-256_SSWU_RO_) under the given
// domain-separation tag. Rejects empty messages and empty tags.
absl::StatusOr<G1Point> HashToG1(ByteSpan msg, std::string_view dst);

// SHA-256 based map into Z_q: the two digests SHA-256(i || dst || msg),
// i = 0, 1, are concatenated and the 512-bit value is reduced mod q.
absl::StatusOr<Scalar> HashToScalar(ByteSpan msg, std::string_view dst);

}  // namespace imsibc::pairing

#endif  // IMSIBC_PAIRING_PAIRING_H_

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

#ifndef IMSIBC_PAIRING_RNG_H_
#define IMSIBC_PAIRING_RNG_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "absl/status/status.h"
#include "imsibc/core/bytes.h"
#include "imsibc/core/hash.h"

namespace imsibc::pairing {

class Rng {
 public:
  virtual ~Rng() = default;
  virtual absl::Status Fill(std::span<uint8_t> out) = 0;

  absl::StatusOr<Bytes> Generate(size_t n);
};

// Operating-system entropy through libcrypto.
class SystemRng final : public Rng {
 public:
  absl::Status Fill(std::span<uint8_t> out) override;
};

// Deterministic SHA-256 counter-mode stream keyed by (seed, label). Two
// instances built from the same seed and label emit identical bytes, which is
// what makes simulator transcripts reproducible.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(uint64_t seed, std::string_view label = "");

  absl::Status Fill(std::span<uint8_t> out) override;

  // Independent child stream; does not advance this one.
  SeededRng Fork(std::string_view label) const;

 private:
  SeededRng(const Sha256Digest& key, std::string_view label);

  Sha256Digest key_;
  uint64_t counter_ = 0;
  Sha256Digest block_{};
  size_t used_ = kSha256Size;
};

}  // namespace imsibc::pairing

#endif  // IMSIBC_PAIRING_RNG_H_

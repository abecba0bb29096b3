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

#include "imsibc/pairing/rng.h"

#include <openssl/rand.h>

#include "imsibc/core/errors.h"

namespace imsibc::pairing {

absl::StatusOr<Bytes> Rng::Generate(size_t n) {
  Bytes out(n);
  IMSIBC_RETURN_IF_ERROR(Fill(out));
  return out;
}

absl::Status SystemRng::Fill(std::span<uint8_t> out) {
  if (out.empty()) return absl::OkStatus();
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    return MakeError(ErrorReason::kRngFailure, "RAND_bytes failed");
  }
  return absl::OkStatus();
}

namespace {

Bytes SeedMaterial(uint64_t seed) {
  Bytes m = ToBytes("imsibc-seeded-rng-v1");
  for (int i = 7; i >= 0; --i) m.push_back(static_cast<uint8_t>(seed >> (8 * i)));
  return m;
}

}  // namespace

SeededRng::SeededRng(uint64_t seed, std::string_view label)
    : SeededRng(Sha256(SeedMaterial(seed)), label) {}

SeededRng::SeededRng(const Sha256Digest& key, std::string_view label) {
  Bytes m(key.begin(), key.end());
  AppendLengthPrefixed(m, AsBytes(label));
  key_ = Sha256(m);
}

SeededRng SeededRng::Fork(std::string_view label) const {
  return SeededRng(key_, label);
}

absl::Status SeededRng::Fill(std::span<uint8_t> out) {
  for (uint8_t& b : out) {
    if (used_ == block_.size()) {
      Bytes m(key_.begin(), key_.end());
      for (int i = 7; i >= 0; --i) {
        m.push_back(static_cast<uint8_t>(counter_ >> (8 * i)));
      }
      ++counter_;
      block_ = Sha256(m);
      used_ = 0;
    }
    b = block_[used_++];
  }
  return absl::OkStatus();
}

}  // namespace imsibc::pairing

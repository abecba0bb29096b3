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

#ifndef IMSIBC_TESTS_TEST_UTIL_H_
#define IMSIBC_TESTS_TEST_UTIL_H_

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "imsibc/core/errors.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/ibc/signature.h"
#include "imsibc/pairing/group.h"
#include "imsibc/pairing/rng.h"

namespace imsibc::testing {

#define ASSERT_OK_AND_ASSIGN(lhs, expr) \
  ASSERT_OK_AND_ASSIGN_IMPL_(IMSIBC_STATUS_CONCAT_(_t_or_, __LINE__), lhs, expr)
#define ASSERT_OK_AND_ASSIGN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                               \
  ASSERT_TRUE(tmp.ok()) << tmp.status();           \
  lhs = std::move(*tmp)

#define EXPECT_OK(expr) EXPECT_TRUE((expr).ok()) << (expr)
#define ASSERT_OK(expr) ASSERT_TRUE((expr).ok()) << (expr)

class FailingRng final : public pairing::Rng {
 public:
  absl::Status Fill(std::span<uint8_t>) override {
    return MakeError(ErrorReason::kRngFailure, "injected rng failure");
  }
};

inline pairing::Scalar RandomScalar(pairing::Rng& rng) {
  return *pairing::Scalar::Random(rng);
}

inline pairing::G1Point RandomG1(pairing::Rng& rng) {
  return pairing::G1Point::Generator() * RandomScalar(rng);
}

inline pairing::G2Point RandomG2(pairing::Rng& rng) {
  return pairing::G2Point::Generator() * RandomScalar(rng);
}

inline std::string TestImpu(int i) {
  return "sip:user" + std::to_string(i) + "@ims.example.org";
}

struct HonestEntry {
  ibc::UserKeyMaterial keys;
  ibc::SignedEntry entry;
};

// Fresh keys for `impu` and a signature over `token`.
inline HonestEntry MakeHonestEntry(const ibc::MasterKeyPair& master,
                                   const std::string& impu,
                                   const Bytes& token, pairing::Rng& rng) {
  HonestEntry h;
  h.keys = *ibc::ExtractUserKeys(impu, master, rng);
  const auto sig = *ibc::SignOnce(h.keys, master.pub.params, token);
  h.entry = ibc::SignedEntry{h.keys.pub, token, sig.sig};
  return h;
}

inline std::vector<ibc::SignedEntry> MakeHonestBatch(
    const ibc::MasterKeyPair& master, size_t n, pairing::Rng& rng) {
  std::vector<ibc::SignedEntry> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Bytes token = *rng.Generate(16);
    out.push_back(
        MakeHonestEntry(master, TestImpu(static_cast<int>(i)), token, rng)
            .entry);
  }
  return out;
}

}  // namespace imsibc::testing

#endif  // IMSIBC_TESTS_TEST_UTIL_H_

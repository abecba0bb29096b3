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

#include <array>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "imsibc/core/hash.h"
#include "imsibc/pairing/params.h"
#include "test_util.h"

namespace imsibc::pairing {
namespace {

using ::imsibc::testing::RandomG1;
using ::imsibc::testing::RandomG2;
using ::imsibc::testing::RandomScalar;

constexpr std::string_view kDst = "IMSIBC-TEST-DST_";

TEST(PairingTest, IdentityPairsToOne) {
  SeededRng rng(1);
  EXPECT_TRUE(Pair(G1Point::Identity(), RandomG2(rng)).IsOne());
  EXPECT_TRUE(Pair(RandomG1(rng), G2Point::Identity()).IsOne());
}

TEST(PairingTest, GeneratorsAreNonDegenerate) {
  const GtElement g = Pair(G1Point::Generator(), G2Point::Generator());
  EXPECT_FALSE(g.IsOne());
  EXPECT_TRUE(g.IsInGroup());
  // g^q = 1: q - 1 + 1 exponent spelled as (q-1) then one more factor.
  EXPECT_TRUE((g.Pow(-Scalar::One()) * g).IsOne());
}

TEST(PairingTest, ScalarsMoveThroughThePairing) {
  SeededRng rng(2);
  const G1Point pa = G1Point::Generator();
  const G2Point pb = G2Point::Generator();
  const GtElement base = Pair(pa, pb);
  for (int i = 0; i < 10; ++i) {
    const Scalar a = RandomScalar(rng);
    const Scalar b = RandomScalar(rng);
    EXPECT_EQ(Pair(pa * a, pb * b), base.Pow(a * b));
  }
}

TEST(PairingTest, BilinearInBothArguments) {
  SeededRng rng(3);
  for (int i = 0; i < 100; ++i) {
    const G1Point x1 = RandomG1(rng), x2 = RandomG1(rng);
    const G2Point y1 = RandomG2(rng), y2 = RandomG2(rng);
    EXPECT_EQ(Pair(x1 + x2, y1), Pair(x1, y1) * Pair(x2, y1));
    EXPECT_EQ(Pair(x1, y1 + y2), Pair(x1, y1) * Pair(x1, y2));
  }
}

TEST(PairingTest, ScalarSlide) {
  SeededRng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Scalar s = RandomScalar(rng);
    const G1Point x = RandomG1(rng);
    const G2Point y = RandomG2(rng);
    const GtElement expected = Pair(x, y).Pow(s);
    EXPECT_EQ(Pair(x * s, y), expected);
    EXPECT_EQ(Pair(x, y * s), expected);
  }
}

TEST(PairingCounterTest, CountsEveryEvaluation) {
  SeededRng rng(5);
  const G1Point x = RandomG1(rng);
  const G2Point y = RandomG2(rng);
  PairingScope scope;
  for (int i = 0; i < 17; ++i) Pair(x, y);
  EXPECT_EQ(scope.Elapsed(), 17u);
}

TEST(PairingCounterTest, ResetReturnsAccumulatedCount) {
  PairingCounter::Reset();
  Pair(G1Point::Generator(), G2Point::Generator());
  Pair(G1Point::Identity(), G2Point::Generator());
  EXPECT_EQ(PairingCounter::Reset(), 2u);
  EXPECT_EQ(PairingCounter::Count(), 0u);
}

TEST(PairingCounterTest, AtomicAcrossThreads) {
  const uint64_t before = PairingCounter::Count();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([] {
      for (int i = 0; i < 1000; ++i) PairingCounter::Increment();
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(PairingCounter::Count() - before, 4000u);
}

TEST(HashToG1Test, DeterministicAndInSubgroup) {
  const auto a = HashToG1(AsBytes("alice@ims.example"), kDst);
  const auto b = HashToG1(AsBytes("alice@ims.example"), kDst);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(*a, *b);
  EXPECT_FALSE(a->IsIdentity());
  EXPECT_TRUE(a->IsInSubgroup());
  // q * point == identity, via (q-1) * point + point.
  EXPECT_TRUE((*a * -Scalar::One() + *a).IsIdentity());
}

TEST(HashToG1Test, DomainTagSeparates) {
  const auto a = HashToG1(AsBytes("x"), "TAG-A_");
  const auto b = HashToG1(AsBytes("x"), "TAG-B_");
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_FALSE(*a == *b);
}

TEST(HashToG1Test, RejectsEmptyInput) {
  EXPECT_EQ(ReasonOf(HashToG1({}, kDst)), ErrorReason::kInvalidArgument);
  EXPECT_EQ(ReasonOf(HashToG1(AsBytes("m"), "")), ErrorReason::kInvalidArgument);
}

TEST(HashToG1Test, NoCollisionsOverCorpus) {
  std::set<Bytes> seen;
  for (int i = 0; i < 10000; ++i) {
    const std::string m = "sip:user" + std::to_string(i) + "@ims.example.org";
    const auto p = HashToG1(AsBytes(m), kDst);
    ASSERT_TRUE(p.ok());
    EXPECT_TRUE(seen.insert(p->ToBytes()).second) << "collision at " << i;
  }
}

TEST(HashToScalarTest, DeterministicAndReduced) {
  SeededRng rng(6);
  for (int i = 0; i < 10000; ++i) {
    const Bytes m = *rng.Generate(1 + i % 40);
    const auto a = HashToScalar(m, kDst);
    const auto b = HashToScalar(m, kDst);
    ASSERT_TRUE(a.ok() && b.ok());
    ASSERT_EQ(*a, *b);
    // Canonical decoding accepts only values below q.
    ASSERT_TRUE(Scalar::FromBytes(a->ToBytes()).ok());
  }
  EXPECT_EQ(ReasonOf(HashToScalar({}, kDst)), ErrorReason::kInvalidArgument);
}

// Bucket index floor(16 v / q) from the top 64 bits of v and q; the
// truncation error is far below one bucket width.
int Bucket16(const Scalar& v) {
  const Bytes vb = v.ToBytes();
  const Bytes qb = *HexDecode(Scalar::OrderHex());
  auto top = [](const Bytes& b) {
    uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x = (x << 8) | b[i];
    return static_cast<long double>(x);
  };
  const int k = static_cast<int>(16.0L * top(vb) / top(qb));
  return std::min(k, 15);
}

TEST(HashToScalarTest, CoarselyUniform) {
  std::array<int, 16> counts{};
  constexpr int kSamples = 10000;
  for (int i = 0; i < kSamples; ++i) {
    const std::string m = "token-" + std::to_string(i);
    counts[Bucket16(*HashToScalar(AsBytes(m), kDst))]++;
  }
  const double expected = kSamples / 16.0;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 15 degrees of freedom, p = 0.001.
  EXPECT_LT(chi2, 37.70);
}

TEST(ScalarTest, ArithmeticAndEncoding) {
  SeededRng rng(7);
  const Scalar a = RandomScalar(rng);
  EXPECT_TRUE((a - a).IsZero());
  EXPECT_EQ(a * a.Inverse(), Scalar::One());
  EXPECT_EQ(*Scalar::FromBytes(a.ToBytes()), a);
  EXPECT_EQ(*Scalar::FromHex(a.ToHex()), a);
  // q itself is not a canonical encoding.
  EXPECT_EQ(ReasonOf(Scalar::FromHex(Scalar::OrderHex())),
            ErrorReason::kMalformedInput);
  EXPECT_EQ(ReasonOf(Scalar::FromBytes(Bytes(31))), ErrorReason::kMalformedInput);
}

TEST(ScalarTest, RandomPropagatesRngFailure) {
  testing::FailingRng bad;
  EXPECT_EQ(ReasonOf(Scalar::Random(bad)), ErrorReason::kRngFailure);
}

TEST(ScalarTest, SeededStreamsAreReproducible) {
  SeededRng a(42, "x"), b(42, "x"), c(42, "y");
  const Scalar sa = RandomScalar(a);
  EXPECT_EQ(sa, RandomScalar(b));
  EXPECT_FALSE(sa == RandomScalar(c));
}

TEST(GroupTest, GroupLaws) {
  SeededRng rng(8);
  const G1Point g = RandomG1(rng);
  EXPECT_TRUE((g * Scalar::Zero()).IsIdentity());
  EXPECT_TRUE((g + (-g)).IsIdentity());
  EXPECT_EQ(g + G1Point::Identity(), g);
  const G2Point h = RandomG2(rng);
  EXPECT_TRUE((h * Scalar::Zero()).IsIdentity());
  EXPECT_TRUE((h - h).IsIdentity());
  const Scalar a = RandomScalar(rng), b = RandomScalar(rng);
  EXPECT_EQ(g * a + g * b, g * (a + b));
  EXPECT_EQ(g.MulSmall(12345), g * Scalar::FromUint64(12345));
}

TEST(GroupTest, SerializationRoundTrips) {
  SeededRng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const G1Point g = RandomG1(rng);
    const Bytes enc = g.ToBytes();
    ASSERT_EQ(enc.size(), G1Point::kEncodedSize);
    ASSERT_EQ(*G1Point::FromBytes(enc), g);
    ASSERT_EQ(G1Point::FromBytes(enc)->ToBytes(), enc);
  }
  for (int i = 0; i < 200; ++i) {
    const G2Point h = RandomG2(rng);
    ASSERT_EQ(*G2Point::FromBytes(h.ToBytes()), h);
  }
  EXPECT_TRUE(G1Point::FromBytes(G1Point::Identity().ToBytes())->IsIdentity());
  EXPECT_TRUE(G2Point::FromBytes(G2Point::Identity().ToBytes())->IsIdentity());
}

// Finds x with a curve point outside the order-q subgroup (the cofactor is
// large, so essentially every small x on the curve qualifies).
template <typename Point>
Bytes OffSubgroupEncoding() {
  for (uint8_t x = 1; x < 255; ++x) {
    Bytes enc(Point::kEncodedSize, 0);
    enc[0] = 0x80;  // compressed flag
    enc.back() = x;
    const auto p = Point::FromBytes(enc);
    if (!p.ok() && std::string(p.status().message()).find("subgroup") !=
                       std::string::npos) {
      return enc;
    }
  }
  return {};
}

TEST(GroupTest, DeserializationValidates) {
  EXPECT_EQ(ReasonOf(G1Point::FromBytes(Bytes(47))), ErrorReason::kMalformedInput);
  // Uncompressed-form flag on a compressed-length buffer.
  Bytes bad(G1Point::kEncodedSize, 0xff);
  EXPECT_EQ(ReasonOf(G1Point::FromBytes(bad)), ErrorReason::kMalformedInput);

  const Bytes g1_off = OffSubgroupEncoding<G1Point>();
  ASSERT_FALSE(g1_off.empty());
  EXPECT_EQ(ReasonOf(G1Point::FromBytes(g1_off)), ErrorReason::kMalformedInput);
  const Bytes g2_off = OffSubgroupEncoding<G2Point>();
  ASSERT_FALSE(g2_off.empty());
  EXPECT_EQ(ReasonOf(G2Point::FromBytes(g2_off)), ErrorReason::kMalformedInput);

  // Off-curve: some x has no y at all.
  bool saw_off_curve = false;
  for (uint8_t x = 1; x < 64 && !saw_off_curve; ++x) {
    Bytes enc(G1Point::kEncodedSize, 0);
    enc[0] = 0x80;
    enc.back() = x;
    const auto p = G1Point::FromBytes(enc);
    saw_off_curve = !p.ok() && std::string(p.status().message()).find(
                                   "not on curve") != std::string::npos;
  }
  EXPECT_TRUE(saw_off_curve);
}

TEST(TargetTest, SerializationRoundTripsAndValidates) {
  SeededRng rng(10);
  for (int i = 0; i < 20; ++i) {
    const GtElement g = Pair(RandomG1(rng), RandomG2(rng));
    const Bytes enc = g.ToBytes();
    ASSERT_EQ(*GtElement::FromBytes(enc), g);
    Bytes tampered = enc;
    tampered[100] ^= 1;
    EXPECT_EQ(ReasonOf(GtElement::FromBytes(tampered)),
              ErrorReason::kMalformedInput);
  }
  EXPECT_EQ(ReasonOf(GtElement::FromBytes(Bytes(10))),
            ErrorReason::kMalformedInput);
  EXPECT_EQ(*GtElement::FromBytes(GtElement::One().ToBytes()), GtElement::One());
}

TEST(TargetTest, InverseCancels) {
  SeededRng rng(11);
  const GtElement g = Pair(RandomG1(rng), RandomG2(rng));
  EXPECT_TRUE((g * g.Inverse()).IsOne());
}

TEST(ParamsTest, DefaultValidatesAndRoundTrips) {
  const PairingParams p = PairingParams::Default();
  EXPECT_OK(p.Validate());
  const auto back = PairingParams::FromJson(p.ToJson());
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->ToJson(), p.ToJson());
  EXPECT_EQ(back->DigestHex(), p.DigestHex());
  EXPECT_EQ(p.ToJson().at("curve"), "BLS12-381");
}

TEST(ParamsTest, RejectsBadParams) {
  PairingParams p = PairingParams::Default();
  p.generator_a = G1Point::Identity();
  EXPECT_EQ(ReasonOf(p.Validate()), ErrorReason::kConfigInvalid);

  p = PairingParams::Default();
  p.binding_tag = p.ueid_tag;
  EXPECT_EQ(ReasonOf(p.Validate()), ErrorReason::kConfigInvalid);

  auto j = PairingParams::Default().ToJson();
  j["curve"] = "BN254";
  EXPECT_EQ(ReasonOf(PairingParams::FromJson(j)), ErrorReason::kConfigInvalid);
  j = PairingParams::Default().ToJson();
  j["version"] = 2;
  EXPECT_EQ(ReasonOf(PairingParams::FromJson(j)), ErrorReason::kConfigInvalid);
  j = PairingParams::Default().ToJson();
  j.erase("tags");
  EXPECT_EQ(ReasonOf(PairingParams::FromJson(j)), ErrorReason::kMalformedInput);
}

TEST(HkdfTest, Rfc5869Case1) {
  const Bytes ikm(22, 0x0b);
  const Bytes salt = *HexDecode("000102030405060708090a0b0c");
  const Bytes info = *HexDecode("f0f1f2f3f4f5f6f7f8f9");
  EXPECT_EQ(HexEncode(HkdfSha256(ikm, salt, info, 42)),
            "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf"
            "34007208d5b887185865");
}

TEST(HkdfTest, Rfc5869Case3EmptySaltAndInfo) {
  const Bytes ikm(22, 0x0b);
  EXPECT_EQ(HexEncode(HkdfSha256(ikm, {}, {}, 42)),
            "8da4e775a563c18f715f802a063c5a31b8a11f5c5ee1879ec3454e5f3c738d2d"
            "9d201395faa4b61a96c8");
}

TEST(BytesTest, HexAndBase64Url) {
  EXPECT_EQ(HexEncode(AsBytes("\x01\xab")), "01ab");
  EXPECT_EQ(*HexDecode("01AB"), (Bytes{0x01, 0xab}));
  EXPECT_EQ(ReasonOf(HexDecode("abc")), ErrorReason::kMalformedInput);
  EXPECT_EQ(ReasonOf(HexDecode("zz")), ErrorReason::kMalformedInput);
  EXPECT_EQ(Base64UrlEncode(AsBytes("\xfb\xff")), "-_8");
  EXPECT_EQ(Base64UrlEncode(AsBytes("foobar")), "Zm9vYmFy");
}

}  // namespace
}  // namespace imsibc::pairing

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

#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "imsibc/core/hash.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/json_codec.h"
#include "imsibc/ibc/key_agreement.h"
#include "imsibc/ibc/key_wrap.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/ibc/signature.h"
#include "imsibc/pairing/pairing.h"
#include "test_util.h"

namespace imsibc::ibc {
namespace {

using pairing::Pair;
using pairing::PairingScope;
using pairing::SeededRng;
using testing::FailingRng;
using testing::MakeHonestBatch;
using testing::MakeHonestEntry;
using testing::RandomG1;
using testing::RandomScalar;
using testing::TestImpu;

class IbcTest : public ::testing::Test {
 protected:
  IbcTest() : rng_(1234, "ibc-test") {
    master_ = *PkgSetup(PairingParams::Default(), rng_);
  }
  const PairingParams& params() const { return master_.pub.params; }

  // Pairing-free recomputation of the signature from the master secrets.
  G1Point OracleSig(const UserPublicKey& pub, ByteSpan token) {
    const G1Point h = *pairing::HashToG1(pub.BindingInput(), params().binding_tag);
    Scalar d = *pairing::HashToScalar(token, params().scalar_tag);
    if (d.IsZero()) d = Scalar::One();
    return pub.kpub1 * master_.s1 + h * (d * master_.s2);
  }

  SeededRng rng_;
  MasterKeyPair master_;
};

TEST_F(IbcTest, SetupMatchesDefinition) {
  const G2Point& p = params().generator_b;
  EXPECT_EQ(master_.pub.ppub1, p * master_.s1);
  EXPECT_EQ(master_.pub.ppub2, p * master_.s2);
  EXPECT_FALSE(master_.s1.IsZero());
  EXPECT_FALSE(master_.s2.IsZero());
  EXPECT_EQ(Pair(params().generator_a, master_.pub.ppub1),
            Pair(params().generator_a * master_.s1, p));
}

TEST_F(IbcTest, SetupIsFreshPerSeed) {
  SeededRng other(99);
  const MasterKeyPair m2 = *PkgSetup(PairingParams::Default(), other);
  EXPECT_FALSE(m2.s1 == master_.s1);
  EXPECT_FALSE(m2.s2 == master_.s2);
}

TEST_F(IbcTest, SetupFailsOnRngFailure) {
  FailingRng bad;
  EXPECT_EQ(ReasonOf(PkgSetup(PairingParams::Default(), bad)),
            ErrorReason::kRngFailure);
}

TEST_F(IbcTest, ExtractedKeysSatisfyDefinitions) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  ASSERT_TRUE(k.r.has_value());
  ASSERT_TRUE(k.priv.has_value());
  EXPECT_EQ(k.pub.kpub1, params().generator_a * *k.r);
  EXPECT_EQ(k.priv->kpriv1, k.pub.kpub1 * master_.s1);
  const G1Point h =
      *pairing::HashToG1(Concat(k.pub.kpub1.ToBytes(), k.pub.kpub2),
                         params().binding_tag);
  EXPECT_EQ(k.priv->kpriv2, h * master_.s2);

  // Unmask Kpub2 by hand with the known r.
  const Bytes mask = HkdfSha256((master_.pub.ppub1 * *k.r).ToBytes(), {},
                                AsBytes("imsibc kpub2 mask v1"), kKpub2Size);
  Bytes ueid(kKpub2Size);
  for (size_t i = 0; i < kKpub2Size; ++i) ueid[i] = k.pub.kpub2[i] ^ mask[i];
  EXPECT_EQ(*G1Point::FromBytes(ueid), *UeidFor(params(), TestImpu(1)));
  EXPECT_EQ(*RecoverUeid(k.pub, *k.r, master_.pub), *UeidFor(params(), TestImpu(1)));
}

TEST_F(IbcTest, ExtractionIsOneTime) {
  const UserKeyMaterial a = *ExtractUserKeys(TestImpu(2), master_, rng_);
  const UserKeyMaterial b = *ExtractUserKeys(TestImpu(2), master_, rng_);
  EXPECT_FALSE(a.pub.kpub1 == b.pub.kpub1);
  EXPECT_FALSE(a.priv->kpriv1 == b.priv->kpriv1);
}

TEST_F(IbcTest, ExtractionRejectsBadInput) {
  EXPECT_EQ(ReasonOf(ExtractUserKeys("", master_, rng_)),
            ErrorReason::kInvalidArgument);
  FailingRng bad;
  EXPECT_EQ(ReasonOf(ExtractUserKeys(TestImpu(3), master_, bad)),
            ErrorReason::kRngFailure);
}

TEST_F(IbcTest, SignatureMatchesMasterSecretOracle) {
  for (int i = 0; i < 100; ++i) {
    const Bytes token = *rng_.Generate(16);
    const auto h = MakeHonestEntry(master_, TestImpu(i), token, rng_);
    EXPECT_EQ(h.entry.sig.ToBytes(), OracleSig(h.keys.pub, token).ToBytes());
  }
}

TEST_F(IbcTest, SignatureDeterministicPerToken) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(4), master_, rng_);
  const auto s1 = *SignOnce(k, params(), AsBytes("token-1"));
  const auto s1b = *SignOnce(k, params(), AsBytes("token-1"));
  const auto s2 = *SignOnce(k, params(), AsBytes("token-2"));
  EXPECT_EQ(s1.sig, s1b.sig);
  EXPECT_FALSE(s1.sig == s2.sig);
  EXPECT_EQ(s1.signed_token, ToBytes("token-1"));
}

TEST_F(IbcTest, SignRejectsMissingKeysAndEmptyToken) {
  UserKeyMaterial k = *ExtractUserKeys(TestImpu(5), master_, rng_);
  EXPECT_EQ(ReasonOf(SignOnce(k, params(), {})), ErrorReason::kInvalidArgument);
  k.priv.reset();
  EXPECT_EQ(ReasonOf(SignOnce(k, params(), AsBytes("t"))),
            ErrorReason::kKeyMissing);
}

TEST_F(IbcTest, TokenDigestNeverZero) {
  for (int i = 0; i < 100; ++i) {
    const Bytes t = *rng_.Generate(8);
    EXPECT_FALSE(TokenDigest(params(), t)->IsZero());
  }
}

TEST_F(IbcTest, VerifyOneCompleteAndSound) {
  for (int i = 0; i < 50; ++i) {
    const Bytes token = *rng_.Generate(16);
    const auto h = MakeHonestEntry(master_, TestImpu(i), token, rng_);
    const SignedEntry& e = h.entry;
    EXPECT_TRUE(*VerifyOne(e.pub, e.token, e.sig, master_.pub));
    // Perturb each component.
    EXPECT_FALSE(*VerifyOne(e.pub, e.token, e.sig + params().generator_a,
                            master_.pub));
    UserPublicKey pub = e.pub;
    pub.kpub1 = pub.kpub1 + params().generator_a;
    EXPECT_FALSE(*VerifyOne(pub, e.token, e.sig, master_.pub));
    pub = e.pub;
    pub.kpub2[i % kKpub2Size] ^= 0x01;
    EXPECT_FALSE(*VerifyOne(pub, e.token, e.sig, master_.pub));
    Bytes token2 = e.token;
    token2[i % token2.size()] ^= 0x80;
    EXPECT_FALSE(*VerifyOne(e.pub, token2, e.sig, master_.pub));
  }
}

TEST_F(IbcTest, VerifyOneUsesThreePairings) {
  const auto h = MakeHonestEntry(master_, TestImpu(1), ToBytes("rand"), rng_);
  PairingScope scope;
  ASSERT_TRUE(*VerifyOne(h.entry.pub, h.entry.token, h.entry.sig, master_.pub));
  EXPECT_EQ(scope.Elapsed(), 3u);
}

TEST_F(IbcTest, EncodedEntriesRejectMalformedDistinctly) {
  const auto h = MakeHonestEntry(master_, TestImpu(1), ToBytes("rand"), rng_);
  EncodedEntry enc{h.entry.pub.kpub1.ToBytes(),
                   Bytes(h.entry.pub.kpub2.begin(), h.entry.pub.kpub2.end()),
                   h.entry.token, h.entry.sig.ToBytes()};
  EXPECT_TRUE(*VerifyOneEncoded(enc, master_.pub));
  EncodedEntry bad = enc;
  bad.sig.resize(10);
  EXPECT_EQ(ReasonOf(VerifyOneEncoded(bad, master_.pub)),
            ErrorReason::kMalformedInput);
  bad = enc;
  bad.kpub2.pop_back();
  EXPECT_EQ(ReasonOf(VerifyOneEncoded(bad, master_.pub)),
            ErrorReason::kMalformedInput);

  std::vector<EncodedEntry> batch(5, enc);
  batch[3].kpub1[0] ^= 0xff;
  const auto decoded = DecodeBatch(batch);
  ASSERT_FALSE(decoded.ok());
  EXPECT_NE(std::string(decoded.status().message()).find("entry 3"),
            std::string::npos);
}

TEST_F(IbcTest, BatchOfOneAgreesWithVerifyOne) {
  for (int i = 0; i < 100; ++i) {
    auto h = MakeHonestEntry(master_, TestImpu(i), *rng_.Generate(16), rng_);
    if (i % 2) h.entry.sig = h.entry.sig + RandomG1(rng_);
    const bool one =
        *VerifyOne(h.entry.pub, h.entry.token, h.entry.sig, master_.pub);
    EXPECT_EQ(*VerifyBatch({&h.entry, 1}, master_.pub), one);
    EXPECT_EQ(*VerifyBatchRandomized({&h.entry, 1}, master_.pub, rng_), one);
  }
}

TEST_F(IbcTest, BatchDetectsSingleCorruption) {
  auto batch = MakeHonestBatch(master_, 100, rng_);
  EXPECT_TRUE(*VerifyBatch(batch, master_.pub));
  EXPECT_TRUE(*VerifyBatchRandomized(batch, master_.pub, rng_));
  batch[37].sig = batch[37].sig + params().generator_a;
  bool all = true;
  for (const auto& e : batch) {
    all = all && *VerifyOne(e.pub, e.token, e.sig, master_.pub);
  }
  EXPECT_FALSE(all);
  EXPECT_FALSE(*VerifyBatch(batch, master_.pub));
  EXPECT_FALSE(*VerifyBatchRandomized(batch, master_.pub, rng_));
}

TEST_F(IbcTest, BatchUsesThreePairingsRegardlessOfSize) {
  for (size_t n : {1u, 7u, 64u}) {
    const auto batch = MakeHonestBatch(master_, n, rng_);
    PairingScope scope;
    ASSERT_TRUE(*VerifyBatch(batch, master_.pub));
    EXPECT_EQ(scope.Elapsed(), 3u);
    PairingScope scope2;
    ASSERT_TRUE(*VerifyBatchRandomized(batch, master_.pub, rng_));
    EXPECT_EQ(scope2.Elapsed(), 3u);
  }
}

TEST_F(IbcTest, EmptyBatchIsAnError) {
  EXPECT_EQ(ReasonOf(VerifyBatch({}, master_.pub)), ErrorReason::kEmptyBatch);
  EXPECT_EQ(ReasonOf(VerifyBatchRandomized({}, master_.pub, rng_)),
            ErrorReason::kEmptyBatch);
}

TEST_F(IbcTest, CancellationPairFoolsOnlyNaiveBatch) {
  auto batch = MakeHonestBatch(master_, 2, rng_);
  const G1Point d = RandomG1(rng_);
  batch[0].sig = batch[0].sig + d;
  batch[1].sig = batch[1].sig - d;
  EXPECT_FALSE(*VerifyOne(batch[0].pub, batch[0].token, batch[0].sig, master_.pub));
  EXPECT_FALSE(*VerifyOne(batch[1].pub, batch[1].token, batch[1].sig, master_.pub));
  EXPECT_TRUE(*VerifyBatch(batch, master_.pub));
  EXPECT_FALSE(*VerifyBatchRandomized(batch, master_.pub, rng_));
}

TEST_F(IbcTest, RandomizedBatchPropagatesRngFailure) {
  const auto batch = MakeHonestBatch(master_, 2, rng_);
  FailingRng bad;
  EXPECT_EQ(ReasonOf(VerifyBatchRandomized(batch, master_.pub, bad)),
            ErrorReason::kRngFailure);
}

TEST_F(IbcTest, IbeRoundTrip) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  const Bytes btid = *rng_.Generate(64);
  const auto ct = *IbeEncrypt(k.pub.kpub1, master_.pub, btid, rng_);
  EXPECT_EQ(ct.v.size(), btid.size());
  EXPECT_EQ(*IbeDecrypt(k.priv->kpriv1, ct), btid);

  const auto ct2 = *IbeEncrypt(k.pub.kpub1, master_.pub, btid, rng_);
  EXPECT_FALSE(ct.u == ct2.u);
  EXPECT_NE(ct.v, ct2.v);
}

TEST_F(IbcTest, IbeRejectsOtherUsersAndTampering) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  const Bytes msg = ToBytes("abCDefGHijKLmnOP@bsf.ims.example.org");
  const auto ct = *IbeEncrypt(k.pub.kpub1, master_.pub, msg, rng_);
  for (int i = 0; i < 5; ++i) {
    const UserKeyMaterial other = *ExtractUserKeys(TestImpu(10 + i), master_, rng_);
    EXPECT_EQ(ReasonOf(IbeDecrypt(other.priv->kpriv1, ct)),
              ErrorReason::kDecryptFailed);
  }
  IbeCiphertext bad = ct;
  bad.v[0] ^= 1;
  EXPECT_EQ(ReasonOf(IbeDecrypt(k.priv->kpriv1, bad)), ErrorReason::kDecryptFailed);
  bad = ct;
  bad.tag[5] ^= 1;
  EXPECT_EQ(ReasonOf(IbeDecrypt(k.priv->kpriv1, bad)), ErrorReason::kDecryptFailed);
  EXPECT_EQ(ReasonOf(IbeEncrypt(k.pub.kpub1, master_.pub, {}, rng_)),
            ErrorReason::kInvalidArgument);
}

TEST_F(IbcTest, IbeMaskMatchesPairingIdentity) {
  // e(Kpriv1, U) = e(Kpub1, Ppub1)^t for the sender's t.
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  const Scalar t = RandomScalar(rng_);
  const G2Point u = params().generator_b * t;
  EXPECT_EQ(Pair(k.priv->kpriv1, u), Pair(k.pub.kpub1, master_.pub.ppub1).Pow(t));
}

TEST_F(IbcTest, IbeUsesOnePairingEachWay) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  PairingScope enc_scope;
  const auto ct = *IbeEncrypt(k.pub.kpub1, master_.pub, ToBytes("x"), rng_);
  EXPECT_EQ(enc_scope.Elapsed(), 1u);
  PairingScope dec_scope;
  ASSERT_TRUE(IbeDecrypt(k.priv->kpriv1, ct).ok());
  EXPECT_EQ(dec_scope.Elapsed(), 1u);
}

TEST_F(IbcTest, KeyWrapRoundTripAndTamper) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  const Bytes sk = *rng_.Generate(kSharedKeySize);
  const auto w = *WrapPrivateKeys(sk, *k.priv, rng_);
  EXPECT_EQ(*UnwrapPrivateKeys(sk, w), *k.priv);
  for (size_t bit = 0; bit < w.ciphertext.size() * 8; bit += 37) {
    WrappedPrivateKeys bad = w;
    bad.ciphertext[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_EQ(ReasonOf(UnwrapPrivateKeys(sk, bad)), ErrorReason::kUnwrapFailed);
  }
  WrappedPrivateKeys bad = w;
  bad.nonce[0] ^= 1;
  EXPECT_EQ(ReasonOf(UnwrapPrivateKeys(sk, bad)), ErrorReason::kUnwrapFailed);
  bad = w;
  bad.tag[15] ^= 1;
  EXPECT_EQ(ReasonOf(UnwrapPrivateKeys(sk, bad)), ErrorReason::kUnwrapFailed);
  EXPECT_EQ(ReasonOf(UnwrapPrivateKeys(Bytes(31), w)),
            ErrorReason::kInvalidArgument);
  EXPECT_EQ(ReasonOf(WrapPrivateKeys(Bytes(33), *k.priv, rng_)),
            ErrorReason::kInvalidArgument);
}

TEST_F(IbcTest, KeyWrapMatrixOverThreeSubscribers) {
  std::vector<Bytes> sks;
  std::vector<WrappedPrivateKeys> wrapped;
  std::vector<UserPrivateKey> privs;
  for (int i = 0; i < 3; ++i) {
    const UserKeyMaterial k = *ExtractUserKeys(TestImpu(i), master_, rng_);
    sks.push_back(*rng_.Generate(kSharedKeySize));
    wrapped.push_back(*WrapPrivateKeys(sks.back(), *k.priv, rng_));
    privs.push_back(*k.priv);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto r = UnwrapPrivateKeys(sks[i], wrapped[j]);
      if (i == j) {
        EXPECT_EQ(*r, privs[j]);
      } else {
        EXPECT_EQ(ReasonOf(r), ErrorReason::kUnwrapFailed);
      }
    }
  }
}

TEST_F(IbcTest, DhAgreementIsSymmetric) {
  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  const Bytes ctx = KsNafContext(TestImpu(1), "btid@bsf", "naf.example");
  for (int i = 0; i < 100; ++i) {
    const Scalar a = RandomScalar(rng_), b = RandomScalar(rng_);
    const G1Point ue = *DhShare(b, *DhShare(a, k.pub.kpub1));
    const G1Point naf = *DhShare(a, *DhShare(b, k.pub.kpub1));
    EXPECT_EQ(*DeriveKsNaf(ue, ctx), *DeriveKsNaf(naf, ctx));
  }
  EXPECT_EQ(*DhShare(Scalar::One(), *DhShare(Scalar::One(), k.pub.kpub1)),
            k.pub.kpub1);
}

TEST_F(IbcTest, KsNafBindsContext) {
  const G1Point p = RandomG1(rng_);
  const auto k1 = *DeriveKsNaf(p, KsNafContext("sip:a@x", "b@y", "naf1"));
  const auto k2 = *DeriveKsNaf(p, KsNafContext("sip:a@x", "b@y", "naf2"));
  // Length prefixes keep "ab"+"c" and "a"+"bc" apart.
  const auto k3 = *DeriveKsNaf(p, KsNafContext("ab", "c", "n"));
  const auto k4 = *DeriveKsNaf(p, KsNafContext("a", "bc", "n"));
  EXPECT_FALSE(k1 == k2);
  EXPECT_FALSE(k3 == k4);
  EXPECT_EQ(k1.Fingerprint().size(), 16u);
}

TEST_F(IbcTest, DhRejectsDegenerateInputs) {
  const G1Point p = RandomG1(rng_);
  EXPECT_EQ(ReasonOf(DhShare(Scalar::Zero(), p)), ErrorReason::kInvalidArgument);
  EXPECT_EQ(ReasonOf(DhShare(Scalar::One(), G1Point::Identity())),
            ErrorReason::kIdentityPoint);
  EXPECT_EQ(ReasonOf(DeriveKsNaf(G1Point::Identity(), {})),
            ErrorReason::kIdentityPoint);
}

TEST_F(IbcTest, JsonCodecsRoundTrip) {
  const auto mpk = *MasterPublicKeyFromJson(ToJson(master_.pub));
  EXPECT_EQ(mpk.ppub1, master_.pub.ppub1);
  EXPECT_EQ(mpk.ppub2, master_.pub.ppub2);

  const auto m = *MasterKeyPairFromJson(MasterSecretsToJson(master_), mpk);
  EXPECT_EQ(m.s1, master_.s1);
  EXPECT_EQ(m.s2, master_.s2);

  // Public file never carries the secrets.
  const std::string pub_dump = ToJson(master_.pub).dump();
  EXPECT_EQ(pub_dump.find(master_.s1.ToHex()), std::string::npos);
  EXPECT_EQ(pub_dump.find(master_.s2.ToHex()), std::string::npos);

  auto secrets = MasterSecretsToJson(master_);
  secrets["s1"] = master_.s2.ToHex();
  EXPECT_EQ(ReasonOf(MasterKeyPairFromJson(secrets, mpk)),
            ErrorReason::kConfigInvalid);

  const UserKeyMaterial k = *ExtractUserKeys(TestImpu(1), master_, rng_);
  EXPECT_EQ(*UserPublicKeyFromJson(ToJson(k.pub)), k.pub);

  const Bytes sk = *rng_.Generate(kSharedKeySize);
  const auto w = *WrapPrivateKeys(sk, *k.priv, rng_);
  const auto w2 = *WrappedPrivateKeysFromJson(ToJson(w));
  EXPECT_EQ(*UnwrapPrivateKeys(sk, w2), *k.priv);

  const auto ct = *IbeEncrypt(k.pub.kpub1, master_.pub, ToBytes("btid"), rng_);
  EXPECT_EQ(*IbeDecrypt(k.priv->kpriv1, *IbeCiphertextFromJson(ToJson(ct))),
            ToBytes("btid"));

  const auto sig = *SignOnce(k, params(), AsBytes("t"));
  const auto sig2 = *OneTimeSignatureFromJson(ToJson(sig));
  EXPECT_EQ(sig2.sig, sig.sig);
  EXPECT_EQ(sig2.signed_token, sig.signed_token);

  auto j = ToJson(k.pub);
  j["version"] = 7;
  EXPECT_EQ(ReasonOf(UserPublicKeyFromJson(j)), ErrorReason::kMalformedInput);
  j = ToJson(k.pub);
  j["kpub2"] = "00";
  EXPECT_EQ(ReasonOf(UserPublicKeyFromJson(j)), ErrorReason::kMalformedInput);
}

}  // namespace
}  // namespace imsibc::ibc

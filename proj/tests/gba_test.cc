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

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <thread>

#include "gtest/gtest.h"
#include "imsibc/core/bytes.h"
#include "imsibc/gba/bsf.h"
#include "imsibc/gba/hss.h"
#include "imsibc/gba/messages.h"
#include "imsibc/gba/naf.h"
#include "imsibc/gba/session_store.h"
#include "imsibc/gba/subscriber_store.h"
#include "imsibc/gba/user_equipment.h"
#include "imsibc/gba/wire.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/pairing/pairing.h"
#include "test_util.h"

namespace imsibc::gba {
namespace {

using ::imsibc::testing::TestImpu;
using pairing::SeededRng;

constexpr char kNafId[] = "naf.ims.example.org";

std::string Impi(int i) { return "user" + std::to_string(i) + "@ims.example.org"; }

// Synchronous router over one HSS, one BSF, one NAF and a set of UEs.
// Session i belongs to UE i - 1.
class TestNet {
 public:
  explicit TestNet(int n_ues, BsfConfig bsf_cfg = {}, uint64_t seed = 7)
      : root_(seed, "gba-test"),
        world_rng_(root_.Fork("world")),
        hss_rng_(root_.Fork("hss")),
        bsf_rng_(root_.Fork("bsf")),
        naf_rng_(root_.Fork("naf")) {
    master_ = *ibc::PkgSetup(pairing::PairingParams::Default(), world_rng_);
    for (int i = 0; i < n_ues; ++i) {
      SubscriberRecord r{Impi(i), TestImpu(i), *world_rng_.Generate(32), {}};
      r.guss.allowed_naf_ids = {kNafId};
      ids_.push_back(UeIdentity{r.impi, r.impu, r.sk});
      EXPECT_TRUE(store_.Add(r).ok());
    }
    hss_ = std::make_unique<Hss>(master_, store_, hss_rng_);
    if (bsf_cfg.naf_registry.empty()) bsf_cfg.naf_registry[kNafId] = kNafId;
    bsf_ = std::make_unique<Bsf>(bsf_cfg, master_.pub, bsf_rng_);
    naf_ = std::make_unique<Naf>(NafConfig{}, master_.pub.params.DigestHex(),
                                 naf_rng_);
    for (int i = 0; i < n_ues; ++i) AddUe(ids_[i]);
  }

  void AddUe(const UeIdentity& id) {
    ue_rngs_.push_back(std::make_unique<SeededRng>(
        root_.Fork("ue/" + std::to_string(ues_.size()))));
    ues_.push_back(
        std::make_unique<UserEquipment>(id, master_.pub, *ue_rngs_.back()));
  }

  absl::StatusOr<std::vector<ProtocolMessage>> Route(const ProtocolMessage& m) {
    trace_.push_back(m);
    switch (m.to()) {
      case Role::kUe:
        return ues_.at(OwnerOf(m.session_id))->Handle(m);
      case Role::kNaf:
        return naf_->Handle(m);
      case Role::kHss: {
        auto r = hss_->Handle(m);
        if (!r.ok()) return r.status();
        return std::vector<ProtocolMessage>{*r};
      }
      case Role::kBsf: {
        BsfOutput out = bsf_->Handle(m, now_);
        return Collect(std::move(out), m.session_id);
      }
    }
    return std::vector<ProtocolMessage>{};
  }

  // Runs until no message is in flight. `tap` may rewrite a message before
  // delivery. Failures are recorded per session.
  void Pump(std::deque<ProtocolMessage> q,
            const std::function<void(ProtocolMessage&)>& tap = nullptr) {
    while (!q.empty()) {
      ProtocolMessage m = std::move(q.front());
      q.pop_front();
      if (tap) tap(m);
      auto r = Route(m);
      if (!r.ok()) {
        failures_.emplace(m.session_id, r.status());
        continue;
      }
      for (auto& out : *r) q.push_back(std::move(out));
    }
  }

  size_t OwnerOf(uint64_t sid) const {
    auto it = owner_.find(sid);
    return it == owner_.end() ? sid - 1 : it->second;
  }

  void RunSession(uint64_t sid,
                  const std::function<void(ProtocolMessage&)>& tap = nullptr) {
    auto start = ues_.at(sid - 1)->Start(kNafId, sid);
    ASSERT_TRUE(start.ok()) << start.status();
    Pump({*start}, tap);
  }

  void FlushBsf() {
    BsfOutput out = bsf_->Flush();
    auto msgs = Collect(std::move(out), 0);
    Pump(std::deque<ProtocolMessage>(msgs->begin(), msgs->end()));
  }

  absl::StatusOr<std::vector<ProtocolMessage>> Collect(BsfOutput out,
                                                       uint64_t sid) {
    for (auto& f : out.failures) {
      if (f.session_id != sid) failures_.emplace(f.session_id, f.status);
    }
    for (auto& f : out.failures) {
      if (f.session_id == sid) return f.status;
    }
    return std::move(out.messages);
  }

  ErrorReason FailureOf(uint64_t sid) const {
    auto it = failures_.find(sid);
    return it == failures_.end() ? ErrorReason::kNone : ReasonOf(it->second);
  }

  std::vector<const ProtocolMessage*> Sent(uint64_t sid, int number) const {
    std::vector<const ProtocolMessage*> out;
    for (const auto& m : trace_) {
      if (m.session_id == sid && m.number() == number) out.push_back(&m);
    }
    return out;
  }

  SeededRng root_;
  SeededRng world_rng_, hss_rng_, bsf_rng_, naf_rng_;
  ibc::MasterKeyPair master_;
  SubscriberStore store_;
  std::vector<UeIdentity> ids_;
  std::unique_ptr<Hss> hss_;
  std::unique_ptr<Bsf> bsf_;
  std::unique_ptr<Naf> naf_;
  std::vector<std::unique_ptr<SeededRng>> ue_rngs_;
  std::vector<std::unique_ptr<UserEquipment>> ues_;
  std::vector<ProtocolMessage> trace_;
  std::multimap<uint64_t, absl::Status> failures_;
  std::map<uint64_t, size_t> owner_;
  uint64_t now_ = 0;
};

TEST(GbaFlowTest, FreshUeSendsMessageOneAndNafInitiatesBootstrap) {
  TestNet net(1);
  ASSERT_OK_AND_ASSIGN(ProtocolMessage m1, net.ues_[0]->Start(kNafId, 1));
  ASSERT_EQ(m1.number(), 1);
  EXPECT_EQ(m1.seq, 1u);
  EXPECT_FALSE(m1.As<ServiceRequest>()->gba_params.has_value());
  ASSERT_OK_AND_ASSIGN(auto r, net.naf_->Handle(m1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].number(), 2);
  EXPECT_EQ(r[0].seq, 2u);
  EXPECT_EQ(r[0].from(), Role::kNaf);
  EXPECT_EQ(r[0].to(), Role::kUe);
  EXPECT_EQ(r[0].As<BootstrapInitiation>()->naf_id, kNafId);
}

TEST(GbaFlowTest, FullHonestRunAgreesOnKsNaf) {
  TestNet net(1);
  net.RunSession(1);
  EXPECT_TRUE(net.failures_.empty());
  for (int n = 1; n <= kMessageCount; ++n) {
    EXPECT_EQ(net.Sent(1, n).size(), 1u) << "message " << n;
  }
  uint64_t seq = 0;
  for (const auto& m : net.trace_) {
    EXPECT_GT(m.seq, seq);
    seq = m.seq;
  }
  const auto ue_ks = net.ues_[0]->KeyFor(1);
  const auto naf_ks = net.naf_->KeyFor(1);
  ASSERT_TRUE(ue_ks && naf_ks);
  EXPECT_EQ(*ue_ks, *naf_ks);
  ASSERT_OK_AND_ASSIGN(auto s, net.bsf_->sessions().Get(1));
  EXPECT_EQ(s.state, SessionState::kComplete);
  EXPECT_EQ(s.history,
            (std::vector<SessionState>{SessionState::kChallenged,
                                       SessionState::kAuthenticated,
                                       SessionState::kKeyIssued,
                                       SessionState::kComplete}));
}

TEST(GbaFlowTest, BootstrappedUeSkipsToMessageNine) {
  TestNet net(1);
  net.RunSession(1);
  ASSERT_TRUE(net.ues_[0]->bootstrapped());
  ASSERT_OK_AND_ASSIGN(ProtocolMessage m, net.ues_[0]->Start(kNafId, 2));
  EXPECT_EQ(m.number(), 9);
  EXPECT_EQ(m.As<ServiceRequestGba>()->btid, net.ues_[0]->btid());
  net.owner_[2] = 0;
  // The second NAF contact reuses the bootstrap and still agrees on a key.
  net.Pump({m});
  EXPECT_TRUE(net.failures_.empty());
  ASSERT_TRUE(net.ues_[0]->KeyFor(2) && net.naf_->KeyFor(2));
  EXPECT_EQ(*net.ues_[0]->KeyFor(2), *net.naf_->KeyFor(2));
  EXPECT_NE(*net.ues_[0]->KeyFor(2), *net.ues_[0]->KeyFor(1));
}

TEST(GbaFlowTest, BtidHasDigestAtDomainShape) {
  TestNet net(1);
  net.RunSession(1);
  const std::string& btid = net.ues_[0]->btid();
  const auto at = btid.find('@');
  ASSERT_EQ(at, 16u) << btid;
  EXPECT_EQ(btid.substr(at + 1), "bsf.ims.example.org");
  for (char c : btid.substr(0, at)) {
    EXPECT_TRUE(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_');
  }
}

TEST(GbaHssTest, UnknownCoupleIsRefused) {
  TestNet net(2);
  // Legitimate IMPU under someone else's IMPI, and an unknown IMPI.
  EXPECT_EQ(ReasonOf(net.hss_->Issue(Impi(1), TestImpu(0))), ErrorReason::kUnknownCouple);
  EXPECT_EQ(ReasonOf(net.hss_->Issue("mallory@rogue.example.net", TestImpu(0))),
            ErrorReason::kUnknownCouple);
  EXPECT_EQ(net.hss_->issued_count(), 0u);

  net.AddUe(UeIdentity{"mallory@rogue.example.net", TestImpu(0),
                       *net.world_rng_.Generate(32)});
  net.RunSession(3);
  EXPECT_EQ(net.FailureOf(3), ErrorReason::kUnknownCouple);
  EXPECT_TRUE(net.Sent(3, 5).empty());
  EXPECT_TRUE(net.Sent(3, 6).empty());
}

TEST(GbaHssTest, RegisteredSubscriberGetsWrappedKeys) {
  TestNet net(1);
  ASSERT_OK_AND_ASSIGN(AuthVector av, net.hss_->Issue(Impi(0), TestImpu(0)));
  EXPECT_EQ(av.pkg_params_ref, net.master_.pub.params.DigestHex());
  ASSERT_OK_AND_ASSIGN(auto priv,
                       ibc::UnwrapPrivateKeys(net.ids_[0].sk, av.wrapped_priv));
  EXPECT_EQ(priv.kpriv1, av.user_pub.kpub1 * net.master_.s1);
}

TEST(GbaHssTest, ConcurrentRequestsGetDistinctRands) {
  TestNet net(1);
  constexpr int kThreads = 4, kPer = 8;
  std::vector<std::vector<Rand>> got(kThreads);
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kPer; ++i) {
        auto av = net.hss_->Issue(Impi(0), TestImpu(0));
        if (av.ok()) got[t].push_back(av->rand);
      }
    });
  }
  for (auto& th : threads) th.join();
  std::set<Rand> all;
  for (const auto& v : got) all.insert(v.begin(), v.end());
  EXPECT_EQ(all.size(), static_cast<size_t>(kThreads * kPer));
  EXPECT_EQ(net.hss_->issued_count(), all.size());
}

TEST(GbaHssTest, TwoSessionsSameImpuHaveDistinctRands) {
  TestNet net(1);
  net.AddUe(net.ids_[0]);
  net.RunSession(1);
  net.RunSession(2);
  ASSERT_EQ(net.Sent(1, 6).size(), 1u);
  ASSERT_EQ(net.Sent(2, 6).size(), 1u);
  EXPECT_NE(net.Sent(1, 6)[0]->As<UnauthorizedChallenge>()->rand,
            net.Sent(2, 6)[0]->As<UnauthorizedChallenge>()->rand);
}

TEST(GbaUeTest, TamperedWrappedKeysAbortWithoutSignature) {
  for (int which = 0; which < 3; ++which) {
    TestNet net(1);
    net.RunSession(1, [which](ProtocolMessage& m) {
      auto* c = std::get_if<UnauthorizedChallenge>(&m.body);
      if (c == nullptr) return;
      if (which == 0) c->wrapped.ciphertext[3] ^= 1;
      if (which == 1) c->wrapped.tag[0] ^= 1;
      if (which == 2) c->wrapped.nonce[0] ^= 1;
    });
    EXPECT_EQ(net.FailureOf(1), ErrorReason::kUnwrapFailed) << which;
    EXPECT_TRUE(net.Sent(1, 7).empty());
    EXPECT_FALSE(net.ues_[0]->keys().has_value());
  }
}

TEST(GbaUeTest, OtherSubscribersSkAborts) {
  TestNet net(3);
  // Oracle: the 3x3 unwrap matrix succeeds exactly on the diagonal.
  std::vector<AuthVector> avs;
  for (int i = 0; i < 3; ++i) avs.push_back(*net.hss_->Issue(Impi(i), TestImpu(i)));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(ibc::UnwrapPrivateKeys(net.ids_[j].sk, avs[i].wrapped_priv).ok(), i == j);
    }
  }
  // UE 0 holding subscriber 1's sk.
  net.AddUe(UeIdentity{Impi(0), TestImpu(0), net.ids_[1].sk});
  net.RunSession(4);
  EXPECT_EQ(net.FailureOf(4), ErrorReason::kUnwrapFailed);
  EXPECT_TRUE(net.Sent(4, 7).empty());
}

TEST(GbaUeTest, ChallengeResponseVerifiesUnderEqOne) {
  TestNet net(1);
  net.RunSession(1);
  const auto* c = net.Sent(1, 6)[0]->As<UnauthorizedChallenge>();
  const auto* r = net.Sent(1, 7)[0]->As<ChallengeResponse>();
  EXPECT_EQ(r->rand, c->rand);
  EXPECT_EQ(r->impu, TestImpu(0));
  ASSERT_OK_AND_ASSIGN(bool ok, ibc::VerifyOne(c->pub, r->rand, r->sig1, net.master_.pub));
  EXPECT_TRUE(ok);
}

TEST(GbaBsfTest, ImmediateModeIssuesDecryptableBtid) {
  TestNet net(1);
  net.RunSession(1);
  const auto* ok = net.Sent(1, 8)[0]->As<BootstrapOk>();
  ASSERT_OK_AND_ASSIGN(Bytes plain,
                       ibc::IbeDecrypt(net.ues_[0]->keys()->priv->kpriv1, ok->btid));
  EXPECT_EQ(std::string(plain.begin(), plain.end()), net.ues_[0]->btid());
}

TEST(GbaBsfTest, BtidUndecryptableUnderOtherUsersKeys) {
  TestNet net(4);
  for (uint64_t s = 1; s <= 4; ++s) net.RunSession(s);
  for (uint64_t s = 1; s <= 4; ++s) {
    const auto* ok = net.Sent(s, 8)[0]->As<BootstrapOk>();
    for (uint64_t o = 1; o <= 4; ++o) {
      auto plain = ibc::IbeDecrypt(net.ues_[o - 1]->keys()->priv->kpriv1, ok->btid);
      EXPECT_EQ(plain.ok(), s == o);
    }
  }
}

TEST(GbaBsfTest, ReplayedChallengeResponseRejectedWithoutPairings) {
  TestNet net(1);
  net.RunSession(1);
  ASSERT_EQ(net.Sent(1, 7).size(), 1u);
  const ProtocolMessage replay = *net.Sent(1, 7)[0];
  pairing::PairingScope scope;
  BsfOutput out = net.bsf_->Handle(replay, 0);
  EXPECT_EQ(scope.Elapsed(), 0u);
  ASSERT_EQ(out.failures.size(), 1u);
  EXPECT_EQ(ReasonOf(out.failures[0].status), ErrorReason::kReplay);
  EXPECT_TRUE(out.messages.empty());
  // The original session stays complete.
  EXPECT_EQ(net.bsf_->sessions().Get(1)->state, SessionState::kComplete);
}

TEST(GbaBsfTest, ReplayAcrossSessionsRejected) {
  TestNet net(2);
  net.RunSession(1);
  // Session 2 is challenged, then receives session 1's old response.
  ProtocolMessage stolen = *net.Sent(1, 7)[0];
  net.RunSession(2, [&](ProtocolMessage& m) {
    if (m.session_id == 2 && m.number() == 7) {
      stolen.session_id = 2;
      stolen.seq = m.seq;
      m = stolen;
    }
  });
  EXPECT_EQ(net.FailureOf(2), ErrorReason::kReplay);
  EXPECT_TRUE(net.Sent(2, 8).empty());
}

TEST(GbaBsfTest, ForgedRandEchoIsNotTrusted) {
  TestNet net(1);
  net.RunSession(1, [](ProtocolMessage& m) {
    if (auto* r = std::get_if<ChallengeResponse>(&m.body)) r->rand[0] ^= 1;
  });
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kRandMismatch);
  EXPECT_TRUE(net.Sent(1, 8).empty());
}

TEST(GbaBsfTest, TamperedSig1FailsSession) {
  TestNet net(1);
  net.RunSession(1, [&](ProtocolMessage& m) {
    if (auto* r = std::get_if<ChallengeResponse>(&m.body)) {
      r->sig1 = r->sig1 + G1Point::Generator();
    }
  });
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kSignatureInvalid);
  EXPECT_TRUE(net.Sent(1, 8).empty());
  ASSERT_OK_AND_ASSIGN(auto s, net.bsf_->sessions().Get(1));
  EXPECT_EQ(s.state, SessionState::kFailed);
  EXPECT_EQ(s.failure, "signature-invalid");
}

TEST(GbaBsfTest, WindowOfFiftyWithOneForgery) {
  BsfConfig cfg;
  cfg.batch_mode = true;
  cfg.window_size = 64;
  TestNet net(50, cfg);
  constexpr uint64_t kForged = 18;
  for (uint64_t s = 1; s <= 50; ++s) {
    net.RunSession(s, [&](ProtocolMessage& m) {
      if (m.session_id != kForged) return;
      if (auto* r = std::get_if<ChallengeResponse>(&m.body)) {
        r->sig1 = r->sig1 + G1Point::Generator();
      }
    });
  }
  ASSERT_EQ(net.bsf_->pending(), 50u);
  for (uint64_t s = 1; s <= 50; ++s) EXPECT_TRUE(net.Sent(s, 8).empty());

  // Oracle: a per-entry sweep over the window contents.
  std::set<size_t> oracle;
  for (uint64_t s = 1; s <= 50; ++s) {
    const auto* c = net.Sent(s, 6)[0]->As<UnauthorizedChallenge>();
    const auto* r = net.Sent(s, 7)[0]->As<ChallengeResponse>();
    if (!*ibc::VerifyOne(c->pub, r->rand, r->sig1, net.master_.pub)) oracle.insert(s - 1);
  }
  ASSERT_EQ(oracle, std::set<size_t>{kForged - 1});

  net.FlushBsf();
  ASSERT_EQ(net.bsf_->flushes().size(), 1u);
  const FlushRecord& rec = net.bsf_->flushes()[0];
  EXPECT_EQ(rec.entries, 50u);
  EXPECT_EQ(std::set<size_t>(rec.rejected.begin(), rec.rejected.end()), oracle);
  size_t authenticated = 0, failed = 0;
  for (const auto& s : net.bsf_->sessions().Snapshot()) {
    if (s.state == SessionState::kFailed) {
      ++failed;
      EXPECT_EQ(s.session_id, kForged);
    } else if (s.state == SessionState::kComplete) {
      ++authenticated;
    }
  }
  EXPECT_EQ(authenticated, 49u);
  EXPECT_EQ(failed, 1u);
  EXPECT_EQ(net.FailureOf(kForged), ErrorReason::kSignatureInvalid);
  // Bisection spends far fewer pairings than 3 per entry.
  EXPECT_LT(rec.pairings, 3u * 50u);
}

TEST(GbaBsfTest, HonestWindowFlushesInOneBatchCheck) {
  BsfConfig cfg;
  cfg.batch_mode = true;
  cfg.window_size = 8;
  TestNet net(8, cfg);
  for (uint64_t s = 1; s <= 8; ++s) net.RunSession(s);
  // The eighth response fills the window and flushes it inline.
  ASSERT_EQ(net.bsf_->flushes().size(), 1u);
  EXPECT_EQ(net.bsf_->flushes()[0].pairings, 3u);
  EXPECT_EQ(net.bsf_->flushes()[0].batch_checks, 1u);
  EXPECT_TRUE(net.failures_.empty());
  for (uint64_t s = 1; s <= 8; ++s) {
    EXPECT_EQ(*net.ues_[s - 1]->KeyFor(s), *net.naf_->KeyFor(s));
  }
}

TEST(GbaBsfTest, WindowDeadline) {
  BsfConfig cfg;
  cfg.batch_mode = true;
  cfg.window_deadline_ms = 50;
  TestNet net(2, cfg);
  EXPECT_FALSE(net.bsf_->NextDeadline().has_value());
  net.now_ = 100;
  net.RunSession(1);
  ASSERT_TRUE(net.bsf_->NextDeadline().has_value());
  EXPECT_EQ(*net.bsf_->NextDeadline(), 150u);
  net.now_ = 120;
  net.RunSession(2);
  EXPECT_EQ(*net.bsf_->NextDeadline(), 150u);
  net.FlushBsf();
  EXPECT_FALSE(net.bsf_->NextDeadline().has_value());
}

TEST(GbaBsfTest, NafAbsentFromRegistryIsDenied) {
  BsfConfig cfg;
  cfg.naf_registry["other.ims.example.org"] = "other.ims.example.org";
  TestNet net(1, cfg);
  net.RunSession(1);
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kNafNotAuthorized);
  EXPECT_TRUE(net.Sent(1, 11).empty());
  EXPECT_FALSE(net.naf_->KeyFor(1).has_value());
  EXPECT_FALSE(net.ues_[0]->KeyFor(1).has_value());
}

TEST(GbaBsfTest, HostnameMismatchIsDenied) {
  BsfConfig cfg;
  cfg.naf_registry[kNafId] = "elsewhere.example.org";
  TestNet net(1, cfg);
  net.RunSession(1);
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kNafNotAuthorized);
  EXPECT_TRUE(net.Sent(1, 11).empty());
}

TEST(GbaBsfTest, GussForbiddingNafIsServiceDenied) {
  TestNet net(1);
  // Re-enroll with an empty allow-list.
  SubscriberStore store;
  SubscriberRecord r{Impi(0), TestImpu(0), net.ids_[0].sk, {}};
  ASSERT_OK(store.Add(r));
  net.hss_ = std::make_unique<Hss>(net.master_, store, net.hss_rng_);
  net.RunSession(1);
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kServiceDenied);
  EXPECT_TRUE(net.Sent(1, 11).empty());
  EXPECT_FALSE(net.naf_->KeyFor(1).has_value());
}

TEST(GbaBsfTest, Sig2OverDifferentBtidRejected) {
  TestNet net(1);
  std::optional<G1Point> forged;
  Bytes other = ToBytes("AAAAAAAAAAAAAAAA@bsf.ims.example.org");
  net.RunSession(1, [&](ProtocolMessage& m) {
    if (auto* r = std::get_if<ServiceRequestGba>(&m.body)) {
      const auto& keys = *net.ues_[0]->keys();
      forged = ibc::SignOnce(keys, net.master_.pub.params, other)->sig;
      r->sig2 = *forged;
    }
  });
  ASSERT_TRUE(forged.has_value());
  // Oracle: the single check over the real B-TID rejects the forged Sig2.
  const auto& pub = net.ues_[0]->keys()->pub;
  EXPECT_FALSE(*ibc::VerifyOne(pub, AsBytes(net.ues_[0]->btid()), *forged, net.master_.pub));
  EXPECT_TRUE(*ibc::VerifyOne(pub, other, *forged, net.master_.pub));
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kSignatureInvalid);
  EXPECT_TRUE(net.Sent(1, 11).empty());
  EXPECT_EQ(net.bsf_->sessions().Get(1)->state, SessionState::kFailed);
}

TEST(GbaBsfTest, UnknownBtidRejected) {
  TestNet net(1);
  net.RunSession(1, [](ProtocolMessage& m) {
    if (auto* r = std::get_if<ServiceRequestGba>(&m.body)) r->btid = "nope@bsf.ims.example.org";
  });
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kUnknownBtid);
}

TEST(GbaNafTest, RejectsUseGbaFalseAndIdentityShare) {
  TestNet net(1);
  net.RunSession(1, [](ProtocolMessage& m) {
    if (auto* r = std::get_if<ServiceRequestGba>(&m.body)) r->use_gba = false;
  });
  EXPECT_EQ(net.FailureOf(1), ErrorReason::kGbaNotSupported);

  ASSERT_OK_AND_ASSIGN(ProtocolMessage m9, net.ues_[0]->Start(kNafId, 2));
  std::get<ServiceRequestGba>(m9.body).a_kpub1 = G1Point::Identity();
  EXPECT_EQ(ReasonOf(net.naf_->Handle(m9)), ErrorReason::kIdentityPoint);
}

TEST(GbaNafTest, MessageOneWithParamsOrWrongNafRejected) {
  TestNet net(1);
  ProtocolMessage m{1, 1, ServiceRequest{kNafId, std::string("gba-me")}};
  EXPECT_FALSE(net.naf_->Handle(m).ok());
  m.body = ServiceRequest{"other.example.org", std::nullopt};
  EXPECT_FALSE(net.naf_->Handle(m).ok());
}

// Every in/out message survives JSON, framing and trace lines.
TEST(GbaWireTest, AllTwelveMessagesRoundTrip) {
  TestNet net(1);
  net.RunSession(1);
  ASSERT_EQ(net.trace_.size(), 12u);
  std::string trace;
  Bytes stream;
  for (const auto& m : net.trace_) {
    ASSERT_OK_AND_ASSIGN(ProtocolMessage back, MessageFromJson(ToJson(m)));
    EXPECT_EQ(TraceLine(back), TraceLine(m));
    EXPECT_EQ(back.number(), m.number());
    const Bytes frame = EncodeFrame(m);
    stream.insert(stream.end(), frame.begin(), frame.end());
    trace += TraceLine(m) + "\n";
  }
  const nlohmann::json j = ToJson(net.trace_[0]);
  for (const char* k : {"session_id", "seq", "type", "body"}) EXPECT_TRUE(j.contains(k)) << k;

  size_t pos = 0;
  for (const auto& m : net.trace_) {
    size_t used = 0;
    ASSERT_OK_AND_ASSIGN(ProtocolMessage back,
                         DecodeFrame(ByteSpan(stream).subspan(pos), &used));
    EXPECT_EQ(TraceLine(back), TraceLine(m));
    pos += used;
  }
  EXPECT_EQ(pos, stream.size());

  ASSERT_OK_AND_ASSIGN(auto parsed, ParseTrace(trace));
  ASSERT_EQ(parsed.size(), 12u);
  for (size_t i = 0; i < 12; ++i) EXPECT_EQ(TraceLine(parsed[i]), TraceLine(net.trace_[i]));
}

TEST(GbaWireTest, MalformedInputsRejected) {
  TestNet net(1);
  net.RunSession(1);
  const nlohmann::json good = ToJson(net.trace_[6]);

  auto with = [&](const std::function<void(nlohmann::json&)>& f) {
    nlohmann::json j = good;
    f(j);
    return MessageFromJson(j);
  };
  EXPECT_EQ(ReasonOf(with([](auto& j) { j["type"] = "bogus"; })), ErrorReason::kMalformedInput);
  EXPECT_EQ(ReasonOf(with([](auto& j) { j["from"] = "NAF"; })), ErrorReason::kMalformedInput);
  EXPECT_EQ(ReasonOf(with([](auto& j) { j.erase("body"); })), ErrorReason::kMalformedInput);
  EXPECT_EQ(ReasonOf(with([](auto& j) { j["body"]["rand"] = "zz"; })),
            ErrorReason::kMalformedInput);
  EXPECT_FALSE(with([](auto& j) { j["body"]["sig1"] = std::string(96, 'f'); }).ok());

  Bytes frame = EncodeFrame(net.trace_[6]);
  size_t used = 0;
  EXPECT_FALSE(DecodeFrame(ByteSpan(frame).first(frame.size() - 1), &used).ok());
  EXPECT_FALSE(DecodeFrame(ByteSpan(frame).first(3), &used).ok());
  Bytes huge = {0x7f, 0xff, 0xff, 0xff, '{', '}'};
  EXPECT_FALSE(DecodeFrame(huge, &used).ok());

  const std::string bad = TraceLine(net.trace_[0]) + "\n{not json\n";
  auto parsed = ParseTrace(bad);
  ASSERT_FALSE(parsed.ok());
  EXPECT_NE(parsed.status().message().find("line 2"), std::string_view::npos)
      << parsed.status();
}

TEST(GbaSessionStoreTest, TransitionTable) {
  using S = SessionState;
  const std::vector<S> all = {S::kChallenged, S::kAuthenticated, S::kKeyIssued,
                              S::kComplete, S::kFailed};
  const std::set<std::pair<S, S>> allowed = {
      {S::kChallenged, S::kAuthenticated}, {S::kAuthenticated, S::kKeyIssued},
      {S::kKeyIssued, S::kComplete},       {S::kChallenged, S::kFailed},
      {S::kAuthenticated, S::kFailed},     {S::kKeyIssued, S::kFailed}};
  for (S a : all) {
    for (S b : all) {
      EXPECT_EQ(IsAllowedTransition(a, b), allowed.count({a, b}) > 0)
          << SessionStateName(a) << " -> " << SessionStateName(b);
    }
  }
}

// Exhaustive enumeration of store operation sequences up to length 6.
TEST(GbaSessionStoreTest, ExhaustiveSequencesNeverSkipAuthenticated) {
  using S = SessionState;
  const std::vector<S> ops = {S::kAuthenticated, S::kKeyIssued, S::kComplete,
                              S::kFailed, S::kChallenged};
  size_t sequences = 0;
  std::vector<S> path;
  std::function<void(int)> walk = [&](int depth) {
    ++sequences;
    SessionStore store;
    BootstrappingSession fresh;
    fresh.session_id = 1;
    ASSERT_OK(store.Create(fresh));
    S state = S::kChallenged;
    for (S op : path) {
      const bool ok = store.Advance(1, op).ok();
      EXPECT_EQ(ok, IsAllowedTransition(state, op));
      if (ok) state = op;
      EXPECT_EQ(store.Get(1)->state, state);
    }
    const auto s = *store.Get(1);
    if (s.state == S::kComplete) {
      EXPECT_NE(std::find(s.history.begin(), s.history.end(), S::kAuthenticated),
                s.history.end());
    }
    for (size_t i = 1; i < s.history.size(); ++i) {
      EXPECT_TRUE(IsAllowedTransition(s.history[i - 1], s.history[i]));
    }
    if (depth == 0) return;
    for (S op : ops) {
      path.push_back(op);
      walk(depth - 1);
      path.pop_back();
    }
  };
  walk(6);
  EXPECT_EQ(sequences, size_t{1} + 5 + 25 + 125 + 625 + 3125 + 15625);
}

TEST(GbaSessionStoreTest, RandConsumedAtomically) {
  SessionStore store;
  BootstrappingSession s;
  s.session_id = 1;
  s.issued_rand[0] = 9;
  s.history = {SessionState::kChallenged};
  ASSERT_OK(store.Create(s));
  std::atomic<int> accepted{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      if (store.ConsumeRand(1, s.issued_rand).ok()) ++accepted;
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(accepted.load(), 1);
  EXPECT_TRUE(store.RandConsumed(s.issued_rand));
  EXPECT_EQ(ReasonOf(store.ConsumeRand(1, s.issued_rand)), ErrorReason::kReplay);
}

TEST(GbaSessionStoreTest, BtidUnique) {
  SessionStore store;
  for (uint64_t id : {1, 2}) {
    BootstrappingSession s;
    s.session_id = id;
    s.history = {SessionState::kChallenged};
    ASSERT_OK(store.Create(s));
  }
  EXPECT_TRUE(*store.BindBtid(1, "x@d"));
  EXPECT_FALSE(*store.BindBtid(2, "x@d"));
  EXPECT_EQ(store.FindByBtid("x@d")->session_id, 1u);
  EXPECT_EQ(ReasonOf(store.FindByBtid("y@d")), ErrorReason::kUnknownBtid);
}

// Every sequence over {3, 5, 7, forged 7, 10} of length <= 5 delivered to a
// fresh BSF. Payloads come from one honest run and are valid in context.
TEST(GbaBsfTest, ExhaustiveSmallTracesKeepStateMachineSafe) {
  TestNet honest(1, {}, 99);
  honest.RunSession(1);
  ASSERT_TRUE(honest.failures_.empty());
  std::vector<ProtocolMessage> alphabet = {*honest.Sent(1, 3)[0], *honest.Sent(1, 5)[0],
                                           *honest.Sent(1, 7)[0], *honest.Sent(1, 7)[0],
                                           *honest.Sent(1, 10)[0]};
  auto& forged = std::get<ChallengeResponse>(alphabet[3].body);
  forged.sig1 = forged.sig1 + G1Point::Generator();

  size_t traces = 0, completed = 0;
  std::vector<int> seq;
  std::function<void()> walk = [&] {
    if (!seq.empty()) {
      ++traces;
      SeededRng rng(99, "gba-test");
      SeededRng bsf_rng = rng.Fork("bsf");
      BsfConfig cfg;
      cfg.naf_registry[kNafId] = kNafId;
      Bsf bsf(cfg, honest.master_.pub, bsf_rng);
      int msg8 = 0, msg11 = 0;
      for (int i : seq) {
        BsfOutput out = bsf.Handle(alphabet[i], 0);
        for (const auto& m : out.messages) {
          if (m.number() == 8) ++msg8;
          if (m.number() == 11) {
            ++msg11;
            EXPECT_EQ(msg8, 1) << "message 11 before a B-TID was issued";
          }
        }
      }
      // Message 10 may legitimately repeat once Complete (a second NAF).
      EXPECT_LE(msg8, 1);
      if (msg11 > 0) EXPECT_EQ(msg8, 1);
      for (const auto& s : bsf.sessions().Snapshot()) {
        for (size_t i = 1; i < s.history.size(); ++i) {
          EXPECT_TRUE(IsAllowedTransition(s.history[i - 1], s.history[i]));
        }
        if (s.state == SessionState::kComplete) {
          ++completed;
          EXPECT_EQ(s.history[1], SessionState::kAuthenticated);
        }
      }
    }
    if (seq.size() == 5) return;
    for (int i = 0; i < static_cast<int>(alphabet.size()); ++i) {
      seq.push_back(i);
      walk();
      seq.pop_back();
    }
  };
  walk();
  EXPECT_EQ(traces, 5u + 25 + 125 + 625 + 3125);
  EXPECT_GT(completed, 0u);
}

TEST(GbaSubscriberStoreTest, IdentityShapes) {
  EXPECT_TRUE(IsNai("alice@ims.example.org"));
  EXPECT_FALSE(IsNai("alice"));
  EXPECT_FALSE(IsNai("sip:alice@ims.example.org"));
  EXPECT_FALSE(IsNai("alice@localhost"));
  EXPECT_TRUE(IsSipUri("sip:alice@ims.example.org"));
  EXPECT_FALSE(IsSipUri("alice@ims.example.org"));
  EXPECT_FALSE(IsSipUri("sip:"));
}

TEST(GbaSubscriberStoreTest, DuplicatesAndJson) {
  SeededRng rng(5);
  SubscriberStore store;
  SubscriberRecord r{Impi(0), TestImpu(0), *rng.Generate(32), {}};
  r.guss.allowed_naf_ids = {kNafId};
  r.guss.attributes = {{"profile", "gold"}};
  ASSERT_OK(store.Add(r));
  EXPECT_EQ(ReasonOf(store.Add(r)), ErrorReason::kDuplicateCouple);
  // Same IMPU under a second IMPI is a distinct couple.
  SubscriberRecord r2 = r;
  r2.impi = Impi(1);
  ASSERT_OK(store.Add(r2));
  EXPECT_EQ(store.FindByImpu(TestImpu(0)).size(), 2u);

  SubscriberRecord bad = r;
  bad.impi = Impi(2);
  bad.sk.pop_back();
  EXPECT_FALSE(store.Add(bad).ok());
  bad = r;
  bad.impu = "user@ims.example.org";
  EXPECT_FALSE(store.Add(bad).ok());

  ASSERT_OK_AND_ASSIGN(SubscriberStore back, SubscriberStore::FromJson(store.ToJson()));
  ASSERT_EQ(back.size(), 2u);
  ASSERT_OK_AND_ASSIGN(const SubscriberRecord* got, back.Find(Impi(0), TestImpu(0)));
  EXPECT_EQ(got->sk, r.sk);
  EXPECT_EQ(got->guss, r.guss);
  EXPECT_EQ(ReasonOf(back.Find(Impi(3), TestImpu(0))), ErrorReason::kUnknownCouple);

  nlohmann::json j = store.ToJson();
  j["version"] = 2;
  EXPECT_FALSE(SubscriberStore::FromJson(j).ok());
  j = store.ToJson();
  j["subscribers"].push_back(j["subscribers"][0]);
  EXPECT_EQ(ReasonOf(SubscriberStore::FromJson(j)), ErrorReason::kDuplicateCouple);
}

TEST(GbaMessagesTest, RolesAndNames) {
  const std::vector<std::pair<Role, Role>> legs = {
      {Role::kUe, Role::kNaf},  {Role::kNaf, Role::kUe},  {Role::kUe, Role::kBsf},
      {Role::kBsf, Role::kHss}, {Role::kHss, Role::kBsf}, {Role::kBsf, Role::kUe},
      {Role::kUe, Role::kBsf},  {Role::kBsf, Role::kUe},  {Role::kUe, Role::kNaf},
      {Role::kNaf, Role::kBsf}, {Role::kBsf, Role::kNaf}, {Role::kNaf, Role::kUe}};
  for (int n = 1; n <= kMessageCount; ++n) {
    EXPECT_EQ(SenderOf(n), legs[n - 1].first) << n;
    EXPECT_EQ(ReceiverOf(n), legs[n - 1].second) << n;
    EXPECT_EQ(MessageNumberFromName(MessageTypeName(n)), n);
  }
  EXPECT_FALSE(MessageNumberFromName("nope").has_value());
}

}  // namespace
}  // namespace imsibc::gba

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

#include <map>

#include "gtest/gtest.h"
#include "imsibc/gba/wire.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/signature.h"
#include "imsibc/sim/simulator.h"
#include "test_util.h"

namespace imsibc::sim {
namespace {

using gba::ProtocolMessage;

SimConfig Config(size_t n, AdversaryKind adv = AdversaryKind::kNone) {
  SimConfig c;
  c.n_ues = n;
  c.rng_seed = 42;
  c.adversary = adv;
  return c;
}

SimResult Simulate(const SimConfig& cfg) {
  auto r = RunScenario(cfg);
  EXPECT_TRUE(r.ok()) << r.status();
  return r.ok() ? *std::move(r) : SimResult{};
}

std::vector<ProtocolMessage> Parse(const SimResult& r) {
  auto msgs = gba::ParseTrace(r.TranscriptText());
  EXPECT_TRUE(msgs.ok()) << msgs.status();
  return msgs.ok() ? *msgs : std::vector<ProtocolMessage>{};
}

const ProtocolMessage* Find(const std::vector<ProtocolMessage>& msgs,
                            uint64_t sid, int number) {
  for (const auto& m : msgs) {
    if (m.session_id == sid && m.number() == number) return &m;
  }
  return nullptr;
}

void ExpectCompleteExcept(const SimReport& rep, std::set<uint64_t> except) {
  for (const auto& o : rep.outcomes) {
    if (except.count(o.session_id)) continue;
    EXPECT_TRUE(o.complete) << "session " << o.session_id << " " << o.reason;
    EXPECT_TRUE(o.ks_match) << "session " << o.session_id;
  }
}

TEST(SimTest, HonestTenUes) {
  const SimResult r = Simulate(Config(10));
  const SimReport& rep = r.report;
  ASSERT_EQ(rep.outcomes.size(), 10u);
  EXPECT_EQ(rep.complete, 10u);
  EXPECT_EQ(rep.failed, 0u);
  EXPECT_EQ(rep.complete + rep.failed, rep.config.n_ues);
  ExpectCompleteExcept(rep, {});
  for (const auto& o : rep.outcomes) {
    EXPECT_EQ(o.messages, 12u);
    EXPECT_EQ(o.ks_fingerprint.size(), 16u);
  }
  EXPECT_EQ(rep.messages, 120u);
  EXPECT_TRUE(rep.bsf_records_keyless);
  // Per UE: Sig1 and Sig2 at three pairings each, one for B-TID encryption
  // and one for its decryption.
  EXPECT_EQ(rep.pairings_total, 10u * 8);
  EXPECT_TRUE(rep.adversary.mutations.empty());
}

TEST(SimTest, BatchModeHonestCompletes) {
  SimConfig c = Config(10);
  c.batch_mode = true;
  c.window_size = 4;
  const SimResult r = Simulate(c);
  EXPECT_EQ(r.report.complete, 10u);
  ExpectCompleteExcept(r.report, {});
  // Two full windows and one deadline flush of the remaining two.
  EXPECT_EQ(r.report.flushes, 3u);
  EXPECT_EQ(r.report.pairings_flush, 9u);
  EXPECT_EQ(r.report.batch_checks, 3u);
}

TEST(SimTest, DeadlineFlushWithStaggeredStarts) {
  SimConfig c = Config(6);
  c.batch_mode = true;
  c.window_size = 32;
  c.window_deadline_ms = 50;
  c.start_spacing_ms = 20;
  const SimResult r = Simulate(c);
  EXPECT_EQ(r.report.complete, 6u);
  EXPECT_GE(r.report.flushes, 2u);
}

TEST(SimTest, MitmImpostorRejectedAtHssLookup) {
  const SimResult r = Simulate(Config(10, AdversaryKind::kMitmImpostor));
  const SimReport& rep = r.report;
  ASSERT_EQ(rep.adversary.rogue.size(), 1u);
  const SessionOutcome& rogue = rep.adversary.rogue[0];
  EXPECT_FALSE(rogue.complete);
  EXPECT_EQ(rogue.reason, "unknown-couple");
  EXPECT_EQ(rogue.failed_at, "HSS");
  EXPECT_EQ(rogue.failed_message, 4);
  EXPECT_EQ(rogue.impu, rep.outcomes[0].impu);
  EXPECT_EQ(rep.complete, 10u);
  ExpectCompleteExcept(rep, {});
  ASSERT_EQ(rep.adversary.mutations.size(), 1u);
  // No challenge ever went out for the impostor.
  const auto msgs = Parse(r);
  EXPECT_EQ(Find(msgs, rogue.session_id, 5), nullptr);
  EXPECT_EQ(Find(msgs, rogue.session_id, 6), nullptr);
}

TEST(SimTest, ReplayRejectedWithoutPairingsAndOriginalUnaffected) {
  const SimResult r = Simulate(Config(10, AdversaryKind::kReplayAttacker));
  const SimReport& rep = r.report;
  ASSERT_EQ(rep.adversary.injected.size(), 1u);
  const InjectedOutcome& inj = rep.adversary.injected[0];
  EXPECT_FALSE(inj.accepted);
  EXPECT_EQ(inj.reason, "replay");
  EXPECT_EQ(inj.message, 7);
  EXPECT_EQ(inj.pairings, 0u);
  EXPECT_EQ(rep.complete, 10u);
  ExpectCompleteExcept(rep, {});

  // Trace inspection: the target's RAND appears in two message-7 lines but
  // only one message 8 was issued for it.
  const auto msgs = Parse(r);
  int m7 = 0, m8 = 0;
  for (const auto& m : msgs) {
    if (m.session_id != rep.outcomes[0].session_id) continue;
    m7 += m.number() == 7;
    m8 += m.number() == 8;
  }
  EXPECT_EQ(m7, 2);
  EXPECT_EQ(m8, 1);
}

TEST(SimTest, ReplayAlsoRejectedInBatchMode) {
  SimConfig c = Config(4, AdversaryKind::kReplayAttacker);
  c.batch_mode = true;
  c.window_size = 2;
  const SimResult r = Simulate(c);
  ASSERT_EQ(r.report.adversary.injected.size(), 1u);
  EXPECT_EQ(r.report.adversary.injected[0].reason, "replay");
  EXPECT_EQ(r.report.adversary.injected[0].pairings, 0u);
  EXPECT_EQ(r.report.complete, 4u);
}

TEST(SimTest, TamperedSig1FailsOnlyTarget) {
  SimConfig c = Config(10, AdversaryKind::kSignatureTamperer);
  c.inject_point = 7;
  c.target_ue = 3;
  const SimResult r = Simulate(c);
  const SimReport& rep = r.report;
  ASSERT_EQ(rep.adversary.mutations.size(), 1u);
  EXPECT_EQ(rep.adversary.mutations[0].point, 7);
  const SessionOutcome& t = rep.outcomes[3];
  EXPECT_FALSE(t.complete);
  EXPECT_EQ(t.reason, "signature-invalid");
  EXPECT_EQ(t.failed_at, "BSF");
  EXPECT_EQ(t.failed_message, 7);
  EXPECT_EQ(rep.complete, 9u);
  ExpectCompleteExcept(rep, {t.session_id});
}

TEST(SimTest, TamperedSig2FailsOnlyTarget) {
  SimConfig c = Config(10, AdversaryKind::kSignatureTamperer);
  c.inject_point = 9;
  const SimResult r = Simulate(c);
  const SimReport& rep = r.report;
  const SessionOutcome& t = rep.outcomes[0];
  EXPECT_FALSE(t.complete);
  EXPECT_EQ(t.reason, "signature-invalid");
  EXPECT_EQ(t.failed_message, 10);
  EXPECT_EQ(rep.complete, 9u);
  ExpectCompleteExcept(rep, {t.session_id});
  ASSERT_EQ(r.bsf_sessions.size(), 10u);
  EXPECT_EQ(r.bsf_sessions[0].state, gba::SessionState::kFailed);
}

TEST(SimTest, TamperedSig1InBatchIsIsolated) {
  SimConfig c = Config(10, AdversaryKind::kSignatureTamperer);
  c.batch_mode = true;
  c.window_size = 10;
  c.target_ue = 6;
  const SimResult r = Simulate(c);
  EXPECT_EQ(r.report.complete, 9u);
  EXPECT_EQ(r.report.outcomes[6].reason, "signature-invalid");
  ExpectCompleteExcept(r.report, {7});
}

class CancellationTest : public ::testing::TestWithParam<bool> {};

TEST_P(CancellationTest, NaivePassesRandomizedRejects) {
  const bool randomized = GetParam();
  SimConfig c = Config(6, AdversaryKind::kBatchCancellationPair);
  c.batch_mode = true;
  c.randomized_batch = randomized;
  c.window_size = 6;
  const SimResult r = Simulate(c);
  const SimReport& rep = r.report;
  ASSERT_EQ(rep.adversary.mutations.size(), 2u);

  // Oracle: each tampered Sig1 alone fails the single check yet the pair cancels in an
  // unweighted sum.
  const auto msgs = Parse(r);
  std::vector<ibc::SignedEntry> pair;
  for (uint64_t sid : {1, 2}) {
    const auto* m6 = Find(msgs, sid, 6)->As<gba::UnauthorizedChallenge>();
    const auto* m7 = Find(msgs, sid, 7)->As<gba::ChallengeResponse>();
    pair.push_back({m6->pub, Bytes(m7->rand.begin(), m7->rand.end()), m7->sig1});
  }
  pairing::SeededRng world_rng(42, "world");
  ASSERT_OK_AND_ASSIGN(World world, MakeWorld(6, world_rng));
  const ibc::MasterKeyPair& master = world.master;
  for (const auto& e : pair) {
    EXPECT_FALSE(*ibc::VerifyOne(e.pub, e.token, e.sig, master.pub));
  }
  EXPECT_TRUE(*ibc::VerifyBatch(pair, master.pub));
  pairing::SeededRng wr(3);
  EXPECT_FALSE(*ibc::VerifyBatchRandomized(pair, master.pub, wr));

  if (randomized) {
    EXPECT_EQ(rep.outcomes[0].reason, "signature-invalid");
    EXPECT_EQ(rep.outcomes[1].reason, "signature-invalid");
    EXPECT_EQ(rep.complete, 4u);
    ExpectCompleteExcept(rep, {1, 2});
  } else {
    // The naive batch accepts the forged pair outright.
    EXPECT_EQ(rep.complete, 6u);
    EXPECT_EQ(rep.batch_checks, 1u);
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, CancellationTest, ::testing::Bool(),
                         [](const auto& info) {
                           return info.param ? "Randomized" : "Naive";
                         });

TEST(SimTest, NoneAdversaryMatchesHonestRun) {
  SimConfig honest = Config(5);
  SimConfig none = Config(5, AdversaryKind::kNone);
  none.target_ue = 2;
  const SimResult a = Simulate(honest);
  const SimResult b = Simulate(none);
  EXPECT_EQ(a.TranscriptText(), b.TranscriptText());
  EXPECT_EQ(a.report.transcript_digest, b.report.transcript_digest);
}

TEST(SimTest, SameSeedSameTranscript) {
  for (AdversaryKind k : {AdversaryKind::kNone, AdversaryKind::kMitmImpostor,
                          AdversaryKind::kReplayAttacker}) {
    const SimResult a = Simulate(Config(8, k));
    const SimResult b = Simulate(Config(8, k));
    EXPECT_EQ(a.TranscriptText(), b.TranscriptText()) << AdversaryName(k);
    EXPECT_EQ(a.report.transcript_digest, b.report.transcript_digest);
    for (size_t i = 0; i < a.report.outcomes.size(); ++i) {
      EXPECT_EQ(a.report.outcomes[i].ks_fingerprint, b.report.outcomes[i].ks_fingerprint);
    }
  }
  SimConfig other = Config(8);
  other.rng_seed = 43;
  EXPECT_NE(Simulate(Config(8)).TranscriptText(), Simulate(other).TranscriptText());
}

TEST(SimTest, AdversariesNeverChangeUntargetedOutcomes) {
  const SimResult honest = Simulate(Config(6));
  for (AdversaryKind k : {AdversaryKind::kMitmImpostor, AdversaryKind::kReplayAttacker,
                          AdversaryKind::kSignatureTamperer}) {
    SimConfig c = Config(6, k);
    c.target_ue = 2;
    const SimResult r = Simulate(c);
    ASSERT_EQ(r.report.outcomes.size(), 6u);
    for (size_t i = 0; i < 6; ++i) {
      if (k == AdversaryKind::kSignatureTamperer && i == 2) continue;
      EXPECT_EQ(r.report.outcomes[i].complete, honest.report.outcomes[i].complete)
          << AdversaryName(k) << " ue " << i;
      EXPECT_TRUE(r.report.outcomes[i].ks_match);
    }
  }
}

TEST(SimTest, FailuresCarryTaxonomyReasons) {
  SimConfig c = Config(3, AdversaryKind::kSignatureTamperer);
  c.hss_reachable = true;
  std::vector<SimResult> runs = {Simulate(c), Simulate(Config(3, AdversaryKind::kMitmImpostor))};
  SimConfig down = Config(3);
  down.hss_reachable = false;
  runs.push_back(Simulate(down));
  for (const auto& r : runs) {
    for (const auto& o : r.report.outcomes) {
      if (!o.complete) EXPECT_TRUE(ReasonFromName(o.reason).has_value()) << o.reason;
    }
    for (const auto& o : r.report.adversary.rogue) {
      EXPECT_TRUE(ReasonFromName(o.reason).has_value()) << o.reason;
    }
  }
}

TEST(SimTest, HssUnreachableIsTransportError) {
  SimConfig c = Config(3);
  c.hss_reachable = false;
  const SimResult r = Simulate(c);
  EXPECT_EQ(r.report.failed, 3u);
  for (const auto& o : r.report.outcomes) {
    EXPECT_EQ(o.reason, "transport");
    EXPECT_EQ(o.failed_at, "HSS");
    EXPECT_EQ(CategoryOf(*ReasonFromName(o.reason)), ErrorCategory::kTransport);
  }
}

TEST(SimTest, EavesdropperCannotOpenOtherBtids) {
  const SimResult r = Simulate(Config(4));
  const auto msgs = Parse(r);
  ASSERT_EQ(r.ue_private_keys.size(), 4u);
  for (uint64_t s = 1; s <= 4; ++s) {
    const auto* ok = Find(msgs, s, 8)->As<gba::BootstrapOk>();
    for (uint64_t o = 1; o <= 4; ++o) {
      ASSERT_TRUE(r.ue_private_keys[o - 1].has_value());
      EXPECT_EQ(ibc::IbeDecrypt(r.ue_private_keys[o - 1]->kpriv1, ok->btid).ok(), s == o);
    }
  }
}

TEST(SimTest, BsfRecordsHoldNoSessionKeys) {
  const SimResult r = Simulate(Config(5));
  EXPECT_TRUE(r.report.bsf_records_keyless);
  for (const auto& s : r.bsf_sessions) {
    const std::string dump = gba::ToJson(s).dump();
    for (const char* k : {"\"ks\"", "\"ks_naf\"", "\"ck\"", "\"ik\"", "\"sk\"", "kpriv"}) {
      EXPECT_EQ(dump.find(k), std::string::npos) << k;
    }
  }
}

TEST(SimTest, InjectionPointValidation) {
  SimConfig c = Config(3, AdversaryKind::kSignatureTamperer);
  c.inject_point = 3;
  EXPECT_EQ(ReasonOf(RunScenario(c)), ErrorReason::kInjectionOutOfRange);
  c.inject_point = 13;
  EXPECT_EQ(ReasonOf(RunScenario(c)), ErrorReason::kInjectionOutOfRange);
  c = Config(3);
  c.inject_point = 7;
  EXPECT_EQ(ReasonOf(c.Validate()), ErrorReason::kInjectionOutOfRange);
  c = Config(3, AdversaryKind::kReplayAttacker);
  c.inject_point = 9;
  EXPECT_EQ(ReasonOf(c.Validate()), ErrorReason::kInjectionOutOfRange);
  c = Config(1, AdversaryKind::kBatchCancellationPair);
  c.batch_mode = true;
  EXPECT_EQ(ReasonOf(c.Validate()), ErrorReason::kConfigInvalid);
  c = Config(0);
  EXPECT_EQ(ReasonOf(c.Validate()), ErrorReason::kConfigInvalid);
  c = Config(3);
  c.randomized_batch = true;
  EXPECT_EQ(ReasonOf(c.Validate()), ErrorReason::kConfigInvalid);
  c = Config(3);
  c.target_ue = 3;
  c.adversary = AdversaryKind::kMitmImpostor;
  EXPECT_FALSE(c.Validate().ok());
}

TEST(SimTest, ConfigJsonRoundTrip) {
  SimConfig c = Config(17, AdversaryKind::kSignatureTamperer);
  c.batch_mode = true;
  c.randomized_batch = true;
  c.window_size = 5;
  c.window_deadline_ms = 12;
  c.inject_point = 9;
  c.target_ue = 4;
  c.latency_ms = 3;
  ASSERT_OK_AND_ASSIGN(SimConfig back, SimConfig::FromJson(c.ToJson()));
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.injection_point(), 9);

  nlohmann::json j = c.ToJson();
  j["version"] = 7;
  EXPECT_FALSE(SimConfig::FromJson(j).ok());
  j = c.ToJson();
  j["adversary"] = "ddos";
  EXPECT_FALSE(SimConfig::FromJson(j).ok());
  j = c.ToJson();
  j["n_ues"] = -1;
  EXPECT_FALSE(SimConfig::FromJson(j).ok());
}

TEST(SimTest, ReportJsonShape) {
  const SimResult r = Simulate(Config(3, AdversaryKind::kReplayAttacker));
  const nlohmann::json j = r.report.ToJson();
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["outcomes"].size(), 3u);
  EXPECT_EQ(j["summary"]["complete"], 3);
  EXPECT_EQ(j["adversary"]["kind"], "replay-attacker");
  EXPECT_EQ(j["adversary"]["point"], 7);
  EXPECT_TRUE(j["pairings"].contains("total"));
  for (const char* k : {"setup", "bootstrap", "naf", "batch_flush"}) {
    EXPECT_TRUE(j["wall_ms"].contains(k)) << k;
  }
  EXPECT_EQ(j["summary"]["transcript_digest"].get<std::string>().size(), 64u);
}

TEST(SimTest, RunFlowsWithSecondNaf) {
  pairing::SeededRng rng(9, "world");
  ASSERT_OK_AND_ASSIGN(World w, MakeWorld(2, rng));
  w.nafs.push_back(gba::NafConfig{"video.ims.example.org", "video.ims.example.org", true});
  auto flows = FlowsFor(w);
  flows[1].naf_id = "video.ims.example.org";
  ASSERT_OK_AND_ASSIGN(SimResult r, RunFlows(Config(2), w, flows));
  // GUSS only allows the default NAF.
  EXPECT_TRUE(r.report.outcomes[0].complete);
  EXPECT_FALSE(r.report.outcomes[1].complete);
  EXPECT_EQ(r.report.outcomes[1].reason, "service-denied");
}

}  // namespace
}  // namespace imsibc::sim

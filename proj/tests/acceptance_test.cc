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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "imsibc/bench/bench.h"
#include "imsibc/gba/wire.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/ibc/signature.h"
#include "imsibc/pairing/pairing.h"
#include "imsibc/pairing/rng.h"
#include "imsibc/sim/simulator.h"

namespace imsibc {
namespace {

using ibc::MasterKeyPair;
using ibc::SignedEntry;
using pairing::G1Point;
using pairing::PairingScope;
using pairing::Scalar;
using pairing::SeededRng;

// Collects failure notes; a criterion passes when there are none.
struct Check {
  std::vector<std::string> notes;
  void Expect(bool ok, const std::string& what) {
    if (!ok && notes.size() < 10) notes.push_back(what);
  }
  template <typename T>
  T Must(absl::StatusOr<T> v, const std::string& what) {
    if (!v.ok()) {
      notes.push_back(what + ": " + std::string(v.status().message()));
      return T{};
    }
    return *std::move(v);
  }
};

std::string Impu(size_t i) { return "sip:user" + std::to_string(i) + "@ims.example.org"; }

SignedEntry Honest(const MasterKeyPair& m, size_t i, Check& c, SeededRng& rng) {
  const Bytes token = c.Must(rng.Generate(16), "rng");
  const auto keys = c.Must(ibc::ExtractUserKeys(Impu(i), m, rng), "extract");
  const auto sig = c.Must(ibc::SignOnce(keys, m.pub.params, token), "sign");
  return {keys.pub, token, sig.sig};
}

// One component changed: sig, Kpub1, Kpub2 or token.
SignedEntry Perturb(const MasterKeyPair& m, SignedEntry e, size_t kind, SeededRng& rng) {
  const G1Point delta = m.pub.params.generator_a * *Scalar::Random(rng);
  const uint8_t bit = static_cast<uint8_t>(1u << (rng.Generate(1)->at(0) % 8));
  switch (kind % 4) {
    case 0:
      e.sig = e.sig + delta;
      break;
    case 1:
      e.pub.kpub1 = e.pub.kpub1 + delta;
      break;
    case 2:
      e.pub.kpub2[rng.Generate(1)->at(0) % e.pub.kpub2.size()] ^= bit;
      break;
    default:
      e.token[rng.Generate(1)->at(0) % e.token.size()] ^= bit;
      break;
  }
  return e;
}

bool One(const SignedEntry& e, const MasterKeyPair& m, Check& c) {
  return c.Must(ibc::VerifyOne(e.pub, e.token, e.sig, m.pub), "verify_one");
}

MasterKeyPair Master(uint64_t seed) {
  SeededRng rng(seed, "acceptance/pkg");
  return *ibc::PkgSetup(pairing::PairingParams::Default(), rng);
}

Check Criterion1() {
  Check c;
  const MasterKeyPair m = Master(1);
  SeededRng rng(1, "acceptance/c1");
  size_t honest_ok = 0, perturbed_rejected = 0;
  for (size_t i = 0; i < 1000; ++i) {
    const SignedEntry e = Honest(m, i, c, rng);
    honest_ok += One(e, m, c);
    perturbed_rejected += !One(Perturb(m, e, i, rng), m, c);
  }
  c.Expect(honest_ok == 1000, std::to_string(honest_ok) + "/1000 honest verified");
  c.Expect(perturbed_rejected == 1000,
           std::to_string(perturbed_rejected) + "/1000 perturbations rejected");
  return c;
}

Check Criterion2() {
  Check c;
  const MasterKeyPair m = Master(2);
  SeededRng rng(2, "acceptance/c2");
  const size_t sizes[] = {1, 10, 100};
  size_t agree = 0, corrupted = 0;
  for (size_t b = 0; b < 200; ++b) {
    const size_t n = sizes[b % 3];
    std::vector<SignedEntry> batch;
    for (size_t i = 0; i < n; ++i) batch.push_back(Honest(m, b * 100 + i, c, rng));
    if ((b / 3) % 2 == 1) {
      const size_t at = rng.Generate(1)->at(0) % n;
      batch[at] = Perturb(m, batch[at], b / 6, rng);
      ++corrupted;
    }
    bool all = true;
    for (const auto& e : batch) all = One(e, m, c) && all;
    const bool batched = c.Must(ibc::VerifyBatch(batch, m.pub), "verify_batch");
    if (batched == all) ++agree;
  }
  c.Expect(agree == 200, std::to_string(agree) + "/200 batches agree");
  c.Expect(corrupted > 0, "no corrupted batches generated");
  return c;
}

Check Criterion3() {
  Check c;
  const MasterKeyPair m = Master(3);
  SeededRng rng(3, "acceptance/c3");
  std::vector<SignedEntry> batch;
  for (size_t i = 0; i < 1000; ++i) batch.push_back(Honest(m, i, c, rng));
  {
    PairingScope scope;
    c.Expect(c.Must(ibc::VerifyBatch(batch, m.pub), "verify_batch"), "batch rejected");
    c.Expect(scope.Elapsed() == 3, "verify_batch(1000) used " +
                                       std::to_string(scope.Elapsed()) + " pairings");
  }
  PairingScope scope;
  for (const auto& e : batch) One(e, m, c);
  c.Expect(scope.Elapsed() == 3000,
           "1000 verify_one used " + std::to_string(scope.Elapsed()) + " pairings");
  return c;
}

Check Criterion4() {
  Check c;
  const auto rows = c.Must(bench::BenchBatch({1000}), "bench");
  if (rows.empty()) return c;
  const auto& r = rows[0];
  std::ostringstream s;
  s << "sequential " << r.sequential_ms << " ms, batch " << r.batch_ms << " ms, ratio "
    << r.ratio();
  std::cout << "  n=1000: " << s.str() << "\n";
  c.Expect(r.ratio() <= 0.5, s.str());
  return c;
}

Check Criterion5() {
  Check c;
  const auto p = c.Must(bench::BenchPrimitives(200), "bench");
  std::ostringstream s;
  s << "T_v " << p.t_verify_one.median_ms << " ms vs 3 t_bp + t_mtp + t_mul = " << p.Composed()
    << " ms (t_bp " << p.t_bp.median_ms << ", t_mtp " << p.t_mtp.median_ms << ", t_mul "
    << p.t_mul.median_ms << "), error " << p.ComposedError();
  std::cout << "  " << s.str() << "\n";
  c.Expect(p.ComposedError() <= 0.25, s.str());
  return c;
}

sim::SimConfig Config(size_t n, sim::AdversaryKind k = sim::AdversaryKind::kNone) {
  sim::SimConfig cfg;
  cfg.n_ues = n;
  cfg.rng_seed = 42;
  cfg.adversary = k;
  return cfg;
}

Check Criterion6() {
  Check c;
  const auto r = c.Must(sim::RunScenario(Config(100)), "simulate");
  const auto& rep = r.report;
  c.Expect(rep.outcomes.size() == 100 && rep.complete == 100,
           std::to_string(rep.complete) + "/100 sessions complete");
  size_t agree = 0;
  for (const auto& o : rep.outcomes) agree += o.complete && o.ks_match;
  c.Expect(agree == 100, std::to_string(agree) + "/100 UE/NAF pairs hold identical Ks-NAF");
  c.Expect(rep.bsf_records_keyless, "a BSF session record holds key material");
  c.Expect(r.bsf_sessions.size() == 100, "expected 100 BSF session records");
  return c;
}

const gba::ProtocolMessage* Find(const std::vector<gba::ProtocolMessage>& msgs, uint64_t sid,
                                 int number) {
  for (const auto& m : msgs) {
    if (m.session_id == sid && m.number() == number) return &m;
  }
  return nullptr;
}

Check Criterion7() {
  Check c;
  auto sub = [&](const std::string& name, bool ok) {
    std::cout << "  " << name << ": " << (ok ? "ok" : "FAILED") << "\n";
    c.Expect(ok, name);
  };

  {
    const auto r = c.Must(sim::RunScenario(Config(10, sim::AdversaryKind::kMitmImpostor)), "mitm");
    const auto& rogue = r.report.adversary.rogue;
    sub("mitm impostor rejected at HSS couple lookup",
        rogue.size() == 1 && !rogue[0].complete && rogue[0].reason == "unknown-couple" &&
            rogue[0].failed_at == "HSS" && r.report.complete == 10);
  }
  {
    const auto r =
        c.Must(sim::RunScenario(Config(10, sim::AdversaryKind::kReplayAttacker)), "replay");
    const auto& inj = r.report.adversary.injected;
    bool ok = !inj.empty();
    for (const auto& i : inj) ok = ok && !i.accepted && i.reason == "replay" && i.pairings == 0;
    sub("replayed (RAND, Sig1) rejected with zero pairings", ok && r.report.complete == 10);
  }
  for (int point : {7, 9}) {
    auto cfg = Config(10, sim::AdversaryKind::kSignatureTamperer);
    cfg.inject_point = point;
    cfg.target_ue = 3;
    const auto r = c.Must(sim::RunScenario(cfg), "tamper");
    const auto& o = r.report.outcomes;
    sub(std::string("tampered ") + (point == 7 ? "Sig1" : "Sig2") + " rejected",
        o.size() == 10 && !o[3].complete && o[3].reason == "signature-invalid" &&
            r.report.complete == 9);
  }
  {
    const auto r = c.Must(sim::RunScenario(Config(10)), "eavesdrop");
    const auto msgs = c.Must(gba::ParseTrace(r.TranscriptText()), "trace");
    size_t own = 0, foreign_opened = 0, tried = 0;
    for (const auto& m : msgs) {
      const auto* ok = m.As<gba::BootstrapOk>();
      if (ok == nullptr) continue;
      for (size_t u = 0; u < r.ue_private_keys.size(); ++u) {
        const bool opened = ibc::IbeDecrypt(r.ue_private_keys[u]->kpriv1, ok->btid).ok();
        if (u + 1 == m.session_id) {
          own += opened;
        } else {
          ++tried;
          foreign_opened += opened;
        }
      }
    }
    sub("B-TID undecryptable under any other user's Kpriv1 (" + std::to_string(tried) + " tries)",
        own == 10 && tried == 90 && foreign_opened == 0);
  }
  {
    auto cfg = Config(6, sim::AdversaryKind::kBatchCancellationPair);
    cfg.batch_mode = true;
    cfg.window_size = 6;
    const auto naive = c.Must(sim::RunScenario(cfg), "naive");
    cfg.randomized_batch = true;
    const auto weighted = c.Must(sim::RunScenario(cfg), "randomized");

    const auto msgs = c.Must(gba::ParseTrace(naive.TranscriptText()), "trace");
    std::vector<SignedEntry> pair;
    for (uint64_t sid : {1, 2}) {
      const auto* m6 = Find(msgs, sid, 6);
      const auto* m7 = Find(msgs, sid, 7);
      if (m6 == nullptr || m7 == nullptr) break;
      const auto* ch = m6->As<gba::UnauthorizedChallenge>();
      const auto* resp = m7->As<gba::ChallengeResponse>();
      pair.push_back({ch->pub, Bytes(resp->rand.begin(), resp->rand.end()), resp->sig1});
    }
    SeededRng world_rng(cfg.rng_seed, "world");
    const auto world = c.Must(sim::MakeWorld(6, world_rng), "world");
    SeededRng wr(7, "acceptance/weights");
    const bool both_forged = pair.size() == 2 && !One(pair[0], world.master, c) &&
                             !One(pair[1], world.master, c);
    const bool naive_sum = pair.size() == 2 && c.Must(ibc::VerifyBatch(pair, world.master.pub), "b");
    const bool weighted_sum =
        pair.size() == 2 &&
        c.Must(ibc::VerifyBatchRandomized(pair, world.master.pub, wr), "rb");
    const auto& no = naive.report.outcomes;
    const auto& wo = weighted.report.outcomes;
    sub("cancellation pair passes naive batch",
        naive_sum && no.size() == 6 && no[0].complete && no[1].complete);
    sub("cancellation pair fails randomized batch and per-entry fallback",
        both_forged && !weighted_sum && wo.size() == 6 && !wo[0].complete && !wo[1].complete &&
            wo[0].reason == "signature-invalid" && weighted.report.complete == 4);
  }
  return c;
}

// Pairing-free: Kpub1 s1 + h(token) H(Kpub1 || Kpub2) s2.
Check Criterion8() {
  Check c;
  const MasterKeyPair m = Master(8);
  const auto& params = m.pub.params;
  SeededRng rng(8, "acceptance/c8");
  size_t equal = 0;
  for (size_t i = 0; i < 100; ++i) {
    const Bytes token = c.Must(rng.Generate(16 + i % 17), "rng");
    const auto keys = c.Must(ibc::ExtractUserKeys(Impu(i), m, rng), "extract");
    const auto sig = c.Must(ibc::SignOnce(keys, params, token), "sign");
    PairingScope scope;
    const G1Point h = c.Must(pairing::HashToG1(keys.pub.BindingInput(), params.binding_tag), "h");
    Scalar d = c.Must(pairing::HashToScalar(token, params.scalar_tag), "d");
    if (d.IsZero()) d = Scalar::One();
    const G1Point oracle = keys.pub.kpub1 * m.s1 + h * (d * m.s2);
    c.Expect(scope.Elapsed() == 0, "oracle used a pairing");
    equal += oracle.ToBytes() == sig.sig.ToBytes();
  }
  c.Expect(equal == 100, std::to_string(equal) + "/100 signatures match the oracle");
  return c;
}

Check Criterion9() {
  Check c;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("imsibc_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto cfgs = {Config(20), Config(12, sim::AdversaryKind::kReplayAttacker),
               Config(12, sim::AdversaryKind::kBatchCancellationPair)};
  size_t k = 0;
  for (sim::SimConfig cfg : cfgs) {
    if (cfg.adversary == sim::AdversaryKind::kBatchCancellationPair) cfg.batch_mode = true;
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const auto r = c.Must(sim::RunScenario(cfg), "simulate");
      const fs::path p = dir / ("transcript_" + std::to_string(k) + "_" + std::to_string(run));
      std::ofstream(p, std::ios::binary) << r.TranscriptText();
      std::ifstream in(p, std::ios::binary);
      bytes[run].assign(std::istreambuf_iterator<char>(in), {});
    }
    c.Expect(!bytes[0].empty() && bytes[0] == bytes[1],
             "transcript " + std::to_string(k) + " differs between runs");
    ++k;
  }
  fs::remove_all(dir);
  return c;
}

}  // namespace
}  // namespace imsibc

int main() {
  using namespace imsibc;
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"signature completeness and soundness", Criterion1},
      {"batch agrees with per-entry verification", Criterion2},
      {"pairing count law", Criterion3},
      {"batch speedup at n=1000", Criterion4},
      {"verify_one cost model", Criterion5},
      {"100-UE end-to-end simulation", Criterion6},
      {"attack suite", Criterion7},
      {"signature oracle equivalence", Criterion8},
      {"simulator determinism", Criterion9},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const Check c = criteria[i].second();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& n : c.notes) std::cout << "  " << n << "\n";
    std::printf("criterion %zu: %s (%s, %.1f s)\n", i + 1, c.notes.empty() ? "PASS" : "FAIL",
                criteria[i].first, s);
    std::fflush(stdout);
    failed += !c.notes.empty();
  }
  return failed == 0 ? 0 : 1;
}

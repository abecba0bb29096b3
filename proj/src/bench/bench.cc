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

#include "imsibc/bench/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "imsibc/core/errors.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/ibc/signature.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::bench {

using nlohmann::json;
using pairing::G1Point;
using pairing::SeededRng;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double TimeMs(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Fixture {
  ibc::MasterKeyPair master;
  std::vector<ibc::SignedEntry> entries;
};

absl::StatusOr<Fixture> MakeFixture(size_t n, SeededRng& rng) {
  Fixture f;
  IMSIBC_ASSIGN_OR_RETURN(f.master,
                          ibc::PkgSetup(pairing::PairingParams::Default(), rng));
  f.entries.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const std::string impu = "sip:bench" + std::to_string(i) + "@ims.example.org";
    IMSIBC_ASSIGN_OR_RETURN(ibc::UserKeyMaterial keys,
                            ibc::ExtractUserKeys(impu, f.master, rng));
    IMSIBC_ASSIGN_OR_RETURN(Bytes token, rng.Generate(16));
    IMSIBC_ASSIGN_OR_RETURN(ibc::OneTimeSignature sig,
                            ibc::SignOnce(keys, f.master.pub.params, token));
    f.entries.push_back({keys.pub, token, sig.sig});
  }
  return f;
}

// Splits [0, n) into `threads` contiguous chunks and runs `fn(lo, hi)` on
// each. Returns false if any chunk returned false.
template <typename F>
bool ForChunks(size_t n, size_t threads, F&& fn) {
  threads = std::max<size_t>(1, std::min(threads, n));
  if (threads == 1) return fn(0, n);
  std::vector<char> ok(threads, 1);
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) {
    const size_t lo = n * t / threads, hi = n * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] { ok[t] = fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

bool Sequential(std::span<const ibc::SignedEntry> entries,
                const ibc::MasterPublicKey& master, size_t threads) {
  return ForChunks(entries.size(), threads, [&](size_t lo, size_t hi) {
    bool all = true;
    for (size_t i = lo; i < hi; ++i) {
      auto r = ibc::VerifyOne(entries[i].pub, entries[i].token, entries[i].sig, master);
      all = all && r.ok() && *r;
    }
    return all;
  });
}

// Parallel mode verifies one sub-batch per worker.
bool Batch(std::span<const ibc::SignedEntry> entries,
           const ibc::MasterPublicKey& master, size_t threads) {
  return ForChunks(entries.size(), threads, [&](size_t lo, size_t hi) {
    auto r = ibc::VerifyBatch(entries.subspan(lo, hi - lo), master);
    return r.ok() && *r;
  });
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

json StatJson(const Stat& s) {
  return {{"median_ms", s.median_ms}, {"mad_ms", s.mad_ms}, {"samples", s.samples}};
}

}  // namespace

Stat Summarize(std::vector<double> samples_ms) {
  Stat s;
  s.samples = samples_ms.size();
  s.median_ms = Median(samples_ms);
  for (double& x : samples_ms) x = std::abs(x - s.median_ms);
  s.mad_ms = Median(std::move(samples_ms));
  return s;
}

double PrimitiveTimings::ComposedError() const {
  if (t_verify_one.median_ms <= 0) return 0;
  return std::abs(t_verify_one.median_ms - Composed()) / t_verify_one.median_ms;
}

double BatchRow::model_error() const {
  if (batch_ms <= 0) return 0;
  return std::abs(batch_ms - predicted_batch_ms) / batch_ms;
}

const std::vector<ReferenceBatchRow>& ReferenceTable() {
  static const std::vector<ReferenceBatchRow> kRows = {
      {1000, 33.8, 5.9}, {5000, 169, 29.5}, {10000, 338, 59}, {50000, 1690, 295}};
  return kRows;
}

namespace {

// Interleaves the four measurements so drift hits all of them alike.
absl::StatusOr<PrimitiveTimings> TimePrimitives(const Fixture& fx, size_t iterations,
                                                SeededRng& rng) {
  const auto& params = fx.master.pub.params;
  const size_t pool = std::min(iterations, fx.entries.size());
  std::vector<pairing::Scalar> scalars;
  for (size_t i = 0; i < pool; ++i) {
    IMSIBC_ASSIGN_OR_RETURN(pairing::Scalar s, pairing::Scalar::Random(rng));
    scalars.push_back(s);
  }
  const size_t warmup = std::max<size_t>(2, iterations / 10);
  std::vector<double> bp, mtp, mul, v1;
  PrimitiveTimings out;
  for (size_t round = 0; round < warmup + iterations; ++round) {
    const size_t i = round % pool;
    const auto& e = fx.entries[i];
    pairing::GtElement gt;
    const double a = TimeMs([&] { gt = pairing::Pair(e.sig, fx.master.pub.ppub1); });
    G1Point binding;
    const double b = TimeMs([&] { binding = *ibc::KeyBindingPoint(params, e.pub); });
    G1Point prod;
    const double c = TimeMs([&] { prod = binding * scalars[i]; });
    pairing::PairingScope scope;
    bool ok = false;
    const double d = TimeMs([&] {
      auto r = ibc::VerifyOne(e.pub, e.token, e.sig, fx.master.pub);
      ok = r.ok() && *r;
    });
    if (!ok) return MakeError(ErrorReason::kSignatureInvalid, "bench fixture failed to verify");
    if (round < warmup) continue;
    out.verify_one_pairings = scope.Elapsed();
    bp.push_back(a);
    mtp.push_back(b);
    mul.push_back(c);
    v1.push_back(d);
  }
  out.t_bp = Summarize(bp);
  out.t_mtp = Summarize(mtp);
  out.t_mul = Summarize(mul);
  out.t_verify_one = Summarize(v1);
  return out;
}

double PredictBatch(size_t n, const PrimitiveTimings& p) {
  return n * (p.t_mtp.median_ms + p.t_mul.median_ms) + 3 * p.t_bp.median_ms;
}

}  // namespace

absl::StatusOr<PrimitiveTimings> BenchPrimitives(size_t iterations,
                                                 const BenchOptions& opts) {
  if (iterations < 10) {
    return MakeError(ErrorReason::kInvalidArgument, "need at least 10 iterations");
  }
  SeededRng rng(opts.seed, "bench/primitives");
  IMSIBC_ASSIGN_OR_RETURN(Fixture fx, MakeFixture(iterations, rng));
  return TimePrimitives(fx, iterations, rng);
}

absl::StatusOr<std::vector<BatchRow>> BenchBatch(const std::vector<size_t>& ns,
                                                 const BenchOptions& opts) {
  if (opts.calibration_iterations < 10) {
    return MakeError(ErrorReason::kInvalidArgument, "need at least 10 calibration iterations");
  }
  size_t max_n = 0;
  for (size_t n : ns) {
    if (n < 1) return MakeError(ErrorReason::kInvalidArgument, "batch size must be at least 1");
    max_n = std::max(max_n, n);
  }
  SeededRng rng(opts.seed, "bench/batch");
  IMSIBC_ASSIGN_OR_RETURN(Fixture fx, MakeFixture(max_n, rng));
  const auto& mpk = fx.master.pub;

  struct State {
    BatchRow row;
    std::span<const ibc::SignedEntry> entries;
    std::vector<double> seq, bat, predicted;
  };
  std::vector<State> states;
  bool ok = true;
  auto reps_for = [&](double est) {
    return std::clamp<size_t>(
        static_cast<size_t>(std::ceil(opts.min_total_ms / std::max(est, 1e-3))),
        std::max<size_t>(1, opts.min_repetitions),
        std::max(opts.max_repetitions, opts.min_repetitions));
  };
  for (size_t n : ns) {
    State st;
    st.row.n = n;
    st.entries = std::span<const ibc::SignedEntry>(fx.entries.data(), n);
    // Warm-up, also sizes the repetition counts.
    const double seq_est = TimeMs([&] { ok = Sequential(st.entries, mpk, opts.threads) && ok; });
    const double bat_est = TimeMs([&] { ok = Batch(st.entries, mpk, opts.threads) && ok; });
    st.row.repetitions = reps_for(seq_est);
    st.row.batch_repetitions = reps_for(bat_est);
    states.push_back(std::move(st));
  }
  if (!ok) return MakeError(ErrorReason::kSignatureInvalid, "bench batch failed to verify");

  // Rows take turns so that slow phases of the machine spread over all of
  // them. The cost model is recalibrated inside the same rounds.
  size_t rounds = 0;
  for (const auto& st : states) {
    rounds = std::max({rounds, st.row.repetitions, st.row.batch_repetitions});
  }
  for (size_t r = 0; r < rounds; ++r) {
    for (State& st : states) {
      if (r < st.row.batch_repetitions) {
        IMSIBC_ASSIGN_OR_RETURN(const PrimitiveTimings cal,
                                TimePrimitives(fx, opts.calibration_iterations, rng));
        st.predicted.push_back(PredictBatch(st.row.n, cal));
      }
      if (r < st.row.repetitions) {
        pairing::PairingScope scope;
        st.seq.push_back(TimeMs([&] { ok = Sequential(st.entries, mpk, opts.threads) && ok; }));
        st.row.sequential_pairings = scope.Elapsed();
      }
      if (r < st.row.batch_repetitions) {
        pairing::PairingScope scope;
        st.bat.push_back(TimeMs([&] { ok = Batch(st.entries, mpk, opts.threads) && ok; }));
        st.row.batch_pairings = scope.Elapsed();
      }
    }
  }
  if (!ok) return MakeError(ErrorReason::kSignatureInvalid, "bench batch failed to verify");

  std::vector<BatchRow> rows;
  for (State& st : states) {
    st.row.sequential_ms = Median(st.seq);
    st.row.batch_ms = Median(st.bat);
    st.row.predicted_batch_ms = Median(st.predicted);
    rows.push_back(st.row);
  }
  return rows;
}

absl::StatusOr<TimingReport> RunBench(size_t iterations,
                                      const std::vector<size_t>& ns,
                                      const BenchOptions& opts) {
  TimingReport rep;
  rep.iterations = iterations;
  rep.threads = opts.threads;
  IMSIBC_ASSIGN_OR_RETURN(rep.primitives, BenchPrimitives(iterations, opts));
  IMSIBC_ASSIGN_OR_RETURN(rep.rows, BenchBatch(ns, opts));
  return rep;
}

json TimingReport::ToJson() const {
  const ReferenceRow ref;
  json rows_j = json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"n", r.n},
                      {"repetitions", r.repetitions},
                      {"batch_repetitions", r.batch_repetitions},
                      {"sequential_ms", r.sequential_ms},
                      {"batch_ms", r.batch_ms},
                      {"ratio", r.ratio()},
                      {"sequential_pairings", r.sequential_pairings},
                      {"batch_pairings", r.batch_pairings},
                      {"predicted_batch_ms", r.predicted_batch_ms},
                      {"model_error", r.model_error()}});
  }
  json ref_rows = json::array();
  for (const auto& r : ReferenceTable()) {
    ref_rows.push_back({{"n", r.n}, {"sequential_s", r.sequential_s}, {"batch_s", r.batch_s}});
  }
  return {{"version", 1},
          {"iterations", iterations},
          {"threads", threads},
          {"primitives",
           {{"t_bp", StatJson(primitives.t_bp)},
            {"t_mtp", StatJson(primitives.t_mtp)},
            {"t_mul", StatJson(primitives.t_mul)},
            {"t_verify_one", StatJson(primitives.t_verify_one)},
            {"verify_one_pairings", primitives.verify_one_pairings},
            {"composed_ms", primitives.Composed()},
            {"composed_error", primitives.ComposedError()}}},
          {"batch_vs_sequential", rows_j},
          {"reference",
           {{"t_bp_ms", ref.t_bp},
            {"t_mtp_ms", ref.t_mtp},
            {"t_mul_ms", ref.t_mul},
            {"t_verify_ms", ref.t_verify},
            {"table", ref_rows}}}};
}

std::string TimingReport::ToTable() const {
  const ReferenceRow ref;
  std::string out;
  char line[160];
  auto add = [&](const char* fmt, auto... args) {
    std::snprintf(line, sizeof line, fmt, args...);
    out += line;
  };
  add("%-14s %12s %12s %14s\n", "primitive", "median (ms)", "mad (ms)", "reference (ms)");
  add("%-14s %12.4f %12.4f %14.1f\n", "T_bp", primitives.t_bp.median_ms,
      primitives.t_bp.mad_ms, ref.t_bp);
  add("%-14s %12.4f %12.4f %14.1f\n", "T_mtp", primitives.t_mtp.median_ms,
      primitives.t_mtp.mad_ms, ref.t_mtp);
  add("%-14s %12.4f %12.4f %14.1f\n", "T_mul", primitives.t_mul.median_ms,
      primitives.t_mul.mad_ms, ref.t_mul);
  add("%-14s %12.4f %12.4f %14.1f\n", "T_v", primitives.t_verify_one.median_ms,
      primitives.t_verify_one.mad_ms, ref.t_verify);
  add("composed 3 T_bp + T_mtp + T_mul = %.4f ms, relative error %.3f\n\n",
      primitives.Composed(), primitives.ComposedError());
  add("%8s %20s %17s %8s %16s\n", "n", "without batch (ms)", "with batch (ms)", "ratio",
      "pairings");
  for (const auto& r : rows) {
    const std::string pairings =
        std::to_string(r.sequential_pairings) + "/" + std::to_string(r.batch_pairings);
    add("%8zu %20.3f %17.3f %8.3f %16s\n", r.n, r.sequential_ms, r.batch_ms, r.ratio(),
        pairings.c_str());
  }
  return out;
}

}  // namespace imsibc::bench

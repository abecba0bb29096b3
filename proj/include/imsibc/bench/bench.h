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

// Timing of the verification primitives and of sequential vs batch
// signature checks. Medians throughout; warm-up runs are discarded.

#ifndef IMSIBC_BENCH_BENCH_H_
#define IMSIBC_BENCH_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace imsibc::bench {

struct Stat {
  double median_ms = 0;
  double mad_ms = 0;  // median absolute deviation
  size_t samples = 0;
};

Stat Summarize(std::vector<double> samples_ms);

struct PrimitiveTimings {
  Stat t_bp;   // one full pairing
  Stat t_mtp;  // hash of Kpub1 || Kpub2 onto G1
  Stat t_mul;  // G1 scalar multiplication
  Stat t_verify_one;
  uint64_t verify_one_pairings = 0;

  double Composed() const {
    return 3 * t_bp.median_ms + t_mtp.median_ms + t_mul.median_ms;
  }
  // |t_verify_one - composed| / t_verify_one
  double ComposedError() const;
};

// Reference figures measured on Core 2 hardware, milliseconds.
// Reported next to ours, never compared against.
struct ReferenceRow {
  double t_bp = 9.3;
  double t_mtp = 4.4;
  double t_mul = 1.5;
  double t_verify = 33.8;
};

struct ReferenceBatchRow {
  size_t n;
  double sequential_s;
  double batch_s;
};
const std::vector<ReferenceBatchRow>& ReferenceTable();

struct BatchRow {
  size_t n = 0;
  size_t repetitions = 0;  // sequential side
  size_t batch_repetitions = 0;
  double sequential_ms = 0;
  double batch_ms = 0;
  uint64_t sequential_pairings = 0;
  uint64_t batch_pairings = 0;
  // n (t_mtp + t_mul) + 3 t_bp, primitives timed alongside the row.
  double predicted_batch_ms = 0;

  double ratio() const { return sequential_ms > 0 ? batch_ms / sequential_ms : 0; }
  double model_error() const;
};

struct BenchOptions {
  uint64_t seed = 1;
  size_t threads = 1;
  // Each side is repeated until it has run at least this long.
  double min_total_ms = 500;
  size_t min_repetitions = 1;
  size_t max_repetitions = 50;
  size_t calibration_iterations = 10;
};

struct TimingReport {
  PrimitiveTimings primitives;
  std::vector<BatchRow> rows;
  size_t iterations = 0;
  size_t threads = 1;

  nlohmann::json ToJson() const;
  // Aligned columns: n, without batch, with batch, ratio, pairings.
  std::string ToTable() const;
};

// iterations >= 10.
absl::StatusOr<PrimitiveTimings> BenchPrimitives(size_t iterations,
                                                 const BenchOptions& opts = {});

// Each n >= 1.
absl::StatusOr<std::vector<BatchRow>> BenchBatch(const std::vector<size_t>& ns,
                                                 const BenchOptions& opts = {});

absl::StatusOr<TimingReport> RunBench(size_t iterations,
                                      const std::vector<size_t>& ns,
                                      const BenchOptions& opts = {});

}  // namespace imsibc::bench

#endif  // IMSIBC_BENCH_BENCH_H_

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

#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"

namespace imsibc::bench {
namespace {

std::vector<std::string> Keys(const nlohmann::json& j, const std::string& prefix = "") {
  std::vector<std::string> out;
  if (!j.is_object()) return out;
  for (const auto& [k, v] : j.items()) {
    out.push_back(prefix + k);
    for (auto& sub : Keys(v, prefix + k + ".")) out.push_back(sub);
  }
  return out;
}

TEST(BenchTest, SummarizeMedianAndMad) {
  const Stat s = Summarize({5, 1, 3, 2, 100});
  EXPECT_EQ(s.samples, 5u);
  EXPECT_DOUBLE_EQ(s.median_ms, 3);
  // |x - 3| = {2, 2, 0, 1, 97} -> median 2.
  EXPECT_DOUBLE_EQ(s.mad_ms, 2);
  EXPECT_DOUBLE_EQ(Summarize({1, 2, 3, 4}).median_ms, 2.5);
  EXPECT_EQ(Summarize({}).samples, 0u);
}

TEST(BenchTest, RejectsBadArguments) {
  EXPECT_EQ(ReasonOf(BenchPrimitives(9)), ErrorReason::kInvalidArgument);
  EXPECT_EQ(ReasonOf(BenchBatch({4, 0})), ErrorReason::kInvalidArgument);
  BenchOptions o;
  o.calibration_iterations = 3;
  EXPECT_EQ(ReasonOf(BenchBatch({1}, o)), ErrorReason::kInvalidArgument);
}

TEST(BenchTest, PrimitivesComposeIntoVerifyOne) {
  ASSERT_OK_AND_ASSIGN(PrimitiveTimings p, BenchPrimitives(100));
  EXPECT_EQ(p.verify_one_pairings, 3u);
  EXPECT_EQ(p.t_bp.samples, 100u);
  EXPECT_GT(p.t_bp.median_ms, 0);
  EXPECT_GT(p.t_mtp.median_ms, 0);
  EXPECT_GT(p.t_mul.median_ms, 0);
  EXPECT_LE(p.ComposedError(), 0.25) << "T_v " << p.t_verify_one.median_ms
                                     << " composed " << p.Composed();
}

TEST(BenchTest, SingleEntryBatchGainsNothing) {
  ASSERT_OK_AND_ASSIGN(auto rows, BenchBatch({1}));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].sequential_pairings, 3u);
  EXPECT_EQ(rows[0].batch_pairings, 3u);
  EXPECT_GE(rows[0].ratio(), 0.8);
  EXPECT_LE(rows[0].ratio(), 1.2);
}

// Linear sequential growth and the batch cost model, one interleaved run.
TEST(BenchTest, SequentialLinearAndBatchCostModel) {
  BenchOptions o;
  o.min_repetitions = 3;
  ASSERT_OK_AND_ASSIGN(auto rows, BenchBatch({100, 1000, 2000}, o));
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.sequential_pairings, 3 * r.n);
    EXPECT_EQ(r.batch_pairings, 3u);
    EXPECT_GE(r.repetitions, 3u);
  }
  const double growth = rows[2].sequential_ms / rows[1].sequential_ms;
  EXPECT_GE(growth, 1.7);
  EXPECT_LE(growth, 2.3);
  for (size_t i : {0, 1}) {
    EXPECT_LE(rows[i].model_error(), 0.30)
        << "n=" << rows[i].n << " measured " << rows[i].batch_ms << " predicted "
        << rows[i].predicted_batch_ms;
  }
  EXPECT_LE(rows[1].ratio(), 0.5);
}

TEST(BenchTest, ParallelModeSplitsIntoSubBatches) {
  BenchOptions o;
  o.threads = 2;
  o.min_total_ms = 10;
  ASSERT_OK_AND_ASSIGN(auto rows, BenchBatch({8}, o));
  EXPECT_EQ(rows[0].sequential_pairings, 24u);
  EXPECT_EQ(rows[0].batch_pairings, 6u);
}

TEST(BenchTest, ReportSchemaIsStable) {
  BenchOptions o;
  o.min_total_ms = 5;
  ASSERT_OK_AND_ASSIGN(TimingReport a, RunBench(10, {1, 3}, o));
  ASSERT_OK_AND_ASSIGN(TimingReport b, RunBench(10, {1, 3}, o));
  const nlohmann::json ja = a.ToJson(), jb = b.ToJson();
  EXPECT_EQ(Keys(ja), Keys(jb));
  ASSERT_EQ(ja["batch_vs_sequential"].size(), 2u);
  EXPECT_EQ(ja["batch_vs_sequential"][0]["n"], 1);
  EXPECT_EQ(ja["batch_vs_sequential"][1]["n"], 3);
  EXPECT_EQ(Keys(ja["batch_vs_sequential"][0]), Keys(jb["batch_vs_sequential"][1]));
  EXPECT_DOUBLE_EQ(ja["reference"]["t_bp_ms"].get<double>(), 9.3);
  EXPECT_DOUBLE_EQ(ja["reference"]["t_verify_ms"].get<double>(), 33.8);
  EXPECT_EQ(ja["reference"]["table"].size(), 4u);

  const std::string table = a.ToTable();
  EXPECT_NE(table.find("without batch"), std::string::npos);
  EXPECT_NE(table.find("with batch"), std::string::npos);
  std::istringstream in(table);
  std::string line;
  int data_rows = 0;
  bool in_rows = false;
  while (std::getline(in, line)) {
    if (line.find("without batch") != std::string::npos) {
      in_rows = true;
      continue;
    }
    if (in_rows && !line.empty()) ++data_rows;
  }
  EXPECT_EQ(data_rows, 2);
}

TEST(BenchTest, ReferenceTableMatchesConstantRatio) {
  // The reference rows scale linearly from the 1000-UE row.
  const auto& rows = ReferenceTable();
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.sequential_s, 33.8 * r.n / 1000, 1e-9);
    EXPECT_NEAR(r.batch_s, 5.9 * r.n / 1000, 1e-9);
  }
}

}  // namespace
}  // namespace imsibc::bench

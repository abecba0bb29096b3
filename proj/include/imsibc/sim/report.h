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

#ifndef IMSIBC_SIM_REPORT_H_
#define IMSIBC_SIM_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "imsibc/sim/adversary.h"
#include "imsibc/sim/config.h"
#include "json.hpp"

namespace imsibc::sim {

struct SessionOutcome {
  size_t ue = 0;
  std::string impu;
  uint64_t session_id = 0;
  bool complete = false;
  std::string reason;     // error taxonomy name when failed
  std::string failed_at;  // role that raised the failure
  int failed_message = 0;
  bool ks_match = false;
  std::string ks_fingerprint;
  std::string transcript_digest;
  size_t messages = 0;
};

// Outcome of a message the adversary put on the wire itself.
struct InjectedOutcome {
  uint64_t session_id = 0;
  int message = 0;
  bool accepted = false;
  std::string reason;
  uint64_t pairings = 0;
};

struct AdversaryReport {
  AdversaryKind kind = AdversaryKind::kNone;
  int point = 0;
  std::vector<Mutation> mutations;
  std::vector<SessionOutcome> rogue;
  std::vector<InjectedOutcome> injected;
};

struct PhaseTimes {
  double setup_ms = 0;
  double bootstrap_ms = 0;
  double naf_ms = 0;
  double flush_ms = 0;
};

struct SimReport {
  SimConfig config;
  std::vector<SessionOutcome> outcomes;
  size_t complete = 0;
  size_t failed = 0;
  uint64_t pairings_total = 0;
  uint64_t pairings_flush = 0;
  size_t flushes = 0;
  size_t batch_checks = 0;
  size_t single_checks = 0;
  size_t messages = 0;
  PhaseTimes wall;
  std::string transcript_digest;
  bool bsf_records_keyless = false;
  AdversaryReport adversary;

  nlohmann::json ToJson() const;
};

nlohmann::json ToJson(const SessionOutcome& o);

}  // namespace imsibc::sim

#endif  // IMSIBC_SIM_REPORT_H_

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

#ifndef IMSIBC_SIM_CONFIG_H_
#define IMSIBC_SIM_CONFIG_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace imsibc::sim {

enum class AdversaryKind {
  kNone,
  kMitmImpostor,
  kReplayAttacker,
  kSignatureTamperer,
  kBatchCancellationPair,
};

std::string_view AdversaryName(AdversaryKind kind);
std::optional<AdversaryKind> AdversaryFromName(std::string_view name);
// Message numbers each adversary can act on; the first is the default.
std::set<int> InjectionPoints(AdversaryKind kind);
int DefaultInjectionPoint(AdversaryKind kind);

struct SimConfig {
  size_t n_ues = 10;
  uint64_t rng_seed = 1;
  bool batch_mode = false;
  bool randomized_batch = false;
  size_t window_size = 32;
  uint64_t window_deadline_ms = 50;
  AdversaryKind adversary = AdversaryKind::kNone;
  std::optional<int> inject_point;
  size_t target_ue = 0;
  uint64_t latency_ms = 1;
  uint64_t start_spacing_ms = 0;
  bool hss_reachable = true;

  int injection_point() const {
    return inject_point.value_or(DefaultInjectionPoint(adversary));
  }

  // kConfigInvalid, or kInjectionOutOfRange for a bad injection point.
  absl::Status Validate() const;

  nlohmann::json ToJson() const;
  static absl::StatusOr<SimConfig> FromJson(const nlohmann::json& j);
};

}  // namespace imsibc::sim

#endif  // IMSIBC_SIM_CONFIG_H_

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

// Deterministic single-threaded network of UEs, one BSF, one HSS and a set
// of NAFs. Messages travel through an ordered event queue with a fixed
// per-hop latency on a simulated millisecond clock.

#ifndef IMSIBC_SIM_SIMULATOR_H_
#define IMSIBC_SIM_SIMULATOR_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/gba/naf.h"
#include "imsibc/gba/session_store.h"
#include "imsibc/gba/subscriber_store.h"
#include "imsibc/gba/user_equipment.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/sim/config.h"
#include "imsibc/sim/report.h"

namespace imsibc::sim {

inline constexpr char kDefaultNafId[] = "naf.ims.example.org";
inline constexpr char kDefaultBsfDomain[] = "bsf.ims.example.org";

struct World {
  ibc::MasterKeyPair master;
  gba::SubscriberStore subscribers;
  std::vector<gba::NafConfig> nafs;
  std::string bsf_domain = kDefaultBsfDomain;
};

struct FlowSpec {
  gba::UeIdentity id;
  std::string naf_id = kDefaultNafId;
};

// PKG plus `n_ues` enrolled subscribers allowed to use the default NAF.
absl::StatusOr<World> MakeWorld(size_t n_ues, pairing::Rng& rng);
std::vector<FlowSpec> FlowsFor(const World& world);

struct SimResult {
  SimReport report;
  std::vector<std::string> transcript;  // golden-trace lines
  std::vector<gba::BootstrappingSession> bsf_sessions;
  // In memory only; lets tests play the eavesdropper with other users' keys.
  std::vector<std::optional<ibc::UserPrivateKey>> ue_private_keys;

  std::string TranscriptText() const;
};

absl::StatusOr<SimResult> RunScenario(const SimConfig& cfg);

// One flow per entry of `flows`; `cfg.n_ues` is ignored.
absl::StatusOr<SimResult> RunFlows(const SimConfig& cfg, const World& world,
                                   const std::vector<FlowSpec>& flows);

}  // namespace imsibc::sim

#endif  // IMSIBC_SIM_SIMULATOR_H_

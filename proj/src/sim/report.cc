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

#include "imsibc/sim/report.h"

namespace imsibc::sim {

using nlohmann::json;

json ToJson(const SessionOutcome& o) {
  json j = {{"ue", o.ue},
            {"impu", o.impu},
            {"session_id", o.session_id},
            {"outcome", o.complete ? "Complete" : "Failed"},
            {"messages", o.messages},
            {"transcript_digest", o.transcript_digest}};
  if (o.complete) {
    j["ks_match"] = o.ks_match;
    j["ks_fingerprint"] = o.ks_fingerprint;
  } else {
    j["reason"] = o.reason;
    j["failed_at"] = o.failed_at;
    j["failed_message"] = o.failed_message;
  }
  return j;
}

json SimReport::ToJson() const {
  json outcomes_j = json::array();
  for (const auto& o : outcomes) outcomes_j.push_back(sim::ToJson(o));

  json mutations = json::array();
  for (const auto& m : adversary.mutations) {
    mutations.push_back({{"point", m.point},
                         {"session_id", m.session_id},
                         {"description", m.description}});
  }
  json rogue = json::array();
  for (const auto& o : adversary.rogue) rogue.push_back(sim::ToJson(o));
  json injected = json::array();
  for (const auto& i : adversary.injected) {
    injected.push_back({{"session_id", i.session_id},
                        {"message", i.message},
                        {"accepted", i.accepted},
                        {"reason", i.reason},
                        {"pairings", i.pairings}});
  }

  return {{"version", 1},
          {"config", config.ToJson()},
          {"summary",
           {{"n_ues", outcomes.size()},
            {"complete", complete},
            {"failed", failed},
            {"messages", messages},
            {"bsf_records_keyless", bsf_records_keyless},
            {"transcript_digest", transcript_digest}}},
          {"pairings",
           {{"total", pairings_total},
            {"batch_flush", pairings_flush},
            {"flushes", flushes},
            {"batch_checks", batch_checks},
            {"single_checks", single_checks}}},
          {"wall_ms",
           {{"setup", wall.setup_ms},
            {"bootstrap", wall.bootstrap_ms},
            {"naf", wall.naf_ms},
            {"batch_flush", wall.flush_ms}}},
          {"adversary",
           {{"kind", std::string(AdversaryName(adversary.kind))},
            {"point", adversary.point},
            {"mutations", mutations},
            {"rogue_sessions", rogue},
            {"injected", injected}}},
          {"outcomes", outcomes_j}};
}

}  // namespace imsibc::sim

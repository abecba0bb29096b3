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

#include "imsibc/sim/config.h"

#include <array>
#include <string>
#include <utility>

#include "imsibc/core/errors.h"
#include "imsibc/gba/messages.h"

namespace imsibc::sim {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<AdversaryKind, std::string_view>, 5> kNames = {{
    {AdversaryKind::kNone, "none"},
    {AdversaryKind::kMitmImpostor, "mitm-impostor"},
    {AdversaryKind::kReplayAttacker, "replay-attacker"},
    {AdversaryKind::kSignatureTamperer, "signature-tamperer"},
    {AdversaryKind::kBatchCancellationPair, "batch-cancellation-pair"},
}};

absl::Status Invalid(const std::string& what) {
  return MakeError(ErrorReason::kConfigInvalid, what);
}

}  // namespace

std::string_view AdversaryName(AdversaryKind kind) {
  for (const auto& [k, n] : kNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

std::optional<AdversaryKind> AdversaryFromName(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::set<int> InjectionPoints(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kNone:
      return {};
    case AdversaryKind::kMitmImpostor:
      return {3};
    case AdversaryKind::kReplayAttacker:
      return {7};
    case AdversaryKind::kSignatureTamperer:
      return {7, 9};
    case AdversaryKind::kBatchCancellationPair:
      return {7};
  }
  return {};
}

int DefaultInjectionPoint(AdversaryKind kind) {
  const auto points = InjectionPoints(kind);
  return points.empty() ? 0 : *points.begin();
}

absl::Status SimConfig::Validate() const {
  if (n_ues < 1) return Invalid("n_ues must be at least 1");
  if (window_size < 1) return Invalid("window size must be at least 1");
  if (window_deadline_ms < 1) return Invalid("window deadline must be positive");
  if (randomized_batch && !batch_mode) {
    return Invalid("randomized batch requires batch mode");
  }
  if (adversary == AdversaryKind::kNone) {
    if (inject_point.has_value()) {
      return MakeError(ErrorReason::kInjectionOutOfRange,
                       "no adversary to inject");
    }
    return absl::OkStatus();
  }
  const int point = injection_point();
  if (point < 1 || point > gba::kMessageCount ||
      !InjectionPoints(adversary).count(point)) {
    return MakeError(ErrorReason::kInjectionOutOfRange,
                     std::string(AdversaryName(adversary)) +
                         " cannot act on message " + std::to_string(point));
  }
  if (target_ue >= n_ues) return Invalid("target_ue out of range");
  if (adversary == AdversaryKind::kBatchCancellationPair) {
    if (!batch_mode) return Invalid("cancellation pair needs batch mode");
    if (target_ue + 1 >= n_ues) return Invalid("cancellation pair needs two UEs");
    if (window_size < 2) return Invalid("cancellation pair needs a window of 2");
  }
  return absl::OkStatus();
}

json SimConfig::ToJson() const {
  return {{"version", 1},
          {"n_ues", n_ues},
          {"rng_seed", rng_seed},
          {"batch_mode", batch_mode},
          {"randomized_batch", randomized_batch},
          {"window", {{"size", window_size}, {"deadline_ms", window_deadline_ms}}},
          {"adversary", std::string(AdversaryName(adversary))},
          {"inject_point", inject_point ? json(*inject_point) : json(nullptr)},
          {"target_ue", target_ue},
          {"latency_ms", latency_ms},
          {"start_spacing_ms", start_spacing_ms},
          {"hss_reachable", hss_reachable}};
}

absl::StatusOr<SimConfig> SimConfig::FromJson(const json& j) {
  if (!j.is_object()) return Invalid("config must be a JSON object");
  if (j.value("version", 0) != 1) return Invalid("unknown config version");
  auto unsigned_ok = [](const json& obj, const char* key) {
    return !obj.contains(key) || obj.at(key).is_number_unsigned();
  };
  for (const char* key : {"n_ues", "rng_seed", "target_ue", "latency_ms", "start_spacing_ms"}) {
    if (!unsigned_ok(j, key)) return Invalid(std::string(key) + " must be a non-negative integer");
  }
  if (j.contains("window")) {
    if (!j.at("window").is_object()) return Invalid("window must be an object");
    for (const char* key : {"size", "deadline_ms"}) {
      if (!unsigned_ok(j.at("window"), key)) {
        return Invalid(std::string("window.") + key + " must be a non-negative integer");
      }
    }
  }
  SimConfig c;
  try {
    c.n_ues = j.value("n_ues", c.n_ues);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.batch_mode = j.value("batch_mode", c.batch_mode);
    c.randomized_batch = j.value("randomized_batch", c.randomized_batch);
    if (j.contains("window")) {
      c.window_size = j.at("window").value("size", c.window_size);
      c.window_deadline_ms = j.at("window").value("deadline_ms", c.window_deadline_ms);
    }
    const std::string adv = j.value("adversary", std::string("none"));
    const auto kind = AdversaryFromName(adv);
    if (!kind) return Invalid("unknown adversary " + adv);
    c.adversary = *kind;
    if (j.contains("inject_point") && !j.at("inject_point").is_null()) {
      c.inject_point = j.at("inject_point").get<int>();
    }
    c.target_ue = j.value("target_ue", c.target_ue);
    c.latency_ms = j.value("latency_ms", c.latency_ms);
    c.start_spacing_ms = j.value("start_spacing_ms", c.start_spacing_ms);
    c.hss_reachable = j.value("hss_reachable", c.hss_reachable);
  } catch (const json::exception& e) {
    return Invalid(std::string("bad config field: ") + e.what());
  }
  IMSIBC_RETURN_IF_ERROR(c.Validate());
  return c;
}

}  // namespace imsibc::sim

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

// Wire adversaries. Every adversary sees each message as it is sent, may
// rewrite it in place, and may queue extra messages of its own.

#ifndef IMSIBC_SIM_ADVERSARY_H_
#define IMSIBC_SIM_ADVERSARY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/gba/messages.h"
#include "imsibc/gba/user_equipment.h"
#include "imsibc/pairing/rng.h"
#include "imsibc/sim/config.h"

namespace imsibc::sim {

struct Mutation {
  int point = 0;
  uint64_t session_id = 0;
  std::string description;
};

class Adversary {
 public:
  virtual ~Adversary() = default;

  AdversaryKind kind() const { return kind_; }
  int point() const { return point_; }

  // Flows the adversary runs itself, started after the honest ones.
  virtual std::vector<gba::UeIdentity> RogueUes() { return {}; }

  // `msg` is about to go on the wire; `injected` collects extra messages.
  virtual void OnWire(gba::ProtocolMessage& msg,
                      std::vector<gba::ProtocolMessage>& injected) = 0;

  const std::vector<Mutation>& mutations() const { return mutations_; }

 protected:
  Adversary(AdversaryKind kind, int point) : kind_(kind), point_(point) {}
  void Log(uint64_t session_id, std::string description) {
    mutations_.push_back({point_, session_id, std::move(description)});
  }

 private:
  AdversaryKind kind_;
  int point_;
  std::vector<Mutation> mutations_;
};

// Target sessions are those of the honest UEs at `targets`.
struct AdversaryContext {
  std::vector<uint64_t> target_sessions;
  std::vector<gba::UeIdentity> target_ids;
};

// kInjectionOutOfRange when the point is not one the adversary acts on.
absl::StatusOr<std::unique_ptr<Adversary>> MakeAdversary(
    AdversaryKind kind, int point, AdversaryContext ctx, pairing::Rng& rng);

// Negates a compressed G1 signature by flipping its sign bit.
gba::G1Point FlipSignBit(const gba::G1Point& p);

}  // namespace imsibc::sim

#endif  // IMSIBC_SIM_ADVERSARY_H_

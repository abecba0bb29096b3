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

#ifndef IMSIBC_GBA_SESSION_STORE_H_
#define IMSIBC_GBA_SESSION_STORE_H_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/gba/messages.h"
#include "json.hpp"

namespace imsibc::gba {

//   Challenged -> Authenticated -> KeyIssued -> Complete
//   any non-terminal state -> Failed
enum class SessionState { kChallenged, kAuthenticated, kKeyIssued, kComplete, kFailed };

std::string_view SessionStateName(SessionState s);
bool IsAllowedTransition(SessionState from, SessionState to);
bool IsTerminal(SessionState s);

// BSF-side record. Holds public material only: nothing here is a key.
struct BootstrappingSession {
  uint64_t session_id = 0;
  std::string impi;
  std::string impu;
  std::string btid;  // empty until issued
  UserPublicKey user_pub;
  Guss guss;
  Rand issued_rand{};
  std::string params_ref;
  SessionState state = SessionState::kChallenged;
  std::vector<SessionState> history;
  std::optional<std::string> failure;  // reason name
};

nlohmann::json ToJson(const BootstrappingSession& s);

// Thread-safe; every check-and-mark happens under one lock.
class SessionStore {
 public:
  absl::Status Create(BootstrappingSession session);

  absl::StatusOr<BootstrappingSession> Get(uint64_t session_id) const;
  absl::StatusOr<BootstrappingSession> FindByBtid(std::string_view btid) const;

  // Replay guard for message 7. A RAND is accepted at most once, and only
  // from the session it was issued to in state Challenged.
  absl::Status ConsumeRand(uint64_t session_id, const Rand& rand);
  bool RandConsumed(const Rand& rand) const;

  absl::Status Advance(uint64_t session_id, SessionState to);
  absl::Status Fail(uint64_t session_id, std::string_view reason);

  // False if the B-TID is already bound to some session.
  absl::StatusOr<bool> BindBtid(uint64_t session_id, const std::string& btid);

  std::vector<BootstrappingSession> Snapshot() const;
  size_t size() const;

 private:
  absl::Status AdvanceLocked(BootstrappingSession& s, SessionState to);

  mutable std::mutex mu_;
  std::map<uint64_t, BootstrappingSession> sessions_;
  std::map<std::string, uint64_t, std::less<>> by_btid_;
  std::set<Rand> consumed_;
};

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_SESSION_STORE_H_

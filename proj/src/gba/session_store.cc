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

#include "imsibc/gba/session_store.h"

#include <string>

#include "imsibc/core/errors.h"
#include "imsibc/gba/wire.h"

namespace imsibc::gba {

std::string_view SessionStateName(SessionState s) {
  switch (s) {
    case SessionState::kChallenged:
      return "Challenged";
    case SessionState::kAuthenticated:
      return "Authenticated";
    case SessionState::kKeyIssued:
      return "KeyIssued";
    case SessionState::kComplete:
      return "Complete";
    case SessionState::kFailed:
      return "Failed";
  }
  return "unknown";
}

bool IsTerminal(SessionState s) {
  return s == SessionState::kComplete || s == SessionState::kFailed;
}

bool IsAllowedTransition(SessionState from, SessionState to) {
  if (IsTerminal(from)) return false;
  if (to == SessionState::kFailed) return true;
  switch (from) {
    case SessionState::kChallenged:
      return to == SessionState::kAuthenticated;
    case SessionState::kAuthenticated:
      return to == SessionState::kKeyIssued;
    case SessionState::kKeyIssued:
      return to == SessionState::kComplete;
    default:
      return false;
  }
}

nlohmann::json ToJson(const BootstrappingSession& s) {
  nlohmann::json history = nlohmann::json::array();
  for (SessionState h : s.history) history.push_back(SessionStateName(h));
  return {{"session_id", s.session_id},
          {"impi", s.impi},
          {"impu", s.impu},
          {"btid", s.btid},
          {"user_pub",
           {{"kpub1", s.user_pub.kpub1.ToHex()},
            {"kpub2", HexEncode(s.user_pub.kpub2)}}},
          {"guss", ToJson(s.guss)},
          {"issued_rand", HexEncode(s.issued_rand)},
          {"params_ref", s.params_ref},
          {"state", SessionStateName(s.state)},
          {"history", history},
          {"failure", s.failure ? nlohmann::json(*s.failure) : nlohmann::json()}};
}

absl::Status SessionStore::Create(BootstrappingSession session) {
  std::lock_guard<std::mutex> lock(mu_);
  if (sessions_.count(session.session_id)) {
    return MakeError(ErrorReason::kBadState,
                     "session " + std::to_string(session.session_id) +
                         " already exists");
  }
  session.state = SessionState::kChallenged;
  session.history = {SessionState::kChallenged};
  const uint64_t id = session.session_id;
  sessions_.emplace(id, std::move(session));
  return absl::OkStatus();
}

absl::StatusOr<BootstrappingSession> SessionStore::Get(uint64_t session_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    return MakeError(ErrorReason::kBadState,
                     "no session " + std::to_string(session_id));
  }
  return it->second;
}

absl::StatusOr<BootstrappingSession> SessionStore::FindByBtid(
    std::string_view btid) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = by_btid_.find(btid);
  if (it == by_btid_.end()) {
    return MakeError(ErrorReason::kUnknownBtid, "unknown B-TID " + std::string(btid));
  }
  return sessions_.at(it->second);
}

absl::Status SessionStore::ConsumeRand(uint64_t session_id, const Rand& rand) {
  std::lock_guard<std::mutex> lock(mu_);
  if (consumed_.count(rand)) {
    return MakeError(ErrorReason::kReplay, "RAND already used");
  }
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    return MakeError(ErrorReason::kBadState,
                     "no session " + std::to_string(session_id));
  }
  if (it->second.state != SessionState::kChallenged) {
    return MakeError(ErrorReason::kBadState,
                     "session not awaiting a challenge response");
  }
  if (it->second.issued_rand != rand) {
    return MakeError(ErrorReason::kRandMismatch,
                     "RAND differs from the one issued to this session");
  }
  consumed_.insert(rand);
  return absl::OkStatus();
}

bool SessionStore::RandConsumed(const Rand& rand) const {
  std::lock_guard<std::mutex> lock(mu_);
  return consumed_.count(rand) > 0;
}

absl::Status SessionStore::AdvanceLocked(BootstrappingSession& s, SessionState to) {
  if (!IsAllowedTransition(s.state, to)) {
    return MakeError(ErrorReason::kBadState,
                     std::string("illegal transition ") +
                         std::string(SessionStateName(s.state)) + " -> " +
                         std::string(SessionStateName(to)));
  }
  s.state = to;
  s.history.push_back(to);
  return absl::OkStatus();
}

absl::Status SessionStore::Advance(uint64_t session_id, SessionState to) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    return MakeError(ErrorReason::kBadState,
                     "no session " + std::to_string(session_id));
  }
  return AdvanceLocked(it->second, to);
}

absl::Status SessionStore::Fail(uint64_t session_id, std::string_view reason) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    return MakeError(ErrorReason::kBadState,
                     "no session " + std::to_string(session_id));
  }
  IMSIBC_RETURN_IF_ERROR(AdvanceLocked(it->second, SessionState::kFailed));
  it->second.failure = std::string(reason);
  return absl::OkStatus();
}

absl::StatusOr<bool> SessionStore::BindBtid(uint64_t session_id,
                                            const std::string& btid) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    return MakeError(ErrorReason::kBadState,
                     "no session " + std::to_string(session_id));
  }
  if (!it->second.btid.empty()) {
    return MakeError(ErrorReason::kBadState, "session already has a B-TID");
  }
  if (!by_btid_.emplace(btid, session_id).second) return false;
  it->second.btid = btid;
  return true;
}

std::vector<BootstrappingSession> SessionStore::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<BootstrappingSession> out;
  out.reserve(sessions_.size());
  for (const auto& [id, s] : sessions_) out.push_back(s);
  return out;
}

size_t SessionStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

}  // namespace imsibc::gba

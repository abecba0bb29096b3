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

#ifndef IMSIBC_GBA_BSF_H_
#define IMSIBC_GBA_BSF_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "imsibc/gba/messages.h"
#include "imsibc/gba/session_store.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/ibc/signature.h"

namespace imsibc::gba {

struct BsfConfig {
  std::string domain = "bsf.ims.example.org";
  bool batch_mode = false;
  bool randomized_batch = false;
  size_t window_size = 32;
  uint64_t window_deadline_ms = 50;
  // NAF-ID -> authorized hostname.
  std::map<std::string, std::string> naf_registry;
};

struct SessionFailure {
  uint64_t session_id = 0;
  absl::Status status;
};

struct BsfOutput {
  std::vector<ProtocolMessage> messages;
  std::vector<SessionFailure> failures;
};

struct FlushRecord {
  size_t entries = 0;
  uint64_t pairings = 0;
  size_t batch_checks = 0;
  size_t single_checks = 0;
  std::vector<size_t> rejected;  // window indices
};

class Bsf {
 public:
  Bsf(BsfConfig config, ibc::MasterPublicKey master, pairing::Rng& rng);

  // Messages 3, 5, 7 and 10. A failure is reported against the session of
  // the offending message; in batch mode message 7 may flush the window.
  BsfOutput Handle(const ProtocolMessage& msg, uint64_t now_ms);

  // Simulated time at which the pending window must be flushed.
  std::optional<uint64_t> NextDeadline() const;
  size_t pending() const { return window_.size(); }
  BsfOutput Flush();

  const SessionStore& sessions() const { return sessions_; }
  const std::vector<FlushRecord>& flushes() const { return flushes_; }
  const BsfConfig& config() const { return config_; }

 private:
  struct WindowEntry {
    uint64_t session_id;
    uint64_t seq;
    ibc::SignedEntry entry;
  };

  absl::StatusOr<std::vector<ProtocolMessage>> OnBootstrapRequest(
      const ProtocolMessage& msg);
  absl::StatusOr<std::vector<ProtocolMessage>> OnAvResponse(
      const ProtocolMessage& msg);
  absl::StatusOr<std::vector<ProtocolMessage>> OnAuthInfoRequest(
      const ProtocolMessage& msg);
  BsfOutput OnChallengeResponse(const ProtocolMessage& msg, uint64_t now_ms);

  // Authenticated -> KeyIssued, producing message 8.
  absl::StatusOr<ProtocolMessage> IssueBtid(uint64_t session_id, uint64_t seq);
  void Accept(const WindowEntry& w, BsfOutput& out);
  void Reject(uint64_t session_id, BsfOutput& out);
  bool VerifyRange(size_t lo, size_t hi, FlushRecord& rec,
                   std::vector<bool>& ok);

  BsfConfig config_;
  ibc::MasterPublicKey master_;
  std::string params_ref_;
  pairing::Rng& rng_;
  SessionStore sessions_;
  std::map<uint64_t, BootstrapRequest> awaiting_av_;
  std::vector<WindowEntry> window_;
  uint64_t window_opened_ms_ = 0;
  uint64_t btid_counter_ = 0;
  std::vector<FlushRecord> flushes_;
};

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_BSF_H_

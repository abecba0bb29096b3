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

// Operator commands behind the `imsibc` tool. Public parameters, master
// secrets and the subscriber database (which holds every sk) are separate
// files; the latter two are written with mode 0600. Nothing here prints
// secret key bytes.

#ifndef IMSIBC_CLI_COMMANDS_H_
#define IMSIBC_CLI_COMMANDS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace imsibc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCrypto = 3;
inline constexpr int kExitIo = 4;

int ExitCodeFor(const absl::Status& status);

struct CliConfig {
  std::string params_path = "params.json";
  std::string secrets_path = "master_secrets.json";
  std::string subscriber_db_path = "subscribers.json";
  std::string output_path;
  std::optional<uint64_t> seed;
  int verbosity = 0;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

absl::Status CmdSetup(const CliConfig& cfg, bool force, Io io);

struct EnrollArgs {
  std::string impi;
  std::string impu;
  std::vector<std::string> naf_ids;
  std::map<std::string, std::string> attributes;
};
absl::Status CmdEnroll(const CliConfig& cfg, const EnrollArgs& args, Io io);

struct FlowArgs {
  std::string impu;
  std::optional<std::string> impi;
  std::string naf_id;
  std::string trace_path;
};
absl::Status CmdFlow(const CliConfig& cfg, const FlowArgs& args, Io io);

// Values given on the command line override the config file.
struct SimulateArgs {
  std::string config_path;
  std::string transcript_path;
  std::optional<size_t> n_ues;
  std::optional<bool> batch_mode;
  std::optional<bool> randomized_batch;
  std::optional<size_t> window_size;
  std::optional<uint64_t> window_deadline_ms;
  std::optional<std::string> adversary;
  std::optional<int> inject_point;
  std::optional<size_t> target_ue;
};
absl::Status CmdSimulate(const CliConfig& cfg, const SimulateArgs& args, Io io);

struct BenchArgs {
  std::vector<size_t> ns = {1, 10, 100, 1000};
  size_t iterations = 100;
  size_t threads = 1;
};
absl::Status CmdBench(const CliConfig& cfg, const BenchArgs& args, Io io);

inline const std::vector<std::string>& AttackNames() {
  static const std::vector<std::string> kNames = {
      "mitm-impostor", "replay-attacker", "signature-tamperer",
      "batch-cancellation-pair", "eavesdropper"};
  return kNames;
}

struct AttackArgs {
  std::string name;
  size_t n_ues = 10;
  std::optional<int> point;
};
// OK when the defence held; kSignatureInvalid-class error when it did not.
absl::Status CmdAttack(const CliConfig& cfg, const AttackArgs& args, Io io);

// Full argument parsing and dispatch; returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace imsibc::cli

#endif  // IMSIBC_CLI_COMMANDS_H_

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

#include "imsibc/cli/commands.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "imsibc/bench/bench.h"
#include "imsibc/core/errors.h"
#include "imsibc/gba/subscriber_store.h"
#include "imsibc/gba/wire.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/json_codec.h"
#include "imsibc/ibc/key_wrap.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/sim/simulator.h"
#include "json.hpp"

namespace imsibc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

absl::Status IoError(const std::string& what, const std::string& path) {
  return MakeError(ErrorReason::kIo, what + " " + path + ": " + std::strerror(errno));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IoError("cannot read", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<json> ReadJson(const std::string& path) {
  IMSIBC_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return MakeError(ErrorReason::kMalformedInput, path + " is not valid JSON");
  }
  return j;
}

// Written to a temporary next to `path` and renamed into place. Secret
// files are created 0600 from the start.
absl::Status WriteFile(const std::string& path, const std::string& data, bool secret) {
  const std::string tmp = path + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, secret ? 0600 : 0644);
  if (fd < 0) return IoError("cannot create", tmp);
  if (secret) ::fchmod(fd, 0600);
  size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      return IoError("cannot write", tmp);
    }
    done += static_cast<size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) return IoError("cannot flush", tmp);
  if (::rename(tmp.c_str(), path.c_str()) != 0) return IoError("cannot rename onto", path);
  return absl::OkStatus();
}

absl::Status WriteJson(const std::string& path, const json& j, bool secret) {
  return WriteFile(path, j.dump(2) + "\n", secret);
}

void WarnIfExposed(const std::string& path, Io io) {
  struct stat st;
  if (::stat(path.c_str(), &st) == 0 && (st.st_mode & 077) != 0) {
    io.err << "warning: " << path << " is readable by group or others\n";
  }
}

std::unique_ptr<pairing::Rng> MakeRng(const CliConfig& cfg, std::string_view label) {
  if (cfg.seed) return std::make_unique<pairing::SeededRng>(*cfg.seed, label);
  return std::make_unique<pairing::SystemRng>();
}

absl::StatusOr<uint64_t> SeedOrRandom(const CliConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  pairing::SystemRng rng;
  uint8_t b[8];
  IMSIBC_RETURN_IF_ERROR(rng.Fill(b));
  uint64_t s = 0;
  for (uint8_t x : b) s = (s << 8) | x;
  return s;
}

absl::StatusOr<ibc::MasterPublicKey> LoadPublic(const CliConfig& cfg) {
  IMSIBC_ASSIGN_OR_RETURN(json j, ReadJson(cfg.params_path));
  return ibc::MasterPublicKeyFromJson(j);
}

absl::StatusOr<ibc::MasterKeyPair> LoadMaster(const CliConfig& cfg, Io io) {
  IMSIBC_ASSIGN_OR_RETURN(ibc::MasterPublicKey pub, LoadPublic(cfg));
  IMSIBC_ASSIGN_OR_RETURN(json secrets, ReadJson(cfg.secrets_path));
  WarnIfExposed(cfg.secrets_path, io);
  return ibc::MasterKeyPairFromJson(secrets, pub);
}

absl::StatusOr<gba::SubscriberStore> LoadStore(const std::string& path, Io io) {
  IMSIBC_ASSIGN_OR_RETURN(json j, ReadJson(path));
  WarnIfExposed(path, io);
  return gba::SubscriberStore::FromJson(j);
}

absl::Status Usage(const std::string& msg) {
  return MakeError(ErrorReason::kInvalidArgument, msg);
}

absl::Status CheckIdentities(const std::string* impi, const std::string& impu) {
  if (impi != nullptr && !gba::IsNai(*impi)) {
    return Usage("IMPI '" + *impi + "' is not of the form user@realm.example");
  }
  if (!gba::IsSipUri(impu)) {
    return Usage("IMPU '" + impu + "' is not of the form sip:user@domain.example");
  }
  return absl::OkStatus();
}

std::string Pad(std::string_view s, size_t w) {
  std::string out(s);
  if (out.size() < w) out.append(w - out.size(), ' ');
  return out;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  switch (CategoryOf(ReasonOf(status))) {
    case ErrorCategory::kNone:
      return kExitOk;
    case ErrorCategory::kUsage:
      return kExitUsage;
    case ErrorCategory::kCrypto:
    case ErrorCategory::kProtocol:
      return kExitCrypto;
    case ErrorCategory::kTransport:
    case ErrorCategory::kIo:
      return kExitIo;
  }
  return kExitCrypto;
}

absl::Status CmdSetup(const CliConfig& cfg, bool force, Io io) {
  const bool have_params = fs::exists(cfg.params_path);
  const bool have_secrets = fs::exists(cfg.secrets_path);
  if (!force && (have_params || have_secrets)) {
    if (have_params && have_secrets && LoadMaster(cfg, io).ok()) {
      io.out << "kept existing " << cfg.params_path << " and " << cfg.secrets_path
             << " (use --force to regenerate)\n";
      return absl::OkStatus();
    }
    return MakeError(ErrorReason::kConfigInvalid,
                     "refusing to overwrite an incomplete or unreadable setup; use --force");
  }
  auto rng = MakeRng(cfg, "setup");
  IMSIBC_ASSIGN_OR_RETURN(ibc::MasterKeyPair master,
                          ibc::PkgSetup(pairing::PairingParams::Default(), *rng));
  IMSIBC_RETURN_IF_ERROR(WriteJson(cfg.secrets_path, ibc::MasterSecretsToJson(master), true));
  IMSIBC_RETURN_IF_ERROR(WriteJson(cfg.params_path, ibc::ToJson(master.pub), false));
  io.out << "wrote " << cfg.params_path << " (params " << master.pub.params.DigestHex().substr(0, 16)
         << ")\n";
  io.out << "wrote " << cfg.secrets_path << " (mode 0600)\n";
  return absl::OkStatus();
}

absl::Status CmdEnroll(const CliConfig& cfg, const EnrollArgs& args, Io io) {
  IMSIBC_RETURN_IF_ERROR(CheckIdentities(&args.impi, args.impu));
  gba::SubscriberStore store;
  if (fs::exists(cfg.subscriber_db_path)) {
    IMSIBC_ASSIGN_OR_RETURN(store, LoadStore(cfg.subscriber_db_path, io));
  }
  auto rng = MakeRng(cfg, "enroll/" + args.impi + "/" + args.impu);
  gba::SubscriberRecord rec;
  rec.impi = args.impi;
  rec.impu = args.impu;
  IMSIBC_ASSIGN_OR_RETURN(rec.sk, rng->Generate(ibc::kSharedKeySize));
  const std::vector<std::string> nafs =
      args.naf_ids.empty() ? std::vector<std::string>{sim::kDefaultNafId} : args.naf_ids;
  rec.guss.allowed_naf_ids = {nafs.begin(), nafs.end()};
  rec.guss.attributes = args.attributes;
  IMSIBC_RETURN_IF_ERROR(store.Add(std::move(rec)));
  IMSIBC_RETURN_IF_ERROR(WriteJson(cfg.subscriber_db_path, store.ToJson(), true));
  io.out << "enrolled (" << args.impi << ", " << args.impu << "); " << store.size()
         << " subscriber(s) in " << cfg.subscriber_db_path << "\n";
  return absl::OkStatus();
}

absl::Status CmdFlow(const CliConfig& cfg, const FlowArgs& args, Io io) {
  IMSIBC_RETURN_IF_ERROR(CheckIdentities(args.impi ? &*args.impi : nullptr, args.impu));
  IMSIBC_ASSIGN_OR_RETURN(ibc::MasterKeyPair master, LoadMaster(cfg, io));
  IMSIBC_ASSIGN_OR_RETURN(gba::SubscriberStore store, LoadStore(cfg.subscriber_db_path, io));

  const gba::SubscriberRecord* rec = nullptr;
  if (args.impi) {
    IMSIBC_ASSIGN_OR_RETURN(rec, store.Find(*args.impi, args.impu));
  } else {
    const auto found = store.FindByImpu(args.impu);
    if (found.empty()) {
      return MakeError(ErrorReason::kUnknownCouple, args.impu + " is not enrolled");
    }
    if (found.size() > 1) return Usage(args.impu + " has several IMPIs; pass --impi");
    rec = found[0];
  }

  sim::World world;
  world.master = master;
  world.subscribers = store;
  world.nafs.push_back(gba::NafConfig{args.naf_id, args.naf_id, true});
  const std::vector<sim::FlowSpec> flows = {
      {gba::UeIdentity{rec->impi, rec->impu, rec->sk}, args.naf_id}};
  sim::SimConfig sc;
  sc.n_ues = 1;
  IMSIBC_ASSIGN_OR_RETURN(sc.rng_seed, SeedOrRandom(cfg));
  IMSIBC_ASSIGN_OR_RETURN(sim::SimResult r, sim::RunFlows(sc, world, flows));

  IMSIBC_ASSIGN_OR_RETURN(auto msgs, gba::ParseTrace(r.TranscriptText()));
  for (size_t i = 0; i < msgs.size(); ++i) {
    const auto& m = msgs[i];
    io.out << (m.number() < 10 ? " " : "") << m.number() << "  "
           << Pad(gba::RoleName(m.from()), 3) << " -> " << Pad(gba::RoleName(m.to()), 3) << "  "
           << m.type();
    if (cfg.verbosity >= 1) io.out << "  (session " << m.session_id << ", seq " << m.seq << ")";
    io.out << "\n";
    // Wire bodies carry only public values and ciphertexts.
    if (cfg.verbosity >= 2) io.out << "    " << r.transcript[i] << "\n";
  }
  if (!args.trace_path.empty()) {
    IMSIBC_RETURN_IF_ERROR(WriteFile(args.trace_path, r.TranscriptText(), false));
  }
  const sim::SessionOutcome& o = r.report.outcomes.at(0);
  io.out << "messages: " << msgs.size() << "\n";
  if (!o.complete) {
    io.out << "outcome: Failed (" << o.reason << " at " << o.failed_at << ", message "
           << o.failed_message << ")\n";
    const auto reason = ReasonFromName(o.reason);
    return MakeError(reason.value_or(ErrorReason::kBadState), "flow did not complete");
  }
  io.out << "outcome: Complete\n";
  io.out << "Ks-NAF fingerprint: " << o.ks_fingerprint
         << (o.ks_match ? " (UE and NAF agree)" : " (MISMATCH)") << "\n";
  if (!o.ks_match) {
    return MakeError(ErrorReason::kSignatureInvalid, "UE and NAF derived different keys");
  }
  return absl::OkStatus();
}

absl::Status CmdSimulate(const CliConfig& cfg, const SimulateArgs& args, Io io) {
  sim::SimConfig sc;
  if (!args.config_path.empty()) {
    IMSIBC_ASSIGN_OR_RETURN(json j, ReadJson(args.config_path));
    IMSIBC_ASSIGN_OR_RETURN(sc, sim::SimConfig::FromJson(j));
  }
  if (cfg.seed) sc.rng_seed = *cfg.seed;
  if (args.n_ues) sc.n_ues = *args.n_ues;
  if (args.batch_mode) sc.batch_mode = *args.batch_mode;
  if (args.randomized_batch) sc.randomized_batch = *args.randomized_batch;
  if (args.window_size) sc.window_size = *args.window_size;
  if (args.window_deadline_ms) sc.window_deadline_ms = *args.window_deadline_ms;
  if (args.adversary) {
    const auto kind = sim::AdversaryFromName(*args.adversary);
    if (!kind) return Usage("unknown adversary '" + *args.adversary + "'");
    sc.adversary = *kind;
  }
  if (args.inject_point) sc.inject_point = *args.inject_point;
  if (args.target_ue) sc.target_ue = *args.target_ue;

  IMSIBC_ASSIGN_OR_RETURN(sim::SimResult r, sim::RunScenario(sc));
  const sim::SimReport& rep = r.report;
  const std::string out = cfg.output_path.empty() ? "sim_report.json" : cfg.output_path;
  IMSIBC_RETURN_IF_ERROR(WriteJson(out, rep.ToJson(), false));
  if (!args.transcript_path.empty()) {
    IMSIBC_RETURN_IF_ERROR(WriteFile(args.transcript_path, r.TranscriptText(), false));
  }
  io.out << "sessions: " << rep.outcomes.size() << " (" << rep.complete << " complete, "
         << rep.failed << " failed)\n";
  io.out << "messages: " << rep.messages << ", pairings: " << rep.pairings_total << "\n";
  if (sc.adversary != sim::AdversaryKind::kNone) {
    io.out << "adversary: " << sim::AdversaryName(sc.adversary) << " at message "
           << rep.adversary.point << ", " << rep.adversary.mutations.size() << " mutation(s)\n";
  }
  if (cfg.verbosity >= 1) {
    for (const auto& o : rep.outcomes) {
      io.out << "  session " << o.session_id << " " << o.impu << ": "
             << (o.complete ? "Complete" : "Failed (" + o.reason + ")") << "\n";
    }
  }
  io.out << "transcript digest: " << rep.transcript_digest << "\n";
  io.out << "report: " << out << "\n";
  return absl::OkStatus();
}

absl::Status CmdBench(const CliConfig& cfg, const BenchArgs& args, Io io) {
  if (args.ns.empty()) return Usage("no batch sizes given");
  bench::BenchOptions opts;
  opts.seed = cfg.seed.value_or(1);
  opts.threads = args.threads;
  IMSIBC_ASSIGN_OR_RETURN(bench::TimingReport rep,
                          bench::RunBench(args.iterations, args.ns, opts));
  io.out << rep.ToTable();
  if (!cfg.output_path.empty()) {
    IMSIBC_RETURN_IF_ERROR(WriteJson(cfg.output_path, rep.ToJson(), false));
    io.out << "report: " << cfg.output_path << "\n";
  }
  return absl::OkStatus();
}

namespace {

absl::Status Succeeded(const std::string& what) {
  return MakeError(ErrorReason::kSignatureInvalid, "attack succeeded: " + what);
}

absl::StatusOr<sim::SimResult> RunAttack(const CliConfig& cfg, sim::SimConfig sc) {
  sc.rng_seed = cfg.seed.value_or(1);
  return sim::RunScenario(sc);
}

absl::Status MaybeWrite(const CliConfig& cfg, const sim::SimResult& r) {
  if (cfg.output_path.empty()) return absl::OkStatus();
  return WriteJson(cfg.output_path, r.report.ToJson(), false);
}

size_t HonestComplete(const sim::SimReport& rep) { return rep.complete; }

}  // namespace

absl::Status CmdAttack(const CliConfig& cfg, const AttackArgs& args, Io io) {
  sim::SimConfig sc;
  sc.n_ues = args.n_ues;
  sc.inject_point = args.point;
  io.out << "attack: " << args.name << " against " << args.n_ues << " UE(s)\n";

  if (args.name == "mitm-impostor") {
    sc.adversary = sim::AdversaryKind::kMitmImpostor;
    IMSIBC_ASSIGN_OR_RETURN(sim::SimResult r, RunAttack(cfg, sc));
    IMSIBC_RETURN_IF_ERROR(MaybeWrite(cfg, r));
    const auto& rogue = r.report.adversary.rogue.at(0);
    io.out << "impostor couple: (mallory@rogue.example.net, " << rogue.impu << ")\n";
    io.out << "honest sessions complete: " << HonestComplete(r.report) << "/" << args.n_ues << "\n";
    if (rogue.complete) return Succeeded("impostor bootstrapped");
    if (rogue.reason == "unknown-couple" && rogue.failed_at == "HSS") {
      io.out << "verdict: rejected at HSS lookup\n";
    } else {
      io.out << "verdict: rejected at " << rogue.failed_at << " (" << rogue.reason << ")\n";
    }
    return absl::OkStatus();
  }

  if (args.name == "replay-attacker") {
    sc.adversary = sim::AdversaryKind::kReplayAttacker;
    IMSIBC_ASSIGN_OR_RETURN(sim::SimResult r, RunAttack(cfg, sc));
    IMSIBC_RETURN_IF_ERROR(MaybeWrite(cfg, r));
    const auto& inj = r.report.adversary.injected;
    if (inj.empty()) return MakeError(ErrorReason::kBadState, "nothing was replayed");
    io.out << "honest sessions complete: " << HonestComplete(r.report) << "/" << args.n_ues << "\n";
    if (inj[0].accepted) return Succeeded("replayed (RAND, Sig1) accepted");
    io.out << "verdict: replayed (RAND, Sig1) rejected (" << inj[0].reason << ", "
           << inj[0].pairings << " pairings spent)\n";
    return absl::OkStatus();
  }

  if (args.name == "signature-tamperer") {
    sc.adversary = sim::AdversaryKind::kSignatureTamperer;
    IMSIBC_ASSIGN_OR_RETURN(sim::SimResult r, RunAttack(cfg, sc));
    IMSIBC_RETURN_IF_ERROR(MaybeWrite(cfg, r));
    const auto& t = r.report.outcomes.at(0);
    io.out << "tampered: " << (r.report.adversary.point == 7 ? "Sig1" : "Sig2")
           << " of session " << t.session_id << "\n";
    if (t.complete) return Succeeded("tampered signature accepted");
    io.out << "verdict: rejected at " << t.failed_at << " (" << t.reason << ", message "
           << t.failed_message << ")\n";
    return absl::OkStatus();
  }

  if (args.name == "batch-cancellation-pair") {
    sc.adversary = sim::AdversaryKind::kBatchCancellationPair;
    sc.batch_mode = true;
    sc.window_size = std::max<size_t>(2, args.n_ues);
    sc.randomized_batch = false;
    IMSIBC_ASSIGN_OR_RETURN(sim::SimResult naive, RunAttack(cfg, sc));
    sc.randomized_batch = true;
    IMSIBC_ASSIGN_OR_RETURN(sim::SimResult weighted, RunAttack(cfg, sc));
    IMSIBC_RETURN_IF_ERROR(MaybeWrite(cfg, weighted));
    const bool naive_passed = naive.report.outcomes[0].complete && naive.report.outcomes[1].complete;
    const bool weighted_rejected =
        !weighted.report.outcomes[0].complete && !weighted.report.outcomes[1].complete;
    io.out << "naive batch: forged pair " << (naive_passed ? "accepted" : "rejected") << "\n";
    io.out << "randomized batch: forged pair " << (weighted_rejected ? "rejected" : "accepted")
           << " (" << weighted.report.outcomes[0].reason << ")\n";
    if (!weighted_rejected) return Succeeded("randomized batch accepted the forged pair");
    io.out << "verdict: passes naive batch, rejected by randomized batch and per-entry fallback\n";
    return absl::OkStatus();
  }

  if (args.name == "eavesdropper") {
    IMSIBC_ASSIGN_OR_RETURN(sim::SimResult r, RunAttack(cfg, sc));
    IMSIBC_RETURN_IF_ERROR(MaybeWrite(cfg, r));
    IMSIBC_ASSIGN_OR_RETURN(auto msgs, gba::ParseTrace(r.TranscriptText()));
    size_t tries = 0, opened = 0;
    for (const auto& m : msgs) {
      const auto* ok = m.As<gba::BootstrapOk>();
      if (ok == nullptr) continue;
      for (size_t u = 0; u < r.ue_private_keys.size(); ++u) {
        if (u + 1 == m.session_id || !r.ue_private_keys[u]) continue;
        ++tries;
        opened += ibc::IbeDecrypt(r.ue_private_keys[u]->kpriv1, ok->btid).ok();
      }
    }
    io.out << "B-TID ciphertexts tried under other users' Kpriv1: " << tries << "\n";
    if (opened > 0) return Succeeded(std::to_string(opened) + " B-TIDs opened");
    io.out << "verdict: no B-TID decrypts under another user's key\n";
    return absl::OkStatus();
  }

  return Usage("unknown attack '" + args.name + "'");
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"imsibc: identity-based GBA bootstrapping for IMS"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "imsibc 0.1.0");

  CliConfig cfg;
  uint64_t seed = 0;
  app.add_option("--params", cfg.params_path, "public parameter file")->capture_default_str();
  app.add_option("--secrets", cfg.secrets_path, "master secret file")->capture_default_str();
  app.add_option("--db", cfg.subscriber_db_path, "subscriber database")->capture_default_str();
  app.add_option("--out", cfg.output_path, "output report path");
  auto* seed_opt = app.add_option("--seed", seed, "deterministic RNG seed");
  app.add_flag("-v,--verbose", cfg.verbosity, "more output; repeat for more");

  bool force = false;
  auto* setup = app.add_subcommand("setup", "generate PKG parameters and master secrets");
  setup->add_flag("--force", force, "regenerate even if files exist");

  EnrollArgs enroll_args;
  std::vector<std::string> attrs;
  auto* enroll = app.add_subcommand("enroll", "add a subscriber with a fresh sk");
  enroll->add_option("--impi", enroll_args.impi, "private identity (NAI)")->required();
  enroll->add_option("--impu", enroll_args.impu, "public identity (SIP URI)")->required();
  enroll->add_option("--naf", enroll_args.naf_ids, "NAF-ID allowed by the GUSS (repeatable)");
  enroll->add_option("--attr", attrs, "GUSS attribute key=value (repeatable)");

  FlowArgs flow_args;
  flow_args.naf_id = sim::kDefaultNafId;
  std::string flow_impi;
  auto* flow = app.add_subcommand("flow", "run one 12-message bootstrap and NAF contact");
  flow->add_option("--impu", flow_args.impu, "enrolled public identity")->required();
  auto* impi_opt = flow->add_option("--impi", flow_impi, "private identity, if ambiguous");
  flow->add_option("--naf-id", flow_args.naf_id, "NAF to contact")->capture_default_str();
  flow->add_option("--trace-out", flow_args.trace_path, "write the golden trace here");

  SimulateArgs sim_args;
  size_t n_ues = 0, window_size = 0, target_ue = 0;
  uint64_t deadline = 0;
  std::string adversary;
  int inject_point = 0;
  bool batch = false, randomized = false;
  auto* simulate = app.add_subcommand("simulate", "run a simulator scenario");
  simulate->add_option("--config", sim_args.config_path, "SimConfig JSON file");
  simulate->add_option("--transcript", sim_args.transcript_path, "write the transcript here");
  auto* n_opt = simulate->add_option("--n-ues", n_ues);
  auto* batch_opt = simulate->add_flag("--batch", batch, "batch-window verification");
  auto* rand_opt = simulate->add_flag("--randomized", randomized, "small-exponent batch weights");
  auto* ws_opt = simulate->add_option("--window-size", window_size);
  auto* wd_opt = simulate->add_option("--window-deadline-ms", deadline);
  auto* adv_opt = simulate->add_option("--adversary", adversary);
  auto* ip_opt = simulate->add_option("--inject-point", inject_point);
  auto* tu_opt = simulate->add_option("--target-ue", target_ue);

  BenchArgs bench_args;
  std::vector<size_t> ns;
  auto* bench_cmd = app.add_subcommand("bench", "time primitives and batch verification");
  bench_cmd->add_option("ns", ns, "batch sizes (default 1 10 100 1000)");
  bench_cmd->add_option("--iterations", bench_args.iterations)->capture_default_str();
  bench_cmd->add_option("--threads", bench_args.threads)->capture_default_str();

  AttackArgs attack_args;
  int point = 0;
  auto* attack = app.add_subcommand("attack", "run one adversary scenario and print a verdict");
  attack->add_option("name", attack_args.name, "attack name")
      ->required()
      ->check(CLI::IsMember(AttackNames()));
  attack->add_option("--n-ues", attack_args.n_ues)->capture_default_str();
  auto* point_opt = attack->add_option("--point", point, "message number to tamper with");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (seed_opt->count()) cfg.seed = seed;

  for (const auto& a : attrs) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "error: invalid-argument: --attr expects key=value\n";
      return kExitUsage;
    }
    enroll_args.attributes[a.substr(0, eq)] = a.substr(eq + 1);
  }
  if (impi_opt->count()) flow_args.impi = flow_impi;
  if (n_opt->count()) sim_args.n_ues = n_ues;
  if (batch_opt->count()) sim_args.batch_mode = batch;
  if (rand_opt->count()) sim_args.randomized_batch = randomized;
  if (ws_opt->count()) sim_args.window_size = window_size;
  if (wd_opt->count()) sim_args.window_deadline_ms = deadline;
  if (adv_opt->count()) sim_args.adversary = adversary;
  if (ip_opt->count()) sim_args.inject_point = inject_point;
  if (tu_opt->count()) sim_args.target_ue = target_ue;
  if (!ns.empty()) bench_args.ns = ns;
  if (point_opt->count()) attack_args.point = point;

  const Io io{out, err};
  absl::Status st;
  if (setup->parsed()) {
    st = CmdSetup(cfg, force, io);
  } else if (enroll->parsed()) {
    st = CmdEnroll(cfg, enroll_args, io);
  } else if (flow->parsed()) {
    st = CmdFlow(cfg, flow_args, io);
  } else if (simulate->parsed()) {
    st = CmdSimulate(cfg, sim_args, io);
  } else if (bench_cmd->parsed()) {
    st = CmdBench(cfg, bench_args, io);
  } else if (attack->parsed()) {
    st = CmdAttack(cfg, attack_args, io);
  }
  if (!st.ok()) {
    err << "error: " << st.message() << "\n";
  }
  return ExitCodeFor(st);
}

}  // namespace imsibc::cli

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

#include "imsibc/sim/simulator.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <queue>
#include <set>

#include "imsibc/core/errors.h"
#include "imsibc/core/hash.h"
#include "imsibc/gba/bsf.h"
#include "imsibc/gba/hss.h"
#include "imsibc/gba/wire.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::sim {

using gba::ProtocolMessage;
using gba::Role;

namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

enum class EventKind { kStart, kDeliver, kFlush };

struct Event {
  uint64_t time;
  uint64_t order;
  EventKind kind;
  size_t flow = 0;
  ProtocolMessage msg = {};
  bool injected = false;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return a.time != b.time ? a.time > b.time : a.order > b.order;
  }
};

struct Failure {
  std::string reason;
  std::string role;
  int message = 0;
};

class Network {
 public:
  Network(const SimConfig& cfg, const World& world,
          const std::vector<FlowSpec>& flows)
      : cfg_(cfg),
        root_(cfg.rng_seed, "sim"),
        hss_rng_(root_.Fork("hss")),
        bsf_rng_(root_.Fork("bsf")),
        adv_rng_(root_.Fork("adversary")),
        flows_(flows),
        hss_(world.master, world.subscribers, hss_rng_) {
    gba::BsfConfig bc;
    bc.domain = world.bsf_domain;
    bc.batch_mode = cfg.batch_mode;
    bc.randomized_batch = cfg.randomized_batch;
    bc.window_size = cfg.window_size;
    bc.window_deadline_ms = cfg.window_deadline_ms;
    for (const auto& n : world.nafs) bc.naf_registry[n.naf_id] = n.hostname;
    bsf_ = std::make_unique<gba::Bsf>(bc, world.master.pub, bsf_rng_);
    const std::string params_ref = world.master.pub.params.DigestHex();
    for (const auto& n : world.nafs) {
      naf_rngs_.push_back(
          std::make_unique<pairing::SeededRng>(root_.Fork("naf/" + n.naf_id)));
      nafs_.emplace(n.naf_id,
                    std::make_unique<gba::Naf>(n, params_ref, *naf_rngs_.back()));
    }
    master_pub_ = world.master.pub;
  }

  absl::StatusOr<SimResult> Run();

 private:
  uint64_t SessionOf(size_t flow) const { return flow + 1; }
  void AddUe(const gba::UeIdentity& id) {
    ue_rngs_.push_back(std::make_unique<pairing::SeededRng>(
        root_.Fork("ue/" + std::to_string(ues_.size()))));
    ues_.push_back(
        std::make_unique<gba::UserEquipment>(id, master_pub_, *ue_rngs_.back()));
  }

  void Push(Event e) {
    e.order = next_order_++;
    queue_.push(std::move(e));
  }
  void Send(ProtocolMessage msg, uint64_t now);
  void Record(const ProtocolMessage& msg);
  void Deliver(const Event& e);
  void ScheduleFlush();
  void HandleBsfOutput(gba::BsfOutput out, uint64_t now, bool injected,
                       int number, uint64_t pairings);
  void Fail(uint64_t session, const absl::Status& st, Role role, int number);
  SessionOutcome Outcome(size_t flow) const;

  const SimConfig& cfg_;
  pairing::SeededRng root_;
  pairing::SeededRng hss_rng_;
  pairing::SeededRng bsf_rng_;
  pairing::SeededRng adv_rng_;
  std::vector<FlowSpec> flows_;
  gba::Hss hss_;
  std::unique_ptr<gba::Bsf> bsf_;
  ibc::MasterPublicKey master_pub_;
  std::vector<std::unique_ptr<pairing::SeededRng>> naf_rngs_;
  std::map<std::string, std::unique_ptr<gba::Naf>> nafs_;
  std::vector<std::unique_ptr<pairing::SeededRng>> ue_rngs_;
  std::vector<std::unique_ptr<gba::UserEquipment>> ues_;
  std::unique_ptr<Adversary> adversary_;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  uint64_t next_order_ = 0;
  std::set<uint64_t> scheduled_flushes_;
  std::vector<std::string> transcript_;
  std::map<uint64_t, std::vector<size_t>> lines_by_session_;
  std::map<uint64_t, Failure> failures_;
  std::vector<InjectedOutcome> injected_;
  PhaseTimes wall_;
};

void Network::Record(const ProtocolMessage& msg) {
  lines_by_session_[msg.session_id].push_back(transcript_.size());
  transcript_.push_back(gba::TraceLine(msg));
}

void Network::Send(ProtocolMessage msg, uint64_t now) {
  std::vector<ProtocolMessage> extra;
  adversary_->OnWire(msg, extra);
  Record(msg);
  Push(Event{now + cfg_.latency_ms, 0, EventKind::kDeliver, 0, std::move(msg)});
  for (auto& m : extra) {
    Record(m);
    Event e{now + cfg_.latency_ms, 0, EventKind::kDeliver, 0, std::move(m)};
    e.injected = true;
    Push(std::move(e));
  }
}

void Network::Fail(uint64_t session, const absl::Status& st, Role role,
                   int number) {
  if (failures_.count(session)) return;
  failures_[session] = Failure{std::string(ReasonName(ReasonOf(st))),
                               std::string(gba::RoleName(role)), number};
}

void Network::ScheduleFlush() {
  const auto deadline = bsf_->NextDeadline();
  if (deadline && scheduled_flushes_.insert(*deadline).second) {
    Push(Event{*deadline, 0, EventKind::kFlush});
  }
}

void Network::HandleBsfOutput(gba::BsfOutput out, uint64_t now, bool injected,
                              int number, uint64_t pairings) {
  if (injected) {
    InjectedOutcome io;
    io.message = number;
    io.pairings = pairings;
    io.accepted = out.failures.empty();
    if (!out.failures.empty()) {
      io.session_id = out.failures.front().session_id;
      io.reason = std::string(ReasonName(ReasonOf(out.failures.front().status)));
    }
    injected_.push_back(io);
    // A rejected injection touches no honest session.
    if (!io.accepted) return;
  }
  for (const auto& f : out.failures) Fail(f.session_id, f.status, Role::kBsf, number);
  for (auto& m : out.messages) Send(std::move(m), now);
}

void Network::Deliver(const Event& e) {
  const ProtocolMessage& msg = e.msg;
  const uint64_t sid = msg.session_id;
  const int number = msg.number();
  const auto t0 = Clock::now();
  absl::StatusOr<std::vector<ProtocolMessage>> r = std::vector<ProtocolMessage>{};

  switch (msg.to()) {
    case Role::kUe: {
      const size_t flow = sid - 1;
      if (flow >= ues_.size()) return;
      r = ues_[flow]->Handle(msg);
      break;
    }
    case Role::kNaf: {
      const auto it = nafs_.find(flows_[sid - 1].naf_id);
      if (it == nafs_.end()) {
        r = MakeError(ErrorReason::kTransport, "no route to NAF " + flows_[sid - 1].naf_id);
      } else {
        r = it->second->Handle(msg);
      }
      break;
    }
    case Role::kHss:
      if (!cfg_.hss_reachable) {
        r = MakeError(ErrorReason::kTransport, "HSS unreachable");
      } else {
        auto one = hss_.Handle(msg);
        if (one.ok()) {
          r = std::vector<ProtocolMessage>{*std::move(one)};
        } else {
          r = one.status();
        }
      }
      break;
    case Role::kBsf: {
      pairing::PairingScope scope;
      gba::BsfOutput out = bsf_->Handle(msg, e.time);
      const uint64_t spent = scope.Elapsed();
      (number <= 8 ? wall_.bootstrap_ms : wall_.naf_ms) += MsSince(t0);
      HandleBsfOutput(std::move(out), e.time, e.injected, number, spent);
      ScheduleFlush();
      return;
    }
  }
  (number <= 8 ? wall_.bootstrap_ms : wall_.naf_ms) += MsSince(t0);

  if (e.injected) {
    injected_.push_back(InjectedOutcome{
        sid, number, r.ok(), r.ok() ? "" : std::string(ReasonName(ReasonOf(r.status()))), 0});
    if (!r.ok()) return;
  }
  if (!r.ok()) {
    Fail(sid, r.status(), msg.to(), number);
    return;
  }
  for (auto& m : *r) Send(std::move(m), e.time);
}

SessionOutcome Network::Outcome(size_t flow) const {
  SessionOutcome o;
  o.ue = flow;
  o.impu = flows_[flow].id.impu;
  o.session_id = SessionOf(flow);
  const auto lines = lines_by_session_.find(o.session_id);
  std::string text;
  if (lines != lines_by_session_.end()) {
    o.messages = lines->second.size();
    for (size_t i : lines->second) text += transcript_[i] + "\n";
  }
  o.transcript_digest = HexEncode(Sha256(AsBytes(text)));

  const auto fail = failures_.find(o.session_id);
  const auto ue_ks = ues_[flow]->KeyFor(o.session_id);
  const auto naf = nafs_.find(flows_[flow].naf_id);
  const auto naf_ks =
      naf == nafs_.end() ? std::nullopt : naf->second->KeyFor(o.session_id);
  if (fail != failures_.end()) {
    o.reason = fail->second.reason;
    o.failed_at = fail->second.role;
    o.failed_message = fail->second.message;
  } else if (!ue_ks || !naf_ks) {
    o.reason = std::string(ReasonName(ErrorReason::kBadState));
    o.failed_at = "sim";
  } else {
    o.complete = true;
    o.ks_match = *ue_ks == *naf_ks;
    o.ks_fingerprint = ue_ks->Fingerprint();
  }
  return o;
}

absl::StatusOr<SimResult> Network::Run() {
  pairing::PairingScope total;
  const size_t honest = flows_.size();
  AdversaryContext ctx;
  for (size_t t = cfg_.target_ue; t < std::min(honest, cfg_.target_ue + 2); ++t) {
    ctx.target_sessions.push_back(SessionOf(t));
    ctx.target_ids.push_back(flows_[t].id);
  }
  const int point = cfg_.adversary == AdversaryKind::kNone ? 0 : cfg_.injection_point();
  IMSIBC_ASSIGN_OR_RETURN(adversary_,
                          MakeAdversary(cfg_.adversary, point, ctx, adv_rng_));

  const auto setup_t0 = Clock::now();
  for (const auto& f : flows_) AddUe(f.id);
  const std::string rogue_naf = honest > 0 ? flows_[0].naf_id : kDefaultNafId;
  for (const auto& id : adversary_->RogueUes()) {
    flows_.push_back(FlowSpec{id, rogue_naf});
    AddUe(id);
  }
  wall_.setup_ms += MsSince(setup_t0);

  for (size_t i = 0; i < flows_.size(); ++i) {
    Event e{i * cfg_.start_spacing_ms, 0, EventKind::kStart};
    e.flow = i;
    Push(std::move(e));
  }

  while (!queue_.empty()) {
    Event e = queue_.top();
    queue_.pop();
    switch (e.kind) {
      case EventKind::kStart: {
        auto m = ues_[e.flow]->Start(flows_[e.flow].naf_id, SessionOf(e.flow));
        if (!m.ok()) {
          Fail(SessionOf(e.flow), m.status(), Role::kUe, 0);
        } else {
          Send(*std::move(m), e.time);
        }
        break;
      }
      case EventKind::kDeliver:
        Deliver(e);
        break;
      case EventKind::kFlush: {
        scheduled_flushes_.erase(e.time);
        if (bsf_->NextDeadline() != e.time) break;
        const auto t0 = Clock::now();
        gba::BsfOutput out = bsf_->Flush();
        wall_.flush_ms += MsSince(t0);
        HandleBsfOutput(std::move(out), e.time, false, 7, 0);
        ScheduleFlush();
        break;
      }
    }
  }

  SimResult result;
  result.transcript = transcript_;
  result.bsf_sessions = bsf_->sessions().Snapshot();
  SimReport& rep = result.report;
  rep.config = cfg_;
  rep.config.n_ues = honest;
  rep.messages = transcript_.size();
  std::vector<std::string> key_hex;
  for (size_t i = 0; i < flows_.size(); ++i) {
    SessionOutcome o = Outcome(i);
    if (const auto ks = ues_[i]->KeyFor(o.session_id)) key_hex.push_back(HexEncode(ks->key));
    if (i < honest) {
      (o.complete ? rep.complete : rep.failed)++;
      rep.outcomes.push_back(std::move(o));
      const auto& keys = ues_[i]->keys();
      result.ue_private_keys.push_back(keys ? keys->priv : std::nullopt);
    } else {
      rep.adversary.rogue.push_back(std::move(o));
    }
  }
  for (const auto& [id, naf] : nafs_) {
    for (size_t i = 0; i < flows_.size(); ++i) {
      if (const auto ks = naf->KeyFor(SessionOf(i))) key_hex.push_back(HexEncode(ks->key));
    }
  }
  rep.bsf_records_keyless = true;
  static const std::set<std::string> kAllowedFields = {
      "session_id", "impi",   "impu",       "btid",  "user_pub", "guss",
      "issued_rand", "params_ref", "state", "history", "failure"};
  for (const auto& s : result.bsf_sessions) {
    const nlohmann::json j = gba::ToJson(s);
    const std::string dump = j.dump();
    for (const auto& [k, v] : j.items()) {
      if (!kAllowedFields.count(k)) rep.bsf_records_keyless = false;
    }
    for (const auto& hex : key_hex) {
      if (dump.find(hex) != std::string::npos) rep.bsf_records_keyless = false;
    }
  }

  for (const auto& f : bsf_->flushes()) {
    rep.pairings_flush += f.pairings;
    rep.batch_checks += f.batch_checks;
    rep.single_checks += f.single_checks;
  }
  rep.flushes = bsf_->flushes().size();
  rep.pairings_total = total.Elapsed();
  rep.wall = wall_;
  rep.transcript_digest = HexEncode(Sha256(AsBytes(result.TranscriptText())));
  rep.adversary.kind = cfg_.adversary;
  rep.adversary.point = point;
  rep.adversary.mutations = adversary_->mutations();
  rep.adversary.injected = injected_;
  return result;
}

}  // namespace

std::string SimResult::TranscriptText() const {
  std::string out;
  for (const auto& line : transcript) {
    out += line;
    out += '\n';
  }
  return out;
}

absl::StatusOr<World> MakeWorld(size_t n_ues, pairing::Rng& rng) {
  World w;
  IMSIBC_ASSIGN_OR_RETURN(w.master,
                          ibc::PkgSetup(pairing::PairingParams::Default(), rng));
  w.nafs.push_back(gba::NafConfig{kDefaultNafId, kDefaultNafId, true});
  for (size_t i = 0; i < n_ues; ++i) {
    gba::SubscriberRecord r;
    r.impi = "user" + std::to_string(i) + "@ims.example.org";
    r.impu = "sip:user" + std::to_string(i) + "@ims.example.org";
    IMSIBC_ASSIGN_OR_RETURN(r.sk, rng.Generate(ibc::kSharedKeySize));
    r.guss.allowed_naf_ids = {kDefaultNafId};
    r.guss.attributes = {{"profile", "default"}};
    IMSIBC_RETURN_IF_ERROR(w.subscribers.Add(std::move(r)));
  }
  return w;
}

std::vector<FlowSpec> FlowsFor(const World& world) {
  std::vector<FlowSpec> flows;
  const std::string naf = world.nafs.empty() ? kDefaultNafId : world.nafs[0].naf_id;
  for (const auto& r : world.subscribers.records()) {
    flows.push_back(FlowSpec{gba::UeIdentity{r.impi, r.impu, r.sk}, naf});
  }
  return flows;
}

absl::StatusOr<SimResult> RunScenario(const SimConfig& cfg) {
  IMSIBC_RETURN_IF_ERROR(cfg.Validate());
  const auto t0 = Clock::now();
  pairing::SeededRng world_rng(cfg.rng_seed, "world");
  IMSIBC_ASSIGN_OR_RETURN(World world, MakeWorld(cfg.n_ues, world_rng));
  const double setup_ms = MsSince(t0);
  IMSIBC_ASSIGN_OR_RETURN(SimResult r, RunFlows(cfg, world, FlowsFor(world)));
  r.report.wall.setup_ms += setup_ms;
  return r;
}

absl::StatusOr<SimResult> RunFlows(const SimConfig& cfg, const World& world,
                                   const std::vector<FlowSpec>& flows) {
  SimConfig c = cfg;
  c.n_ues = std::max<size_t>(flows.size(), 1);
  IMSIBC_RETURN_IF_ERROR(c.Validate());
  if (flows.empty()) {
    return MakeError(ErrorReason::kConfigInvalid, "no flows to run");
  }
  Network net(c, world, flows);
  return net.Run();
}

}  // namespace imsibc::sim

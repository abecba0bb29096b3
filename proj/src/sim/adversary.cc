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

#include "imsibc/sim/adversary.h"

#include <utility>

#include "imsibc/core/errors.h"
#include "imsibc/ibc/key_wrap.h"

namespace imsibc::sim {

using gba::ProtocolMessage;

gba::G1Point FlipSignBit(const gba::G1Point& p) {
  Bytes enc = p.ToBytes();
  enc[0] ^= 0x20;  // compressed sign flag
  auto flipped = gba::G1Point::FromBytes(enc);
  return flipped.ok() ? *flipped : p;
}

namespace {

class NoAdversary final : public Adversary {
 public:
  NoAdversary() : Adversary(AdversaryKind::kNone, 0) {}
  void OnWire(ProtocolMessage&, std::vector<ProtocolMessage>&) override {}
};

// Claims a legitimate IMPU under a private identity the HSS never paired
// with it.
class MitmImpostor final : public Adversary {
 public:
  MitmImpostor(int point, AdversaryContext ctx, pairing::Rng& rng)
      : Adversary(AdversaryKind::kMitmImpostor, point), ctx_(std::move(ctx)) {
    rogue_.impi = "mallory@rogue.example.net";
    rogue_.impu = ctx_.target_ids.at(0).impu;
    rogue_.sk = *rng.Generate(ibc::kSharedKeySize);
  }

  std::vector<gba::UeIdentity> RogueUes() override { return {rogue_}; }

  void OnWire(ProtocolMessage& msg, std::vector<ProtocolMessage>&) override {
    const auto* req = msg.As<gba::BootstrapRequest>();
    if (req != nullptr && req->impi == rogue_.impi && !logged_) {
      logged_ = true;
      Log(msg.session_id, "bootstrap-request with couple (" + req->impi + ", " +
                              req->impu + ")");
    }
  }

 private:
  AdversaryContext ctx_;
  gba::UeIdentity rogue_;
  bool logged_ = false;
};

// Captures the target's challenge response and plays it back once the
// original has been answered.
class ReplayAttacker final : public Adversary {
 public:
  ReplayAttacker(int point, AdversaryContext ctx)
      : Adversary(AdversaryKind::kReplayAttacker, point), ctx_(std::move(ctx)) {}

  void OnWire(ProtocolMessage& msg,
              std::vector<ProtocolMessage>& injected) override {
    const uint64_t target = ctx_.target_sessions.at(0);
    if (msg.session_id != target || done_) return;
    if (msg.As<gba::ChallengeResponse>() != nullptr) {
      captured_ = msg;
    } else if (msg.As<gba::BootstrapOk>() != nullptr && captured_) {
      done_ = true;
      injected.push_back(*captured_);
      Log(target, "replayed captured (RAND, Sig1)");
    }
  }

 private:
  AdversaryContext ctx_;
  std::optional<ProtocolMessage> captured_;
  bool done_ = false;
};

// Flips the sign bit of Sig1 (message 7) or Sig2 (message 9), turning the
// signature into its negation: still a valid point, no longer valid.
class SignatureTamperer final : public Adversary {
 public:
  SignatureTamperer(int point, AdversaryContext ctx)
      : Adversary(AdversaryKind::kSignatureTamperer, point), ctx_(std::move(ctx)) {}

  void OnWire(ProtocolMessage& msg, std::vector<ProtocolMessage>&) override {
    if (done_ || msg.session_id != ctx_.target_sessions.at(0) ||
        msg.number() != point()) {
      return;
    }
    done_ = true;
    if (auto* m = std::get_if<gba::ChallengeResponse>(&msg.body)) {
      m->sig1 = FlipSignBit(m->sig1);
      Log(msg.session_id, "flipped Sig1 sign bit");
    } else if (auto* m9 = std::get_if<gba::ServiceRequestGba>(&msg.body)) {
      m9->sig2 = FlipSignBit(m9->sig2);
      Log(msg.session_id, "flipped Sig2 sign bit");
    }
  }

 private:
  AdversaryContext ctx_;
  bool done_ = false;
};

// Adds D to one Sig1 and subtracts it from another so the errors cancel in
// an unweighted batch.
class BatchCancellationPair final : public Adversary {
 public:
  BatchCancellationPair(int point, AdversaryContext ctx, pairing::Rng& rng)
      : Adversary(AdversaryKind::kBatchCancellationPair, point),
        ctx_(std::move(ctx)) {
    delta_ = gba::G1Point::Generator() * *gba::Scalar::Random(rng);
  }

  void OnWire(ProtocolMessage& msg, std::vector<ProtocolMessage>&) override {
    auto* m = std::get_if<gba::ChallengeResponse>(&msg.body);
    if (m == nullptr) return;
    if (msg.session_id == ctx_.target_sessions.at(0) && !plus_done_) {
      plus_done_ = true;
      m->sig1 = m->sig1 + delta_;
      Log(msg.session_id, "Sig1 + D");
    } else if (msg.session_id == ctx_.target_sessions.at(1) && !minus_done_) {
      minus_done_ = true;
      m->sig1 = m->sig1 - delta_;
      Log(msg.session_id, "Sig1 - D");
    }
  }

 private:
  AdversaryContext ctx_;
  gba::G1Point delta_;
  bool plus_done_ = false;
  bool minus_done_ = false;
};

}  // namespace

absl::StatusOr<std::unique_ptr<Adversary>> MakeAdversary(
    AdversaryKind kind, int point, AdversaryContext ctx, pairing::Rng& rng) {
  if (kind == AdversaryKind::kNone) return std::make_unique<NoAdversary>();
  if (!InjectionPoints(kind).count(point)) {
    return MakeError(ErrorReason::kInjectionOutOfRange,
                     std::string(AdversaryName(kind)) + " cannot act on message " +
                         std::to_string(point));
  }
  const size_t need = kind == AdversaryKind::kBatchCancellationPair ? 2 : 1;
  if (ctx.target_sessions.size() < need || ctx.target_ids.size() < need) {
    return MakeError(ErrorReason::kConfigInvalid, "not enough target sessions");
  }
  switch (kind) {
    case AdversaryKind::kMitmImpostor:
      return std::make_unique<MitmImpostor>(point, std::move(ctx), rng);
    case AdversaryKind::kReplayAttacker:
      return std::make_unique<ReplayAttacker>(point, std::move(ctx));
    case AdversaryKind::kSignatureTamperer:
      return std::make_unique<SignatureTamperer>(point, std::move(ctx));
    case AdversaryKind::kBatchCancellationPair:
      return std::make_unique<BatchCancellationPair>(point, std::move(ctx), rng);
    case AdversaryKind::kNone:
      break;
  }
  return std::make_unique<NoAdversary>();
}

}  // namespace imsibc::sim

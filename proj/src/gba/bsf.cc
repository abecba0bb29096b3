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

#include "imsibc/gba/bsf.h"

#include <span>
#include <utility>

#include "imsibc/core/errors.h"
#include "imsibc/core/hash.h"
#include "imsibc/ibc/ibe.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::gba {

namespace {

constexpr size_t kBtidPrefixChars = 16;

std::string MakeBtid(const Rand& rand, std::string_view impu, uint64_t counter,
                     std::string_view domain) {
  uint8_t ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(counter >> (56 - 8 * i));
  const Sha256Digest d = Sha256(Concat(rand, AsBytes(impu), ctr));
  return Base64UrlEncode(d).substr(0, kBtidPrefixChars) + "@" + std::string(domain);
}

}  // namespace

Bsf::Bsf(BsfConfig config, ibc::MasterPublicKey master, pairing::Rng& rng)
    : config_(std::move(config)),
      master_(std::move(master)),
      params_ref_(master_.params.DigestHex()),
      rng_(rng) {}

BsfOutput Bsf::Handle(const ProtocolMessage& msg, uint64_t now_ms) {
  if (msg.As<ChallengeResponse>() != nullptr) {
    return OnChallengeResponse(msg, now_ms);
  }
  absl::StatusOr<std::vector<ProtocolMessage>> r;
  if (msg.As<BootstrapRequest>() != nullptr) {
    r = OnBootstrapRequest(msg);
  } else if (msg.As<AvResponse>() != nullptr) {
    r = OnAvResponse(msg);
  } else if (msg.As<AuthInfoRequest>() != nullptr) {
    r = OnAuthInfoRequest(msg);
  } else {
    r = MakeError(ErrorReason::kBadState,
                  "BSF cannot handle " + std::string(msg.type()));
  }
  BsfOutput out;
  if (r.ok()) {
    out.messages = *std::move(r);
  } else {
    out.failures.push_back({msg.session_id, r.status()});
  }
  return out;
}

absl::StatusOr<std::vector<ProtocolMessage>> Bsf::OnBootstrapRequest(
    const ProtocolMessage& msg) {
  const auto& req = *msg.As<BootstrapRequest>();
  if (awaiting_av_.count(msg.session_id) ||
      sessions_.Get(msg.session_id).ok()) {
    return MakeError(ErrorReason::kBadState, "session id already in use");
  }
  awaiting_av_[msg.session_id] = req;
  return std::vector<ProtocolMessage>{
      Reply(msg, AvRequest{req.impi, req.impu})};
}

absl::StatusOr<std::vector<ProtocolMessage>> Bsf::OnAvResponse(
    const ProtocolMessage& msg) {
  const auto& av = *msg.As<AvResponse>();
  const auto it = awaiting_av_.find(msg.session_id);
  if (it == awaiting_av_.end()) {
    return MakeError(ErrorReason::kBadState, "unsolicited av-response");
  }
  if (av.params_ref != params_ref_) {
    return MakeError(ErrorReason::kConfigInvalid, "HSS uses different PKG params");
  }
  BootstrappingSession s;
  s.session_id = msg.session_id;
  s.impi = it->second.impi;
  s.impu = it->second.impu;
  s.user_pub = av.pub;
  s.guss = av.guss;
  s.issued_rand = av.rand;
  s.params_ref = av.params_ref;
  awaiting_av_.erase(it);
  IMSIBC_RETURN_IF_ERROR(sessions_.Create(s));
  return std::vector<ProtocolMessage>{Reply(
      msg, UnauthorizedChallenge{s.impu, av.rand, av.params_ref, av.pub,
                                 av.wrapped})};
}

BsfOutput Bsf::OnChallengeResponse(const ProtocolMessage& msg, uint64_t now_ms) {
  const auto& resp = *msg.As<ChallengeResponse>();
  BsfOutput out;
  // Replay and RAND checks come before any pairing work.
  if (absl::Status st = sessions_.ConsumeRand(msg.session_id, resp.rand);
      !st.ok()) {
    out.failures.push_back({msg.session_id, st});
    return out;
  }
  auto session = sessions_.Get(msg.session_id);
  if (session->impu != resp.impu) {
    const absl::Status st =
        MakeError(ErrorReason::kBadState, "IMPU differs from the challenged one");
    (void)sessions_.Fail(msg.session_id, ReasonName(ReasonOf(st)));
    out.failures.push_back({msg.session_id, st});
    return out;
  }
  WindowEntry w{msg.session_id, msg.seq,
                ibc::SignedEntry{session->user_pub,
                                 Bytes(resp.rand.begin(), resp.rand.end()),
                                 resp.sig1}};
  if (!config_.batch_mode) {
    const auto ok = ibc::VerifyOne(w.entry.pub, w.entry.token, w.entry.sig, master_);
    if (ok.ok() && *ok) {
      Accept(w, out);
    } else {
      Reject(w.session_id, out);
    }
    return out;
  }
  if (window_.empty()) window_opened_ms_ = now_ms;
  window_.push_back(std::move(w));
  if (window_.size() >= config_.window_size) {
    BsfOutput flushed = Flush();
    return flushed;
  }
  return out;
}

std::optional<uint64_t> Bsf::NextDeadline() const {
  if (window_.empty()) return std::nullopt;
  return window_opened_ms_ + config_.window_deadline_ms;
}

bool Bsf::VerifyRange(size_t lo, size_t hi, FlushRecord& rec,
                      std::vector<bool>& ok) {
  if (hi - lo == 1) {
    ++rec.single_checks;
    const auto& e = window_[lo].entry;
    const auto r = ibc::VerifyOne(e.pub, e.token, e.sig, master_);
    ok[lo] = r.ok() && *r;
    return ok[lo];
  }
  std::vector<ibc::SignedEntry> entries;
  entries.reserve(hi - lo);
  for (size_t i = lo; i < hi; ++i) entries.push_back(window_[i].entry);
  ++rec.batch_checks;
  const auto r = config_.randomized_batch
                     ? ibc::VerifyBatchRandomized(entries, master_, rng_)
                     : ibc::VerifyBatch(entries, master_);
  if (r.ok() && *r) {
    for (size_t i = lo; i < hi; ++i) ok[i] = true;
    return true;
  }
  const size_t mid = lo + (hi - lo) / 2;
  const bool left = VerifyRange(lo, mid, rec, ok);
  const bool right = VerifyRange(mid, hi, rec, ok);
  return left && right;
}

BsfOutput Bsf::Flush() {
  BsfOutput out;
  if (window_.empty()) return out;
  FlushRecord rec;
  rec.entries = window_.size();
  std::vector<bool> ok(window_.size(), false);
  {
    pairing::PairingScope scope;
    VerifyRange(0, window_.size(), rec, ok);
    rec.pairings = scope.Elapsed();
  }
  for (size_t i = 0; i < window_.size(); ++i) {
    if (ok[i]) {
      Accept(window_[i], out);
    } else {
      rec.rejected.push_back(i);
      Reject(window_[i].session_id, out);
    }
  }
  flushes_.push_back(std::move(rec));
  window_.clear();
  return out;
}

void Bsf::Accept(const WindowEntry& w, BsfOutput& out) {
  auto msg = IssueBtid(w.session_id, w.seq);
  if (msg.ok()) {
    out.messages.push_back(*std::move(msg));
  } else {
    (void)sessions_.Fail(w.session_id, ReasonName(ReasonOf(msg.status())));
    out.failures.push_back({w.session_id, msg.status()});
  }
}

void Bsf::Reject(uint64_t session_id, BsfOutput& out) {
  const absl::Status st =
      MakeError(ErrorReason::kSignatureInvalid, "Sig1 fails verification");
  (void)sessions_.Fail(session_id, ReasonName(ErrorReason::kSignatureInvalid));
  out.failures.push_back({session_id, st});
}

absl::StatusOr<ProtocolMessage> Bsf::IssueBtid(uint64_t session_id, uint64_t seq) {
  IMSIBC_RETURN_IF_ERROR(sessions_.Advance(session_id, SessionState::kAuthenticated));
  IMSIBC_ASSIGN_OR_RETURN(BootstrappingSession s, sessions_.Get(session_id));
  std::string btid;
  for (;;) {
    btid = MakeBtid(s.issued_rand, s.impu, btid_counter_++, config_.domain);
    IMSIBC_ASSIGN_OR_RETURN(bool fresh, sessions_.BindBtid(session_id, btid));
    if (fresh) break;
  }
  IMSIBC_ASSIGN_OR_RETURN(
      ibc::IbeCiphertext ct,
      ibc::IbeEncrypt(s.user_pub.kpub1, master_, AsBytes(btid), rng_));
  IMSIBC_RETURN_IF_ERROR(sessions_.Advance(session_id, SessionState::kKeyIssued));
  return ProtocolMessage{session_id, seq + 1, BootstrapOk{std::move(ct)}};
}

absl::StatusOr<std::vector<ProtocolMessage>> Bsf::OnAuthInfoRequest(
    const ProtocolMessage& msg) {
  const auto& req = *msg.As<AuthInfoRequest>();
  IMSIBC_ASSIGN_OR_RETURN(BootstrappingSession s, sessions_.FindByBtid(req.btid));
  if (s.state != SessionState::kKeyIssued && s.state != SessionState::kComplete) {
    return MakeError(ErrorReason::kBadState,
                     "B-TID session is " + std::string(SessionStateName(s.state)));
  }
  if (s.impu != req.impu) {
    return MakeError(ErrorReason::kUnknownBtid, "B-TID not issued to this IMPU");
  }
  const auto reg = config_.naf_registry.find(req.naf_id);
  if (reg == config_.naf_registry.end() ||
      (req.hostname.has_value() && *req.hostname != reg->second)) {
    return MakeError(ErrorReason::kNafNotAuthorized,
                     "NAF " + req.naf_id + " is not authorized");
  }
  IMSIBC_ASSIGN_OR_RETURN(
      bool valid, ibc::VerifyOne(s.user_pub, AsBytes(req.btid), req.sig2, master_));
  if (!valid) {
    if (!IsTerminal(s.state)) {
      (void)sessions_.Fail(s.session_id, ReasonName(ErrorReason::kSignatureInvalid));
    }
    return MakeError(ErrorReason::kSignatureInvalid, "Sig2 fails verification");
  }
  if (!s.guss.Allows(req.naf_id)) {
    return MakeError(ErrorReason::kServiceDenied,
                     "GUSS does not allow NAF " + req.naf_id);
  }
  if (s.state == SessionState::kKeyIssued) {
    IMSIBC_RETURN_IF_ERROR(sessions_.Advance(s.session_id, SessionState::kComplete));
  }
  return std::vector<ProtocolMessage>{
      Reply(msg, AuthInfoResponse{s.impu, s.user_pub, s.guss, s.params_ref})};
}

}  // namespace imsibc::gba

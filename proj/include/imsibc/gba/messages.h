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

// The twelve bootstrapping messages exchanged between UE, NAF, BSF and HSS.
//
//    1 UE  -> NAF  service-request          (no GBA parameters)
//    2 NAF -> UE   bootstrap-initiation
//    3 UE  -> BSF  bootstrap-request        IMPI, IMPU
//    4 BSF -> HSS  av-request               IMPI, IMPU
//    5 HSS -> BSF  av-response              RAND, params ref, Kpub1/2, [Kpriv]sk, GUSS
//    6 BSF -> UE   unauthorized-challenge   the 401 challenge
//    7 UE  -> BSF  challenge-response       IMPU, RAND, Sig1
//    8 BSF -> UE   bootstrap-ok             IBE(B-TID)
//    9 UE  -> NAF  service-request-gba      IMPU, B-TID, a*Kpub1, Sig2
//   10 NAF -> BSF  auth-info-request        NAF-ID, IMPU, B-TID, Sig2
//   11 BSF -> NAF  auth-info-response       IMPU, Kpub1/2, GUSS, params ref
//   12 NAF -> UE   service-response         b*Kpub1

#ifndef IMSIBC_GBA_MESSAGES_H_
#define IMSIBC_GBA_MESSAGES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "imsibc/ibc/ibe.h"
#include "imsibc/ibc/key_wrap.h"
#include "imsibc/ibc/keys.h"
#include "imsibc/pairing/group.h"

namespace imsibc::gba {

using ibc::G1Point;
using ibc::Scalar;
using ibc::IbeCiphertext;
using ibc::UserPublicKey;
using ibc::WrappedPrivateKeys;

inline constexpr size_t kRandSize = 16;
using Rand = std::array<uint8_t, kRandSize>;

enum class Role { kUe, kNaf, kBsf, kHss };
std::string_view RoleName(Role role);
std::optional<Role> RoleFromName(std::string_view name);

// GUSS: an allow-list of NAFs plus opaque attributes.
struct Guss {
  std::set<std::string> allowed_naf_ids;
  std::map<std::string, std::string> attributes;

  bool Allows(std::string_view naf_id) const {
    return allowed_naf_ids.count(std::string(naf_id)) > 0;
  }
  friend bool operator==(const Guss&, const Guss&) = default;
};

struct ServiceRequest {
  std::string naf_id;
  std::optional<std::string> gba_params;
};
struct BootstrapInitiation {
  std::string naf_id;
};
struct BootstrapRequest {
  std::string impi;
  std::string impu;
};
struct AvRequest {
  std::string impi;
  std::string impu;
};
struct AvResponse {
  Rand rand{};
  std::string params_ref;
  UserPublicKey pub;
  WrappedPrivateKeys wrapped;
  Guss guss;
};
struct UnauthorizedChallenge {
  std::string impu;
  Rand rand{};
  std::string params_ref;
  UserPublicKey pub;
  WrappedPrivateKeys wrapped;
};
struct ChallengeResponse {
  std::string impu;
  Rand rand{};
  G1Point sig1;
};
struct BootstrapOk {
  IbeCiphertext btid;
};
struct ServiceRequestGba {
  std::string naf_id;
  std::string impu;
  std::string btid;
  G1Point a_kpub1;
  G1Point sig2;
  bool use_gba = true;
};
struct AuthInfoRequest {
  std::string naf_id;
  std::optional<std::string> hostname;
  std::string impu;
  std::string btid;
  G1Point sig2;
};
struct AuthInfoResponse {
  std::string impu;
  UserPublicKey pub;
  Guss guss;
  std::string params_ref;
};
struct ServiceResponse {
  G1Point b_kpub1;
};

// Alternative i is message i + 1.
using MessageBody =
    std::variant<ServiceRequest, BootstrapInitiation, BootstrapRequest,
                 AvRequest, AvResponse, UnauthorizedChallenge,
                 ChallengeResponse, BootstrapOk, ServiceRequestGba,
                 AuthInfoRequest, AuthInfoResponse, ServiceResponse>;

inline constexpr int kMessageCount = 12;

std::string_view MessageTypeName(int number);
std::optional<int> MessageNumberFromName(std::string_view name);
// Fixed sender and receiver of message `number`.
Role SenderOf(int number);
Role ReceiverOf(int number);

struct ProtocolMessage {
  uint64_t session_id = 0;
  uint64_t seq = 0;
  MessageBody body;

  int number() const { return static_cast<int>(body.index()) + 1; }
  std::string_view type() const { return MessageTypeName(number()); }
  Role from() const { return SenderOf(number()); }
  Role to() const { return ReceiverOf(number()); }

  template <typename T>
  const T* As() const {
    return std::get_if<T>(&body);
  }
};

// Next message in the same session.
ProtocolMessage Reply(const ProtocolMessage& in, MessageBody body);

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_MESSAGES_H_

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

#include "imsibc/gba/messages.h"

#include <array>

namespace imsibc::gba {
namespace {

struct MessageInfo {
  std::string_view name;
  Role from;
  Role to;
};

constexpr std::array<MessageInfo, kMessageCount> kMessages = {{
    {"service-request", Role::kUe, Role::kNaf},
    {"bootstrap-initiation", Role::kNaf, Role::kUe},
    {"bootstrap-request", Role::kUe, Role::kBsf},
    {"av-request", Role::kBsf, Role::kHss},
    {"av-response", Role::kHss, Role::kBsf},
    {"unauthorized-challenge", Role::kBsf, Role::kUe},
    {"challenge-response", Role::kUe, Role::kBsf},
    {"bootstrap-ok", Role::kBsf, Role::kUe},
    {"service-request-gba", Role::kUe, Role::kNaf},
    {"auth-info-request", Role::kNaf, Role::kBsf},
    {"auth-info-response", Role::kBsf, Role::kNaf},
    {"service-response", Role::kNaf, Role::kUe},
}};

constexpr std::array<std::string_view, 4> kRoleNames = {"UE", "NAF", "BSF",
                                                        "HSS"};

}  // namespace

std::string_view RoleName(Role role) {
  return kRoleNames[static_cast<size_t>(role)];
}

std::optional<Role> RoleFromName(std::string_view name) {
  for (size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  }
  return std::nullopt;
}

std::string_view MessageTypeName(int number) {
  if (number < 1 || number > kMessageCount) return "unknown";
  return kMessages[number - 1].name;
}

std::optional<int> MessageNumberFromName(std::string_view name) {
  for (int i = 0; i < kMessageCount; ++i) {
    if (kMessages[i].name == name) return i + 1;
  }
  return std::nullopt;
}

Role SenderOf(int number) { return kMessages.at(number - 1).from; }
Role ReceiverOf(int number) { return kMessages.at(number - 1).to; }

ProtocolMessage Reply(const ProtocolMessage& in, MessageBody body) {
  return ProtocolMessage{in.session_id, in.seq + 1, std::move(body)};
}

}  // namespace imsibc::gba

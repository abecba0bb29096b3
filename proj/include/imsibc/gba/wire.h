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

// Wire form of ProtocolMessage:
//
//   frame  = u32be(len) || json
//   json   = {"session_id", "seq", "type", "from", "to", "body"}
//
// Golden traces hold one compact JSON message per line.

#ifndef IMSIBC_GBA_WIRE_H_
#define IMSIBC_GBA_WIRE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/gba/messages.h"
#include "json.hpp"

namespace imsibc::gba {

nlohmann::json ToJson(const Guss& guss);
absl::StatusOr<Guss> GussFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const ProtocolMessage& msg);
absl::StatusOr<ProtocolMessage> MessageFromJson(const nlohmann::json& j);

Bytes EncodeFrame(const ProtocolMessage& msg);
// Decodes one frame from the front of `data`; `consumed` receives its size.
absl::StatusOr<ProtocolMessage> DecodeFrame(ByteSpan data, size_t* consumed);

std::string TraceLine(const ProtocolMessage& msg);
absl::StatusOr<std::vector<ProtocolMessage>> ParseTrace(std::string_view text);

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_WIRE_H_

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

#include "imsibc/gba/wire.h"

#include <string>

#include "imsibc/core/errors.h"
#include "imsibc/ibc/json_codec.h"

namespace imsibc::gba {

using nlohmann::json;
using ibc::FixedHexField;
using ibc::StringField;

namespace {

constexpr size_t kMaxFrame = 1 << 20;

absl::StatusOr<G1Point> G1Field(const json& j, const char* key) {
  IMSIBC_ASSIGN_OR_RETURN(Bytes raw, ibc::HexField(j, key));
  return G1Point::FromBytes(raw);
}

absl::StatusOr<bool> BoolField(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_boolean()) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("missing boolean field '") + key + "'");
  }
  return j.at(key).get<bool>();
}

absl::StatusOr<std::optional<std::string>> OptionalString(const json& j,
                                                          const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  IMSIBC_ASSIGN_OR_RETURN(std::string s, StringField(j, key));
  return s;
}

json Optional(const std::optional<std::string>& v) {
  return v ? json(*v) : json(nullptr);
}

// Public key without its own version tag; nested inside a message.
json PubJson(const UserPublicKey& pub) {
  return {{"kpub1", pub.kpub1.ToHex()}, {"kpub2", HexEncode(pub.kpub2)}};
}

absl::StatusOr<UserPublicKey> PubFromJson(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("missing object '") + key + "'");
  }
  const json& p = j.at(key);
  UserPublicKey pub;
  IMSIBC_ASSIGN_OR_RETURN(pub.kpub1, G1Field(p, "kpub1"));
  IMSIBC_ASSIGN_OR_RETURN(pub.kpub2, FixedHexField<ibc::kKpub2Size>(p, "kpub2"));
  return pub;
}

template <typename T, typename Decode>
absl::StatusOr<T> Nested(const json& j, const char* key, Decode decode) {
  if (!j.contains(key)) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("missing object '") + key + "'");
  }
  return decode(j.at(key));
}

json BodyJson(const ServiceRequest& m) {
  return {{"naf_id", m.naf_id}, {"gba_params", Optional(m.gba_params)}};
}
json BodyJson(const BootstrapInitiation& m) { return {{"naf_id", m.naf_id}}; }
json BodyJson(const BootstrapRequest& m) {
  return {{"impi", m.impi}, {"impu", m.impu}};
}
json BodyJson(const AvRequest& m) { return {{"impi", m.impi}, {"impu", m.impu}}; }
json BodyJson(const AvResponse& m) {
  return {{"rand", HexEncode(m.rand)},
          {"params_ref", m.params_ref},
          {"pub", PubJson(m.pub)},
          {"wrapped", ibc::ToJson(m.wrapped)},
          {"guss", ToJson(m.guss)}};
}
json BodyJson(const UnauthorizedChallenge& m) {
  return {{"impu", m.impu},
          {"rand", HexEncode(m.rand)},
          {"params_ref", m.params_ref},
          {"pub", PubJson(m.pub)},
          {"wrapped", ibc::ToJson(m.wrapped)}};
}
json BodyJson(const ChallengeResponse& m) {
  return {{"impu", m.impu}, {"rand", HexEncode(m.rand)}, {"sig1", m.sig1.ToHex()}};
}
json BodyJson(const BootstrapOk& m) { return {{"btid", ibc::ToJson(m.btid)}}; }
json BodyJson(const ServiceRequestGba& m) {
  return {{"naf_id", m.naf_id},   {"impu", m.impu},
          {"btid", m.btid},       {"a_kpub1", m.a_kpub1.ToHex()},
          {"sig2", m.sig2.ToHex()}, {"use_gba", m.use_gba}};
}
json BodyJson(const AuthInfoRequest& m) {
  return {{"naf_id", m.naf_id}, {"hostname", Optional(m.hostname)},
          {"impu", m.impu},     {"btid", m.btid},
          {"sig2", m.sig2.ToHex()}};
}
json BodyJson(const AuthInfoResponse& m) {
  return {{"impu", m.impu},
          {"pub", PubJson(m.pub)},
          {"guss", ToJson(m.guss)},
          {"params_ref", m.params_ref}};
}
json BodyJson(const ServiceResponse& m) {
  return {{"b_kpub1", m.b_kpub1.ToHex()}};
}

absl::StatusOr<MessageBody> BodyFromJson(int number, const json& b) {
  if (!b.is_object()) {
    return MakeError(ErrorReason::kMalformedInput, "body is not an object");
  }
  switch (number) {
    case 1: {
      ServiceRequest m;
      IMSIBC_ASSIGN_OR_RETURN(m.naf_id, StringField(b, "naf_id"));
      IMSIBC_ASSIGN_OR_RETURN(m.gba_params, OptionalString(b, "gba_params"));
      return m;
    }
    case 2: {
      BootstrapInitiation m;
      IMSIBC_ASSIGN_OR_RETURN(m.naf_id, StringField(b, "naf_id"));
      return m;
    }
    case 3: {
      BootstrapRequest m;
      IMSIBC_ASSIGN_OR_RETURN(m.impi, StringField(b, "impi"));
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      return m;
    }
    case 4: {
      AvRequest m;
      IMSIBC_ASSIGN_OR_RETURN(m.impi, StringField(b, "impi"));
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      return m;
    }
    case 5: {
      AvResponse m;
      IMSIBC_ASSIGN_OR_RETURN(m.rand, FixedHexField<kRandSize>(b, "rand"));
      IMSIBC_ASSIGN_OR_RETURN(m.params_ref, StringField(b, "params_ref"));
      IMSIBC_ASSIGN_OR_RETURN(m.pub, PubFromJson(b, "pub"));
      IMSIBC_ASSIGN_OR_RETURN(
          m.wrapped, Nested<WrappedPrivateKeys>(
                         b, "wrapped", ibc::WrappedPrivateKeysFromJson));
      IMSIBC_ASSIGN_OR_RETURN(m.guss, Nested<Guss>(b, "guss", GussFromJson));
      return m;
    }
    case 6: {
      UnauthorizedChallenge m;
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      IMSIBC_ASSIGN_OR_RETURN(m.rand, FixedHexField<kRandSize>(b, "rand"));
      IMSIBC_ASSIGN_OR_RETURN(m.params_ref, StringField(b, "params_ref"));
      IMSIBC_ASSIGN_OR_RETURN(m.pub, PubFromJson(b, "pub"));
      IMSIBC_ASSIGN_OR_RETURN(
          m.wrapped, Nested<WrappedPrivateKeys>(
                         b, "wrapped", ibc::WrappedPrivateKeysFromJson));
      return m;
    }
    case 7: {
      ChallengeResponse m;
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      IMSIBC_ASSIGN_OR_RETURN(m.rand, FixedHexField<kRandSize>(b, "rand"));
      IMSIBC_ASSIGN_OR_RETURN(m.sig1, G1Field(b, "sig1"));
      return m;
    }
    case 8: {
      BootstrapOk m;
      IMSIBC_ASSIGN_OR_RETURN(
          m.btid, Nested<IbeCiphertext>(b, "btid", ibc::IbeCiphertextFromJson));
      return m;
    }
    case 9: {
      ServiceRequestGba m;
      IMSIBC_ASSIGN_OR_RETURN(m.naf_id, StringField(b, "naf_id"));
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      IMSIBC_ASSIGN_OR_RETURN(m.btid, StringField(b, "btid"));
      IMSIBC_ASSIGN_OR_RETURN(m.a_kpub1, G1Field(b, "a_kpub1"));
      IMSIBC_ASSIGN_OR_RETURN(m.sig2, G1Field(b, "sig2"));
      IMSIBC_ASSIGN_OR_RETURN(m.use_gba, BoolField(b, "use_gba"));
      return m;
    }
    case 10: {
      AuthInfoRequest m;
      IMSIBC_ASSIGN_OR_RETURN(m.naf_id, StringField(b, "naf_id"));
      IMSIBC_ASSIGN_OR_RETURN(m.hostname, OptionalString(b, "hostname"));
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      IMSIBC_ASSIGN_OR_RETURN(m.btid, StringField(b, "btid"));
      IMSIBC_ASSIGN_OR_RETURN(m.sig2, G1Field(b, "sig2"));
      return m;
    }
    case 11: {
      AuthInfoResponse m;
      IMSIBC_ASSIGN_OR_RETURN(m.impu, StringField(b, "impu"));
      IMSIBC_ASSIGN_OR_RETURN(m.pub, PubFromJson(b, "pub"));
      IMSIBC_ASSIGN_OR_RETURN(m.guss, Nested<Guss>(b, "guss", GussFromJson));
      IMSIBC_ASSIGN_OR_RETURN(m.params_ref, StringField(b, "params_ref"));
      return m;
    }
    case 12: {
      ServiceResponse m;
      IMSIBC_ASSIGN_OR_RETURN(m.b_kpub1, G1Field(b, "b_kpub1"));
      return m;
    }
  }
  return MakeError(ErrorReason::kMalformedInput, "unknown message number");
}

absl::StatusOr<uint64_t> UintField(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("missing unsigned field '") + key + "'");
  }
  return j.at(key).get<uint64_t>();
}

}  // namespace

json ToJson(const Guss& guss) {
  json attrs = json::object();
  for (const auto& [k, v] : guss.attributes) attrs[k] = v;
  return {{"allowed_naf_ids", guss.allowed_naf_ids}, {"attributes", attrs}};
}

absl::StatusOr<Guss> GussFromJson(const json& j) {
  if (!j.is_object() || !j.contains("allowed_naf_ids") ||
      !j.at("allowed_naf_ids").is_array()) {
    return MakeError(ErrorReason::kMalformedInput, "GUSS needs allowed_naf_ids");
  }
  Guss g;
  for (const auto& id : j.at("allowed_naf_ids")) {
    if (!id.is_string()) {
      return MakeError(ErrorReason::kMalformedInput, "NAF id must be a string");
    }
    g.allowed_naf_ids.insert(id.get<std::string>());
  }
  if (j.contains("attributes")) {
    if (!j.at("attributes").is_object()) {
      return MakeError(ErrorReason::kMalformedInput, "attributes must be an object");
    }
    for (const auto& [k, v] : j.at("attributes").items()) {
      if (!v.is_string()) {
        return MakeError(ErrorReason::kMalformedInput,
                         "attribute values must be strings");
      }
      g.attributes[k] = v.get<std::string>();
    }
  }
  return g;
}

json ToJson(const ProtocolMessage& msg) {
  json body = std::visit([](const auto& m) { return BodyJson(m); }, msg.body);
  return {{"session_id", msg.session_id},
          {"seq", msg.seq},
          {"type", std::string(msg.type())},
          {"from", std::string(RoleName(msg.from()))},
          {"to", std::string(RoleName(msg.to()))},
          {"body", std::move(body)}};
}

absl::StatusOr<ProtocolMessage> MessageFromJson(const json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorReason::kMalformedInput, "message is not an object");
  }
  ProtocolMessage msg;
  IMSIBC_ASSIGN_OR_RETURN(msg.session_id, UintField(j, "session_id"));
  IMSIBC_ASSIGN_OR_RETURN(msg.seq, UintField(j, "seq"));
  IMSIBC_ASSIGN_OR_RETURN(std::string type, StringField(j, "type"));
  const auto number = MessageNumberFromName(type);
  if (!number) {
    return MakeError(ErrorReason::kMalformedInput, "unknown message type " + type);
  }
  if (!j.contains("body")) {
    return MakeError(ErrorReason::kMalformedInput, "missing body");
  }
  IMSIBC_ASSIGN_OR_RETURN(msg.body, BodyFromJson(*number, j.at("body")));
  // Roles are implied by the type; reject inconsistent headers.
  IMSIBC_ASSIGN_OR_RETURN(std::string from, StringField(j, "from"));
  IMSIBC_ASSIGN_OR_RETURN(std::string to, StringField(j, "to"));
  if (from != RoleName(msg.from()) || to != RoleName(msg.to())) {
    return MakeError(ErrorReason::kMalformedInput,
                     "roles do not match message type " + type);
  }
  return msg;
}

Bytes EncodeFrame(const ProtocolMessage& msg) {
  const std::string text = ToJson(msg).dump();
  Bytes out;
  AppendLengthPrefixed(out, AsBytes(text));
  return out;
}

absl::StatusOr<ProtocolMessage> DecodeFrame(ByteSpan data, size_t* consumed) {
  if (data.size() < 4) {
    return MakeError(ErrorReason::kMalformedInput, "truncated frame header");
  }
  const size_t len = (size_t{data[0]} << 24) | (size_t{data[1]} << 16) |
                     (size_t{data[2]} << 8) | size_t{data[3]};
  if (len > kMaxFrame || data.size() - 4 < len) {
    return MakeError(ErrorReason::kMalformedInput, "truncated frame body");
  }
  const json j = json::parse(data.begin() + 4, data.begin() + 4 + len, nullptr,
                             /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return MakeError(ErrorReason::kMalformedInput, "frame is not JSON");
  }
  IMSIBC_ASSIGN_OR_RETURN(ProtocolMessage msg, MessageFromJson(j));
  if (consumed != nullptr) *consumed = 4 + len;
  return msg;
}

std::string TraceLine(const ProtocolMessage& msg) { return ToJson(msg).dump(); }

absl::StatusOr<std::vector<ProtocolMessage>> ParseTrace(std::string_view text) {
  std::vector<ProtocolMessage> out;
  size_t line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      return MakeError(ErrorReason::kMalformedInput,
                       "trace line " + std::to_string(line_no) + " is not JSON");
    }
    auto msg = MessageFromJson(j);
    if (!msg.ok()) {
      return MakeError(ErrorReason::kMalformedInput,
                       "trace line " + std::to_string(line_no) + ": " +
                           std::string(msg.status().message()));
    }
    out.push_back(*std::move(msg));
  }
  return out;
}

}  // namespace imsibc::gba

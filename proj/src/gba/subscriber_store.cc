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

#include "imsibc/gba/subscriber_store.h"

#include <algorithm>
#include <cctype>

#include "imsibc/core/errors.h"
#include "imsibc/gba/wire.h"
#include "imsibc/ibc/json_codec.h"

namespace imsibc::gba {

using nlohmann::json;

namespace {

bool ValidPart(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '.' || c == '-' || c == '_' || c == '+';
  });
}

bool UserAtDomain(std::string_view s) {
  const size_t at = s.find('@');
  if (at == std::string_view::npos || s.find('@', at + 1) != std::string_view::npos) {
    return false;
  }
  const std::string_view domain = s.substr(at + 1);
  return ValidPart(s.substr(0, at)) && ValidPart(domain) &&
         domain.find('.') != std::string_view::npos;
}

}  // namespace

bool IsNai(std::string_view impi) {
  return impi.find(':') == std::string_view::npos && UserAtDomain(impi);
}

bool IsSipUri(std::string_view impu) {
  constexpr std::string_view kScheme = "sip:";
  return impu.substr(0, kScheme.size()) == kScheme &&
         UserAtDomain(impu.substr(kScheme.size()));
}

absl::Status SubscriberStore::Add(SubscriberRecord record) {
  if (!IsNai(record.impi)) {
    return MakeError(ErrorReason::kInvalidArgument,
                     "IMPI is not an NAI: " + record.impi);
  }
  if (!IsSipUri(record.impu)) {
    return MakeError(ErrorReason::kInvalidArgument,
                     "IMPU is not a SIP URI: " + record.impu);
  }
  if (record.sk.size() != ibc::kSharedKeySize) {
    return MakeError(ErrorReason::kInvalidArgument, "sk must be 32 bytes");
  }
  auto key = std::make_pair(record.impi, record.impu);
  if (index_.count(key)) {
    return MakeError(ErrorReason::kDuplicateCouple,
                     "couple already enrolled: " + record.impi + ", " +
                         record.impu);
  }
  index_.emplace(std::move(key), records_.size());
  records_.push_back(std::move(record));
  return absl::OkStatus();
}

absl::StatusOr<const SubscriberRecord*> SubscriberStore::Find(
    std::string_view impi, std::string_view impu) const {
  const auto it = index_.find({std::string(impi), std::string(impu)});
  if (it == index_.end()) {
    return MakeError(ErrorReason::kUnknownCouple,
                     "no subscriber with couple (" + std::string(impi) + ", " +
                         std::string(impu) + ")");
  }
  return &records_[it->second];
}

std::vector<const SubscriberRecord*> SubscriberStore::FindByImpu(
    std::string_view impu) const {
  std::vector<const SubscriberRecord*> out;
  for (const auto& r : records_) {
    if (r.impu == impu) out.push_back(&r);
  }
  return out;
}

json SubscriberStore::ToJson() const {
  json subs = json::array();
  for (const auto& r : records_) {
    subs.push_back({{"impi", r.impi},
                    {"impu", r.impu},
                    {"sk", HexEncode(r.sk)},
                    {"guss", gba::ToJson(r.guss)}});
  }
  return {{"version", ibc::kCodecVersion}, {"subscribers", subs}};
}

absl::StatusOr<SubscriberStore> SubscriberStore::FromJson(const json& j) {
  IMSIBC_RETURN_IF_ERROR(ibc::CheckVersion(j));
  if (!j.contains("subscribers") || !j.at("subscribers").is_array()) {
    return MakeError(ErrorReason::kMalformedInput, "missing subscribers array");
  }
  SubscriberStore store;
  for (const auto& s : j.at("subscribers")) {
    SubscriberRecord r;
    IMSIBC_ASSIGN_OR_RETURN(r.impi, ibc::StringField(s, "impi"));
    IMSIBC_ASSIGN_OR_RETURN(r.impu, ibc::StringField(s, "impu"));
    IMSIBC_ASSIGN_OR_RETURN(r.sk, ibc::HexField(s, "sk"));
    if (!s.contains("guss")) {
      return MakeError(ErrorReason::kMalformedInput, "subscriber without guss");
    }
    IMSIBC_ASSIGN_OR_RETURN(r.guss, GussFromJson(s.at("guss")));
    IMSIBC_RETURN_IF_ERROR(store.Add(std::move(r)));
  }
  return store;
}

}  // namespace imsibc::gba

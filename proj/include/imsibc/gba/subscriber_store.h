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

#ifndef IMSIBC_GBA_SUBSCRIBER_STORE_H_
#define IMSIBC_GBA_SUBSCRIBER_STORE_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/gba/messages.h"
#include "imsibc/ibc/key_wrap.h"
#include "json.hpp"

namespace imsibc::gba {

// IMPI in NAI form: user@realm.
bool IsNai(std::string_view impi);
// IMPU as a SIP URI: sip:user@domain.
bool IsSipUri(std::string_view impu);

struct SubscriberRecord {
  std::string impi;
  std::string impu;
  Bytes sk;  // ISIM shared key, ibc::kSharedKeySize bytes
  Guss guss;
};

// HSS subscriber database. The JSON form contains every sk and must be
// stored apart from the public PKG parameters.
class SubscriberStore {
 public:
  absl::Status Add(SubscriberRecord record);
  // kUnknownCouple when the exact (impi, impu) pair is absent.
  absl::StatusOr<const SubscriberRecord*> Find(std::string_view impi,
                                               std::string_view impu) const;
  std::vector<const SubscriberRecord*> FindByImpu(std::string_view impu) const;

  size_t size() const { return records_.size(); }
  const std::vector<SubscriberRecord>& records() const { return records_; }

  nlohmann::json ToJson() const;
  static absl::StatusOr<SubscriberStore> FromJson(const nlohmann::json& j);

 private:
  std::vector<SubscriberRecord> records_;
  std::map<std::pair<std::string, std::string>, size_t> index_;
};

}  // namespace imsibc::gba

#endif  // IMSIBC_GBA_SUBSCRIBER_STORE_H_

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

#ifndef IMSIBC_CORE_HASH_H_
#define IMSIBC_CORE_HASH_H_

#include <array>
#include <cstddef>
#include <cstdint>

#include "imsibc/core/bytes.h"

namespace imsibc {

inline constexpr size_t kSha256Size = 32;
using Sha256Digest = std::array<uint8_t, kSha256Size>;

Sha256Digest Sha256(ByteSpan data);
Sha256Digest HmacSha256(ByteSpan key, ByteSpan data);

// RFC 5869 extract-and-expand. `length` must not exceed 255 * 32.
Bytes HkdfSha256(ByteSpan ikm, ByteSpan salt, ByteSpan info, size_t length);

}  // namespace imsibc

#endif  // IMSIBC_CORE_HASH_H_

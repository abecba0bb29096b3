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

#ifndef IMSIBC_CORE_BYTES_H_
#define IMSIBC_CORE_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace imsibc {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes ToBytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

// Appends every argument to `out` in order.
template <typename... Parts>
void Append(Bytes& out, const Parts&... parts) {
  (out.insert(out.end(), std::begin(parts), std::end(parts)), ...);
}

template <typename... Parts>
Bytes Concat(const Parts&... parts) {
  Bytes out;
  Append(out, parts...);
  return out;
}

// Big-endian 32-bit length followed by the bytes. Used wherever several
// variable-length fields feed one hash or KDF so that field boundaries are
// unambiguous.
void AppendLengthPrefixed(Bytes& out, ByteSpan part);

std::string HexEncode(ByteSpan data);
absl::StatusOr<Bytes> HexDecode(std::string_view hex);

// RFC 4648 section 5 alphabet, no padding.
std::string Base64UrlEncode(ByteSpan data);

bool ConstantTimeEquals(ByteSpan a, ByteSpan b);

}  // namespace imsibc

#endif  // IMSIBC_CORE_BYTES_H_

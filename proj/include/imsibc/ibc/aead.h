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

#ifndef IMSIBC_IBC_AEAD_H_
#define IMSIBC_IBC_AEAD_H_

#include <array>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"

namespace imsibc::ibc {

inline constexpr size_t kAesKeySize = 32;
inline constexpr size_t kGcmNonceSize = 12;
inline constexpr size_t kGcmTagSize = 16;

struct GcmSealed {
  Bytes ciphertext;
  std::array<uint8_t, kGcmTagSize> tag{};
};

// AES-256-GCM via libcrypto.
absl::StatusOr<GcmSealed> Aes256GcmSeal(ByteSpan key, ByteSpan nonce,
                                        ByteSpan plaintext, ByteSpan aad);
// Fails with kUnwrapFailed when the tag does not verify.
absl::StatusOr<Bytes> Aes256GcmOpen(ByteSpan key, ByteSpan nonce,
                                    ByteSpan ciphertext, ByteSpan tag,
                                    ByteSpan aad);

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_AEAD_H_

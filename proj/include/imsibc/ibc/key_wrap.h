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

#ifndef IMSIBC_IBC_KEY_WRAP_H_
#define IMSIBC_IBC_KEY_WRAP_H_

#include <array>

#include "absl/status/statusor.h"
#include "imsibc/core/bytes.h"
#include "imsibc/ibc/aead.h"
#include "imsibc/ibc/keys.h"

namespace imsibc::ibc {

inline constexpr size_t kSharedKeySize = 32;

// AES-256-GCM of enc(Kpriv1) || enc(Kpriv2) under the subscriber key sk.
struct WrappedPrivateKeys {
  std::array<uint8_t, kGcmNonceSize> nonce{};
  Bytes ciphertext;
  std::array<uint8_t, kGcmTagSize> tag{};
};

absl::StatusOr<WrappedPrivateKeys> WrapPrivateKeys(ByteSpan sk,
                                                   const UserPrivateKey& keys,
                                                   Rng& rng);

// kUnwrapFailed on a wrong key or any modification of the wrapped blob.
absl::StatusOr<UserPrivateKey> UnwrapPrivateKeys(
    ByteSpan sk, const WrappedPrivateKeys& wrapped);

}  // namespace imsibc::ibc

#endif  // IMSIBC_IBC_KEY_WRAP_H_

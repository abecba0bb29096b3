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

#include "imsibc/ibc/key_wrap.h"

#include "imsibc/core/errors.h"

namespace imsibc::ibc {
namespace {

constexpr std::string_view kAad = "imsibc private-key wrap v1";

absl::Status CheckKey(ByteSpan sk) {
  if (sk.size() != kSharedKeySize) {
    return MakeError(ErrorReason::kInvalidArgument,
                     "shared key sk must be 32 bytes");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<WrappedPrivateKeys> WrapPrivateKeys(ByteSpan sk,
                                                   const UserPrivateKey& keys,
                                                   Rng& rng) {
  IMSIBC_RETURN_IF_ERROR(CheckKey(sk));
  WrappedPrivateKeys out;
  IMSIBC_RETURN_IF_ERROR(rng.Fill(out.nonce));
  const Bytes plaintext = Concat(keys.kpriv1.ToBytes(), keys.kpriv2.ToBytes());
  IMSIBC_ASSIGN_OR_RETURN(GcmSealed sealed,
                          Aes256GcmSeal(sk, out.nonce, plaintext, AsBytes(kAad)));
  out.ciphertext = std::move(sealed.ciphertext);
  out.tag = sealed.tag;
  return out;
}

absl::StatusOr<UserPrivateKey> UnwrapPrivateKeys(
    ByteSpan sk, const WrappedPrivateKeys& wrapped) {
  IMSIBC_RETURN_IF_ERROR(CheckKey(sk));
  IMSIBC_ASSIGN_OR_RETURN(
      Bytes plaintext, Aes256GcmOpen(sk, wrapped.nonce, wrapped.ciphertext,
                                     wrapped.tag, AsBytes(kAad)));
  constexpr size_t kPoint = G1Point::kEncodedSize;
  if (plaintext.size() != 2 * kPoint) {
    return MakeError(ErrorReason::kUnwrapFailed, "wrapped key length");
  }
  auto k1 = G1Point::FromBytes(ByteSpan(plaintext).first(kPoint));
  auto k2 = G1Point::FromBytes(ByteSpan(plaintext).subspan(kPoint));
  if (!k1.ok() || !k2.ok()) {
    return MakeError(ErrorReason::kUnwrapFailed, "wrapped key not a point");
  }
  return UserPrivateKey{*k1, *k2};
}

}  // namespace imsibc::ibc

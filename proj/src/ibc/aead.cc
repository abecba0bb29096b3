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

#include "imsibc/ibc/aead.h"

#include <openssl/evp.h>

#include <memory>

#include "imsibc/core/errors.h"

namespace imsibc::ibc {
namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

absl::Status CheckSizes(ByteSpan key, ByteSpan nonce) {
  if (key.size() != kAesKeySize) {
    return MakeError(ErrorReason::kInvalidArgument, "AES-256 key must be 32 bytes");
  }
  if (nonce.size() != kGcmNonceSize) {
    return MakeError(ErrorReason::kInvalidArgument, "GCM nonce must be 12 bytes");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<GcmSealed> Aes256GcmSeal(ByteSpan key, ByteSpan nonce,
                                        ByteSpan plaintext, ByteSpan aad) {
  IMSIBC_RETURN_IF_ERROR(CheckSizes(key, nonce));
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  GcmSealed out;
  out.ciphertext.resize(plaintext.size());
  int len = 0;
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         nonce.data()) != 1 ||
      (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                         static_cast<int>(aad.size())) != 1) ||
      EVP_EncryptUpdate(ctx.get(), out.ciphertext.data(), &len,
                        plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + len, &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kGcmTagSize,
                          out.tag.data()) != 1) {
    return MakeError(ErrorReason::kInvalidArgument, "AES-GCM seal failed");
  }
  return out;
}

absl::StatusOr<Bytes> Aes256GcmOpen(ByteSpan key, ByteSpan nonce,
                                    ByteSpan ciphertext, ByteSpan tag,
                                    ByteSpan aad) {
  IMSIBC_RETURN_IF_ERROR(CheckSizes(key, nonce));
  if (tag.size() != kGcmTagSize) {
    return MakeError(ErrorReason::kMalformedInput, "GCM tag must be 16 bytes");
  }
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  Bytes plaintext(ciphertext.size());
  Bytes tag_copy(tag.begin(), tag.end());
  int len = 0;
  const bool ok =
      ctx &&
      EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         nonce.data()) == 1 &&
      (aad.empty() || EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                        static_cast<int>(aad.size())) == 1) &&
      EVP_DecryptUpdate(ctx.get(), plaintext.data(), &len, ciphertext.data(),
                        static_cast<int>(ciphertext.size())) == 1 &&
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kGcmTagSize,
                          tag_copy.data()) == 1 &&
      EVP_DecryptFinal_ex(ctx.get(), plaintext.data() + len, &len) == 1;
  if (!ok) {
    return MakeError(ErrorReason::kUnwrapFailed,
                     "AES-GCM authentication failed");
  }
  return plaintext;
}

}  // namespace imsibc::ibc

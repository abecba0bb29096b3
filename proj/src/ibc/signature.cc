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

#include "imsibc/ibc/signature.h"

#include <string>

#include "imsibc/core/errors.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::ibc {
namespace {

using pairing::GtElement;
using pairing::Pair;

// Both sides of the verification identity over already-aggregated terms.
bool PairingCheck(const G1Point& sig_sum, const G1Point& kpub1_sum,
                  const G1Point& hashed_sum, const MasterPublicKey& master) {
  const GtElement lhs = Pair(sig_sum, master.params.generator_b);
  const GtElement rhs =
      Pair(kpub1_sum, master.ppub1) * Pair(hashed_sum, master.ppub2);
  return lhs == rhs;
}

absl::Status CheckBatch(std::span<const SignedEntry> entries) {
  if (entries.empty()) {
    return MakeError(ErrorReason::kEmptyBatch, "batch has no entries");
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].token.empty()) {
      return MakeError(ErrorReason::kInvalidArgument,
                       "entry " + std::to_string(i) + ": empty token");
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Scalar> TokenDigest(const PairingParams& params,
                                   ByteSpan token) {
  IMSIBC_ASSIGN_OR_RETURN(Scalar h,
                          pairing::HashToScalar(token, params.scalar_tag));
  if (h.IsZero()) return Scalar::One();
  return h;
}

absl::StatusOr<OneTimeSignature> SignOnce(const UserKeyMaterial& keys,
                                          const PairingParams& params,
                                          ByteSpan token) {
  if (!keys.priv.has_value()) {
    return MakeError(ErrorReason::kKeyMissing, "no private keys to sign with");
  }
  if (token.empty()) {
    return MakeError(ErrorReason::kInvalidArgument, "empty token");
  }
  IMSIBC_ASSIGN_OR_RETURN(Scalar h, TokenDigest(params, token));
  return OneTimeSignature{keys.priv->kpriv1 + keys.priv->kpriv2 * h,
                          Bytes(token.begin(), token.end())};
}

absl::StatusOr<bool> VerifyOne(const UserPublicKey& pub, ByteSpan token,
                               const G1Point& sig,
                               const MasterPublicKey& master) {
  if (token.empty()) {
    return MakeError(ErrorReason::kInvalidArgument, "empty token");
  }
  IMSIBC_ASSIGN_OR_RETURN(Scalar h, TokenDigest(master.params, token));
  IMSIBC_ASSIGN_OR_RETURN(G1Point binding,
                          KeyBindingPoint(master.params, pub));
  return PairingCheck(sig, pub.kpub1, binding * h, master);
}

absl::StatusOr<SignedEntry> DecodeEntry(const EncodedEntry& entry) {
  SignedEntry out;
  IMSIBC_ASSIGN_OR_RETURN(out.pub.kpub1, G1Point::FromBytes(entry.kpub1));
  if (entry.kpub2.size() != kKpub2Size) {
    return MakeError(ErrorReason::kMalformedInput, "Kpub2 has wrong length");
  }
  std::copy(entry.kpub2.begin(), entry.kpub2.end(), out.pub.kpub2.begin());
  IMSIBC_ASSIGN_OR_RETURN(out.sig, G1Point::FromBytes(entry.sig));
  if (entry.token.empty()) {
    return MakeError(ErrorReason::kMalformedInput, "empty token");
  }
  out.token = entry.token;
  return out;
}

absl::StatusOr<std::vector<SignedEntry>> DecodeBatch(
    std::span<const EncodedEntry> entries) {
  std::vector<SignedEntry> out;
  out.reserve(entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    auto decoded = DecodeEntry(entries[i]);
    if (!decoded.ok()) {
      return MakeError(ErrorReason::kMalformedInput,
                       "entry " + std::to_string(i) + ": " +
                           std::string(decoded.status().message()));
    }
    out.push_back(*std::move(decoded));
  }
  return out;
}

absl::StatusOr<bool> VerifyOneEncoded(const EncodedEntry& entry,
                                      const MasterPublicKey& master) {
  IMSIBC_ASSIGN_OR_RETURN(SignedEntry decoded, DecodeEntry(entry));
  return VerifyOne(decoded.pub, decoded.token, decoded.sig, master);
}

absl::StatusOr<bool> VerifyBatch(std::span<const SignedEntry> entries,
                                 const MasterPublicKey& master) {
  IMSIBC_RETURN_IF_ERROR(CheckBatch(entries));
  G1Point sig_sum, kpub1_sum, hashed_sum;
  for (const SignedEntry& e : entries) {
    IMSIBC_ASSIGN_OR_RETURN(Scalar h, TokenDigest(master.params, e.token));
    IMSIBC_ASSIGN_OR_RETURN(G1Point binding,
                            KeyBindingPoint(master.params, e.pub));
    sig_sum += e.sig;
    kpub1_sum += e.pub.kpub1;
    hashed_sum += binding * h;
  }
  return PairingCheck(sig_sum, kpub1_sum, hashed_sum, master);
}

absl::StatusOr<bool> VerifyBatchRandomized(std::span<const SignedEntry> entries,
                                           const MasterPublicKey& master,
                                           Rng& rng) {
  IMSIBC_RETURN_IF_ERROR(CheckBatch(entries));
  G1Point sig_sum, kpub1_sum, hashed_sum;
  for (const SignedEntry& e : entries) {
    uint64_t weight = 0;
    while (weight == 0) {
      uint8_t raw[8];
      IMSIBC_RETURN_IF_ERROR(rng.Fill(raw));
      for (uint8_t b : raw) weight = (weight << 8) | b;
    }
    IMSIBC_ASSIGN_OR_RETURN(Scalar h, TokenDigest(master.params, e.token));
    IMSIBC_ASSIGN_OR_RETURN(G1Point binding,
                            KeyBindingPoint(master.params, e.pub));
    sig_sum += e.sig.MulSmall(weight);
    kpub1_sum += e.pub.kpub1.MulSmall(weight);
    hashed_sum += binding * (h * Scalar::FromUint64(weight));
  }
  return PairingCheck(sig_sum, kpub1_sum, hashed_sum, master);
}

}  // namespace imsibc::ibc

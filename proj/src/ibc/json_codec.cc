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

#include "imsibc/ibc/json_codec.h"

#include <string>

#include "imsibc/core/errors.h"

namespace imsibc::ibc {

using nlohmann::json;

absl::StatusOr<std::string> StringField(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
    return MakeError(ErrorReason::kMalformedInput,
                     std::string("missing string field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

absl::StatusOr<Bytes> HexField(const json& j, const char* key) {
  IMSIBC_ASSIGN_OR_RETURN(std::string hex, StringField(j, key));
  return HexDecode(hex);
}

absl::Status CheckVersion(const json& j) {
  if (!j.is_object() || !j.contains("version") ||
      !j.at("version").is_number_integer() ||
      j.at("version").get<int>() != kCodecVersion) {
    return MakeError(ErrorReason::kMalformedInput, "missing or unknown version");
  }
  return absl::OkStatus();
}

namespace {

template <typename Point>
absl::StatusOr<Point> PointField(const json& j, const char* key) {
  IMSIBC_ASSIGN_OR_RETURN(Bytes raw, HexField(j, key));
  return Point::FromBytes(raw);
}

}  // namespace

json ToJson(const MasterPublicKey& mpk) {
  return {{"version", kCodecVersion},
          {"params", mpk.params.ToJson()},
          {"ppub1", mpk.ppub1.ToHex()},
          {"ppub2", mpk.ppub2.ToHex()}};
}

absl::StatusOr<MasterPublicKey> MasterPublicKeyFromJson(const json& j) {
  IMSIBC_RETURN_IF_ERROR(CheckVersion(j));
  if (!j.contains("params")) {
    return MakeError(ErrorReason::kMalformedInput, "missing params");
  }
  MasterPublicKey mpk;
  IMSIBC_ASSIGN_OR_RETURN(mpk.params, PairingParams::FromJson(j.at("params")));
  IMSIBC_ASSIGN_OR_RETURN(mpk.ppub1, PointField<G2Point>(j, "ppub1"));
  IMSIBC_ASSIGN_OR_RETURN(mpk.ppub2, PointField<G2Point>(j, "ppub2"));
  return mpk;
}

json MasterSecretsToJson(const MasterKeyPair& master) {
  return {{"version", kCodecVersion},
          {"params_digest", master.pub.params.DigestHex()},
          {"s1", master.s1.ToHex()},
          {"s2", master.s2.ToHex()}};
}

absl::StatusOr<MasterKeyPair> MasterKeyPairFromJson(
    const json& secrets, const MasterPublicKey& pub) {
  IMSIBC_RETURN_IF_ERROR(CheckVersion(secrets));
  IMSIBC_ASSIGN_OR_RETURN(std::string digest,
                          StringField(secrets, "params_digest"));
  if (digest != pub.params.DigestHex()) {
    return MakeError(ErrorReason::kConfigInvalid,
                     "master secrets belong to different params");
  }
  MasterKeyPair m;
  IMSIBC_ASSIGN_OR_RETURN(Bytes s1, HexField(secrets, "s1"));
  IMSIBC_ASSIGN_OR_RETURN(Bytes s2, HexField(secrets, "s2"));
  IMSIBC_ASSIGN_OR_RETURN(m.s1, Scalar::FromBytes(s1));
  IMSIBC_ASSIGN_OR_RETURN(m.s2, Scalar::FromBytes(s2));
  if (m.s1.IsZero() || m.s2.IsZero()) {
    return MakeError(ErrorReason::kConfigInvalid, "zero master secret");
  }
  m.pub = pub;
  if (!(pub.params.generator_b * m.s1 == pub.ppub1) ||
      !(pub.params.generator_b * m.s2 == pub.ppub2)) {
    return MakeError(ErrorReason::kConfigInvalid,
                     "master secrets do not match public keys");
  }
  return m;
}

json ToJson(const UserPublicKey& pub) {
  return {{"version", kCodecVersion},
          {"kpub1", pub.kpub1.ToHex()},
          {"kpub2", HexEncode(pub.kpub2)}};
}

absl::StatusOr<UserPublicKey> UserPublicKeyFromJson(const json& j) {
  IMSIBC_RETURN_IF_ERROR(CheckVersion(j));
  UserPublicKey pub;
  IMSIBC_ASSIGN_OR_RETURN(pub.kpub1, PointField<G1Point>(j, "kpub1"));
  IMSIBC_ASSIGN_OR_RETURN(pub.kpub2, FixedHexField<kKpub2Size>(j, "kpub2"));
  return pub;
}

json ToJson(const WrappedPrivateKeys& w) {
  return {{"version", kCodecVersion},
          {"nonce", HexEncode(w.nonce)},
          {"ciphertext", HexEncode(w.ciphertext)},
          {"tag", HexEncode(w.tag)}};
}

absl::StatusOr<WrappedPrivateKeys> WrappedPrivateKeysFromJson(const json& j) {
  IMSIBC_RETURN_IF_ERROR(CheckVersion(j));
  WrappedPrivateKeys w;
  IMSIBC_ASSIGN_OR_RETURN(w.nonce, FixedHexField<kGcmNonceSize>(j, "nonce"));
  IMSIBC_ASSIGN_OR_RETURN(w.ciphertext, HexField(j, "ciphertext"));
  IMSIBC_ASSIGN_OR_RETURN(w.tag, FixedHexField<kGcmTagSize>(j, "tag"));
  return w;
}

json ToJson(const IbeCiphertext& ct) {
  return {{"version", kCodecVersion},
          {"u", ct.u.ToHex()},
          {"v", HexEncode(ct.v)},
          {"tag", HexEncode(ct.tag)}};
}

absl::StatusOr<IbeCiphertext> IbeCiphertextFromJson(const json& j) {
  IMSIBC_RETURN_IF_ERROR(CheckVersion(j));
  IbeCiphertext ct;
  IMSIBC_ASSIGN_OR_RETURN(ct.u, PointField<G2Point>(j, "u"));
  IMSIBC_ASSIGN_OR_RETURN(ct.v, HexField(j, "v"));
  IMSIBC_ASSIGN_OR_RETURN(ct.tag, FixedHexField<kSha256Size>(j, "tag"));
  return ct;
}

json ToJson(const OneTimeSignature& sig) {
  return {{"version", kCodecVersion},
          {"sig", sig.sig.ToHex()},
          {"token", HexEncode(sig.signed_token)}};
}

absl::StatusOr<OneTimeSignature> OneTimeSignatureFromJson(const json& j) {
  IMSIBC_RETURN_IF_ERROR(CheckVersion(j));
  OneTimeSignature s;
  IMSIBC_ASSIGN_OR_RETURN(s.sig, PointField<G1Point>(j, "sig"));
  IMSIBC_ASSIGN_OR_RETURN(s.signed_token, HexField(j, "token"));
  return s;
}

}  // namespace imsibc::ibc

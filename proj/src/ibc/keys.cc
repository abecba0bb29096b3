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

#include "imsibc/ibc/keys.h"

#include "imsibc/core/errors.h"
#include "imsibc/core/hash.h"
#include "imsibc/pairing/pairing.h"

namespace imsibc::ibc {

absl::StatusOr<MasterKeyPair> PkgSetup(const PairingParams& params, Rng& rng) {
  IMSIBC_RETURN_IF_ERROR(params.Validate());
  MasterKeyPair m;
  IMSIBC_ASSIGN_OR_RETURN(m.s1, Scalar::Random(rng));
  IMSIBC_ASSIGN_OR_RETURN(m.s2, Scalar::Random(rng));
  m.pub.params = params;
  m.pub.ppub1 = params.generator_b * m.s1;
  m.pub.ppub2 = params.generator_b * m.s2;
  return m;
}

Bytes UserPublicKey::BindingInput() const {
  return Concat(kpub1.ToBytes(), kpub2);
}

absl::StatusOr<G1Point> UeidFor(const PairingParams& params,
                                std::string_view impu) {
  return pairing::HashToG1(AsBytes(impu), params.ueid_tag);
}

absl::StatusOr<G1Point> KeyBindingPoint(const PairingParams& params,
                                        const UserPublicKey& pub) {
  return pairing::HashToG1(pub.BindingInput(), params.binding_tag);
}

Kpub2 Kpub2Mask(const G2Point& r_ppub1) {
  static constexpr std::string_view kInfo = "imsibc kpub2 mask v1";
  const Bytes okm =
      HkdfSha256(r_ppub1.ToBytes(), {}, AsBytes(kInfo), kKpub2Size);
  Kpub2 mask;
  std::copy(okm.begin(), okm.end(), mask.begin());
  return mask;
}

absl::StatusOr<UserKeyMaterial> ExtractUserKeys(std::string_view impu,
                                                const MasterKeyPair& master,
                                                Rng& rng) {
  if (impu.empty()) {
    return MakeError(ErrorReason::kInvalidArgument, "empty IMPU");
  }
  const PairingParams& params = master.pub.params;
  UserKeyMaterial keys;
  keys.impu = std::string(impu);
  IMSIBC_ASSIGN_OR_RETURN(Scalar r, Scalar::Random(rng));
  keys.r = r;

  keys.pub.kpub1 = params.generator_a * r;
  IMSIBC_ASSIGN_OR_RETURN(G1Point ueid, UeidFor(params, impu));
  const Bytes ueid_bytes = ueid.ToBytes();
  const Kpub2 mask = Kpub2Mask(master.pub.ppub1 * r);
  for (size_t i = 0; i < kKpub2Size; ++i) {
    keys.pub.kpub2[i] = ueid_bytes[i] ^ mask[i];
  }

  IMSIBC_ASSIGN_OR_RETURN(G1Point binding, KeyBindingPoint(params, keys.pub));
  keys.priv = UserPrivateKey{keys.pub.kpub1 * master.s1, binding * master.s2};
  return keys;
}

absl::StatusOr<G1Point> RecoverUeid(const UserPublicKey& pub, const Scalar& r,
                                    const MasterPublicKey& master) {
  const Kpub2 mask = Kpub2Mask(master.ppub1 * r);
  Bytes ueid(kKpub2Size);
  for (size_t i = 0; i < kKpub2Size; ++i) ueid[i] = pub.kpub2[i] ^ mask[i];
  return G1Point::FromBytes(ueid);
}

}  // namespace imsibc::ibc

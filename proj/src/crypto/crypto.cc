// Copyright 2026 The AuthCred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "authcred/crypto/crypto.h"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "authcred/common/error.h"

namespace authcred::crypto {

namespace {

template <size_t N>
std::array<uint8_t, N> ToArray(ByteSpan bytes) {
  std::array<uint8_t, N> out;
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

}  // namespace

Digest Digest::FromBytes(ByteSpan bytes) {
  AUTHCRED_ENFORCE(bytes.size() == kSize, ErrorCode::kBadEncoding,
                   "digest must be 32 bytes");
  return Digest(ToArray<kSize>(bytes));
}

Digest Digest::FromHex(std::string_view hex) {
  return FromBytes(authcred::FromHex(hex));
}

PublicKey PublicKey::FromBytes(ByteSpan bytes) {
  AUTHCRED_ENFORCE(bytes.size() == kSize, ErrorCode::kBadKeyLength,
                   "public key must be 32 bytes");
  return PublicKey(ToArray<kSize>(bytes));
}

Signature Signature::FromBytes(ByteSpan bytes) {
  AUTHCRED_ENFORCE(bytes.size() == kSize, ErrorCode::kBadSignatureLength,
                   "signature must be 64 bytes");
  return Signature(ToArray<kSize>(bytes));
}

SecretKey::~SecretKey() { sodium_memzero(bytes_.data(), bytes_.size()); }

std::array<uint8_t, 32> SecretKey::Seed() const {
  std::array<uint8_t, 32> seed;
  crypto_sign_ed25519_sk_to_seed(seed.data(), bytes_.data());
  return seed;
}

KeyPair GenerateKeypair(ByteSpan seed) {
  EnsureSodiumInitialized();
  AUTHCRED_ENFORCE(seed.size() == crypto_sign_SEEDBYTES,
                   ErrorCode::kBadSeedLength, "seed must be 32 bytes");
  std::array<uint8_t, 32> pk;
  std::array<uint8_t, 64> sk;
  crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
  KeyPair kp{PublicKey(pk), SecretKey(sk)};
  sodium_memzero(sk.data(), sk.size());
  return kp;
}

KeyPair GenerateKeypair(Rng& rng) {
  auto seed = rng.RandomArray<32>();
  KeyPair kp = GenerateKeypair(seed);
  sodium_memzero(seed.data(), seed.size());
  return kp;
}

KeyPair GenerateKeypair() {
  SystemRng rng;
  return GenerateKeypair(rng);
}

Signature Sign(const SecretKey& key, ByteSpan message) {
  EnsureSodiumInitialized();
  std::array<uint8_t, 64> sig;
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       key.data());
  return Signature(sig);
}

bool Verify(const PublicKey& key, ByteSpan message, const Signature& sig) {
  EnsureSodiumInitialized();
  return crypto_sign_verify_detached(sig.data(), message.data(),
                                     message.size(), key.data()) == 0;
}

bool VerifyRaw(ByteSpan public_key, ByteSpan message, ByteSpan signature) {
  return Verify(PublicKey::FromBytes(public_key), message,
                Signature::FromBytes(signature));
}

Digest Hash(ByteSpan input) {
  std::array<uint8_t, 32> out;
  crypto_hash_sha256(out.data(), input.data(), input.size());
  return Digest(out);
}

Digest TaggedHash(std::string_view tag, ByteSpan input) {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, reinterpret_cast<const uint8_t*>(tag.data()),
                            tag.size());
  crypto_hash_sha256_update(&st, input.data(), input.size());
  std::array<uint8_t, 32> out;
  crypto_hash_sha256_final(&st, out.data());
  return Digest(out);
}

Salt SaltFromBytes(ByteSpan bytes) {
  AUTHCRED_ENFORCE(bytes.size() == 32, ErrorCode::kBadSaltLength,
                   "salt must be 32 bytes");
  return ToArray<32>(bytes);
}

Commitment Commit(ByteSpan value, ByteSpan salt) {
  AUTHCRED_ENFORCE(salt.size() == 32, ErrorCode::kBadSaltLength,
                   "salt must be 32 bytes");
  Bytes material(salt.begin(), salt.end());
  material.insert(material.end(), value.begin(), value.end());
  return Commitment{TaggedHash(tags::kCommit, material)};
}

bool OpenCommitment(const Commitment& c, ByteSpan value, ByteSpan salt) {
  Commitment recomputed = Commit(value, salt);
  return sodium_memcmp(recomputed.digest.data(), c.digest.data(),
                       Digest::kSize) == 0;
}

GroupElement GroupElement::FromBytes(ByteSpan bytes) {
  EnsureSodiumInitialized();
  AUTHCRED_ENFORCE(bytes.size() == kSize,
                   ErrorCode::kMalformedElementEncoding,
                   "group element must be 32 bytes");
  AUTHCRED_ENFORCE(crypto_core_ristretto255_is_valid_point(bytes.data()) == 1,
                   ErrorCode::kMalformedElementEncoding,
                   "not a canonical ristretto255 encoding");
  return GroupElement(ToArray<kSize>(bytes));
}

Scalar Scalar::FromBytes(ByteSpan bytes) {
  AUTHCRED_ENFORCE(bytes.size() == kSize, ErrorCode::kBadEncoding,
                   "scalar must be 32 bytes");
  AUTHCRED_ENFORCE(!sodium_is_zero(bytes.data(), bytes.size()),
                   ErrorCode::kZeroScalar, "scalar must be nonzero");
  std::array<uint8_t, 64> wide{};
  std::copy(bytes.begin(), bytes.end(), wide.begin());
  std::array<uint8_t, 32> reduced;
  crypto_core_ristretto255_scalar_reduce(reduced.data(), wide.data());
  AUTHCRED_ENFORCE(std::equal(reduced.begin(), reduced.end(), bytes.begin()),
                   ErrorCode::kBadEncoding, "scalar not reduced mod order");
  return Scalar(reduced);
}

GroupElement HashToGroup(ByteSpan input) {
  EnsureSodiumInitialized();
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  crypto_hash_sha512_update(
      &st, reinterpret_cast<const uint8_t*>(tags::kHashToGroup.data()),
      tags::kHashToGroup.size());
  crypto_hash_sha512_update(&st, input.data(), input.size());
  std::array<uint8_t, crypto_core_ristretto255_HASHBYTES> wide;
  crypto_hash_sha512_final(&st, wide.data());
  std::array<uint8_t, 32> point;
  crypto_core_ristretto255_from_hash(point.data(), wide.data());
  return GroupElement(point);
}

GroupElement ScalarMul(const GroupElement& point, const Scalar& k) {
  std::array<uint8_t, 32> out;
  AUTHCRED_ENFORCE(
      crypto_scalarmult_ristretto255(out.data(), k.data(), point.data()) == 0,
      ErrorCode::kMalformedElementEncoding,
      "scalar multiplication produced the identity");
  return GroupElement(out);
}

GroupElement ScalarMul(const GroupElement& point, ByteSpan scalar_bytes) {
  return ScalarMul(point, Scalar::FromBytes(scalar_bytes));
}

Scalar RandomScalar(Rng& rng) {
  for (;;) {
    auto wide = rng.RandomArray<64>();
    std::array<uint8_t, 32> reduced;
    crypto_core_ristretto255_scalar_reduce(reduced.data(), wide.data());
    if (!sodium_is_zero(reduced.data(), reduced.size())) {
      return Scalar(reduced);
    }
  }
}

Scalar RandomScalar() {
  SystemRng rng;
  return RandomScalar(rng);
}

}  // namespace authcred::crypto

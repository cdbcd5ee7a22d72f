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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "authcred/common/bytes.h"
#include "authcred/common/rng.h"

// Primitive layer: Ed25519 signatures, SHA-256, salted hash commitments and
// the ristretto255 prime-order group, all via libsodium. Every value type is
// immutable and safe to share across threads.
namespace authcred::crypto {

// Domain-separation tags. Each hashing context prepends exactly one of these.
namespace tags {
inline constexpr std::string_view kCommit = "authcred/commit/v1";
inline constexpr std::string_view kHashToGroup = "authcred/h2g/v1";
inline constexpr std::string_view kCredential = "authcred/vc/v1";
inline constexpr std::string_view kCredentialSig = "authcred/vc-sig/v1";
inline constexpr std::string_view kPresentation = "authcred/vp/v1";
inline constexpr std::string_view kDidDocument = "authcred/did-doc/v1";
inline constexpr std::string_view kConsent = "authcred/consent/v1";
inline constexpr std::string_view kConsentRecord = "authcred/consent-record/v1";
inline constexpr std::string_view kLedgerEntry = "authcred/ledger-entry/v1";
inline constexpr std::string_view kBlock = "authcred/block/v1";
inline constexpr std::string_view kReview = "authcred/review/v1";
inline constexpr std::string_view kCoiOutcome = "authcred/coi-outcome/v1";
inline constexpr std::string_view kCoiTranscript = "authcred/coi-transcript/v1";
inline constexpr std::string_view kCoiSalted = "authcred/coi-salted/v1";
inline constexpr std::string_view kPublication = "authcred/publication/v1";
inline constexpr std::string_view kSubmissionId = "authcred/submission-id/v1";
inline constexpr std::string_view kEditorial = "authcred/editorial/v1";
inline constexpr std::string_view kAssignment = "authcred/assignment/v1";
inline constexpr std::string_view kDecision = "authcred/decision/v1";
}  // namespace tags

template <size_t N>
class FixedBytes {
 public:
  static constexpr size_t kSize = N;

  FixedBytes() { bytes_.fill(0); }
  explicit FixedBytes(const std::array<uint8_t, N>& bytes) : bytes_(bytes) {}

  const std::array<uint8_t, N>& bytes() const { return bytes_; }
  ByteSpan span() const { return bytes_; }
  const uint8_t* data() const { return bytes_.data(); }
  std::string ToHex() const { return authcred::ToHex(bytes_); }

  auto operator<=>(const FixedBytes&) const = default;
  bool operator==(const FixedBytes&) const = default;

 protected:
  std::array<uint8_t, N> bytes_;
};

// 32-byte SHA-256 output.
class Digest : public FixedBytes<32> {
 public:
  using FixedBytes::FixedBytes;
  static Digest FromBytes(ByteSpan bytes);  // kBadEncoding unless 32 bytes
  static Digest FromHex(std::string_view hex);
  static Digest Zero() { return Digest(); }
};

class PublicKey : public FixedBytes<32> {
 public:
  using FixedBytes::FixedBytes;
  static PublicKey FromBytes(ByteSpan bytes);  // kBadKeyLength
};

class Signature : public FixedBytes<64> {
 public:
  using FixedBytes::FixedBytes;
  static Signature FromBytes(ByteSpan bytes);  // kBadSignatureLength
};

// Secret signing key (libsodium's 64-byte seed||pk layout). Zeroed on
// destruction; has no JSON or string conversion.
class SecretKey {
 public:
  SecretKey() { bytes_.fill(0); }
  explicit SecretKey(const std::array<uint8_t, 64>& bytes) : bytes_(bytes) {}
  SecretKey(const SecretKey&) = default;
  SecretKey& operator=(const SecretKey&) = default;
  ~SecretKey();

  const uint8_t* data() const { return bytes_.data(); }
  // The 32-byte seed the key was expanded from; used only by the wallet.
  std::array<uint8_t, 32> Seed() const;

 private:
  std::array<uint8_t, 64> bytes_;
};

struct KeyPair {
  PublicKey public_key;
  SecretKey private_key;
};

// seed must be exactly 32 bytes (kBadSeedLength).
KeyPair GenerateKeypair(ByteSpan seed);
KeyPair GenerateKeypair(Rng& rng);
KeyPair GenerateKeypair();

Signature Sign(const SecretKey& key, ByteSpan message);
bool Verify(const PublicKey& key, ByteSpan message, const Signature& sig);
// Length-checked variant for untrusted inputs: malformed lengths throw
// kBadKeyLength / kBadSignatureLength instead of returning false.
bool VerifyRaw(ByteSpan public_key, ByteSpan message, ByteSpan signature);

Digest Hash(ByteSpan input);
inline Digest Hash(std::string_view input) { return Hash(AsBytes(input)); }
// hash(tag || input)
Digest TaggedHash(std::string_view tag, ByteSpan input);
inline Digest TaggedHash(std::string_view tag, std::string_view input) {
  return TaggedHash(tag, AsBytes(input));
}

using Salt = std::array<uint8_t, 32>;

struct Commitment {
  Digest digest;
  auto operator<=>(const Commitment&) const = default;
};

Salt SaltFromBytes(ByteSpan bytes);  // kBadSaltLength
// digest = hash("authcred/commit/v1" || salt || value)
Commitment Commit(ByteSpan value, ByteSpan salt);
bool OpenCommitment(const Commitment& c, ByteSpan value, ByteSpan salt);

// Encoded ristretto255 element.
class GroupElement : public FixedBytes<32> {
 public:
  using FixedBytes::FixedBytes;
  // kMalformedElementEncoding unless a canonical ristretto255 encoding.
  static GroupElement FromBytes(ByteSpan bytes);
};

// Nonzero integer modulo the ristretto255 group order.
class Scalar : public FixedBytes<32> {
 public:
  // kZeroScalar for zero; kBadEncoding for wrong length or values >= order.
  static Scalar FromBytes(ByteSpan bytes);

 private:
  explicit Scalar(const std::array<uint8_t, 32>& bytes) : FixedBytes(bytes) {}
  friend Scalar RandomScalar(Rng& rng);
};

GroupElement HashToGroup(ByteSpan input);
inline GroupElement HashToGroup(std::string_view input) {
  return HashToGroup(AsBytes(input));
}
GroupElement ScalarMul(const GroupElement& point, const Scalar& k);
// Raw-bytes form so the zero scalar can be expressed and rejected.
GroupElement ScalarMul(const GroupElement& point, ByteSpan scalar_bytes);
Scalar RandomScalar(Rng& rng);
Scalar RandomScalar();

}  // namespace authcred::crypto

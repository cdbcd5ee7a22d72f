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

#include <openssl/evp.h>

#include "gtest/gtest.h"

#include "authcred/common/error.h"

namespace authcred::crypto {
namespace {

// Independent SHA-256 (OpenSSL) used as the reference oracle.
Bytes OpensslSha256(ByteSpan input) {
  Bytes out(32);
  unsigned int len = 0;
  EVP_Digest(input.data(), input.size(), out.data(), &len, EVP_sha256(),
             nullptr);
  return out;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kBadRequest;
}

TEST(KeypairTest, SeededIsDeterministic) {
  std::array<uint8_t, 32> seed{};
  KeyPair a = GenerateKeypair(seed);
  KeyPair b = GenerateKeypair(seed);
  EXPECT_EQ(a.public_key, b.public_key);
  EXPECT_EQ(a.private_key.Seed(), b.private_key.Seed());
}

TEST(KeypairTest, UnseededCallsDiffer) {
  EXPECT_NE(GenerateKeypair().public_key, GenerateKeypair().public_key);
}

TEST(KeypairTest, RejectsShortSeed) {
  Bytes seed(31, 0);
  EXPECT_EQ(CodeOf([&] { GenerateKeypair(seed); }), ErrorCode::kBadSeedLength);
}

TEST(KeypairTest, PublicKeyDerivableFromPrivate) {
  SystemRng rng;
  KeyPair kp = GenerateKeypair(rng);
  auto seed = kp.private_key.Seed();
  EXPECT_EQ(GenerateKeypair(seed).public_key, kp.public_key);
}

TEST(SignatureTest, RoundTrip) {
  KeyPair kp = GenerateKeypair();
  Signature sig = Sign(kp.private_key, AsBytes("hello"));
  EXPECT_TRUE(Verify(kp.public_key, AsBytes("hello"), sig));
}

TEST(SignatureTest, WrongKeyFails) {
  KeyPair kp = GenerateKeypair();
  KeyPair other = GenerateKeypair();
  Signature sig = Sign(kp.private_key, AsBytes("hello"));
  EXPECT_FALSE(Verify(other.public_key, AsBytes("hello"), sig));
}

TEST(SignatureTest, SingleBitMutationsFail) {
  auto rng = DeterministicRng::FromU64(7);
  for (int trial = 0; trial < 1000; ++trial) {
    KeyPair kp = GenerateKeypair(rng);
    Bytes msg = rng.RandomBytes(1 + rng.Uniform(200));
    Signature sig = Sign(kp.private_key, msg);
    ASSERT_TRUE(Verify(kp.public_key, msg, sig));

    auto sig_bytes = sig.bytes();
    size_t bit = rng.Uniform(sig_bytes.size() * 8);
    sig_bytes[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(Verify(kp.public_key, msg, Signature(sig_bytes)));

    Bytes mutated = msg;
    bit = rng.Uniform(mutated.size() * 8);
    mutated[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(Verify(kp.public_key, mutated, sig));
  }
}

TEST(SignatureTest, MalformedLengthsAreErrorsNotFalse) {
  KeyPair kp = GenerateKeypair();
  Signature sig = Sign(kp.private_key, AsBytes("m"));
  Bytes short_key(31, 1);
  Bytes short_sig(63, 1);
  EXPECT_EQ(CodeOf([&] { VerifyRaw(short_key, AsBytes("m"), sig.span()); }),
            ErrorCode::kBadKeyLength);
  EXPECT_EQ(
      CodeOf([&] { VerifyRaw(kp.public_key.span(), AsBytes("m"), short_sig); }),
      ErrorCode::kBadSignatureLength);
  EXPECT_TRUE(VerifyRaw(kp.public_key.span(), AsBytes("m"), sig.span()));
}

TEST(HashTest, EmptyInputMatchesReference) {
  Digest d = Hash(ByteSpan{});
  EXPECT_EQ(d.ToHex(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Bytes(d.bytes().begin(), d.bytes().end()),
            OpensslSha256(ByteSpan{}));
}

TEST(HashTest, AgreesWithOpensslOnRandomInputs) {
  auto rng = DeterministicRng::FromU64(11);
  for (int i = 0; i < 200; ++i) {
    Bytes x = rng.RandomBytes(rng.Uniform(300));
    Digest d = Hash(x);
    EXPECT_EQ(Bytes(d.bytes().begin(), d.bytes().end()), OpensslSha256(x));
  }
}

TEST(HashTest, DeterministicAndBitSensitive) {
  auto rng = DeterministicRng::FromU64(12);
  for (int i = 0; i < 1000; ++i) {
    Bytes x = rng.RandomBytes(1 + rng.Uniform(64));
    EXPECT_EQ(Hash(x), Hash(x));
    Bytes y = x;
    size_t bit = rng.Uniform(y.size() * 8);
    y[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_NE(Hash(x), Hash(y));
  }
}

TEST(CommitmentTest, DigestRecipe) {
  Salt salt;
  salt.fill(0x5a);
  Bytes value = ToBytes("affiliation=Example University");
  Bytes material = ToBytes(tags::kCommit);
  material.insert(material.end(), salt.begin(), salt.end());
  material.insert(material.end(), value.begin(), value.end());
  Commitment c = Commit(value, salt);
  EXPECT_EQ(Bytes(c.digest.bytes().begin(), c.digest.bytes().end()),
            OpensslSha256(material));
}

TEST(CommitmentTest, OpenRequiresValueAndSalt) {
  SystemRng rng;
  Salt salt = rng.RandomArray<32>();
  Salt other_salt = rng.RandomArray<32>();
  Bytes value = ToBytes("value");
  Commitment c = Commit(value, salt);
  EXPECT_TRUE(OpenCommitment(c, value, salt));
  EXPECT_FALSE(OpenCommitment(c, value, other_salt));
  EXPECT_FALSE(OpenCommitment(c, ToBytes("valuf"), salt));
  EXPECT_NE(Commit(value, salt), Commit(value, other_salt));
}

TEST(CommitmentTest, RejectsBadSaltLength) {
  Bytes salt(31, 0);
  EXPECT_EQ(CodeOf([&] { Commit(AsBytes("v"), salt); }),
            ErrorCode::kBadSaltLength);
}

TEST(CommitmentTest, BindingUnderMutation) {
  auto rng = DeterministicRng::FromU64(13);
  // Exhaustive single-bit mutations of one fixture.
  Bytes value = rng.RandomBytes(24);
  Salt salt = rng.RandomArray<32>();
  Commitment c = Commit(value, salt);
  for (size_t bit = 0; bit < value.size() * 8; ++bit) {
    Bytes v = value;
    v[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(OpenCommitment(c, v, salt));
  }
  for (size_t bit = 0; bit < salt.size() * 8; ++bit) {
    Salt s = salt;
    s[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(OpenCommitment(c, value, s));
  }
  // Truncation and extension of the value.
  EXPECT_FALSE(OpenCommitment(c, ByteSpan(value).first(value.size() - 1), salt));
  Bytes longer = value;
  longer.push_back(0);
  EXPECT_FALSE(OpenCommitment(c, longer, salt));
  // Random independent openings.
  for (int i = 0; i < 1000; ++i) {
    Bytes v = rng.RandomBytes(24);
    Salt s = rng.RandomArray<32>();
    EXPECT_FALSE(OpenCommitment(c, v, s));
    EXPECT_FALSE(OpenCommitment(c, v, salt));
    EXPECT_FALSE(OpenCommitment(c, value, s));
  }
}

TEST(GroupTest, BlindingCommutes) {
  auto rng = DeterministicRng::FromU64(14);
  GroupElement p = HashToGroup("x");
  for (int i = 0; i < 100; ++i) {
    Scalar a = RandomScalar(rng);
    Scalar b = RandomScalar(rng);
    EXPECT_EQ(ScalarMul(ScalarMul(p, a), b), ScalarMul(ScalarMul(p, b), a));
  }
}

TEST(GroupTest, HashToGroupDeterministic) {
  EXPECT_EQ(HashToGroup("x"), HashToGroup("x"));
  EXPECT_NE(HashToGroup("x"), HashToGroup("y"));
  // Output is a canonical element.
  GroupElement g = HashToGroup("x");
  EXPECT_EQ(GroupElement::FromBytes(g.span()), g);
}

TEST(GroupTest, ZeroScalarRejected) {
  Bytes zero(32, 0);
  EXPECT_EQ(CodeOf([&] { ScalarMul(HashToGroup("x"), zero); }),
            ErrorCode::kZeroScalar);
  EXPECT_EQ(CodeOf([&] { Scalar::FromBytes(zero); }), ErrorCode::kZeroScalar);
}

TEST(GroupTest, MalformedElementRejected) {
  Bytes bad(32, 0xff);
  EXPECT_EQ(CodeOf([&] { GroupElement::FromBytes(bad); }),
            ErrorCode::kMalformedElementEncoding);
  EXPECT_EQ(CodeOf([&] { GroupElement::FromBytes(Bytes(31, 0)); }),
            ErrorCode::kMalformedElementEncoding);
}

TEST(GroupTest, ScalarRoundTripsThroughBytes) {
  SystemRng rng;
  Scalar s = RandomScalar(rng);
  EXPECT_EQ(Scalar::FromBytes(s.span()), s);
}

}  // namespace
}  // namespace authcred::crypto

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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "authcred/common/canonical_json.h"
#include "authcred/common/clock.h"
#include "authcred/common/rng.h"
#include "authcred/crypto/crypto.h"
#include "authcred/identity/did.h"
#include "authcred/registry/ledger.h"

// Verifiable credentials with per-claim salted commitments. The issuer signs
// the commitment vector, never the raw claim values, so the holder can later
// open any subset of claims to a verifier.
//
// Claim i is committed as commit(name || 0x00 || value, salt_i); names are
// restricted to [a-z0-9_-]+ so the encoding is injective.
namespace authcred::credentials {

inline constexpr int64_t kDefaultValiditySeconds = 365 * kSecondsPerDay;

using Challenge = std::array<uint8_t, 32>;

struct Claim {
  std::string name;
  std::string value;
  crypto::Salt salt;

  crypto::Commitment Commitment() const;
  bool operator==(const Claim&) const = default;
};

struct Validity {
  int64_t issued_at = 0;
  int64_t expires_at = 0;
};

struct VerifiableCredential {
  identity::Did issuer_did;
  identity::Did subject_did;
  std::vector<Claim> claims;
  std::vector<crypto::Commitment> claim_commitments;
  int64_t issued_at = 0;
  int64_t expires_at = 0;
  crypto::Signature issuer_signature;

  // The fields the issuer signs: dids, commitments, validity.
  Json SignedPayloadJson() const;
  // Signed payload plus the issuer signature; contains no claim values.
  Json SkeletonJson() const;
  // Holder-side full form including claims and salts.
  Json ToJson() const;
  static VerifiableCredential FromJson(const Json& j);  // kParseFailure

  // hash("authcred/vc/v1" || canonical(skeleton)); the anchored value.
  crypto::Digest AnchorDigest() const;
  std::string Id() const { return AnchorDigest().ToHex(); }
};

// Issues a credential. Checks the issuer DID resolves to `issuer_keypair`'s
// public key. Errors: kUnknownIssuerDid, kIssuerKeyMismatch, kEmptyClaims,
// kDuplicateClaimName, kBadClaimName, kBadValidity.
VerifiableCredential IssueCredential(
    const identity::DidDirectory& directory, const crypto::KeyPair& issuer_keypair,
    const identity::Did& issuer_did, const identity::Did& subject_did,
    const std::vector<std::pair<std::string, std::string>>& claims,
    Validity validity, Rng& rng);

bool IssuerSignatureValid(const identity::DidDirectory& directory,
                          const VerifiableCredential& vc);

// Records a CredentialAnchor entry keyed by the credential id.
// Errors: kInvalidSignature, kDuplicateAnchor.
registry::LedgerReceipt AnchorCredential(registry::Registry& registry,
                                         const identity::DidDirectory& directory,
                                         const VerifiableCredential& vc);

bool IsAnchored(const registry::Registry& registry, const crypto::Digest& digest);

struct VerificationReport {
  bool issuer_resolvable = false;
  bool signature_valid = false;
  bool anchored = false;
  bool within_validity = false;
  bool claims_open = false;  // every claim opens its commitment

  bool ok() const {
    return issuer_resolvable && signature_valid && anchored && within_validity &&
           claims_open;
  }
  Json ToJson() const;
};

VerificationReport VerifyCredential(const registry::Registry& registry,
                                    const identity::DidDirectory& directory,
                                    const VerifiableCredential& vc, int64_t now);

struct DisclosedClaim {
  size_t index = 0;
  std::string name;
  std::string value;
  crypto::Salt salt;
};

struct Presentation {
  identity::Did issuer_did;
  identity::Did subject_did;
  std::vector<crypto::Commitment> commitments;
  int64_t issued_at = 0;
  int64_t expires_at = 0;
  crypto::Signature issuer_signature;
  std::vector<DisclosedClaim> disclosed;
  Challenge challenge{};
  crypto::Signature holder_signature;

  // Everything the holder signs (all fields but holder_signature).
  Json HolderPayloadJson() const;
  Json ToJson() const;
  static Presentation FromJson(const Json& j);  // kParseFailure
  std::string Serialize() const { return Canonicalize(ToJson()); }
  // Anchor digest of the embedded credential skeleton.
  crypto::Digest CredentialDigest() const;
};

// Errors: kUnknownClaimName.
Presentation CreatePresentation(const VerifiableCredential& vc,
                                const std::set<std::string>& disclose,
                                const crypto::KeyPair& holder_keypair,
                                const Challenge& challenge);

using DisclosedClaims = std::map<std::string, std::string>;

// Errors: kChallengeMismatch, kUnknownIssuerDid, kInvalidIssuerSignature,
// kUnknownSubjectDid, kInvalidHolderSignature, kStaleCredential,
// kCommitmentOpenFailure.
DisclosedClaims VerifyPresentation(const identity::DidDirectory& directory,
                                   const Presentation& presentation,
                                   const Challenge& expected_challenge, int64_t now);

}  // namespace authcred::credentials

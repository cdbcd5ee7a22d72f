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
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "authcred/common/canonical_json.h"
#include "authcred/common/rng.h"
#include "authcred/crypto/crypto.h"

// Private conflict-of-interest check between a journal and a reviewer. Both
// sides learn only |journal_set ∩ reviewer_set| (semi-honest model).
//
// DH-blinded variant over ristretto255:
//   round 1  journal  -> reviewer  shuffle{ H(x)^j : x in journal set }
//   round 2  reviewer -> journal   shuffle{ (H(x)^j)^r }  and  shuffle{ H(y)^r }
//   finalize journal               { (H(y)^r)^j }, count matches with round 2a
//
// Salted-hash variant (weaker; an honest-but-curious party can dictionary
// attack the other side's hashes): both sides publish hash(salt || element).
namespace authcred::coi {

inline constexpr size_t kMaxConflictSetSize = 512;

// NFC, root-locale lowercase, runs of Unicode whitespace collapsed to one
// ASCII space, leading/trailing whitespace stripped.
// Errors: kEmptyElement, kBadEncoding (invalid UTF-8).
std::string Normalize(std::string_view raw);

class ConflictSet {
 public:
  ConflictSet() = default;
  // Normalizes and deduplicates. Errors: kEmptyElement, kConflictSetTooLarge.
  static ConflictSet Build(const std::vector<std::string>& raw);

  const std::set<std::string>& elements() const { return elements_; }
  size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

 private:
  std::set<std::string> elements_;
};

enum class Variant { kSaltedHash, kDhBlinded };
std::string_view VariantName(Variant v);
Variant VariantFromName(std::string_view name);  // kParseFailure

struct CoiOutcome {
  size_t intersection_cardinality = 0;
  bool clear = true;
  crypto::Digest transcript_digest;

  Json ToJson() const;
  static CoiOutcome FromJson(const Json& j);
  // hash("authcred/coi-outcome/v1" || canonical(ToJson())); anchored value.
  crypto::Digest AnchorDigest() const;
  bool operator==(const CoiOutcome&) const = default;
};

struct Round {
  std::string name;
  std::vector<Bytes> items;
  bool operator==(const Round&) const = default;
};

using SessionId = std::array<uint8_t, 16>;

struct CoiTranscript {
  SessionId session_id{};
  Variant variant = Variant::kDhBlinded;
  crypto::Commitment journal_commitment;
  std::vector<Round> rounds;
  CoiOutcome outcome;

  // Digest over everything except `outcome`.
  crypto::Digest ComputeDigest() const;
  Json ToJson() const;
  static CoiTranscript FromJson(const Json& j);  // kParseFailure
  std::string SessionIdHex() const { return ToHex(session_id); }
};

// --- DH-blinded rounds -----------------------------------------------------

// Errors: kEmptyJournalSet.
std::vector<crypto::GroupElement> DhRound1(const ConflictSet& journal_set,
                                           const crypto::Scalar& journal_secret,
                                           Rng& rng);

struct DhRound2Message {
  std::vector<crypto::GroupElement> double_blinded_journal;
  std::vector<crypto::GroupElement> reviewer_blinded;
};

DhRound2Message DhRound2(const std::vector<crypto::GroupElement>& round1,
                         const ConflictSet& reviewer_set,
                         const crypto::Scalar& reviewer_secret, Rng& rng);

struct DhFinalizeResult {
  std::vector<crypto::GroupElement> reviewer_double_blinded;
  size_t intersection_cardinality = 0;
};

DhFinalizeResult DhFinalize(const DhRound2Message& round2,
                            const crypto::Scalar& journal_secret);

struct SessionResult {
  CoiTranscript transcript;
  CoiOutcome outcome;
};

// Runs all DH rounds in-process and records the transcript. The journal
// commits to `journal_secret` (with `commitment_salt`) before round 1.
SessionResult RunDhSession(const ConflictSet& journal_set,
                           const ConflictSet& reviewer_set,
                           const crypto::Scalar& journal_secret,
                           const crypto::Salt& commitment_salt, Rng& rng);

// --- Salted-hash variant ---------------------------------------------------

// Remembers every session salt ever used; thread-safe.
class SaltRegistry {
 public:
  // Errors: kSaltReuse.
  void Claim(const crypto::Salt& salt);
  bool Seen(const crypto::Salt& salt) const;

 private:
  mutable std::mutex mu_;
  std::set<crypto::Salt> seen_;
};

// The journal commits to the session salt (with `commitment_salt`).
// Errors: kSaltReuse, kEmptyJournalSet.
SessionResult SaltedHashCheck(const ConflictSet& journal_set,
                              const ConflictSet& reviewer_set,
                              const crypto::Salt& session_salt,
                              const crypto::Salt& commitment_salt,
                              SaltRegistry& salts, Rng& rng);

// --- Verification ----------------------------------------------------------

// Public replay: the transcript's commitment equals `journal_secret_commitment`,
// the digest recomputes, the overlap recount from the recorded rounds matches
// the outcome, and clear <=> cardinality == 0. Errors: kIncompleteTranscript.
bool VerifyTranscript(const CoiTranscript& transcript,
                      const crypto::Commitment& journal_secret_commitment);

// Auditor replay with the journal's opening: additionally checks the
// commitment opens and (DH) that the last round equals round 2b raised to
// the committed secret.
bool AuditTranscript(const CoiTranscript& transcript, ByteSpan journal_secret,
                     const crypto::Salt& commitment_salt);

}  // namespace authcred::coi

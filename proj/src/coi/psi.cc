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

#include "authcred/coi/psi.h"

#include <algorithm>
#include <map>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "authcred/common/error.h"

namespace authcred::coi {

namespace {

constexpr std::string_view kJournalBlinded = "journal_blinded";
constexpr std::string_view kDoubleBlindedJournal = "double_blinded_journal";
constexpr std::string_view kReviewerBlinded = "reviewer_blinded";
constexpr std::string_view kReviewerDoubleBlinded = "reviewer_double_blinded";
constexpr std::string_view kJournalHashed = "journal_hashed";
constexpr std::string_view kReviewerHashed = "reviewer_hashed";

bool ValidUtf8(std::string_view s) {
  int32_t i = 0;
  const int32_t n = static_cast<int32_t>(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) return false;
  }
  return true;
}

icu::UnicodeString Nfc(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  AUTHCRED_ENFORCE(U_SUCCESS(status), ErrorCode::kBadEncoding, "ICU NFC unavailable");
  icu::UnicodeString out = nfc->normalize(in, status);
  AUTHCRED_ENFORCE(U_SUCCESS(status), ErrorCode::kBadEncoding, "normalization failed");
  return out;
}

// Multiset overlap: every element of `b` matched against a remaining copy
// in `a`.
size_t CountOverlap(const std::vector<Bytes>& a, const std::vector<Bytes>& b) {
  std::map<Bytes, size_t> counts;
  for (const auto& x : a) ++counts[x];
  size_t n = 0;
  for (const auto& y : b) {
    auto it = counts.find(y);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++n;
    }
  }
  return n;
}

std::vector<Bytes> ToItems(const std::vector<crypto::GroupElement>& elems) {
  std::vector<Bytes> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.emplace_back(e.span().begin(), e.span().end());
  return out;
}

Json ItemsJson(const std::vector<Bytes>& items) {
  Json arr = Json::array();
  for (const auto& b : items) arr.push_back(Base64Encode(b));
  return arr;
}

Json RoundsJson(const std::vector<Round>& rounds) {
  Json arr = Json::array();
  for (const auto& r : rounds) {
    Json jr;
    jr["name"] = r.name;
    jr["items"] = ItemsJson(r.items);
    arr.push_back(std::move(jr));
  }
  return arr;
}

SessionId NewSessionId(Rng& rng) { return rng.RandomArray<16>(); }

std::vector<std::string_view> ExpectedRounds(Variant v) {
  if (v == Variant::kDhBlinded) {
    return {kJournalBlinded, kDoubleBlindedJournal, kReviewerBlinded,
            kReviewerDoubleBlinded};
  }
  return {kJournalHashed, kReviewerHashed};
}

void CheckComplete(const CoiTranscript& t) {
  const auto expected = ExpectedRounds(t.variant);
  AUTHCRED_ENFORCE(t.rounds.size() == expected.size(),
                   ErrorCode::kIncompleteTranscript, "wrong number of rounds");
  for (size_t i = 0; i < expected.size(); ++i) {
    AUTHCRED_ENFORCE(t.rounds[i].name == expected[i], ErrorCode::kIncompleteTranscript,
                     "unexpected round " + t.rounds[i].name);
  }
}

Bytes SaltedElementHash(const crypto::Salt& salt, const std::string& element) {
  Bytes input(salt.begin(), salt.end());
  input.insert(input.end(), element.begin(), element.end());
  const auto d = crypto::TaggedHash(crypto::tags::kCoiSalted, input);
  return Bytes(d.span().begin(), d.span().end());
}

CoiOutcome MakeOutcome(size_t cardinality, const crypto::Digest& transcript_digest) {
  CoiOutcome o;
  o.intersection_cardinality = cardinality;
  o.clear = cardinality == 0;
  o.transcript_digest = transcript_digest;
  return o;
}

}  // namespace

std::string Normalize(std::string_view raw) {
  AUTHCRED_ENFORCE(ValidUtf8(raw), ErrorCode::kBadEncoding, "invalid UTF-8");
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  s = Nfc(s);
  s.toLower(icu::Locale::getRoot());
  // Lowercasing can leave a string that is no longer NFC.
  s = Nfc(s);

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(0x20));
    pending_space = false;
    collapsed.append(c);
  }
  std::string out;
  collapsed.toUTF8String(out);
  AUTHCRED_ENFORCE(!out.empty(), ErrorCode::kEmptyElement, "element is empty");
  return out;
}

ConflictSet ConflictSet::Build(const std::vector<std::string>& raw) {
  ConflictSet set;
  for (const auto& r : raw) {
    set.elements_.insert(Normalize(r));
    AUTHCRED_ENFORCE(set.elements_.size() <= kMaxConflictSetSize,
                     ErrorCode::kConflictSetTooLarge, "more than 512 elements");
  }
  return set;
}

std::string_view VariantName(Variant v) {
  return v == Variant::kDhBlinded ? "dh_blinded" : "salted_hash";
}

Variant VariantFromName(std::string_view name) {
  if (name == "dh_blinded") return Variant::kDhBlinded;
  if (name == "salted_hash") return Variant::kSaltedHash;
  throw Error(ErrorCode::kParseFailure, "unknown variant " + std::string(name));
}

Json CoiOutcome::ToJson() const {
  Json j;
  j["intersection_cardinality"] = intersection_cardinality;
  j["clear"] = clear;
  j["transcript_digest"] = transcript_digest.ToHex();
  return j;
}

CoiOutcome CoiOutcome::FromJson(const Json& j) {
  try {
    AUTHCRED_ENFORCE(j.is_object() && j.size() == 3, ErrorCode::kParseFailure,
                     "outcome must have 3 fields");
    CoiOutcome o;
    o.intersection_cardinality = j.at("intersection_cardinality").get<size_t>();
    o.clear = j.at("clear").get<bool>();
    o.transcript_digest =
        crypto::Digest::FromHex(j.at("transcript_digest").get<std::string>());
    return o;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

crypto::Digest CoiOutcome::AnchorDigest() const {
  return crypto::TaggedHash(crypto::tags::kCoiOutcome, Canonicalize(ToJson()));
}

crypto::Digest CoiTranscript::ComputeDigest() const {
  Json j;
  j["session_id"] = SessionIdHex();
  j["variant"] = VariantName(variant);
  j["journal_commitment"] = Base64Encode(journal_commitment.digest.span());
  j["rounds"] = RoundsJson(rounds);
  return crypto::TaggedHash(crypto::tags::kCoiTranscript, Canonicalize(j));
}

Json CoiTranscript::ToJson() const {
  Json j;
  j["session_id"] = SessionIdHex();
  j["variant"] = VariantName(variant);
  j["journal_commitment"] = Base64Encode(journal_commitment.digest.span());
  j["rounds"] = RoundsJson(rounds);
  j["outcome"] = outcome.ToJson();
  return j;
}

CoiTranscript CoiTranscript::FromJson(const Json& j) {
  try {
    AUTHCRED_ENFORCE(j.is_object() && j.size() == 5, ErrorCode::kParseFailure,
                     "transcript must have 5 fields");
    CoiTranscript t;
    const Bytes sid = FromHex(j.at("session_id").get<std::string>());
    AUTHCRED_ENFORCE(sid.size() == t.session_id.size(), ErrorCode::kParseFailure,
                     "session id must be 16 bytes");
    std::copy(sid.begin(), sid.end(), t.session_id.begin());
    t.variant = VariantFromName(j.at("variant").get<std::string>());
    t.journal_commitment.digest = crypto::Digest::FromBytes(
        Base64Decode(j.at("journal_commitment").get<std::string>()));
    for (const auto& jr : j.at("rounds")) {
      AUTHCRED_ENFORCE(jr.is_object() && jr.size() == 2, ErrorCode::kParseFailure,
                       "round must have 2 fields");
      Round r;
      r.name = jr.at("name").get<std::string>();
      for (const auto& item : jr.at("items")) {
        r.items.push_back(Base64Decode(item.get<std::string>()));
      }
      t.rounds.push_back(std::move(r));
    }
    t.outcome = CoiOutcome::FromJson(j.at("outcome"));
    return t;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

std::vector<crypto::GroupElement> DhRound1(const ConflictSet& journal_set,
                                           const crypto::Scalar& journal_secret,
                                           Rng& rng) {
  AUTHCRED_ENFORCE(!journal_set.empty(), ErrorCode::kEmptyJournalSet,
                   "journal conflict set is empty");
  std::vector<crypto::GroupElement> out;
  out.reserve(journal_set.size());
  for (const auto& e : journal_set.elements()) {
    out.push_back(crypto::ScalarMul(crypto::HashToGroup(e), journal_secret));
  }
  rng.Shuffle(std::span(out));
  return out;
}

DhRound2Message DhRound2(const std::vector<crypto::GroupElement>& round1,
                         const ConflictSet& reviewer_set,
                         const crypto::Scalar& reviewer_secret, Rng& rng) {
  DhRound2Message msg;
  msg.double_blinded_journal.reserve(round1.size());
  for (const auto& x : round1) {
    msg.double_blinded_journal.push_back(crypto::ScalarMul(x, reviewer_secret));
  }
  for (const auto& y : reviewer_set.elements()) {
    msg.reviewer_blinded.push_back(
        crypto::ScalarMul(crypto::HashToGroup(y), reviewer_secret));
  }
  rng.Shuffle(std::span(msg.double_blinded_journal));
  rng.Shuffle(std::span(msg.reviewer_blinded));
  return msg;
}

DhFinalizeResult DhFinalize(const DhRound2Message& round2,
                            const crypto::Scalar& journal_secret) {
  DhFinalizeResult r;
  r.reviewer_double_blinded.reserve(round2.reviewer_blinded.size());
  for (const auto& y : round2.reviewer_blinded) {
    r.reviewer_double_blinded.push_back(crypto::ScalarMul(y, journal_secret));
  }
  r.intersection_cardinality = CountOverlap(ToItems(round2.double_blinded_journal),
                                            ToItems(r.reviewer_double_blinded));
  return r;
}

SessionResult RunDhSession(const ConflictSet& journal_set,
                           const ConflictSet& reviewer_set,
                           const crypto::Scalar& journal_secret,
                           const crypto::Salt& commitment_salt, Rng& rng) {
  CoiTranscript t;
  t.session_id = NewSessionId(rng);
  t.variant = Variant::kDhBlinded;
  t.journal_commitment = crypto::Commit(journal_secret.span(), commitment_salt);

  const auto round1 = DhRound1(journal_set, journal_secret, rng);
  const crypto::Scalar reviewer_secret = crypto::RandomScalar(rng);
  const auto round2 = DhRound2(round1, reviewer_set, reviewer_secret, rng);
  const auto fin = DhFinalize(round2, journal_secret);

  t.rounds = {
      {std::string(kJournalBlinded), ToItems(round1)},
      {std::string(kDoubleBlindedJournal), ToItems(round2.double_blinded_journal)},
      {std::string(kReviewerBlinded), ToItems(round2.reviewer_blinded)},
      {std::string(kReviewerDoubleBlinded), ToItems(fin.reviewer_double_blinded)},
  };
  t.outcome = MakeOutcome(fin.intersection_cardinality, t.ComputeDigest());
  return {t, t.outcome};
}

void SaltRegistry::Claim(const crypto::Salt& salt) {
  std::lock_guard lock(mu_);
  AUTHCRED_ENFORCE(seen_.insert(salt).second, ErrorCode::kSaltReuse,
                   "session salt already used");
}

bool SaltRegistry::Seen(const crypto::Salt& salt) const {
  std::lock_guard lock(mu_);
  return seen_.contains(salt);
}

SessionResult SaltedHashCheck(const ConflictSet& journal_set,
                              const ConflictSet& reviewer_set,
                              const crypto::Salt& session_salt,
                              const crypto::Salt& commitment_salt,
                              SaltRegistry& salts, Rng& rng) {
  AUTHCRED_ENFORCE(!journal_set.empty(), ErrorCode::kEmptyJournalSet,
                   "journal conflict set is empty");
  salts.Claim(session_salt);

  CoiTranscript t;
  t.session_id = NewSessionId(rng);
  t.variant = Variant::kSaltedHash;
  t.journal_commitment = crypto::Commit(session_salt, commitment_salt);

  std::vector<Bytes> journal_hashed;
  for (const auto& e : journal_set.elements()) {
    journal_hashed.push_back(SaltedElementHash(session_salt, e));
  }
  std::vector<Bytes> reviewer_hashed;
  for (const auto& e : reviewer_set.elements()) {
    reviewer_hashed.push_back(SaltedElementHash(session_salt, e));
  }
  // Sorted order carries no information about the plaintext order.
  std::sort(journal_hashed.begin(), journal_hashed.end());
  std::sort(reviewer_hashed.begin(), reviewer_hashed.end());

  const size_t n = CountOverlap(journal_hashed, reviewer_hashed);
  t.rounds = {{std::string(kJournalHashed), std::move(journal_hashed)},
              {std::string(kReviewerHashed), std::move(reviewer_hashed)}};
  t.outcome = MakeOutcome(n, t.ComputeDigest());
  return {t, t.outcome};
}

bool VerifyTranscript(const CoiTranscript& t,
                      const crypto::Commitment& journal_secret_commitment) {
  CheckComplete(t);
  if (t.journal_commitment != journal_secret_commitment) return false;
  if (t.ComputeDigest() != t.outcome.transcript_digest) return false;
  if (t.outcome.clear != (t.outcome.intersection_cardinality == 0)) return false;

  size_t recount = 0;
  if (t.variant == Variant::kDhBlinded) {
    for (const auto& r : t.rounds) {
      for (const auto& item : r.items) {
        try {
          crypto::GroupElement::FromBytes(item);
        } catch (const Error&) {
          return false;
        }
      }
    }
    // Each blinded list is the image of the other side's list.
    if (t.rounds[0].items.size() != t.rounds[1].items.size()) return false;
    if (t.rounds[2].items.size() != t.rounds[3].items.size()) return false;
    recount = CountOverlap(t.rounds[1].items, t.rounds[3].items);
  } else {
    for (const auto& r : t.rounds) {
      for (const auto& item : r.items) {
        if (item.size() != crypto::Digest::kSize) return false;
      }
    }
    recount = CountOverlap(t.rounds[0].items, t.rounds[1].items);
  }
  return recount == t.outcome.intersection_cardinality;
}

bool AuditTranscript(const CoiTranscript& t, ByteSpan journal_secret,
                     const crypto::Salt& commitment_salt) {
  if (!crypto::OpenCommitment(t.journal_commitment, journal_secret, commitment_salt)) {
    return false;
  }
  if (!VerifyTranscript(t, t.journal_commitment)) return false;
  if (t.variant == Variant::kSaltedHash) return true;

  const crypto::Scalar j = crypto::Scalar::FromBytes(journal_secret);
  const auto& blinded = t.rounds[2].items;
  const auto& final_round = t.rounds[3].items;
  for (size_t i = 0; i < blinded.size(); ++i) {
    const auto expect = crypto::ScalarMul(crypto::GroupElement::FromBytes(blinded[i]), j);
    if (!std::equal(expect.span().begin(), expect.span().end(), final_round[i].begin(),
                    final_round[i].end())) {
      return false;
    }
  }
  return true;
}

}  // namespace authcred::coi

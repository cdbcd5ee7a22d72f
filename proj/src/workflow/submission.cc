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

#include "authcred/workflow/submission.h"

#include <algorithm>
#include <array>

#include "authcred/common/error.h"

namespace authcred::workflow {

namespace {

using identity::Did;
using registry::EntryKind;

template <typename E, size_t N>
std::string_view NameOf(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [e, n] : table) {
    if (e == v) return n;
  }
  return "?";
}

template <typename E, size_t N>
E FromNameOf(const std::array<std::pair<E, std::string_view>, N>& table,
             std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  throw Error(ErrorCode::kParseFailure, "unknown name " + std::string(name));
}

constexpr std::array<std::pair<WorkflowState, std::string_view>, 7> kStateNames{{
    {WorkflowState::kAwaitingConsent, "AwaitingConsent"},
    {WorkflowState::kConsentRejected, "ConsentRejected"},
    {WorkflowState::kConsentComplete, "ConsentComplete"},
    {WorkflowState::kUnderReview, "UnderReview"},
    {WorkflowState::kAccepted, "Accepted"},
    {WorkflowState::kRejected, "Rejected"},
    {WorkflowState::kPublished, "Published"},
}};

constexpr std::array<std::pair<Decision, std::string_view>, 2> kDecisionNames{{
    {Decision::kGrant, "Grant"},
    {Decision::kDeny, "Deny"},
}};

constexpr std::array<std::pair<AlertKind, std::string_view>, 3> kAlertNames{{
    {AlertKind::kConsentDenied, "ConsentDenied"},
    {AlertKind::kConsentTimeout, "ConsentTimeout"},
    {AlertKind::kCoiConflict, "CoiConflict"},
}};

constexpr std::array<std::pair<EditorialAction, std::string_view>, 3> kActionNames{{
    {EditorialAction::kRemoveCoauthor, "RemoveCoauthor"},
    {EditorialAction::kReinstate, "Reinstate"},
    {EditorialAction::kAddCoauthor, "AddCoauthor"},
}};

constexpr std::array<std::pair<CoiStatus, std::string_view>, 3> kCoiNames{{
    {CoiStatus::kPending, "Pending"},
    {CoiStatus::kClear, "Clear"},
    {CoiStatus::kConflict, "Conflict"},
}};

constexpr std::array<std::pair<Recommendation, std::string_view>, 3> kRecNames{{
    {Recommendation::kAccept, "Accept"},
    {Recommendation::kRevise, "Revise"},
    {Recommendation::kReject, "Reject"},
}};

SubmissionId IdFromHex(std::string_view hex) {
  const Bytes b = FromHex(hex);
  AUTHCRED_ENFORCE(b.size() == 16, ErrorCode::kParseFailure, "id must be 16 bytes");
  SubmissionId id{};
  std::copy(b.begin(), b.end(), id.begin());
  return id;
}

template <typename T>
Json OptJson(const std::optional<T>& v) {
  return v ? v->ToJson() : Json(nullptr);
}

void ExpectFields(const Json& j, size_t n, std::string_view what) {
  AUTHCRED_ENFORCE(j.is_object() && j.size() == n, ErrorCode::kParseFailure,
                   std::string(what) + " must have " + std::to_string(n) + " fields");
}

std::string LedgerKey(const SubmissionId& id, std::string_view suffix) {
  return ToHex(id) + "/" + std::string(suffix);
}

}  // namespace

std::string_view StateName(WorkflowState s) { return NameOf(kStateNames, s); }
WorkflowState StateFromName(std::string_view n) { return FromNameOf(kStateNames, n); }
std::string_view DecisionName(Decision d) { return NameOf(kDecisionNames, d); }
Decision DecisionFromName(std::string_view n) { return FromNameOf(kDecisionNames, n); }
std::string_view AlertKindName(AlertKind k) { return NameOf(kAlertNames, k); }
std::string_view EditorialActionName(EditorialAction a) { return NameOf(kActionNames, a); }
EditorialAction EditorialActionFromName(std::string_view n) {
  return FromNameOf(kActionNames, n);
}
std::string_view CoiStatusName(CoiStatus s) { return NameOf(kCoiNames, s); }
std::string_view RecommendationName(Recommendation r) { return NameOf(kRecNames, r); }
Recommendation RecommendationFromName(std::string_view n) {
  return FromNameOf(kRecNames, n);
}

bool IsLegalTransition(WorkflowState from, WorkflowState to) {
  using S = WorkflowState;
  switch (from) {
    case S::kAwaitingConsent:
      return to == S::kConsentComplete || to == S::kConsentRejected;
    case S::kConsentComplete:
      return to == S::kUnderReview;
    case S::kUnderReview:
      return to == S::kAccepted || to == S::kRejected;
    case S::kAccepted:
      return to == S::kPublished;
    case S::kConsentRejected:
      return to == S::kAwaitingConsent;
    default:
      return false;
  }
}

const std::vector<std::string>& RoleVocabulary() {
  static const std::vector<std::string> kRoles = {
      "conceptualization",   "data-curation",          "formal-analysis",
      "funding-acquisition", "investigation",          "methodology",
      "project-administration", "resources",           "software",
      "supervision",         "validation",             "visualization",
      "writing-original-draft", "writing-review-editing",
  };
  return kRoles;
}

bool IsKnownRole(std::string_view role) {
  const auto& v = RoleVocabulary();
  return std::find(v.begin(), v.end(), role) != v.end();
}

// --- Consent ---------------------------------------------------------------

Json ConsentRecord::ToJson() const {
  Json j;
  j["submission_id"] = ToHex(submission_id);
  j["coauthor_did"] = coauthor_did.ToString();
  j["decision"] = DecisionName(decision);
  j["role"] = role;
  j["signed_payload_digest"] = signed_payload_digest.ToHex();
  j["signature"] = Base64Encode(signature.span());
  j["recorded_at"] = recorded_at;
  return j;
}

ConsentRecord ConsentRecord::FromJson(const Json& j) {
  try {
    ExpectFields(j, 7, "consent record");
    ConsentRecord r;
    r.submission_id = IdFromHex(j.at("submission_id").get<std::string>());
    r.coauthor_did = Did::Parse(j.at("coauthor_did").get<std::string>());
    r.decision = DecisionFromName(j.at("decision").get<std::string>());
    r.role = j.at("role").get<std::string>();
    r.signed_payload_digest =
        crypto::Digest::FromHex(j.at("signed_payload_digest").get<std::string>());
    r.signature =
        crypto::Signature::FromBytes(Base64Decode(j.at("signature").get<std::string>()));
    r.recorded_at = j.at("recorded_at").get<int64_t>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

crypto::Digest ConsentRecord::AnchorDigest() const {
  return crypto::TaggedHash(crypto::tags::kConsentRecord, Canonicalize(ToJson()));
}

Json ConsentPayloadJson(const SubmissionId& id, const crypto::Digest& manuscript_digest,
                        std::string_view role, Decision decision) {
  Json j;
  j["submission_id"] = ToHex(id);
  j["manuscript_digest"] = manuscript_digest.ToHex();
  j["role"] = role;
  j["decision"] = DecisionName(decision);
  return j;
}

crypto::Digest ConsentPayloadDigest(const SubmissionId& id,
                                    const crypto::Digest& manuscript_digest,
                                    std::string_view role, Decision decision) {
  return crypto::TaggedHash(
      crypto::tags::kConsent,
      Canonicalize(ConsentPayloadJson(id, manuscript_digest, role, decision)));
}

ConsentRecord SignConsent(const crypto::KeyPair& keypair, const Did& did,
                          const SubmissionId& id,
                          const crypto::Digest& manuscript_digest, std::string_view role,
                          Decision decision) {
  ConsentRecord r;
  r.submission_id = id;
  r.coauthor_did = did;
  r.decision = decision;
  r.role = std::string(role);
  r.signed_payload_digest = ConsentPayloadDigest(id, manuscript_digest, role, decision);
  r.signature = crypto::Sign(keypair.private_key, r.signed_payload_digest.span());
  return r;
}

bool ConsentSignatureValid(const ConsentRecord& record,
                           const crypto::Digest& manuscript_digest,
                           const crypto::PublicKey& key) {
  const auto expect = ConsentPayloadDigest(record.submission_id, manuscript_digest,
                                           record.role, record.decision);
  return expect == record.signed_payload_digest &&
         crypto::Verify(key, expect.span(), record.signature);
}

// --- Plain records ---------------------------------------------------------

Json Alert::ToJson() const {
  Json j;
  j["id"] = id;
  j["kind"] = AlertKindName(kind);
  j["subject"] = subject.ToString();
  j["raised_at"] = raised_at;
  j["resolved"] = resolved;
  j["assignment_id"] = assignment_id ? Json(*assignment_id) : Json(nullptr);
  return j;
}

Alert Alert::FromJson(const Json& j) {
  ExpectFields(j, 6, "alert");
  Alert a;
  a.id = j.at("id").get<uint64_t>();
  a.kind = FromNameOf(kAlertNames, j.at("kind").get<std::string>());
  a.subject = Did::Parse(j.at("subject").get<std::string>());
  a.raised_at = j.at("raised_at").get<int64_t>();
  a.resolved = j.at("resolved").get<bool>();
  if (!j.at("assignment_id").is_null()) {
    a.assignment_id = j.at("assignment_id").get<std::string>();
  }
  return a;
}

Json EditorialEvent::ToJson() const {
  Json j;
  j["action"] = EditorialActionName(action);
  j["subject"] = subject.ToString();
  j["alert_id"] = alert_id ? Json(*alert_id) : Json(nullptr);
  j["at"] = at;
  return j;
}

EditorialEvent EditorialEvent::FromJson(const Json& j) {
  ExpectFields(j, 4, "editorial event");
  EditorialEvent e;
  e.action = EditorialActionFromName(j.at("action").get<std::string>());
  e.subject = Did::Parse(j.at("subject").get<std::string>());
  if (!j.at("alert_id").is_null()) e.alert_id = j.at("alert_id").get<uint64_t>();
  e.at = j.at("at").get<int64_t>();
  return e;
}

Json EntryRef::ToJson() const {
  Json j;
  j["block_index"] = block_index;
  j["entry_digest"] = entry_digest.ToHex();
  return j;
}

EntryRef EntryRef::FromJson(const Json& j) {
  try {
    ExpectFields(j, 2, "entry ref");
    return {j.at("block_index").get<uint64_t>(),
            crypto::Digest::FromHex(j.at("entry_digest").get<std::string>())};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

Json ReviewAssignment::ToJson() const {
  Json j;
  j["id"] = id;
  j["submission_id"] = ToHex(submission_id);
  j["reviewer_did"] = reviewer_did.ToString();
  j["expertise_presentation_digest"] = expertise_presentation_digest.ToHex();
  j["coi_status"] = CoiStatusName(coi_status);
  j["coi_commitment"] =
      coi_commitment ? Json(Base64Encode(coi_commitment->digest.span())) : Json(nullptr);
  j["coi_outcome"] = OptJson(coi_outcome);
  j["coi_session_id"] = coi_session_id ? Json(*coi_session_id) : Json(nullptr);
  j["coi_ref"] = OptJson(coi_ref);
  j["review_digest"] = review_digest ? Json(review_digest->ToHex()) : Json(nullptr);
  j["recommendation"] =
      recommendation ? Json(RecommendationName(*recommendation)) : Json(nullptr);
  j["review_ref"] = OptJson(review_ref);
  return j;
}

ReviewAssignment ReviewAssignment::FromJson(const Json& j) {
  ExpectFields(j, 12, "assignment");
  ReviewAssignment a;
  a.id = j.at("id").get<std::string>();
  a.submission_id = IdFromHex(j.at("submission_id").get<std::string>());
  a.reviewer_did = Did::Parse(j.at("reviewer_did").get<std::string>());
  a.expertise_presentation_digest =
      crypto::Digest::FromHex(j.at("expertise_presentation_digest").get<std::string>());
  a.coi_status = FromNameOf(kCoiNames, j.at("coi_status").get<std::string>());
  if (!j.at("coi_commitment").is_null()) {
    a.coi_commitment = crypto::Commitment{crypto::Digest::FromBytes(
        Base64Decode(j.at("coi_commitment").get<std::string>()))};
  }
  if (!j.at("coi_outcome").is_null()) {
    a.coi_outcome = coi::CoiOutcome::FromJson(j.at("coi_outcome"));
  }
  if (!j.at("coi_session_id").is_null()) {
    a.coi_session_id = j.at("coi_session_id").get<std::string>();
  }
  if (!j.at("coi_ref").is_null()) a.coi_ref = EntryRef::FromJson(j.at("coi_ref"));
  if (!j.at("review_digest").is_null()) {
    a.review_digest = crypto::Digest::FromHex(j.at("review_digest").get<std::string>());
  }
  if (!j.at("recommendation").is_null()) {
    a.recommendation = RecommendationFromName(j.at("recommendation").get<std::string>());
  }
  if (!j.at("review_ref").is_null()) a.review_ref = EntryRef::FromJson(j.at("review_ref"));
  return a;
}

crypto::Digest ReviewAttestationDigest(const SubmissionId& id, const Did& reviewer,
                                       const crypto::Digest& review_digest,
                                       Recommendation recommendation) {
  Json j;
  j["submission_id"] = ToHex(id);
  j["reviewer_did_digest"] = crypto::Hash(reviewer.ToString()).ToHex();
  j["review_digest"] = review_digest.ToHex();
  j["recommendation"] = RecommendationName(recommendation);
  return crypto::TaggedHash(crypto::tags::kReview, Canonicalize(j));
}

// --- Submission ------------------------------------------------------------

std::vector<Coauthor> Submission::Authors() const {
  std::vector<Coauthor> out;
  out.push_back({corresponding_author, corresponding_role});
  out.insert(out.end(), coauthors.begin(), coauthors.end());
  return out;
}

bool Submission::IsAuthor(const Did& did) const {
  if (did == corresponding_author) return true;
  return std::any_of(coauthors.begin(), coauthors.end(),
                     [&](const Coauthor& c) { return c.did == did; });
}

std::vector<Did> Submission::PendingCoauthors() const {
  std::vector<Did> out;
  for (const auto& c : coauthors) {
    if (!consents.contains(c.did)) out.push_back(c.did);
  }
  return out;
}

coi::ConflictSet Submission::JournalConflictSet() const {
  std::vector<std::string> raw(author_affiliations.begin(), author_affiliations.end());
  for (const auto& a : Authors()) raw.push_back(a.did.ToString());
  return coi::ConflictSet::Build(raw);
}

Json Submission::ToJson() const {
  Json j;
  j["id"] = IdHex();
  j["manuscript_digest"] = manuscript_digest.ToHex();
  j["corresponding_author"] = corresponding_author.ToString();
  j["corresponding_role"] = corresponding_role;
  Json co = Json::array();
  for (const auto& c : coauthors) co.push_back({{"did", c.did.ToString()}, {"role", c.role}});
  j["coauthors"] = co;
  j["state"] = StateName(state);
  j["consent_deadline"] = consent_deadline;
  Json alerts_json = Json::array();
  for (const auto& a : alerts) alerts_json.push_back(a.ToJson());
  j["alerts"] = alerts_json;
  Json consents_json = Json::array();
  for (const auto& [did, c] : consents) {
    consents_json.push_back({{"record", c.record.ToJson()}, {"ref", c.ref.ToJson()}});
  }
  j["consents"] = consents_json;
  j["author_affiliations"] = author_affiliations;
  Json as = Json::array();
  for (const auto& a : assignments) as.push_back(a.ToJson());
  j["assignments"] = as;
  Json log = Json::array();
  for (const auto& e : editorial_log) log.push_back(e.ToJson());
  j["editorial_log"] = log;
  j["decision"] = decision ? Json(*decision) : Json(nullptr);
  j["decision_ref"] = OptJson(decision_ref);
  j["publication_ref"] = OptJson(publication_ref);
  return j;
}

Submission Submission::FromJson(const Json& j) {
  try {
    ExpectFields(j, 15, "submission");
    Submission s;
    s.id = IdFromHex(j.at("id").get<std::string>());
    s.manuscript_digest = crypto::Digest::FromHex(j.at("manuscript_digest").get<std::string>());
    s.corresponding_author = Did::Parse(j.at("corresponding_author").get<std::string>());
    s.corresponding_role = j.at("corresponding_role").get<std::string>();
    for (const auto& c : j.at("coauthors")) {
      s.coauthors.push_back(
          {Did::Parse(c.at("did").get<std::string>()), c.at("role").get<std::string>()});
    }
    s.state = StateFromName(j.at("state").get<std::string>());
    s.consent_deadline = j.at("consent_deadline").get<int64_t>();
    for (const auto& a : j.at("alerts")) s.alerts.push_back(Alert::FromJson(a));
    for (const auto& c : j.at("consents")) {
      EffectiveConsent ec{ConsentRecord::FromJson(c.at("record")),
                          EntryRef::FromJson(c.at("ref"))};
      s.consents.emplace(ec.record.coauthor_did, ec);
    }
    s.author_affiliations = j.at("author_affiliations").get<std::set<std::string>>();
    for (const auto& a : j.at("assignments")) {
      s.assignments.push_back(ReviewAssignment::FromJson(a));
    }
    for (const auto& e : j.at("editorial_log")) {
      s.editorial_log.push_back(EditorialEvent::FromJson(e));
    }
    if (!j.at("decision").is_null()) s.decision = j.at("decision").get<std::string>();
    if (!j.at("decision_ref").is_null()) {
      s.decision_ref = EntryRef::FromJson(j.at("decision_ref"));
    }
    if (!j.at("publication_ref").is_null()) {
      s.publication_ref = EntryRef::FromJson(j.at("publication_ref"));
    }
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

SubmissionId SubmissionIdForChallenge(const credentials::Challenge& challenge) {
  const auto d = crypto::TaggedHash(crypto::tags::kSubmissionId, challenge);
  SubmissionId id{};
  std::copy_n(d.bytes().begin(), id.size(), id.begin());
  return id;
}

// --- Workflow --------------------------------------------------------------

Workflow::Workflow(registry::Registry& registry, identity::DidDirectory& directory,
                   BlobStore& store, Clock& clock, Rng& rng, WorkflowConfig config)
    : registry_(registry),
      directory_(directory),
      store_(store),
      clock_(clock),
      rng_(rng),
      config_(std::move(config)) {
  for (const auto& key : store_.List(kCollection)) {
    const auto bytes = store_.Get(kCollection, key);
    if (!bytes) continue;
    auto slot = std::make_shared<Slot>();
    slot->sub = Submission::FromJson(ParseCanonical(*bytes));
    subs_.emplace(slot->sub.id, slot);
  }
}

credentials::Challenge Workflow::IssueChallenge() {
  const auto c = rng_.RandomArray<32>();
  std::lock_guard lock(mu_);
  challenges_.insert(c);
  return c;
}

void Workflow::ConsumeChallenge(const credentials::Challenge& c, ErrorCode on_failure) {
  std::lock_guard lock(mu_);
  AUTHCRED_ENFORCE(challenges_.erase(c) == 1, on_failure,
                   "challenge was not issued or already used");
}

credentials::DisclosedClaims Workflow::CheckPresentation(
    const credentials::Presentation& p, const Did& subject, ErrorCode on_failure) {
  {
    std::lock_guard lock(mu_);
    AUTHCRED_ENFORCE(challenges_.contains(p.challenge), on_failure,
                     "challenge was not issued or already used");
  }
  AUTHCRED_ENFORCE(p.subject_did == subject, on_failure,
                   "presentation subject is " + p.subject_did.ToString());
  credentials::DisclosedClaims claims;
  try {
    claims = credentials::VerifyPresentation(directory_, p, p.challenge, clock_.Now());
  } catch (const Error& e) {
    throw Error(on_failure, "presentation rejected: " + std::string(e.what()));
  }
  AUTHCRED_ENFORCE(credentials::IsAnchored(registry_, p.CredentialDigest()), on_failure,
                   "credential is not anchored");
  return claims;
}

std::shared_ptr<Workflow::Slot> Workflow::Find(const SubmissionId& id) const {
  std::lock_guard lock(mu_);
  auto it = subs_.find(id);
  AUTHCRED_ENFORCE(it != subs_.end(), ErrorCode::kUnknownSubmission,
                   "no submission " + ToHex(id));
  return it->second;
}

void Workflow::Save(const Submission& s) {
  store_.Put(kCollection, s.IdHex(), s.Serialize());
}

void Workflow::Advance(Submission& s, WorkflowState to) {
  AUTHCRED_ENFORCE(IsLegalTransition(s.state, to), ErrorCode::kWrongState,
                   std::string(StateName(s.state)) + " -> " + std::string(StateName(to)));
  s.state = to;
}

EntryRef Workflow::AnchorConsent(const ConsentRecord& record) {
  return EntryRef::From(registry_.AppendOne(
      {EntryKind::kConsentRecord,
       LedgerKey(record.submission_id, record.coauthor_did.ToString()),
       record.AnchorDigest()}));
}

EntryRef Workflow::AnchorEditorial(const Submission& s, const EditorialEvent& e) {
  Json j = e.ToJson();
  j["submission_id"] = s.IdHex();
  j["seq"] = s.editorial_log.size();
  return EntryRef::From(registry_.AppendOne(
      {EntryKind::kConsentRecord, LedgerKey(s.id, "editorial"),
       crypto::TaggedHash(crypto::tags::kEditorial, Canonicalize(j))}));
}

void Workflow::RaiseAlert(Submission& s, AlertKind kind, const Did& subject,
                          std::optional<std::string> assignment_id) {
  Alert a;
  a.id = s.alerts.size();
  a.kind = kind;
  a.subject = subject;
  a.raised_at = clock_.Now();
  a.assignment_id = std::move(assignment_id);
  s.alerts.push_back(std::move(a));
}

// Recomputes the consent-phase state from the effective records.
void Workflow::Settle(Submission& s) {
  const bool denied = std::any_of(s.consents.begin(), s.consents.end(), [](const auto& kv) {
    return kv.second.record.decision == Decision::kDeny;
  });
  WorkflowState target = WorkflowState::kAwaitingConsent;
  if (denied) {
    target = WorkflowState::kConsentRejected;
  } else if (s.PendingCoauthors().empty()) {
    target = WorkflowState::kConsentComplete;
  }
  if (s.state == target) return;
  if (s.state == WorkflowState::kConsentRejected) Advance(s, WorkflowState::kAwaitingConsent);
  if (s.state != target) Advance(s, target);
}

ReviewAssignment& Workflow::FindAssignment(Submission& s, const std::string& aid) {
  for (auto& a : s.assignments) {
    if (a.id == aid) return a;
  }
  throw Error(ErrorCode::kUnknownAssignment, "no assignment " + aid);
}

Submission Workflow::Submit(const SubmitRequest& req) {
  const auto& p = req.author_presentation;
  const Did author = p.subject_did;
  const auto claims = CheckPresentation(p, author, ErrorCode::kInvalidAuthorCredential);
  auto affiliation = claims.find(config_.author_claim);
  AUTHCRED_ENFORCE(affiliation != claims.end(), ErrorCode::kInvalidAuthorCredential,
                   "presentation does not disclose " + config_.author_claim);

  AUTHCRED_ENFORCE(IsKnownRole(req.corresponding_role), ErrorCode::kUnknownRole,
                   req.corresponding_role);
  std::set<Did> seen = {author};
  for (const auto& c : req.coauthors) {
    AUTHCRED_ENFORCE(IsKnownRole(c.role), ErrorCode::kUnknownRole, c.role);
    AUTHCRED_ENFORCE(seen.insert(c.did).second, ErrorCode::kDuplicateCoauthor,
                     c.did.ToString());
    AUTHCRED_ENFORCE(directory_.IsRegistered(c.did), ErrorCode::kUnresolvableCoauthor,
                     c.did.ToString());
  }

  const SubmissionId id = SubmissionIdForChallenge(p.challenge);
  const auto& rec = req.corresponding_consent;
  const auto author_doc = directory_.Resolve(author);
  AUTHCRED_ENFORCE(rec.decision == Decision::kGrant && rec.submission_id == id &&
                       rec.coauthor_did == author && rec.role == req.corresponding_role &&
                       ConsentSignatureValid(rec, req.manuscript_digest,
                                             author_doc.verification_key),
                   ErrorCode::kBadConsentSignature,
                   "corresponding author's consent does not verify");

  ConsumeChallenge(p.challenge, ErrorCode::kInvalidAuthorCredential);
  const int64_t now = clock_.Now();

  auto slot = std::make_shared<Slot>();
  Submission& s = slot->sub;
  s.id = id;
  s.manuscript_digest = req.manuscript_digest;
  s.corresponding_author = author;
  s.corresponding_role = req.corresponding_role;
  s.coauthors = req.coauthors;
  s.consent_deadline = req.deadline.value_or(now + config_.consent_window_seconds);
  s.author_affiliations.insert(coi::Normalize(affiliation->second));

  ConsentRecord own = rec;
  own.recorded_at = now;
  s.consents.emplace(author, EffectiveConsent{own, AnchorConsent(own)});
  Settle(s);

  std::lock_guard slot_lock(slot->mu);
  {
    std::lock_guard lock(mu_);
    subs_.emplace(id, slot);
  }
  Save(s);
  return s;
}

Submission Workflow::RecordConsent(
    const SubmissionId& id, const ConsentRecord& record,
    const std::optional<credentials::Presentation>& presentation) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;

  AUTHCRED_ENFORCE(s.state == WorkflowState::kAwaitingConsent, ErrorCode::kWrongState,
                   "submission is " + std::string(StateName(s.state)));
  auto listed = std::find_if(s.coauthors.begin(), s.coauthors.end(),
                             [&](const Coauthor& c) { return c.did == record.coauthor_did; });
  AUTHCRED_ENFORCE(listed != s.coauthors.end(), ErrorCode::kNotACoauthor,
                   record.coauthor_did.ToString());
  AUTHCRED_ENFORCE(!s.consents.contains(record.coauthor_did), ErrorCode::kWrongState,
                   "consent already recorded for " + record.coauthor_did.ToString());

  const auto doc = directory_.Resolve(record.coauthor_did);
  AUTHCRED_ENFORCE(record.submission_id == s.id && record.role == listed->role &&
                       ConsentSignatureValid(record, s.manuscript_digest,
                                             doc.verification_key),
                   ErrorCode::kBadConsentSignature,
                   "consent from " + record.coauthor_did.ToString() + " does not verify");

  const int64_t now = clock_.Now();
  if (now > s.consent_deadline) {
    const bool open = std::any_of(s.alerts.begin(), s.alerts.end(), [&](const Alert& a) {
      return !a.resolved && a.kind == AlertKind::kConsentTimeout &&
             a.subject == record.coauthor_did;
    });
    if (!open) {
      RaiseAlert(s, AlertKind::kConsentTimeout, record.coauthor_did);
      Save(s);
    }
    throw Error(ErrorCode::kPastDeadline, "consent deadline has passed");
  }

  std::optional<std::string> affiliation;
  if (presentation) {
    const auto claims = CheckPresentation(*presentation, record.coauthor_did,
                                          ErrorCode::kInvalidAuthorCredential);
    if (auto it = claims.find(config_.author_claim); it != claims.end()) {
      affiliation = coi::Normalize(it->second);
    }
    ConsumeChallenge(presentation->challenge, ErrorCode::kInvalidAuthorCredential);
  }

  ConsentRecord rec = record;
  rec.recorded_at = now;
  const EntryRef ref = AnchorConsent(rec);
  s.consents.emplace(rec.coauthor_did, EffectiveConsent{rec, ref});
  if (affiliation) s.author_affiliations.insert(*affiliation);
  if (rec.decision == Decision::kDeny) {
    RaiseAlert(s, AlertKind::kConsentDenied, rec.coauthor_did);
  }
  Settle(s);
  Save(s);
  return s;
}

Submission Workflow::CheckDeadline(const SubmissionId& id) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  if (s.state != WorkflowState::kAwaitingConsent || clock_.Now() <= s.consent_deadline) {
    return s;
  }
  bool changed = false;
  for (const auto& did : s.PendingCoauthors()) {
    const bool open = std::any_of(s.alerts.begin(), s.alerts.end(), [&](const Alert& a) {
      return !a.resolved && a.kind == AlertKind::kConsentTimeout && a.subject == did;
    });
    if (!open) {
      RaiseAlert(s, AlertKind::kConsentTimeout, did);
      changed = true;
    }
  }
  if (changed) Save(s);
  return s;
}

Submission Workflow::ResolveAlert(const SubmissionId& id, uint64_t alert_id,
                                  EditorialAction action) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;

  AUTHCRED_ENFORCE(alert_id < s.alerts.size(), ErrorCode::kAlertNotFound,
                   "no alert " + std::to_string(alert_id));
  AUTHCRED_ENFORCE(!s.alerts[alert_id].resolved, ErrorCode::kAlreadyResolved,
                   "alert " + std::to_string(alert_id) + " already resolved");
  AUTHCRED_ENFORCE(action != EditorialAction::kAddCoauthor, ErrorCode::kBadRequest,
                   "AddCoauthor does not resolve alerts");
  const Alert alert = s.alerts[alert_id];
  const bool consent_alert = alert.kind != AlertKind::kCoiConflict;
  if (consent_alert) {
    AUTHCRED_ENFORCE(s.state == WorkflowState::kAwaitingConsent ||
                         s.state == WorkflowState::kConsentRejected,
                     ErrorCode::kWrongState,
                     "submission is " + std::string(StateName(s.state)));
  } else {
    AUTHCRED_ENFORCE(action == EditorialAction::kReinstate, ErrorCode::kBadRequest,
                     "a COI conflict can only be acknowledged");
  }

  Submission next = s;
  next.alerts[alert_id].resolved = true;
  const int64_t now = clock_.Now();
  if (consent_alert) {
    const Did& who = alert.subject;
    if (action == EditorialAction::kRemoveCoauthor) {
      std::erase_if(next.coauthors, [&](const Coauthor& c) { return c.did == who; });
      next.consents.erase(who);
      for (auto& a : next.alerts) {
        if (a.subject == who && a.kind != AlertKind::kCoiConflict) a.resolved = true;
      }
    } else if (alert.kind == AlertKind::kConsentDenied) {
      next.consents.erase(who);
    } else {
      next.consent_deadline = now + config_.consent_window_seconds;
    }
  }
  EditorialEvent event{action, alert.subject, alert_id, now};
  AnchorEditorial(next, event);
  next.editorial_log.push_back(event);
  if (consent_alert) Settle(next);
  s = std::move(next);
  Save(s);
  return s;
}

Submission Workflow::AddCoauthor(const SubmissionId& id, const Coauthor& coauthor) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  AUTHCRED_ENFORCE(s.state == WorkflowState::kAwaitingConsent, ErrorCode::kWrongState,
                   "submission is " + std::string(StateName(s.state)));
  AUTHCRED_ENFORCE(IsKnownRole(coauthor.role), ErrorCode::kUnknownRole, coauthor.role);
  AUTHCRED_ENFORCE(!s.IsAuthor(coauthor.did), ErrorCode::kDuplicateCoauthor,
                   coauthor.did.ToString());
  AUTHCRED_ENFORCE(directory_.IsRegistered(coauthor.did), ErrorCode::kUnresolvableCoauthor,
                   coauthor.did.ToString());
  EditorialEvent event{EditorialAction::kAddCoauthor, coauthor.did, std::nullopt,
                       clock_.Now()};
  AnchorEditorial(s, event);
  s.editorial_log.push_back(event);
  s.coauthors.push_back(coauthor);
  Save(s);
  return s;
}

ReviewAssignment Workflow::AssignReviewer(const SubmissionId& id, const Did& reviewer,
                                          const credentials::Presentation& expertise) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  AUTHCRED_ENFORCE(s.state == WorkflowState::kConsentComplete ||
                       s.state == WorkflowState::kUnderReview,
                   ErrorCode::kWrongState,
                   "submission is " + std::string(StateName(s.state)));
  AUTHCRED_ENFORCE(!s.IsAuthor(reviewer), ErrorCode::kReviewerIsAuthor,
                   reviewer.ToString());
  AUTHCRED_ENFORCE(std::none_of(s.assignments.begin(), s.assignments.end(),
                                [&](const auto& a) { return a.reviewer_did == reviewer; }),
                   ErrorCode::kBadRequest, "reviewer already assigned");
  const auto claims = CheckPresentation(expertise, reviewer, ErrorCode::kMissingExpertiseClaim);
  AUTHCRED_ENFORCE(claims.contains(config_.reviewer_claim), ErrorCode::kMissingExpertiseClaim,
                   "presentation does not disclose " + config_.reviewer_claim);
  // Defensive: review must never start without every listed author's grant.
  for (const auto& a : s.Authors()) {
    auto it = s.consents.find(a.did);
    AUTHCRED_ENFORCE(it != s.consents.end() && it->second.record.decision == Decision::kGrant,
                     ErrorCode::kWrongState, "missing consent from " + a.did.ToString());
  }
  ConsumeChallenge(expertise.challenge, ErrorCode::kMissingExpertiseClaim);

  ReviewAssignment a;
  a.id = ToHex(rng_.RandomArray<16>());
  a.submission_id = s.id;
  a.reviewer_did = reviewer;
  a.expertise_presentation_digest = crypto::Hash(expertise.Serialize());
  Json payload;
  payload["assignment_id"] = a.id;
  payload["submission_id"] = s.IdHex();
  payload["reviewer_did"] = reviewer.ToString();
  payload["expertise_presentation_digest"] = a.expertise_presentation_digest.ToHex();
  registry_.AppendOne({EntryKind::kReviewAttestation, LedgerKey(s.id, "assignment/" + a.id),
                       crypto::TaggedHash(crypto::tags::kAssignment, Canonicalize(payload))});
  s.assignments.push_back(a);
  if (s.state == WorkflowState::kConsentComplete) Advance(s, WorkflowState::kUnderReview);
  Save(s);
  return a;
}

void Workflow::BeginCoi(const SubmissionId& id, const std::string& assignment_id,
                        const crypto::Commitment& commitment) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  auto& a = FindAssignment(s, assignment_id);
  AUTHCRED_ENFORCE(s.state == WorkflowState::kUnderReview &&
                       a.coi_status == CoiStatus::kPending,
                   ErrorCode::kWrongState, "COI check already settled");
  a.coi_commitment = commitment;
  Save(s);
}

ReviewAssignment Workflow::RecordCoiOutcome(const SubmissionId& id,
                                            const std::string& assignment_id,
                                            const coi::CoiTranscript& transcript) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  auto& a = FindAssignment(s, assignment_id);
  AUTHCRED_ENFORCE(s.state == WorkflowState::kUnderReview &&
                       a.coi_status == CoiStatus::kPending,
                   ErrorCode::kWrongState, "COI check already settled");
  AUTHCRED_ENFORCE(a.coi_commitment.has_value(), ErrorCode::kTranscriptInvalid,
                   "no commitment recorded before the session");
  bool ok = false;
  try {
    ok = coi::VerifyTranscript(transcript, *a.coi_commitment);
  } catch (const Error& e) {
    throw Error(ErrorCode::kTranscriptInvalid, e.what());
  }
  AUTHCRED_ENFORCE(ok, ErrorCode::kTranscriptInvalid, "transcript does not verify");

  const auto& outcome = transcript.outcome;
  a.coi_ref = EntryRef::From(registry_.AppendOne(
      {EntryKind::kCoiOutcome, LedgerKey(s.id, a.id), outcome.AnchorDigest()}));
  a.coi_outcome = outcome;
  a.coi_session_id = transcript.SessionIdHex();
  a.coi_status = outcome.clear ? CoiStatus::kClear : CoiStatus::kConflict;
  const ReviewAssignment result = a;
  if (!outcome.clear) RaiseAlert(s, AlertKind::kCoiConflict, a.reviewer_did, a.id);
  Save(s);
  return result;
}

ReviewAssignment Workflow::RecordReview(const SubmissionId& id,
                                        const std::string& assignment_id,
                                        const crypto::Digest& review_digest,
                                        Recommendation recommendation) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  auto& a = FindAssignment(s, assignment_id);
  AUTHCRED_ENFORCE(a.coi_status == CoiStatus::kClear, ErrorCode::kCoiNotClear,
                   "reviewer COI status is " + std::string(CoiStatusName(a.coi_status)));
  AUTHCRED_ENFORCE(s.state == WorkflowState::kUnderReview && !a.review_digest,
                   ErrorCode::kWrongState, "review cannot be recorded");
  a.review_ref = EntryRef::From(registry_.AppendOne(
      {EntryKind::kReviewAttestation, LedgerKey(s.id, "review"),
       ReviewAttestationDigest(s.id, a.reviewer_did, review_digest, recommendation)}));
  a.review_digest = review_digest;
  a.recommendation = recommendation;
  const ReviewAssignment result = a;
  Save(s);
  return result;
}

Submission Workflow::Decide(const SubmissionId& id, bool accept) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  AUTHCRED_ENFORCE(s.state == WorkflowState::kUnderReview, ErrorCode::kWrongState,
                   "submission is " + std::string(StateName(s.state)));
  Json reviews = Json::array();
  for (const auto& a : s.assignments) {
    if (a.review_ref) reviews.push_back(a.review_ref->entry_digest.ToHex());
  }
  AUTHCRED_ENFORCE(!reviews.empty(), ErrorCode::kNoReviews, "no reviews recorded");
  const std::string decision = accept ? "Accept" : "Reject";
  Json payload;
  payload["submission_id"] = s.IdHex();
  payload["decision"] = decision;
  payload["reviews"] = reviews;
  s.decision_ref = EntryRef::From(registry_.AppendOne(
      {EntryKind::kReviewAttestation, LedgerKey(s.id, "decision"),
       crypto::TaggedHash(crypto::tags::kDecision, Canonicalize(payload))}));
  s.decision = decision;
  Advance(s, accept ? WorkflowState::kAccepted : WorkflowState::kRejected);
  Save(s);
  return s;
}

Submission Workflow::MarkPublished(const SubmissionId& id, const EntryRef& ref) {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  Submission& s = slot->sub;
  Advance(s, WorkflowState::kPublished);
  s.publication_ref = ref;
  Save(s);
  return s;
}

Submission Workflow::Get(const SubmissionId& id) const {
  auto slot = Find(id);
  std::lock_guard lock(slot->mu);
  return slot->sub;
}

std::vector<Submission> Workflow::List() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, slot] : subs_) slots.push_back(slot);
  }
  std::vector<Submission> out;
  for (const auto& slot : slots) {
    std::lock_guard lock(slot->mu);
    out.push_back(slot->sub);
  }
  return out;
}

}  // namespace authcred::workflow

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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "authcred/coi/psi.h"
#include "authcred/common/blob_store.h"
#include "authcred/common/canonical_json.h"
#include "authcred/common/clock.h"
#include "authcred/common/error.h"
#include "authcred/common/rng.h"
#include "authcred/credentials/credential.h"
#include "authcred/identity/did.h"
#include "authcred/registry/ledger.h"

// Manuscript lifecycle: submission, signed per-co-author consent, alerts and
// editorial resolution, reviewer assignment gated on a COI check, review
// attestations and the editorial decision.
//
// Consent payload (what a co-author's wallet signs), byte for byte:
//   payload = canonical JSON of
//     {"decision":"Grant"|"Deny","manuscript_digest":<64 hex>,
//      "role":<label>,"submission_id":<32 hex>}
//   digest  = SHA-256("authcred/consent/v1" || payload)
//   signature = Ed25519(co-author key, digest)
namespace authcred::workflow {

using coi::SessionId;
using SubmissionId = SessionId;

enum class WorkflowState {
  kAwaitingConsent,
  kConsentRejected,
  kConsentComplete,
  kUnderReview,
  kAccepted,
  kRejected,
  kPublished,
};
std::string_view StateName(WorkflowState s);
WorkflowState StateFromName(std::string_view name);  // kParseFailure
bool IsLegalTransition(WorkflowState from, WorkflowState to);

// Contribution labels accepted for co-authors.
const std::vector<std::string>& RoleVocabulary();
bool IsKnownRole(std::string_view role);

enum class Decision { kGrant, kDeny };
std::string_view DecisionName(Decision d);
Decision DecisionFromName(std::string_view name);

struct ConsentRecord {
  SubmissionId submission_id{};
  identity::Did coauthor_did;
  Decision decision = Decision::kGrant;
  std::string role;
  crypto::Digest signed_payload_digest;
  crypto::Signature signature;
  int64_t recorded_at = 0;  // stamped by the journal

  Json ToJson() const;
  static ConsentRecord FromJson(const Json& j);
  // hash("authcred/consent-record/v1" || canonical(ToJson())); anchored value.
  crypto::Digest AnchorDigest() const;
};

Json ConsentPayloadJson(const SubmissionId& id, const crypto::Digest& manuscript_digest,
                        std::string_view role, Decision decision);
crypto::Digest ConsentPayloadDigest(const SubmissionId& id,
                                    const crypto::Digest& manuscript_digest,
                                    std::string_view role, Decision decision);
// Wallet side.
ConsentRecord SignConsent(const crypto::KeyPair& keypair, const identity::Did& did,
                          const SubmissionId& id,
                          const crypto::Digest& manuscript_digest, std::string_view role,
                          Decision decision);
// Recomputes the payload digest from the record's own fields and checks the
// signature under `key`.
bool ConsentSignatureValid(const ConsentRecord& record,
                           const crypto::Digest& manuscript_digest,
                           const crypto::PublicKey& key);

enum class AlertKind { kConsentDenied, kConsentTimeout, kCoiConflict };
std::string_view AlertKindName(AlertKind k);

struct Alert {
  uint64_t id = 0;
  AlertKind kind = AlertKind::kConsentDenied;
  identity::Did subject;
  int64_t raised_at = 0;
  bool resolved = false;
  std::optional<std::string> assignment_id;  // CoiConflict only

  Json ToJson() const;
  static Alert FromJson(const Json& j);
};

enum class EditorialAction { kRemoveCoauthor, kReinstate, kAddCoauthor };
std::string_view EditorialActionName(EditorialAction a);
EditorialAction EditorialActionFromName(std::string_view name);

struct EditorialEvent {
  EditorialAction action = EditorialAction::kRemoveCoauthor;
  identity::Did subject;
  std::optional<uint64_t> alert_id;
  int64_t at = 0;

  Json ToJson() const;
  static EditorialEvent FromJson(const Json& j);
};

// (block_index, entry_digest) of an anchored entry.
struct EntryRef {
  uint64_t block_index = 0;
  crypto::Digest entry_digest;

  Json ToJson() const;
  static EntryRef FromJson(const Json& j);
  static EntryRef From(const registry::LedgerReceipt& r) {
    return {r.block_index, r.entry_digest};
  }
  bool operator==(const EntryRef&) const = default;
};

struct Coauthor {
  identity::Did did;
  std::string role;
  bool operator==(const Coauthor&) const = default;
};

struct EffectiveConsent {
  ConsentRecord record;
  EntryRef ref;
};

enum class CoiStatus { kPending, kClear, kConflict };
std::string_view CoiStatusName(CoiStatus s);

enum class Recommendation { kAccept, kRevise, kReject };
std::string_view RecommendationName(Recommendation r);
Recommendation RecommendationFromName(std::string_view name);

struct ReviewAssignment {
  std::string id;  // 32 hex chars
  SubmissionId submission_id{};
  identity::Did reviewer_did;
  crypto::Digest expertise_presentation_digest;
  CoiStatus coi_status = CoiStatus::kPending;
  std::optional<crypto::Commitment> coi_commitment;
  std::optional<coi::CoiOutcome> coi_outcome;
  std::optional<std::string> coi_session_id;
  std::optional<EntryRef> coi_ref;
  std::optional<crypto::Digest> review_digest;
  std::optional<Recommendation> recommendation;
  std::optional<EntryRef> review_ref;

  Json ToJson() const;
  static ReviewAssignment FromJson(const Json& j);
};

// Review attestation payload: hash("authcred/review/v1" || canonical of
// {"recommendation","review_digest","reviewer_did_digest","submission_id"}).
crypto::Digest ReviewAttestationDigest(const SubmissionId& id,
                                       const identity::Did& reviewer,
                                       const crypto::Digest& review_digest,
                                       Recommendation recommendation);

struct Submission {
  SubmissionId id{};
  crypto::Digest manuscript_digest;
  identity::Did corresponding_author;
  std::string corresponding_role;
  std::vector<Coauthor> coauthors;
  WorkflowState state = WorkflowState::kAwaitingConsent;
  int64_t consent_deadline = 0;
  std::vector<Alert> alerts;
  // Effective consent per author DID, the corresponding author included.
  std::map<identity::Did, EffectiveConsent> consents;
  // Normalized affiliations disclosed by authors; the journal's COI set.
  std::set<std::string> author_affiliations;
  std::vector<ReviewAssignment> assignments;
  std::vector<EditorialEvent> editorial_log;
  std::optional<std::string> decision;  // "Accept" | "Reject"
  std::optional<EntryRef> decision_ref;
  std::optional<EntryRef> publication_ref;

  std::string IdHex() const { return ToHex(id); }
  // Corresponding author first, then co-authors in listed order.
  std::vector<Coauthor> Authors() const;
  bool IsAuthor(const identity::Did& did) const;
  std::vector<identity::Did> PendingCoauthors() const;
  coi::ConflictSet JournalConflictSet() const;

  Json ToJson() const;
  static Submission FromJson(const Json& j);
  std::string Serialize() const { return Canonicalize(ToJson()); }
};

SubmissionId SubmissionIdForChallenge(const credentials::Challenge& challenge);

struct WorkflowConfig {
  int64_t consent_window_seconds = 14 * kSecondsPerDay;
  std::string author_claim = "affiliation";
  std::string reviewer_claim = "expertise";
};

struct SubmitRequest {
  crypto::Digest manuscript_digest;
  credentials::Presentation author_presentation;
  std::string corresponding_role;
  // The corresponding author's own Grant, signed over the submission id
  // derived from the presentation challenge.
  ConsentRecord corresponding_consent;
  std::vector<Coauthor> coauthors;
  std::optional<int64_t> deadline;
};

// All operations on one submission are serialized; distinct submissions
// proceed concurrently. Every state change anchors at least one entry.
class Workflow {
 public:
  static constexpr std::string_view kCollection = "submissions";

  Workflow(registry::Registry& registry, identity::DidDirectory& directory,
           BlobStore& store, Clock& clock, Rng& rng, WorkflowConfig config = {});

  // Nonce for a presentation; single use.
  credentials::Challenge IssueChallenge();

  // Errors: kInvalidAuthorCredential, kUnresolvableCoauthor,
  // kDuplicateCoauthor, kUnknownRole, kBadConsentSignature.
  Submission Submit(const SubmitRequest& request);

  // `presentation`, when given, must belong to the co-author; its disclosed
  // author claim joins the journal's conflict set.
  // Errors: kNotACoauthor, kBadConsentSignature, kWrongState, kPastDeadline.
  Submission RecordConsent(const SubmissionId& id, const ConsentRecord& record,
                           const std::optional<credentials::Presentation>& presentation =
                               std::nullopt);

  // Raises ConsentTimeout for every pending co-author once the deadline has
  // passed (at most one unresolved alert per co-author).
  Submission CheckDeadline(const SubmissionId& id);

  // Errors: kAlertNotFound, kAlreadyResolved, kWrongState, kBadRequest.
  Submission ResolveAlert(const SubmissionId& id, uint64_t alert_id,
                          EditorialAction action);

  // Editorial re-listing of a co-author while consent is still open.
  // Errors: kWrongState, kDuplicateCoauthor, kUnresolvableCoauthor, kUnknownRole.
  Submission AddCoauthor(const SubmissionId& id, const Coauthor& coauthor);

  // Errors: kWrongState, kReviewerIsAuthor, kMissingExpertiseClaim.
  ReviewAssignment AssignReviewer(const SubmissionId& id, const identity::Did& reviewer,
                                  const credentials::Presentation& expertise);

  // The journal's commitment to its session secret, recorded before round 1.
  // Errors: kUnknownAssignment, kWrongState.
  void BeginCoi(const SubmissionId& id, const std::string& assignment_id,
                const crypto::Commitment& commitment);
  // Errors: kUnknownAssignment, kWrongState, kTranscriptInvalid.
  ReviewAssignment RecordCoiOutcome(const SubmissionId& id,
                                    const std::string& assignment_id,
                                    const coi::CoiTranscript& transcript);

  // Errors: kUnknownAssignment, kCoiNotClear, kWrongState.
  ReviewAssignment RecordReview(const SubmissionId& id, const std::string& assignment_id,
                                const crypto::Digest& review_digest,
                                Recommendation recommendation);

  // Errors: kWrongState, kNoReviews.
  Submission Decide(const SubmissionId& id, bool accept);

  // Accepted -> Published once the publication anchor exists.
  Submission MarkPublished(const SubmissionId& id, const EntryRef& publication_ref);

  Submission Get(const SubmissionId& id) const;  // kUnknownSubmission
  std::vector<Submission> List() const;

 private:
  struct Slot {
    std::mutex mu;
    Submission sub;
  };

  std::shared_ptr<Slot> Find(const SubmissionId& id) const;
  void Save(const Submission& s);
  void Advance(Submission& s, WorkflowState to);
  void ConsumeChallenge(const credentials::Challenge& c, ErrorCode on_failure);
  credentials::DisclosedClaims CheckPresentation(const credentials::Presentation& p,
                                                 const identity::Did& subject,
                                                 ErrorCode on_failure);
  EntryRef AnchorConsent(const ConsentRecord& record);
  EntryRef AnchorEditorial(const Submission& s, const EditorialEvent& e);
  void Settle(Submission& s);
  void RaiseAlert(Submission& s, AlertKind kind, const identity::Did& subject,
                  std::optional<std::string> assignment_id = std::nullopt);
  ReviewAssignment& FindAssignment(Submission& s, const std::string& assignment_id);

  registry::Registry& registry_;
  identity::DidDirectory& directory_;
  BlobStore& store_;
  Clock& clock_;
  Rng& rng_;
  WorkflowConfig config_;

  mutable std::mutex mu_;
  std::map<SubmissionId, std::shared_ptr<Slot>> subs_;
  std::set<credentials::Challenge> challenges_;
};

}  // namespace authcred::workflow

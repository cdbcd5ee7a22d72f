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

#include "authcred/publication/publication.h"

#include <algorithm>

#include "authcred/common/error.h"

namespace authcred::publication {

namespace {

using identity::Did;
using registry::BlockHeader;
using registry::EntryKind;

Json RefsJson(const std::vector<EntryRef>& refs) {
  Json arr = Json::array();
  for (const auto& r : refs) arr.push_back(r.ToJson());
  return arr;
}

std::vector<EntryRef> RefsFromJson(const Json& j) {
  std::vector<EntryRef> out;
  for (const auto& r : j) out.push_back(EntryRef::FromJson(r));
  return out;
}

void ExpectFields(const Json& j, size_t n, std::string_view what) {
  AUTHCRED_ENFORCE(j.is_object() && j.size() == n, ErrorCode::kParseFailure,
                   std::string(what) + " must have " + std::to_string(n) + " fields");
}

EntryEvidence EvidenceFor(const registry::Registry& registry, const EntryRef& ref) {
  auto found = registry.FindByDigest(ref.entry_digest);
  AUTHCRED_ENFORCE(found && found->second == ref.block_index, ErrorCode::kEntryNotFound,
                   "entry " + ref.entry_digest.ToHex() + " not on the ledger");
  return {found->first, registry.ProveInclusion(ref.block_index, ref.entry_digest)};
}

// The embedded entry hashes to its proof's digest and the proof folds to
// that block's Merkle root.
bool EvidenceHolds(const EntryEvidence& e, std::span<const BlockHeader> headers) {
  return e.entry.EntryDigest() == e.proof.entry_digest &&
         registry::VerifyInclusionInBlock(e.proof, headers);
}

bool EvidenceMatches(const EntryEvidence& e, const EntryRef& ref, EntryKind kind,
                     std::span<const BlockHeader> headers) {
  return e.entry.kind == kind && e.proof.entry_digest == ref.entry_digest &&
         e.proof.block_index == ref.block_index && EvidenceHolds(e, headers);
}

std::optional<uint64_t> HeaderIndexOf(std::span<const BlockHeader> headers,
                                      const crypto::Digest& hash) {
  for (const auto& h : headers) {
    if (h.block_hash == hash) return h.index;
  }
  return std::nullopt;
}

}  // namespace

Json PublicationMetadata::ToJson() const {
  Json j;
  j["submission_id"] = ToHex(submission_id);
  j["manuscript_digest"] = manuscript_digest.ToHex();
  Json authors_json = Json::array();
  for (const auto& a : authors) {
    authors_json.push_back({{"did", a.did.ToString()},
                            {"role", a.role},
                            {"consent_entry_ref", a.consent_entry_ref.ToJson()}});
  }
  j["authors"] = authors_json;
  j["review_attestation_refs"] = RefsJson(review_attestation_refs);
  j["coi_outcome_refs"] = RefsJson(coi_outcome_refs);
  j["journal_did"] = journal_did.ToString();
  j["published_at"] = published_at;
  j["ledger_head_at_publication"] = ledger_head_at_publication.ToHex();
  return j;
}

PublicationMetadata PublicationMetadata::FromJson(const Json& j) {
  try {
    ExpectFields(j, 8, "metadata");
    PublicationMetadata m;
    const Bytes id = FromHex(j.at("submission_id").get<std::string>());
    AUTHCRED_ENFORCE(id.size() == m.submission_id.size(), ErrorCode::kParseFailure,
                     "submission id must be 16 bytes");
    std::copy(id.begin(), id.end(), m.submission_id.begin());
    m.manuscript_digest = crypto::Digest::FromHex(j.at("manuscript_digest").get<std::string>());
    for (const auto& a : j.at("authors")) {
      ExpectFields(a, 3, "author");
      m.authors.push_back({Did::Parse(a.at("did").get<std::string>()),
                           a.at("role").get<std::string>(),
                           EntryRef::FromJson(a.at("consent_entry_ref"))});
    }
    m.review_attestation_refs = RefsFromJson(j.at("review_attestation_refs"));
    m.coi_outcome_refs = RefsFromJson(j.at("coi_outcome_refs"));
    m.journal_did = Did::Parse(j.at("journal_did").get<std::string>());
    m.published_at = j.at("published_at").get<int64_t>();
    m.ledger_head_at_publication =
        crypto::Digest::FromHex(j.at("ledger_head_at_publication").get<std::string>());
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

crypto::Digest PublicationMetadata::Digest() const {
  return crypto::TaggedHash(crypto::tags::kPublication, Canonical());
}

PublicationMetadata Build(const workflow::Submission& s, const registry::Registry& registry,
                          const Did& journal_did, int64_t published_at) {
  AUTHCRED_ENFORCE(s.state == workflow::WorkflowState::kAccepted, ErrorCode::kNotAccepted,
                   "submission is " + std::string(workflow::StateName(s.state)));
  PublicationMetadata m;
  m.submission_id = s.id;
  m.manuscript_digest = s.manuscript_digest;
  for (const auto& a : s.Authors()) {
    auto it = s.consents.find(a.did);
    AUTHCRED_ENFORCE(it != s.consents.end() &&
                         it->second.record.decision == workflow::Decision::kGrant,
                     ErrorCode::kMissingConsentRef, "no grant from " + a.did.ToString());
    const EntryRef& ref = it->second.ref;
    auto found = registry.FindByDigest(ref.entry_digest);
    AUTHCRED_ENFORCE(found && found->second == ref.block_index &&
                         found->first.kind == EntryKind::kConsentRecord,
                     ErrorCode::kMissingConsentRef,
                     "consent of " + a.did.ToString() + " is not on the ledger");
    m.authors.push_back({a.did, a.role, ref});
  }
  for (const auto& a : s.assignments) {
    if (a.review_ref) m.review_attestation_refs.push_back(*a.review_ref);
    if (a.coi_ref) m.coi_outcome_refs.push_back(*a.coi_ref);
  }
  for (const auto* refs : {&m.review_attestation_refs, &m.coi_outcome_refs}) {
    for (const auto& r : *refs) {
      auto found = registry.FindByDigest(r.entry_digest);
      AUTHCRED_ENFORCE(found && found->second == r.block_index, ErrorCode::kEntryNotFound,
                       "attestation " + r.entry_digest.ToHex() + " is not on the ledger");
    }
  }
  m.journal_did = journal_did;
  m.published_at = published_at;
  m.ledger_head_at_publication = registry.HeadHash();
  return m;
}

registry::LedgerReceipt Anchor(registry::Registry& registry, const PublicationMetadata& m) {
  const auto digest = m.Digest();
  try {
    return registry.AppendOne({EntryKind::kPublicationAnchor, digest.ToHex(), digest});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUniquenessViolation) {
      throw Error(ErrorCode::kDuplicateAnchor, "publication already anchored");
    }
    throw;
  }
}

Json EntryEvidence::ToJson() const {
  return {{"entry", entry.ToJson()}, {"proof", proof.ToJson()}};
}

EntryEvidence EntryEvidence::FromJson(const Json& j) {
  ExpectFields(j, 2, "evidence");
  return {registry::LedgerEntry::FromJson(j.at("entry")),
          registry::InclusionProof::FromJson(j.at("proof"))};
}

Json AuthorEvidence::ToJson() const {
  return {{"did_document", did_document.ToJson()},
          {"did_registration", did_registration.ToJson()},
          {"consent_record", consent_record.ToJson()},
          {"consent_entry", consent_entry.ToJson()}};
}

AuthorEvidence AuthorEvidence::FromJson(const Json& j) {
  ExpectFields(j, 4, "author evidence");
  return {identity::DidDocument::FromJson(j.at("did_document")),
          EntryEvidence::FromJson(j.at("did_registration")),
          workflow::ConsentRecord::FromJson(j.at("consent_record")),
          EntryEvidence::FromJson(j.at("consent_entry"))};
}

Json PublicationDocument::ToJson() const {
  Json authors_json = Json::array();
  for (const auto& a : authors) authors_json.push_back(a.ToJson());
  Json att = Json::array();
  for (const auto& a : attestations) att.push_back(a.ToJson());
  return {{"metadata", metadata.ToJson()},
          {"publication_anchor", publication_anchor.ToJson()},
          {"authors", authors_json},
          {"attestations", att}};
}

PublicationDocument PublicationDocument::FromJson(const Json& j) {
  try {
    ExpectFields(j, 4, "publication document");
    PublicationDocument d;
    d.metadata = PublicationMetadata::FromJson(j.at("metadata"));
    d.publication_anchor = EntryEvidence::FromJson(j.at("publication_anchor"));
    for (const auto& a : j.at("authors")) d.authors.push_back(AuthorEvidence::FromJson(a));
    for (const auto& a : j.at("attestations")) {
      d.attestations.push_back(EntryEvidence::FromJson(a));
    }
    return d;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  } catch (const Error& e) {
    // Bad hex, base64, DIDs or key lengths inside the document.
    if (e.code() == ErrorCode::kParseFailure) throw;
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

PublicationDocument Assemble(const registry::Registry& registry,
                             const identity::DidDirectory& directory,
                             const workflow::Submission& s, const PublicationMetadata& m,
                             const registry::LedgerReceipt& anchor_receipt) {
  PublicationDocument d;
  d.metadata = m;
  d.publication_anchor =
      EvidenceFor(registry, {anchor_receipt.block_index, anchor_receipt.entry_digest});
  for (const auto& a : m.authors) {
    AuthorEvidence ev;
    ev.did_document = directory.Resolve(a.did);
    const auto [reg_entry, reg_block] = directory.Registration(a.did);
    ev.did_registration = EvidenceFor(registry, {reg_block, reg_entry.EntryDigest()});
    ev.consent_record = s.consents.at(a.did).record;
    ev.consent_entry = EvidenceFor(registry, a.consent_entry_ref);
    d.authors.push_back(std::move(ev));
  }
  for (const auto* refs : {&m.review_attestation_refs, &m.coi_outcome_refs}) {
    for (const auto& r : *refs) d.attestations.push_back(EvidenceFor(registry, r));
  }
  return d;
}

PublicationDocument Publish(workflow::Workflow& workflow, registry::Registry& registry,
                            const identity::DidDirectory& directory,
                            const workflow::SubmissionId& id, const Did& journal_did,
                            int64_t published_at) {
  const auto s = workflow.Get(id);
  const auto m = Build(s, registry, journal_did, published_at);
  const auto receipt = Anchor(registry, m);
  auto doc = Assemble(registry, directory, s, m, receipt);
  workflow.MarkPublished(id, {receipt.block_index, receipt.entry_digest});
  return doc;
}

Json PublicationReport::ToJson() const {
  Json j;
  j["anchored"] = anchored;
  j["chain_valid"] = chain_valid;
  j["every_consent_ref_verifies"] = every_consent_ref_verifies;
  j["every_author_did_resolvable"] = every_author_did_resolvable;
  j["consent_signatures_valid"] = consent_signatures_valid;
  j["ok"] = ok();
  return j;
}

PublicationReport VerifyPublication(std::span<const BlockHeader> headers,
                                    std::string_view document) {
  return VerifyPublication(headers, PublicationDocument::FromJson(ParseJson(document)));
}

PublicationReport VerifyPublication(std::span<const BlockHeader> headers,
                                    const PublicationDocument& d) {
  PublicationReport r;
  const auto& m = d.metadata;
  const std::string sid = ToHex(m.submission_id);

  const auto head_index = HeaderIndexOf(headers, m.ledger_head_at_publication);
  r.chain_valid = registry::VerifyHeaders(headers).ok && head_index.has_value();

  // The metadata digest is anchored after the recorded head, and every
  // referenced attestation is on the ledger.
  const auto digest = m.Digest();
  const auto& pa = d.publication_anchor;
  r.anchored = pa.entry.kind == EntryKind::kPublicationAnchor &&
               pa.entry.key == digest.ToHex() && pa.entry.payload_digest == digest &&
               EvidenceHolds(pa, headers) &&
               (!head_index || pa.proof.block_index > *head_index);
  const size_t n_refs = m.review_attestation_refs.size() + m.coi_outcome_refs.size();
  r.anchored = r.anchored && d.attestations.size() == n_refs;
  for (size_t i = 0; r.anchored && i < n_refs; ++i) {
    const bool review = i < m.review_attestation_refs.size();
    const EntryRef& ref = review ? m.review_attestation_refs[i]
                                 : m.coi_outcome_refs[i - m.review_attestation_refs.size()];
    r.anchored = EvidenceMatches(d.attestations[i], ref,
                                 review ? EntryKind::kReviewAttestation : EntryKind::kCoiOutcome,
                                 headers);
  }

  const bool aligned = !m.authors.empty() && d.authors.size() == m.authors.size();
  r.every_consent_ref_verifies = aligned;
  r.every_author_did_resolvable = aligned;
  r.consent_signatures_valid = aligned;
  for (size_t i = 0; aligned && i < m.authors.size(); ++i) {
    const auto& author = m.authors[i];
    const auto& ev = d.authors[i];
    const auto& rec = ev.consent_record;

    const auto expected_payload = workflow::ConsentPayloadDigest(
        m.submission_id, m.manuscript_digest, author.role, workflow::Decision::kGrant);
    r.every_consent_ref_verifies =
        r.every_consent_ref_verifies &&
        EvidenceMatches(ev.consent_entry, author.consent_entry_ref, EntryKind::kConsentRecord,
                        headers) &&
        ev.consent_entry.entry.key == sid + "/" + author.did.ToString() &&
        ev.consent_entry.entry.payload_digest == rec.AnchorDigest() &&
        rec.submission_id == m.submission_id && rec.coauthor_did == author.did &&
        rec.role == author.role && rec.signed_payload_digest == expected_payload;

    const auto& doc = ev.did_document;
    const auto& reg = ev.did_registration;
    r.every_author_did_resolvable =
        r.every_author_did_resolvable && doc.did == author.did && doc.IsConsistent() &&
        reg.entry.kind == EntryKind::kDidRegistration &&
        reg.entry.key == author.did.ToString() &&
        reg.entry.payload_digest == doc.AnchorDigest() && EvidenceHolds(reg, headers);

    // Signature over the record's own signed digest, under the key the DID
    // derives from.
    r.consent_signatures_valid =
        r.consent_signatures_valid && rec.decision == workflow::Decision::kGrant &&
        Did::FromPublicKey(doc.verification_key, author.did.method) == author.did &&
        crypto::Verify(doc.verification_key, rec.signed_payload_digest.span(),
                       rec.signature);
  }
  return r;
}

}  // namespace authcred::publication

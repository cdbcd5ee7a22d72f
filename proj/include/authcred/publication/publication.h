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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "authcred/common/canonical_json.h"
#include "authcred/identity/did.h"
#include "authcred/registry/ledger.h"
#include "authcred/workflow/submission.h"

// Publication metadata: the accepted submission's authors, roles and ledger
// references, canonicalized, anchored, and shipped as a self-contained
// sidecar (`<submission-id>.authcred.json`) that a reader checks against
// block headers alone.
namespace authcred::publication {

using workflow::EntryRef;

struct AuthorEntry {
  identity::Did did;
  std::string role;
  EntryRef consent_entry_ref;
  bool operator==(const AuthorEntry&) const = default;
};

struct PublicationMetadata {
  workflow::SubmissionId submission_id{};
  crypto::Digest manuscript_digest;
  std::vector<AuthorEntry> authors;
  std::vector<EntryRef> review_attestation_refs;
  std::vector<EntryRef> coi_outcome_refs;
  identity::Did journal_did;
  int64_t published_at = 0;
  crypto::Digest ledger_head_at_publication;

  Json ToJson() const;
  static PublicationMetadata FromJson(const Json& j);  // kParseFailure
  // Sorted keys, no whitespace, integers in base 10, digests in lowercase
  // hex, DIDs as strings.
  std::string Canonical() const { return Canonicalize(ToJson()); }
  // hash("authcred/publication/v1" || Canonical()); the anchored value.
  crypto::Digest Digest() const;
};

// Errors: kNotAccepted, kMissingConsentRef, kEntryNotFound.
PublicationMetadata Build(const workflow::Submission& submission,
                          const registry::Registry& registry,
                          const identity::Did& journal_did, int64_t published_at);

// PublicationAnchor entry keyed by the metadata digest. Errors: kDuplicateAnchor.
registry::LedgerReceipt Anchor(registry::Registry& registry, const PublicationMetadata& m);

struct EntryEvidence {
  registry::LedgerEntry entry;
  registry::InclusionProof proof;

  Json ToJson() const;
  static EntryEvidence FromJson(const Json& j);
};

struct AuthorEvidence {
  identity::DidDocument did_document;
  EntryEvidence did_registration;
  workflow::ConsentRecord consent_record;
  EntryEvidence consent_entry;

  Json ToJson() const;
  static AuthorEvidence FromJson(const Json& j);
};

// The sidecar: metadata plus every ledger entry and proof it references.
struct PublicationDocument {
  PublicationMetadata metadata;
  EntryEvidence publication_anchor;
  std::vector<AuthorEvidence> authors;      // same order as metadata.authors
  std::vector<EntryEvidence> attestations;  // review refs, then COI refs

  Json ToJson() const;
  static PublicationDocument FromJson(const Json& j);  // kParseFailure
  std::string Serialize() const { return Canonicalize(ToJson()); }
  std::string FileName() const { return ToHex(metadata.submission_id) + ".authcred.json"; }
};

PublicationDocument Assemble(const registry::Registry& registry,
                             const identity::DidDirectory& directory,
                             const workflow::Submission& submission,
                             const PublicationMetadata& metadata,
                             const registry::LedgerReceipt& anchor_receipt);

// Build, anchor, assemble, and move the submission to Published.
PublicationDocument Publish(workflow::Workflow& workflow, registry::Registry& registry,
                            const identity::DidDirectory& directory,
                            const workflow::SubmissionId& id,
                            const identity::Did& journal_did, int64_t published_at);

struct PublicationReport {
  bool anchored = false;
  bool chain_valid = false;
  bool every_consent_ref_verifies = false;
  bool every_author_did_resolvable = false;
  bool consent_signatures_valid = false;

  bool ok() const {
    return anchored && chain_valid && every_consent_ref_verifies &&
           every_author_did_resolvable && consent_signatures_valid;
  }
  Json ToJson() const;
};

// Reader-side verification from block headers and the sidecar bytes only.
// Errors: kParseFailure for a malformed document.
PublicationReport VerifyPublication(std::span<const registry::BlockHeader> headers,
                                    std::string_view document);
PublicationReport VerifyPublication(std::span<const registry::BlockHeader> headers,
                                    const PublicationDocument& document);

}  // namespace authcred::publication

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

#include <gtest/gtest.h>

#include "world.h"

namespace authcred::publication {
namespace {

using testing::CodeOf;
using testing::Party;
using testing::World;
using workflow::Decision;
using workflow::Submission;

class PublicationTest : public ::testing::Test {
 protected:
  void SetUp() override {
    journal_ = w_.Register();
    author_ = w_.Person("MIT");
    co_ = {w_.Person("ETH"), w_.Person("EPFL")};
    reviewer_ = w_.Person("Oxford", "databases");
    sub_ = Accepted();
  }

  Submission Accepted() {
    auto s = w_.Submit(author_, {{co_[0].did, "software"}, {co_[1].did, "validation"}});
    for (const auto& p : co_) {
      s = w_.workflow.RecordConsent(s.id, w_.Consent(p, s, Decision::kGrant));
    }
    const auto a = w_.workflow.AssignReviewer(s.id, reviewer_.did,
                                              w_.Present(reviewer_, {"expertise"}));
    const auto secret = crypto::RandomScalar(w_.rng);
    const auto salt = w_.rng.RandomArray<32>();
    w_.workflow.BeginCoi(s.id, a.id, crypto::Commit(secret.span(), salt));
    w_.workflow.RecordCoiOutcome(
        s.id, a.id,
        coi::RunDhSession(s.JournalConflictSet(), coi::ConflictSet::Build({"oxford"}),
                          secret, salt, w_.rng)
            .transcript);
    w_.workflow.RecordReview(s.id, a.id, crypto::Hash("review"),
                             workflow::Recommendation::kAccept);
    return w_.workflow.Decide(s.id, true);
  }

  // Builds and anchors without moving the submission to Published.
  PublicationDocument Fixture(const Submission& s) {
    const auto m = Build(s, *w_.registry, journal_.did, w_.clock.Now());
    const auto receipt = Anchor(*w_.registry, m);
    return Assemble(*w_.registry, w_.directory, s, m, receipt);
  }

  PublicationReport Verify(const PublicationDocument& d) {
    const auto headers = w_.registry->Headers();
    return VerifyPublication(headers, d.Serialize());
  }

  static void ExpectOnly(const PublicationReport& r, bool anchored, bool chain, bool refs,
                         bool dids, bool sigs) {
    EXPECT_EQ(r.anchored, anchored);
    EXPECT_EQ(r.chain_valid, chain);
    EXPECT_EQ(r.every_consent_ref_verifies, refs);
    EXPECT_EQ(r.every_author_did_resolvable, dids);
    EXPECT_EQ(r.consent_signatures_valid, sigs);
    EXPECT_FALSE(r.ok());
  }

  World w_;
  Party journal_;
  Party author_;
  std::vector<Party> co_;
  Party reviewer_;
  Submission sub_;
};

TEST_F(PublicationTest, HonestFixturePasses) {
  const auto doc = Fixture(sub_);
  EXPECT_EQ(doc.metadata.authors.size(), 3u);
  EXPECT_EQ(doc.metadata.review_attestation_refs.size(), 1u);
  EXPECT_EQ(doc.metadata.coi_outcome_refs.size(), 1u);
  const auto r = Verify(doc);
  EXPECT_TRUE(r.ok()) << r.ToJson().dump();
  const auto back = PublicationDocument::FromJson(ParseCanonical(doc.Serialize()));
  EXPECT_EQ(back.Serialize(), doc.Serialize());
  EXPECT_EQ(doc.FileName(), sub_.IdHex() + ".authcred.json");
}

TEST_F(PublicationTest, CanonicalizationDeterministicAndInjective) {
  const auto m = Build(sub_, *w_.registry, journal_.did, 1234);
  EXPECT_EQ(m.Canonical(), m.Canonical());
  EXPECT_EQ(PublicationMetadata::FromJson(ParseCanonical(m.Canonical())).Canonical(),
            m.Canonical());
  auto changed = m;
  changed.authors[1].role = "resources";
  EXPECT_NE(changed.Digest(), m.Digest());
  EXPECT_EQ(m.Canonical().find(' '), std::string::npos);
}

TEST_F(PublicationTest, BuildErrors) {
  auto s = w_.Submit(author_, {});
  EXPECT_EQ(CodeOf([&] { Build(s, *w_.registry, journal_.did, 1); }),
            ErrorCode::kNotAccepted);
  // Withheld anchor: a consent ref that is not on the ledger.
  Submission withheld = sub_;
  withheld.consents.at(co_[1].did).ref.entry_digest = crypto::Hash("withheld");
  EXPECT_EQ(CodeOf([&] { Build(withheld, *w_.registry, journal_.did, 1); }),
            ErrorCode::kMissingConsentRef);
}

TEST_F(PublicationTest, AnchorOnce) {
  const auto m = Build(sub_, *w_.registry, journal_.did, 1);
  const auto receipt = Anchor(*w_.registry, m);
  EXPECT_TRUE(registry::VerifyInclusion(receipt.proof, w_.registry->HeadHash(),
                                        w_.registry->Headers()));
  EXPECT_EQ(CodeOf([&] { Anchor(*w_.registry, m); }), ErrorCode::kDuplicateAnchor);
}

TEST_F(PublicationTest, PublishMovesToPublished) {
  const auto doc = Publish(w_.workflow, *w_.registry, w_.directory, sub_.id, journal_.did,
                           w_.clock.Now());
  EXPECT_EQ(w_.workflow.Get(sub_.id).state, workflow::WorkflowState::kPublished);
  EXPECT_TRUE(Verify(doc).ok());
  EXPECT_EQ(CodeOf([&] {
              Publish(w_.workflow, *w_.registry, w_.directory, sub_.id, journal_.did, 2);
            }),
            ErrorCode::kNotAccepted);
}

TEST_F(PublicationTest, SwappedConsentRef) {
  // Same co-author, valid grant, different submission.
  const auto other = Accepted();
  auto doc = Fixture(sub_);
  const auto other_doc = Fixture(other);
  doc.metadata.authors[1].consent_entry_ref = other_doc.metadata.authors[1].consent_entry_ref;
  doc.authors[1].consent_record = other_doc.authors[1].consent_record;
  doc.authors[1].consent_entry = other_doc.authors[1].consent_entry;
  ExpectOnly(Verify(doc), /*anchored=*/false, true, false, true, true);
}

TEST_F(PublicationTest, ForgedConsentSignature) {
  // A journal that anchors a consent the co-author never signed.
  Submission forged = sub_;
  auto& ec = forged.consents.at(co_[0].did);
  const auto impostor = crypto::GenerateKeypair(w_.rng);
  ec.record.signature = crypto::Sign(impostor.private_key, ec.record.signed_payload_digest.span());
  ec.ref = workflow::EntryRef::From(w_.registry->AppendOne(
      {registry::EntryKind::kConsentRecord, sub_.IdHex() + "/" + co_[0].did.ToString(),
       ec.record.AnchorDigest()}));
  ExpectOnly(Verify(Fixture(forged)), true, true, true, true, false);
}

TEST_F(PublicationTest, UnanchoredMetadata) {
  auto doc = Fixture(sub_);
  doc.metadata.published_at += 1;
  ExpectOnly(Verify(doc), false, true, true, true, true);
}

TEST_F(PublicationTest, UnresolvableAuthorDid) {
  auto doc = Fixture(sub_);
  doc.authors[2].did_document.created_at += 1;
  ExpectOnly(Verify(doc), true, true, true, false, true);
}

TEST_F(PublicationTest, BrokenChain) {
  const auto doc = Fixture(sub_);
  auto headers = w_.registry->Headers();
  headers[headers.size() / 2].timestamp += 1;
  ExpectOnly(VerifyPublication(headers, doc.Serialize()), true, false, true, true, true);
  // A rolled-back registry that no longer contains the recorded head.
  headers = w_.registry->Headers();
  headers.resize(3);
  const auto r = VerifyPublication(headers, doc);
  EXPECT_FALSE(r.chain_valid);
  EXPECT_FALSE(r.anchored);
}

TEST_F(PublicationTest, ByteFlipsNeverPass) {
  const auto doc = Fixture(sub_);
  const std::string bytes = doc.Serialize();
  const auto headers = w_.registry->Headers();
  size_t parsed = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::string m = bytes;
    const size_t pos = w_.rng.Uniform(m.size());
    m[pos] = static_cast<char>(m[pos] ^ (1 + w_.rng.Uniform(255)));
    try {
      const auto r = VerifyPublication(headers, m);
      ++parsed;
      ASSERT_FALSE(r.ok()) << "flip at " << pos;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kParseFailure) << e.what();
    }
  }
  EXPECT_GT(parsed, 0u);
}

}  // namespace
}  // namespace authcred::publication

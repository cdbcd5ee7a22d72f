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

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "authcred/common/blob_store.h"
#include "authcred/common/error.h"
#include "authcred/credentials/credential.h"
#include "authcred/identity/did.h"
#include "authcred/registry/ledger.h"
#include "authcred/workflow/submission.h"

namespace authcred::testing {

inline ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kBadRequest;  // sentinel: nothing thrown
}

struct Party {
  crypto::KeyPair kp;
  identity::Did did;
  credentials::VerifiableCredential vc;
};

// One journal node's worth of state, driven by a step clock and a seeded RNG.
class World {
 public:
  explicit World(uint64_t seed = 1)
      : rng(DeterministicRng::FromU64(seed)),
        registry(registry::Registry::CreateInMemory(clock)),
        directory(*registry, store),
        workflow(*registry, directory, store, clock, rng) {
    issuer = Register();
  }

  Party Register() {
    Party p;
    p.kp = crypto::GenerateKeypair(rng);
    auto [did, doc] = identity::CreateDid(p.kp, identity::kDidMethod, clock.Now());
    directory.Register(doc);
    p.did = did;
    return p;
  }

  Party Person(const std::string& affiliation, const std::string& expertise = "ml") {
    Party p = Register();
    p.vc = credentials::IssueCredential(
        directory, issuer.kp, issuer.did, p.did,
        {{"affiliation", affiliation}, {"expertise", expertise}, {"name", "n"}},
        {clock.Peek(), clock.Peek() + credentials::kDefaultValiditySeconds}, rng);
    credentials::AnchorCredential(*registry, directory, p.vc);
    return p;
  }

  credentials::Presentation Present(const Party& p, const std::set<std::string>& claims) {
    return credentials::CreatePresentation(p.vc, claims, p.kp, workflow.IssueChallenge());
  }

  workflow::Submission Submit(const Party& author,
                              const std::vector<workflow::Coauthor>& coauthors,
                              std::optional<int64_t> deadline = std::nullopt) {
    workflow::SubmitRequest req;
    req.manuscript_digest = crypto::Hash("manuscript " + std::to_string(counter_++));
    req.author_presentation = Present(author, {"affiliation"});
    req.corresponding_role = "conceptualization";
    req.corresponding_consent = workflow::SignConsent(
        author.kp, author.did,
        workflow::SubmissionIdForChallenge(req.author_presentation.challenge),
        req.manuscript_digest, req.corresponding_role, workflow::Decision::kGrant);
    req.coauthors = coauthors;
    req.deadline = deadline;
    return workflow.Submit(req);
  }

  workflow::ConsentRecord Consent(const Party& p, const workflow::Submission& s,
                                  workflow::Decision d) {
    std::string role;
    for (const auto& c : s.coauthors) {
      if (c.did == p.did) role = c.role;
    }
    if (role.empty()) role = "software";
    return workflow::SignConsent(p.kp, p.did, s.id, s.manuscript_digest, role, d);
  }

  StepClock clock{1'700'000'000, 1};
  DeterministicRng rng;
  MemoryBlobStore store;
  std::unique_ptr<registry::Registry> registry;
  identity::DidDirectory directory;
  workflow::Workflow workflow;
  Party issuer;

 private:
  int counter_ = 0;
};

}  // namespace authcred::testing

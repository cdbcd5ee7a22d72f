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

#include "authcred/node/scenario.h"

#include "authcred/common/error.h"
#include "authcred/crypto/crypto.h"

namespace authcred::node {

namespace {

struct Actor {
  std::string name;
  std::string did;
  std::string credential_id;
};

class Demo {
 public:
  Demo(Api& api, const DemoLog& log) : api_(api), log_(log) {}

  void Say(const std::string& line) {
    if (log_) log_(line);
  }

  std::string NewDid() {
    Json created = api_.Post("/wallet/dids");
    api_.Post("/dids", Json{{"document", created.at("document")}});
    return created.at("did").get<std::string>();
  }

  Actor Person(const std::string& name, Json claims) {
    Actor a{name, NewDid(), ""};
    claims["name"] = name;
    Json issued = api_.Post("/issuer/credentials", Json{{"issuer_did", issuer_},
                                                        {"subject_did", a.did},
                                                        {"claims", claims}});
    api_.Post("/wallet/" + a.did + "/credentials",
              Json{{"credential", issued.at("credential")}});
    a.credential_id = issued.at("credential_id").get<std::string>();
    Say(name + " " + a.did);
    return a;
  }

  // A fresh challenge from the journal plus the presentation answering it.
  std::pair<Json, Json> Present(const Actor& a, const std::string& claim) {
    Json challenge = api_.Post("/journal/challenges");
    Json p = api_.Post("/wallet/" + a.did + "/present",
                       Json{{"credential_id", a.credential_id},
                            {"disclose", Json::array({claim})},
                            {"challenge", challenge.at("challenge")}});
    return {challenge, p};
  }

  Json Sign(const Actor& a, const std::string& role, const std::string& decision) {
    return api_.Post("/wallet/" + a.did + "/sign-consent",
                     Json{{"submission_id", sid_},
                          {"manuscript_digest", manuscript_},
                          {"role", role},
                          {"decision", decision}});
  }

  Json Consent(const Actor& a, const std::string& role, const std::string& decision) {
    Json body{{"record", Sign(a, role, decision)}};
    if (decision == "Grant") body["presentation"] = Present(a, "affiliation").second;
    Json s = api_.Post(Path("/consents"), body);
    Say(a.name + " " + decision + " -> " + s.at("state").get<std::string>());
    return s;
  }

  uint64_t OpenAlert(const Json& s, const std::string& kind, const std::string& subject) {
    for (const auto& al : s.at("alerts")) {
      if (al.at("kind") == kind && al.at("subject") == subject && !al.at("resolved")) {
        return al.at("id").get<uint64_t>();
      }
    }
    throw Error(ErrorCode::kAlertNotFound, kind + " for " + subject);
  }

  std::string Path(const std::string& suffix) const {
    return "/journal/submissions/" + sid_ + suffix;
  }

  DemoResult Run() {
    issuer_ = NewDid();
    std::string journal = NewDid();
    Say("issuer " + issuer_);
    Say("journal " + journal);

    Actor a = Person("A", {{"affiliation", "Massachusetts Institute of Technology"}});
    Actor b = Person("B", {{"affiliation", "ETH Zürich"}});
    Actor c = Person("C", {{"affiliation", "University of Tokyo"}});
    Actor r1 = Person("R1", {{"affiliation", "University of Oxford"},
                             {"expertise", "applied cryptography"}});
    Actor r2 = Person("R2", {{"affiliation", "ETH Zürich"},
                             {"expertise", "distributed systems"}});

    manuscript_ = crypto::Hash("Decentralized authorship validation: demo manuscript").ToHex();
    auto [challenge, presentation] = Present(a, "affiliation");
    sid_ = challenge.at("submission_id").get<std::string>();
    Json s = api_.Post("/journal/submissions",
                       Json{{"manuscript_digest", manuscript_},
                            {"author_presentation", presentation},
                            {"corresponding_role", "conceptualization"},
                            {"corresponding_consent", Sign(a, "conceptualization", "Grant")},
                            {"coauthors", Json::array({{{"did", b.did}, {"role", "software"}},
                                                       {{"did", c.did}, {"role", "formal-analysis"}}})}});
    Say("submitted " + sid_ + " -> " + s.at("state").get<std::string>());

    s = Consent(c, "formal-analysis", "Deny");
    s = api_.Post(Path("/alerts/" + std::to_string(OpenAlert(s, "ConsentDenied", c.did)) +
                       "/resolve"),
                  Json{{"action", "RemoveCoauthor"}});
    Say("editor removed C -> " + s.at("state").get<std::string>());
    s = api_.Post(Path("/coauthors"), Json{{"did", c.did}, {"role", "formal-analysis"}});
    Say("editor re-listed C -> " + s.at("state").get<std::string>());
    Consent(b, "software", "Grant");
    s = Consent(c, "formal-analysis", "Grant");
    AUTHCRED_ENFORCE(s.at("state") == "ConsentComplete", ErrorCode::kWrongState,
                     "consent did not complete");

    std::vector<std::pair<Actor, std::vector<std::string>>> reviewers = {
        {r1, {"University of Oxford", "University of Cambridge"}},
        {r2, {"  eth   ZÜRICH ", "EPFL"}},
    };
    std::string clear_assignment;
    for (const auto& [r, conflicts] : reviewers) {
      Json a_json = api_.Post(Path("/reviewers"),
                              Json{{"reviewer_did", r.did},
                                   {"presentation", Present(r, "expertise").second}});
      std::string aid = a_json.at("id").get<std::string>();
      Json run = api_.Post("/journal/coi/" + aid + "/run",
                           Json{{"submission_id", sid_}, {"reviewer_set", conflicts}});
      std::string status = run.at("assignment").at("coi_status").get<std::string>();
      Say(r.name + " assigned, COI " + status + " (overlap " +
          std::to_string(run.at("transcript").at("outcome").at("intersection_cardinality")
                             .get<uint64_t>()) +
          ")");
      if (status == "Clear") clear_assignment = aid;
    }
    AUTHCRED_ENFORCE(!clear_assignment.empty(), ErrorCode::kCoiNotClear, "no clear reviewer");

    api_.Post(Path("/reviews"),
              Json{{"assignment_id", clear_assignment},
                   {"review_digest", crypto::Hash("R1 review: sound, accept").ToHex()},
                   {"recommendation", "Accept"}});
    s = api_.Post(Path("/decision"), Json{{"decision", "Accept"}});
    Say("decision -> " + s.at("state").get<std::string>());

    DemoResult out;
    out.publication = api_.Post(Path("/publish"), Json{{"journal_did", journal}});
    out.publication_report = api_.Get("/reader/publications/" + sid_ + "/verify");
    Say("reader verification " + Canonicalize(out.publication_report));
    Json head = api_.Get("/ledger/head");
    out.head_hash = head.at("head_hash").get<std::string>();
    out.height = head.at("height").get<uint64_t>();
    out.submission_id = sid_;
    Say("head " + out.head_hash + " height " + std::to_string(out.height));
    return out;
  }

 private:
  Api& api_;
  const DemoLog& log_;
  std::string issuer_;
  std::string sid_;
  std::string manuscript_;
};

}  // namespace

DemoResult RunDemo(Api& api, const DemoLog& log) { return Demo(api, log).Run(); }

}  // namespace authcred::node

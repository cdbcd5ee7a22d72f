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

#include "authcred/node/node.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <regex>
#include <utility>
#include <vector>

#include "authcred/common/error.h"
#include "authcred/credentials/credential.h"
#include "authcred/publication/publication.h"

namespace authcred::node {

using credentials::Challenge;
using credentials::Presentation;
using credentials::VerifiableCredential;
using identity::Did;
using identity::DidDocument;
using workflow::SubmissionId;

namespace {

constexpr std::string_view kCoiCollection = "coi";
constexpr std::string_view kCoiOpenings = "coi-openings";
constexpr std::string_view kPublications = "publications";

std::string Str(const Json& body, const char* key) {
  AUTHCRED_ENFORCE(body.is_object() && body.contains(key) && body.at(key).is_string(),
                   ErrorCode::kBadRequest, std::string("missing string field ") + key);
  return body.at(key).get<std::string>();
}

SubmissionId ParseSid(const std::string& hex) {
  Bytes b;
  try {
    b = FromHex(hex);
  } catch (const Error&) {
    throw Error(ErrorCode::kUnknownSubmission, "bad submission id " + hex);
  }
  AUTHCRED_ENFORCE(b.size() == 16, ErrorCode::kUnknownSubmission,
                   "bad submission id " + hex);
  SubmissionId id{};
  std::copy(b.begin(), b.end(), id.begin());
  return id;
}

Challenge ParseChallenge(const std::string& b64) {
  Bytes b = Base64Decode(b64);
  AUTHCRED_ENFORCE(b.size() == 32, ErrorCode::kBadRequest, "challenge must be 32 bytes");
  Challenge c{};
  std::copy(b.begin(), b.end(), c.begin());
  return c;
}

crypto::Digest ParseDigest(const Json& body, const char* key) {
  return crypto::Digest::FromHex(Str(body, key));
}

std::set<std::string> StringSet(const Json& body, const char* key) {
  AUTHCRED_ENFORCE(body.contains(key) && body.at(key).is_array(), ErrorCode::kBadRequest,
                   std::string("missing array field ") + key);
  std::set<std::string> out;
  for (const auto& v : body.at(key)) out.insert(v.get<std::string>());
  return out;
}

std::vector<workflow::Coauthor> ParseCoauthors(const Json& body) {
  std::vector<workflow::Coauthor> out;
  if (!body.contains("coauthors")) return out;
  for (const auto& c : body.at("coauthors")) {
    out.push_back({Did::Parse(Str(c, "did")), Str(c, "role")});
  }
  return out;
}

Json ErrorBody(ErrorCode code, const std::string& message) {
  return Json{{"code", std::string(ErrorCodeName(code))}, {"message", message}};
}

}  // namespace

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownSubmission:
    case ErrorCode::kUnknownAssignment:
    case ErrorCode::kUnknownWalletDid:
    case ErrorCode::kBlockNotFound:
    case ErrorCode::kEntryNotFound:
    case ErrorCode::kAlertNotFound:
      return 404;
    case ErrorCode::kParseFailure:
    case ErrorCode::kBadRequest:
    case ErrorCode::kBadEncoding:
    case ErrorCode::kMalformedDid:
      return 400;
    case ErrorCode::kDuplicateDid:
    case ErrorCode::kDuplicateAnchor:
    case ErrorCode::kDuplicateCoauthor:
    case ErrorCode::kUniquenessViolation:
    case ErrorCode::kAlreadyResolved:
    case ErrorCode::kWrongState:
    case ErrorCode::kSaltReuse:
      return 409;
    case ErrorCode::kWalletLocked:
      return 423;
    case ErrorCode::kIoError:
    case ErrorCode::kCorruptLedger:
      return 500;
    default:
      return 422;
  }
}

void NodeConfig::Validate() const {
  AUTHCRED_ENFORCE(roles.issuer || roles.journal || roles.wallet || roles.reader,
                   ErrorCode::kInvalidConfig, "no role enabled");
  AUTHCRED_ENFORCE(port >= 0 && port <= 65535, ErrorCode::kInvalidConfig, "bad port");
  AUTHCRED_ENFORCE(consent_deadline_days > 0, ErrorCode::kInvalidConfig,
                   "consent_deadline_days must be positive");
  AUTHCRED_ENFORCE(credential_validity_days > 0, ErrorCode::kInvalidConfig,
                   "credential_validity_days must be positive");
  AUTHCRED_ENFORCE(!roles.issuer || roles.wallet, ErrorCode::kInvalidConfig,
                   "issuer role needs the wallet role for its signing key");
}

Node::Node(NodeConfig config) : config_(std::move(config)) {
  config_.Validate();
  if (config_.seed) {
    clock_ = std::make_unique<StepClock>(config_.clock_start, 1);
    rng_ = std::make_unique<DeterministicRng>(DeterministicRng::SeedFromU64(*config_.seed));
  } else {
    clock_ = std::make_unique<SystemClock>();
    rng_ = std::make_unique<SystemRng>();
  }
  if (config_.data_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*config_.data_dir, ec);
    AUTHCRED_ENFORCE(!ec, ErrorCode::kInvalidConfig,
                     "cannot create " + config_.data_dir->string());
    {
      const auto probe = *config_.data_dir / ".write-probe";
      std::ofstream(probe) << "ok";
      AUTHCRED_ENFORCE(std::filesystem::exists(probe), ErrorCode::kInvalidConfig,
                       config_.data_dir->string() + " is not writable");
      std::filesystem::remove(probe, ec);
    }
    store_ = std::make_unique<FileBlobStore>(*config_.data_dir);
    try {
      registry_ = registry::Registry::Open(*config_.data_dir / "ledger.bin", *clock_);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCorruptLedger) {
        throw Error(ErrorCode::kCorruptLedgerAtStartup, e.detail());
      }
      throw;
    }
    if (config_.roles.wallet) {
      auto pass = config_.wallet_passphrase;
      if (!pass) {
        if (const char* env = std::getenv("AUTHCRED_WALLET_PASSPHRASE")) pass = env;
      }
      wallet_ = std::make_unique<Wallet>(*config_.data_dir / "wallet.bin", pass, *rng_);
    }
  } else {
    store_ = std::make_unique<MemoryBlobStore>();
    registry_ = registry::Registry::CreateInMemory(*clock_);
    if (config_.roles.wallet) wallet_ = std::make_unique<Wallet>(*rng_);
  }
  auto report = registry_->VerifyChain();
  if (!report.ok) throw Error(ErrorCode::kCorruptLedgerAtStartup, report.reason);

  directory_ = std::make_unique<identity::DidDirectory>(*registry_, *store_);
  workflow::WorkflowConfig wc;
  wc.consent_window_seconds = config_.consent_deadline_days * kSecondsPerDay;
  workflow_ = std::make_unique<workflow::Workflow>(*registry_, *directory_, *store_, *clock_,
                                                   *rng_, wc);
}

Node::~Node() = default;

Wallet& Node::RequireWallet() {
  AUTHCRED_ENFORCE(wallet_ != nullptr, ErrorCode::kNotFound, "wallet role not enabled");
  return *wallet_;
}

void Node::RequireRole(bool enabled, std::string_view role) const {
  AUTHCRED_ENFORCE(enabled, ErrorCode::kNotFound, std::string(role) + " role not enabled");
}

workflow::Submission Node::SubmissionForAssignment(const std::string& assignment_id) const {
  for (const auto& s : workflow_->List()) {
    for (const auto& a : s.assignments) {
      if (a.id == assignment_id) return s;
    }
  }
  throw Error(ErrorCode::kUnknownAssignment, assignment_id);
}

Json Node::RunCoi(const std::string& assignment_id, const Json& body) {
  auto s = SubmissionForAssignment(assignment_id);
  if (body.contains("submission_id")) {
    AUTHCRED_ENFORCE(Str(body, "submission_id") == s.IdHex(), ErrorCode::kUnknownAssignment,
                     "assignment belongs to another submission");
  }
  AUTHCRED_ENFORCE(body.contains("reviewer_set") && body.at("reviewer_set").is_array(),
                   ErrorCode::kBadRequest, "missing array field reviewer_set");
  auto reviewer_set =
      coi::ConflictSet::Build(body.at("reviewer_set").get<std::vector<std::string>>());
  auto journal_set = s.JournalConflictSet();
  coi::Variant variant = config_.coi_variant;
  if (body.contains("variant")) variant = coi::VariantFromName(Str(body, "variant"));

  crypto::Salt commitment_salt = rng_->RandomArray<32>();
  Bytes opening;
  coi::SessionResult result;
  if (variant == coi::Variant::kDhBlinded) {
    crypto::Scalar secret = crypto::RandomScalar(*rng_);
    opening.assign(secret.span().begin(), secret.span().end());
    workflow_->BeginCoi(s.id, assignment_id, crypto::Commit(opening, commitment_salt));
    result = coi::RunDhSession(journal_set, reviewer_set, secret, commitment_salt, *rng_);
  } else {
    crypto::Salt session_salt = rng_->RandomArray<32>();
    opening.assign(session_salt.begin(), session_salt.end());
    workflow_->BeginCoi(s.id, assignment_id, crypto::Commit(opening, commitment_salt));
    result = coi::SaltedHashCheck(journal_set, reviewer_set, session_salt, commitment_salt,
                                  salts_, *rng_);
  }
  const std::string session = result.transcript.SessionIdHex();
  store_->Put(kCoiCollection, session, Canonicalize(result.transcript.ToJson()));
  store_->Put(kCoiOpenings, session,
              Canonicalize(Json{{"commitment_salt", Base64Encode(commitment_salt)},
                                {"opening", Base64Encode(opening)}}));
  auto assignment = workflow_->RecordCoiOutcome(s.id, assignment_id, result.transcript);
  return Json{{"assignment", assignment.ToJson()},
              {"transcript", result.transcript.ToJson()}};
}

struct Node::Routes {
  using Handler = std::function<Json(Node&, const std::smatch&, const Json&, int&)>;
  struct Route {
    std::string method;
    std::regex pattern;
    Handler handler;
  };
  std::vector<Route> table;

  void Add(std::string method, const std::string& pattern, Handler h) {
    table.push_back({std::move(method), std::regex(pattern), std::move(h)});
  }

  static const Routes& Get();
};

const Node::Routes& Node::Routes::Get() {
  static const Routes routes = [] {
    Routes r;
    const std::string seg = "([^/]+)";

    // --- wallet ---
    r.Add("POST", "/wallet/dids", [](Node& n, const std::smatch&, const Json& b, int& st) {
      auto& w = n.RequireWallet();
      std::optional<std::string> endpoint;
      if (b.contains("service_endpoint")) endpoint = Str(b, "service_endpoint");
      auto doc = w.CreateDid(n.clock_->Now(), endpoint);
      st = 201;
      return Json{{"did", doc.did.ToString()}, {"document", doc.ToJson()}};
    });
    r.Add("GET", "/wallet/dids", [](Node& n, const std::smatch&, const Json&, int&) {
      Json dids = Json::array();
      for (const auto& d : n.RequireWallet().Dids()) dids.push_back(d.ToString());
      return Json{{"dids", dids}};
    });
    r.Add("POST", "/wallet/" + seg + "/credentials",
          [](Node& n, const std::smatch& m, const Json& b, int& st) {
            auto vc = VerifiableCredential::FromJson(b.at("credential"));
            n.RequireWallet().AddCredential(Did::Parse(m[1].str()), vc);
            st = 201;
            return Json{{"credential_id", vc.Id()}};
          });
    r.Add("GET", "/wallet/" + seg + "/credentials",
          [](Node& n, const std::smatch& m, const Json&, int&) {
            Json out = Json::array();
            for (const auto& vc : n.RequireWallet().Credentials(Did::Parse(m[1].str()))) {
              Json names = Json::array();
              for (const auto& c : vc.claims) names.push_back(c.name);
              out.push_back({{"id", vc.Id()},
                             {"issuer_did", vc.issuer_did.ToString()},
                             {"claim_names", names},
                             {"expires_at", vc.expires_at}});
            }
            return Json{{"credentials", out}};
          });
    r.Add("POST", "/wallet/" + seg + "/sign-consent",
          [](Node& n, const std::smatch& m, const Json& b, int&) {
            auto record = n.RequireWallet().SignConsent(
                Did::Parse(m[1].str()), ParseSid(Str(b, "submission_id")),
                ParseDigest(b, "manuscript_digest"), Str(b, "role"),
                workflow::DecisionFromName(Str(b, "decision")));
            return record.ToJson();
          });
    r.Add("POST", "/wallet/" + seg + "/present",
          [](Node& n, const std::smatch& m, const Json& b, int&) {
            auto p = n.RequireWallet().Present(Did::Parse(m[1].str()),
                                               Str(b, "credential_id"),
                                               StringSet(b, "disclose"),
                                               ParseChallenge(Str(b, "challenge")));
            return p.ToJson();
          });

    // --- identity ---
    r.Add("POST", "/dids", [](Node& n, const std::smatch&, const Json& b, int& st) {
      auto doc = DidDocument::FromJson(b.contains("document") ? b.at("document") : b);
      auto receipt = n.directory_->Register(doc);
      st = 201;
      return Json{{"did", doc.did.ToString()}, {"receipt", receipt.ToJson()}};
    });
    r.Add("GET", "/dids/" + seg, [](Node& n, const std::smatch& m, const Json&, int&) {
      return n.directory_->Resolve(m[1].str()).ToJson();
    });

    // --- issuer ---
    r.Add("POST", "/issuer/credentials", [](Node& n, const std::smatch&, const Json& b, int& st) {
      n.RequireRole(n.config_.roles.issuer, "issuer");
      AUTHCRED_ENFORCE(b.contains("claims") && b.at("claims").is_object(),
                       ErrorCode::kBadRequest, "claims must be an object");
      std::vector<std::pair<std::string, std::string>> claims;
      for (const auto& [k, v] : b.at("claims").items()) {
        claims.emplace_back(k, v.get<std::string>());
      }
      int64_t days = n.config_.credential_validity_days;
      if (b.contains("validity_days")) days = b.at("validity_days").get<int64_t>();
      AUTHCRED_ENFORCE(days > 0, ErrorCode::kBadValidity, "validity_days must be positive");
      int64_t now = n.clock_->Now();
      auto vc = n.RequireWallet().Issue(Did::Parse(Str(b, "issuer_did")), *n.directory_,
                                        Did::Parse(Str(b, "subject_did")), claims,
                                        {now, now + days * kSecondsPerDay});
      auto receipt = credentials::AnchorCredential(*n.registry_, *n.directory_, vc);
      st = 201;
      return Json{{"credential", vc.ToJson()},
                  {"credential_id", vc.Id()},
                  {"receipt", receipt.ToJson()}};
    });

    r.Add("POST", "/credentials/verify", [](Node& n, const std::smatch&, const Json& b, int&) {
      auto vc = VerifiableCredential::FromJson(b.contains("credential") ? b.at("credential") : b);
      return credentials::VerifyCredential(*n.registry_, *n.directory_, vc, n.clock_->Now())
          .ToJson();
    });

    // --- journal ---
    r.Add("POST", "/journal/challenges", [](Node& n, const std::smatch&, const Json&, int& st) {
      n.RequireRole(n.config_.roles.journal, "journal");
      auto c = n.workflow_->IssueChallenge();
      st = 201;
      return Json{{"challenge", Base64Encode(c)},
                  {"submission_id", ToHex(workflow::SubmissionIdForChallenge(c))}};
    });
    r.Add("POST", "/journal/submissions", [](Node& n, const std::smatch&, const Json& b, int& st) {
      n.RequireRole(n.config_.roles.journal, "journal");
      workflow::SubmitRequest req;
      req.manuscript_digest = ParseDigest(b, "manuscript_digest");
      req.author_presentation = Presentation::FromJson(b.at("author_presentation"));
      req.corresponding_role = Str(b, "corresponding_role");
      req.corresponding_consent = workflow::ConsentRecord::FromJson(b.at("corresponding_consent"));
      req.coauthors = ParseCoauthors(b);
      if (b.contains("deadline")) req.deadline = b.at("deadline").get<int64_t>();
      st = 201;
      return n.workflow_->Submit(req).ToJson();
    });
    r.Add("GET", "/journal/submissions", [](Node& n, const std::smatch&, const Json& b, int&) {
      n.RequireRole(n.config_.roles.journal, "journal");
      // ?pending_for=<did>: submissions still waiting on that co-author.
      std::optional<Did> pending_for;
      if (b.contains("query") && b.at("query").contains("pending_for")) {
        pending_for = Did::Parse(Str(b.at("query"), "pending_for"));
      }
      Json out = Json::array();
      for (const auto& s : n.workflow_->List()) {
        if (pending_for) {
          auto pending = s.PendingCoauthors();
          if (s.state != workflow::WorkflowState::kAwaitingConsent ||
              std::find(pending.begin(), pending.end(), *pending_for) == pending.end()) {
            continue;
          }
        }
        out.push_back(s.ToJson());
      }
      return Json{{"submissions", out}};
    });
    r.Add("GET", "/journal/submissions/" + seg, [](Node& n, const std::smatch& m, const Json&, int&) {
      n.RequireRole(n.config_.roles.journal, "journal");
      return n.workflow_->Get(ParseSid(m[1].str())).ToJson();
    });
    r.Add("POST", "/journal/submissions/" + seg + "/consents",
          [](Node& n, const std::smatch& m, const Json& b, int&) {
            n.RequireRole(n.config_.roles.journal, "journal");
            std::optional<Presentation> p;
            if (b.contains("presentation") && !b.at("presentation").is_null()) {
              p = Presentation::FromJson(b.at("presentation"));
            }
            return n.workflow_
                ->RecordConsent(ParseSid(m[1].str()),
                                workflow::ConsentRecord::FromJson(b.at("record")), p)
                .ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/deadline-check",
          [](Node& n, const std::smatch& m, const Json&, int&) {
            n.RequireRole(n.config_.roles.journal, "journal");
            return n.workflow_->CheckDeadline(ParseSid(m[1].str())).ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/alerts/([0-9]+)/resolve",
          [](Node& n, const std::smatch& m, const Json& b, int&) {
            n.RequireRole(n.config_.roles.journal, "journal");
            return n.workflow_
                ->ResolveAlert(ParseSid(m[1].str()), std::stoull(m[2].str()),
                               workflow::EditorialActionFromName(Str(b, "action")))
                .ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/coauthors",
          [](Node& n, const std::smatch& m, const Json& b, int&) {
            n.RequireRole(n.config_.roles.journal, "journal");
            return n.workflow_
                ->AddCoauthor(ParseSid(m[1].str()), {Did::Parse(Str(b, "did")), Str(b, "role")})
                .ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/reviewers",
          [](Node& n, const std::smatch& m, const Json& b, int& st) {
            n.RequireRole(n.config_.roles.journal, "journal");
            auto a = n.workflow_->AssignReviewer(ParseSid(m[1].str()),
                                                 Did::Parse(Str(b, "reviewer_did")),
                                                 Presentation::FromJson(b.at("presentation")));
            st = 201;
            return a.ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/reviews",
          [](Node& n, const std::smatch& m, const Json& b, int& st) {
            n.RequireRole(n.config_.roles.journal, "journal");
            auto a = n.workflow_->RecordReview(
                ParseSid(m[1].str()), Str(b, "assignment_id"), ParseDigest(b, "review_digest"),
                workflow::RecommendationFromName(Str(b, "recommendation")));
            st = 201;
            return a.ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/decision",
          [](Node& n, const std::smatch& m, const Json& b, int&) {
            n.RequireRole(n.config_.roles.journal, "journal");
            std::string d = Str(b, "decision");
            AUTHCRED_ENFORCE(d == "Accept" || d == "Reject", ErrorCode::kBadRequest,
                             "decision must be Accept or Reject");
            return n.workflow_->Decide(ParseSid(m[1].str()), d == "Accept").ToJson();
          });
    r.Add("POST", "/journal/submissions/" + seg + "/publish",
          [](Node& n, const std::smatch& m, const Json& b, int& st) {
            n.RequireRole(n.config_.roles.journal, "journal");
            auto doc = publication::Publish(*n.workflow_, *n.registry_, *n.directory_,
                                            ParseSid(m[1].str()), Did::Parse(Str(b, "journal_did")),
                                            n.clock_->Now());
            n.store_->Put(kPublications, ToHex(doc.metadata.submission_id), doc.Serialize());
            st = 201;
            return doc.ToJson();
          });
    r.Add("POST", "/journal/coi/" + seg + "/run",
          [](Node& n, const std::smatch& m, const Json& b, int& st) {
            n.RequireRole(n.config_.roles.journal, "journal");
            st = 201;
            return n.RunCoi(m[1].str(), b);
          });
    r.Add("GET", "/journal/coi/" + seg + "/transcript",
          [](Node& n, const std::smatch& m, const Json&, int&) {
            auto t = n.store_->Get(kCoiCollection, m[1].str());
            AUTHCRED_ENFORCE(t.has_value(), ErrorCode::kNotFound, "no transcript " + m[1].str());
            return ParseJson(*t);
          });
    r.Add("POST", "/journal/coi/" + seg + "/audit",
          [](Node& n, const std::smatch& m, const Json&, int&) {
            n.RequireRole(n.config_.roles.journal, "journal");
            auto t = n.store_->Get(kCoiCollection, m[1].str());
            auto o = n.store_->Get(kCoiOpenings, m[1].str());
            AUTHCRED_ENFORCE(t && o, ErrorCode::kNotFound, "no transcript " + m[1].str());
            auto transcript = coi::CoiTranscript::FromJson(ParseJson(*t));
            Json opening = ParseJson(*o);
            bool valid = coi::AuditTranscript(
                transcript, Base64Decode(Str(opening, "opening")),
                crypto::SaltFromBytes(Base64Decode(Str(opening, "commitment_salt"))));
            return Json{{"valid", valid}};
          });

    // --- reader ---
    r.Add("GET", "/reader/publications/" + seg, [](Node& n, const std::smatch& m, const Json&, int&) {
      n.RequireRole(n.config_.roles.reader, "reader");
      auto doc = n.store_->Get(kPublications, m[1].str());
      AUTHCRED_ENFORCE(doc.has_value(), ErrorCode::kNotFound, "no publication " + m[1].str());
      return ParseJson(*doc);
    });
    r.Add("GET", "/reader/publications/" + seg + "/verify",
          [](Node& n, const std::smatch& m, const Json&, int&) {
            n.RequireRole(n.config_.roles.reader, "reader");
            auto doc = n.store_->Get(kPublications, m[1].str());
            AUTHCRED_ENFORCE(doc.has_value(), ErrorCode::kNotFound,
                             "no publication " + m[1].str());
            auto headers = n.registry_->Headers();
            return publication::VerifyPublication(headers, *doc).ToJson();
          });
    r.Add("POST", "/reader/verify", [](Node& n, const std::smatch&, const Json& b, int&) {
      n.RequireRole(n.config_.roles.reader, "reader");
      auto headers = n.registry_->Headers();
      const Json& doc = b.contains("document") ? b.at("document") : b;
      return publication::VerifyPublication(headers, publication::PublicationDocument::FromJson(doc))
          .ToJson();
    });

    // --- ledger ---
    r.Add("GET", "/ledger/head", [](Node& n, const std::smatch&, const Json&, int&) {
      return Json{{"head_hash", n.registry_->HeadHash().ToHex()},
                  {"height", n.registry_->Height()}};
    });
    r.Add("GET", "/ledger/headers", [](Node& n, const std::smatch&, const Json&, int&) {
      Json out = Json::array();
      for (const auto& h : n.registry_->Headers()) out.push_back(h.ToJson());
      return Json{{"headers", out}};
    });
    r.Add("GET", "/ledger/blocks/([0-9]+)", [](Node& n, const std::smatch& m, const Json&, int&) {
      uint64_t index = 0;
      try {
        index = std::stoull(m[1].str());
      } catch (const std::exception&) {
        throw Error(ErrorCode::kBlockNotFound, m[1].str());
      }
      return n.registry_->Block(index).ToJson();
    });
    r.Add("GET", "/ledger/verify", [](Node& n, const std::smatch&, const Json&, int&) {
      return n.registry_->VerifyChain().ToJson();
    });
    r.Add("GET", "/ledger/proofs/([0-9]+)/" + seg,
          [](Node& n, const std::smatch& m, const Json&, int&) {
            return n.registry_
                ->ProveInclusion(std::stoull(m[1].str()), crypto::Digest::FromHex(m[2].str()))
                .ToJson();
          });
    return r;
  }();
  return routes;
}

Json Node::Dispatch(std::string_view method, std::string_view target, const Json& body,
                    int& status) {
  // Query parameters ride along in the body under "query"; values arrive
  // already decoded.
  const size_t q = target.find('?');
  const std::string p(target.substr(0, q));
  Json merged = body;
  if (q != std::string_view::npos) {
    AUTHCRED_ENFORCE(merged.is_object(), ErrorCode::kBadRequest, "body must be an object");
    Json query = Json::object();
    std::string_view rest = target.substr(q + 1);
    while (!rest.empty()) {
      const size_t amp = rest.find('&');
      std::string_view kv = rest.substr(0, amp);
      const size_t eq = kv.find('=');
      query[std::string(kv.substr(0, eq))] =
          eq == std::string_view::npos ? std::string() : std::string(kv.substr(eq + 1));
      rest = amp == std::string_view::npos ? std::string_view() : rest.substr(amp + 1);
    }
    merged["query"] = std::move(query);
  }
  bool path_known = false;
  for (const auto& route : Routes::Get().table) {
    std::smatch m;
    if (!std::regex_match(p, m, route.pattern)) continue;
    path_known = true;
    if (route.method != method) continue;
    status = 200;
    return route.handler(*this, m, merged, status);
  }
  status = path_known ? 405 : 404;
  return ErrorBody(ErrorCode::kNotFound,
                   path_known ? "method not allowed" : "no route for " + p);
}

Response Node::Handle(std::string_view method, std::string_view path, std::string_view body) {
  Response r;
  try {
    Json parsed = Json::object();
    if (!body.empty()) {
      try {
        parsed = ParseJson(body);
      } catch (const Error& e) {
        throw Error(ErrorCode::kParseFailure, e.detail());
      }
    }
    r.body = Dispatch(method, path, parsed, r.status);
  } catch (const Error& e) {
    r.status = StatusFor(e.code());
    r.body = ErrorBody(e.code(), e.detail());
  } catch (const Json::exception& e) {
    r.status = 400;
    r.body = ErrorBody(ErrorCode::kBadRequest, e.what());
  } catch (const std::exception& e) {
    r.status = 500;
    r.body = Json{{"code", "Internal"}, {"message", e.what()}};
  }
  return r;
}

}  // namespace authcred::node

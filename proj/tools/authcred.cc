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

// authcred: command-line client for an authcred node, plus offline ledger
// and publication checks.
//
// Exit codes: 0 success, 1 a check or operation failed, 2 usage or
// connection error.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "authcred/coi/psi.h"
#include "authcred/common/clock.h"
#include "authcred/common/error.h"
#include "authcred/common/rng.h"
#include "authcred/crypto/crypto.h"
#include "authcred/node/client.h"
#include "authcred/node/node.h"
#include "authcred/node/scenario.h"
#include "authcred/publication/publication.h"
#include "authcred/registry/ledger.h"

namespace {

using namespace authcred;

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string node = "http://127.0.0.1:8700";
  std::string output = "text";
  std::string wallet;  // local wallet file; empty means the node's wallet
};

Options g_opts;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  AUTHCRED_ENFORCE(in.good(), ErrorCode::kIoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  AUTHCRED_ENFORCE(out.good(), ErrorCode::kIoError, "cannot write " + path);
  out << data;
}

void Print(const Json& j) {
  if (g_opts.output == "json") {
    std::cout << Canonicalize(j) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

// Checks reports print like everything else but decide the exit code.
int PrintReport(const Json& report) {
  Print(report);
  return report.value("ok", false) ? 0 : kExitFailed;
}

node::HttpApi& Remote() {
  static node::HttpApi api(g_opts.node);
  return api;
}

// Where holder keys live: a local wallet file (passphrase from
// AUTHCRED_WALLET_PASSPHRASE) or the node's wallet endpoints.
node::Api& Holder() {
  if (g_opts.wallet.empty()) return Remote();
  static SystemRng rng;
  static SystemClock clock;
  static node::Wallet wallet = [] {
    std::optional<std::string> pass;
    if (const char* env = std::getenv("AUTHCRED_WALLET_PASSPHRASE")) pass = env;
    return node::Wallet(g_opts.wallet, pass, rng);
  }();
  static node::LocalWalletApi api(wallet, clock);
  return api;
}

std::string Sid(const std::string& s) { return "/journal/submissions/" + s; }

// A fresh journal challenge and the holder's presentation for it.
std::pair<Json, Json> Present(const std::string& holder, const std::string& credential_id,
                              const std::vector<std::string>& disclose) {
  Json ch = Remote().Post("/journal/challenges");
  Json p = Holder().Post("/wallet/" + holder + "/present",
                         Json{{"credential_id", credential_id},
                              {"disclose", disclose},
                              {"challenge", ch.at("challenge")}});
  return {ch, p};
}

std::string ManuscriptDigest(const std::string& file, const std::string& digest) {
  if (!digest.empty()) return crypto::Digest::FromHex(digest).ToHex();
  AUTHCRED_ENFORCE(!file.empty(), ErrorCode::kBadRequest,
                   "need --manuscript or --manuscript-digest");
  return crypto::Hash(ReadFile(file)).ToHex();
}

std::string RoleOf(const Json& submission, const std::string& did) {
  if (submission.at("corresponding_author") == did) {
    return submission.at("corresponding_role").get<std::string>();
  }
  for (const auto& c : submission.at("coauthors")) {
    if (c.at("did") == did) return c.at("role").get<std::string>();
  }
  throw Error(ErrorCode::kNotACoauthor, did + " is not listed on the submission");
}

std::vector<registry::BlockHeader> HeadersFrom(const std::string& headers_file) {
  Json j = headers_file.empty() ? Remote().Get("/ledger/headers")
                                : ParseJson(ReadFile(headers_file));
  std::vector<registry::BlockHeader> out;
  for (const auto& h : j.at("headers")) out.push_back(registry::BlockHeader::FromJson(h));
  return out;
}

node::NodeConfig DemoConfig(uint64_t seed) {
  node::NodeConfig c;
  c.seed = seed;
  return c;
}

Json DemoJson(const node::DemoResult& r, const std::vector<std::string>& log) {
  return Json{{"head_hash", r.head_hash},
              {"height", r.height},
              {"submission_id", r.submission_id},
              {"publication_report", r.publication_report},
              {"log", log}};
}

int RunDemoCommand(uint64_t seed, bool http, const std::string& out_file) {
  std::vector<std::string> log;
  auto sink = [&](const std::string& line) {
    log.push_back(line);
    if (g_opts.output == "text") std::cout << line << "\n";
  };
  node::Node n(DemoConfig(seed));
  node::DemoResult r;
  if (http) {
    node::HttpServer server(n);
    int port = server.Bind("127.0.0.1", 0);
    server.Start();
    node::HttpApi api("http://127.0.0.1:" + std::to_string(port));
    r = node::RunDemo(api, sink);
    server.Stop();
  } else {
    node::InProcessApi api(n);
    r = node::RunDemo(api, sink);
  }
  if (!out_file.empty()) WriteFile(out_file, Canonicalize(r.publication));
  if (g_opts.output == "json") std::cout << Canonicalize(DemoJson(r, log)) << "\n";
  return r.publication_report.value("ok", false) ? 0 : kExitFailed;
}

int RunTamperDemo(uint64_t seed, const std::string& dir_arg) {
  namespace fs = std::filesystem;
  fs::path dir = dir_arg.empty() ? fs::temp_directory_path() /
                                       ("authcred-tamper-" + std::to_string(seed))
                                 : fs::path(dir_arg);
  fs::remove_all(dir);
  node::NodeConfig c = DemoConfig(seed);
  c.data_dir = dir;
  c.wallet_passphrase = "tamper-demo";
  {
    node::Node n(c);
    node::InProcessApi api(n);
    node::RunDemo(api);
  }
  fs::path ledger = dir / "ledger.bin";
  std::string bytes = ReadFile(ledger.string());
  DeterministicRng rng = DeterministicRng::FromU64(seed);
  size_t offset = rng.Uniform(bytes.size());
  uint8_t mask = static_cast<uint8_t>(1 + rng.Uniform(255));
  bytes[offset] = static_cast<char>(static_cast<uint8_t>(bytes[offset]) ^ mask);
  WriteFile(ledger.string(), bytes);

  auto audit = registry::AuditBlockFile(ledger);
  std::string startup = "started";
  try {
    node::Node n(c);
  } catch (const Error& e) {
    startup = std::string(ErrorCodeName(e.code()));
  }
  Json out{{"data_dir", dir.string()},
           {"offset", offset},
           {"mask", mask},
           {"audit", audit.ToJson()},
           {"startup", startup},
           {"ok", !audit.ok && startup == "CorruptLedgerAtStartup"}};
  if (dir_arg.empty()) fs::remove_all(dir);
  return PrintReport(out);
}

volatile std::sig_atomic_t g_stop = 0;
node::HttpServer* g_server = nullptr;

int Serve(node::NodeConfig config) {
  node::Node n(std::move(config));
  node::HttpServer server(n);
  int port = server.Bind(n.config().host, n.config().port);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->Stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->Stop();
  });
  std::cerr << "authcred node on " << n.config().host << ":" << port << " head "
            << n.registry().HeadHash().ToHex() << "\n";
  server.Run();
  g_server = nullptr;
  return 0;
}

std::vector<std::pair<std::string, std::string>> ParsePairs(const std::vector<std::string>& in,
                                                            char sep) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : in) {
    auto pos = s.find(sep);
    AUTHCRED_ENFORCE(pos != std::string::npos && pos > 0, ErrorCode::kBadRequest,
                     "expected NAME" + std::string(1, sep) + "VALUE, got " + s);
    out.emplace_back(s.substr(0, pos), s.substr(pos + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"authcred: authorship credentials, consent and publication checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  if (const char* env = std::getenv("AUTHCRED_NODE")) g_opts.node = env;
  app.add_option("--node", g_opts.node, "node base URL (env AUTHCRED_NODE)");
  app.add_option("--wallet", g_opts.wallet,
                 "local wallet file for holder keys (env AUTHCRED_WALLET_PASSPHRASE)");
  app.add_option("--output", g_opts.output, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::function<int()> action;

  // serve
  auto* serve = app.add_subcommand("serve", "run a node");
  node::NodeConfig serve_cfg;
  std::string serve_dir;
  std::string serve_roles = "issuer,journal,wallet,reader";
  std::string coi_variant = "dh_blinded";
  uint64_t serve_seed = 0;
  serve->add_option("--data-dir", serve_dir, "data directory (omit for in-memory)");
  serve->add_option("--host", serve_cfg.host);
  serve->add_option("--port", serve_cfg.port);
  serve->add_option("--roles", serve_roles, "comma-separated roles");
  serve->add_option("--consent-deadline-days", serve_cfg.consent_deadline_days);
  serve->add_option("--credential-validity-days", serve_cfg.credential_validity_days);
  serve->add_option("--coi-variant", coi_variant)
      ->check(CLI::IsMember({"dh_blinded", "salted_hash"}));
  auto* seed_opt = serve->add_option("--seed", serve_seed, "deterministic RNG and clock");
  serve->callback([&] {
    action = [&] {
      if (!serve_dir.empty()) serve_cfg.data_dir = serve_dir;
      if (*seed_opt) serve_cfg.seed = serve_seed;
      serve_cfg.coi_variant = coi::VariantFromName(coi_variant);
      serve_cfg.roles = {false, false, false, false};
      std::stringstream ss(serve_roles);
      for (std::string r; std::getline(ss, r, ',');) {
        if (r == "issuer") serve_cfg.roles.issuer = true;
        else if (r == "journal") serve_cfg.roles.journal = true;
        else if (r == "wallet") serve_cfg.roles.wallet = true;
        else if (r == "reader") serve_cfg.roles.reader = true;
        else throw Error(ErrorCode::kInvalidConfig, "unknown role " + r);
      }
      return Serve(serve_cfg);
    };
  });

  // keygen
  auto* keygen = app.add_subcommand("keygen", "new key pair in the wallet");
  keygen->callback([&] {
    action = [] {
      Json created = Holder().Post("/wallet/dids");
      Print(created);
      return 0;
    };
  });

  // did
  auto* did = app.add_subcommand("did", "DID operations");
  did->require_subcommand(1);
  auto* did_create = did->add_subcommand("create", "create and register a DID");
  std::string endpoint;
  bool no_register = false;
  did_create->add_option("--service-endpoint", endpoint);
  did_create->add_flag("--no-register", no_register);
  did_create->callback([&] {
    action = [&] {
      Json body = Json::object();
      if (!endpoint.empty()) body["service_endpoint"] = endpoint;
      Json created = Holder().Post("/wallet/dids", body);
      if (!no_register) {
        created["receipt"] =
            Remote().Post("/dids", Json{{"document", created.at("document")}}).at("receipt");
      }
      Print(created);
      return 0;
    };
  });
  auto* did_register = did->add_subcommand("register", "register a DID document file");
  std::string doc_file;
  did_register->add_option("document", doc_file)->required();
  did_register->callback([&] {
    action = [&] {
      Print(Remote().Post("/dids", Json{{"document", ParseJson(ReadFile(doc_file))}}));
      return 0;
    };
  });
  auto* did_resolve = did->add_subcommand("resolve", "resolve a DID");
  std::string did_arg;
  did_resolve->add_option("did", did_arg)->required();
  did_resolve->callback([&] {
    action = [&] {
      Print(Remote().Get("/dids/" + did_arg));
      return 0;
    };
  });

  // vc
  auto* vc = app.add_subcommand("vc", "verifiable credentials");
  vc->require_subcommand(1);
  auto* vc_issue = vc->add_subcommand("issue", "issue, anchor and deliver a credential");
  std::string issuer, subject, vc_out;
  std::vector<std::string> claims;
  int64_t validity_days = 0;
  bool no_store = false;
  vc_issue->add_option("--issuer", issuer)->required();
  vc_issue->add_option("--subject", subject)->required();
  vc_issue->add_option("--claim", claims, "name=value")->required();
  vc_issue->add_option("--validity-days", validity_days);
  vc_issue->add_option("--out", vc_out, "also write the credential to a file");
  vc_issue->add_flag("--no-store", no_store, "do not add to the subject's wallet");
  vc_issue->callback([&] {
    action = [&] {
      Json cl = Json::object();
      for (const auto& [k, v] : ParsePairs(claims, '=')) cl[k] = v;
      Json body{{"issuer_did", issuer}, {"subject_did", subject}, {"claims", cl}};
      if (validity_days > 0) body["validity_days"] = validity_days;
      Json issued = Remote().Post("/issuer/credentials", body);
      if (!no_store) {
        Holder().Post("/wallet/" + subject + "/credentials",
                      Json{{"credential", issued.at("credential")}});
      }
      if (!vc_out.empty()) WriteFile(vc_out, Canonicalize(issued.at("credential")));
      Print(Json{{"credential_id", issued.at("credential_id")},
                 {"receipt", issued.at("receipt")}});
      return 0;
    };
  });
  auto* vc_verify = vc->add_subcommand("verify", "verify a credential file");
  std::string vc_file;
  vc_verify->add_option("credential", vc_file)->required();
  vc_verify->callback([&] {
    action = [&] {
      return PrintReport(Remote().Post("/credentials/verify",
                                       Json{{"credential", ParseJson(ReadFile(vc_file))}}));
    };
  });
  auto* vc_present = vc->add_subcommand("present", "selective-disclosure presentation");
  std::string holder, credential_id, challenge;
  std::vector<std::string> disclose;
  vc_present->add_option("--holder", holder)->required();
  vc_present->add_option("--credential-id", credential_id)->required();
  vc_present->add_option("--disclose", disclose)->required();
  vc_present->add_option("--challenge", challenge, "base64; default asks the journal");
  vc_present->callback([&] {
    action = [&] {
      if (challenge.empty()) {
        Print(Present(holder, credential_id, disclose).second);
      } else {
        Print(Holder().Post("/wallet/" + holder + "/present",
                            Json{{"credential_id", credential_id},
                                 {"disclose", disclose},
                                 {"challenge", challenge}}));
      }
      return 0;
    };
  });

  // submit
  auto* submit = app.add_subcommand("submit", "submit a manuscript");
  std::string author, author_cred, role, manuscript, manuscript_digest;
  std::vector<std::string> coauthors;
  submit->add_option("--author", author)->required();
  submit->add_option("--credential-id", author_cred, "credential with an affiliation claim")
      ->required();
  submit->add_option("--role", role)->required();
  submit->add_option("--manuscript", manuscript, "file to hash");
  submit->add_option("--manuscript-digest", manuscript_digest, "hex SHA-256");
  submit->add_option("--coauthor", coauthors, "DID=ROLE");
  submit->callback([&] {
    action = [&] {
      std::string md = ManuscriptDigest(manuscript, manuscript_digest);
      auto [ch, p] = Present(author, author_cred, {"affiliation"});
      Json consent = Holder().Post("/wallet/" + author + "/sign-consent",
                                   Json{{"submission_id", ch.at("submission_id")},
                                        {"manuscript_digest", md},
                                        {"role", role},
                                        {"decision", "Grant"}});
      Json co = Json::array();
      for (const auto& [d, r] : ParsePairs(coauthors, '=')) co.push_back({{"did", d}, {"role", r}});
      Print(Remote().Post("/journal/submissions", Json{{"manuscript_digest", md},
                                                       {"author_presentation", p},
                                                       {"corresponding_role", role},
                                                       {"corresponding_consent", consent},
                                                       {"coauthors", co}}));
      return 0;
    };
  });

  // consent grant|deny
  auto* consent = app.add_subcommand("consent", "co-author consent");
  consent->require_subcommand(1);
  std::string c_sub, c_did, c_cred;
  for (const char* decision : {"grant", "deny"}) {
    auto* cmd = consent->add_subcommand(decision, std::string(decision) + " consent");
    cmd->add_option("--submission", c_sub)->required();
    cmd->add_option("--did", c_did)->required();
    cmd->add_option("--credential-id", c_cred, "attach the affiliation claim");
    std::string name = decision == std::string("grant") ? "Grant" : "Deny";
    cmd->callback([&, name] {
      action = [&, name] {
        Json s = Remote().Get(Sid(c_sub));
        Json record = Holder().Post("/wallet/" + c_did + "/sign-consent",
                                    Json{{"submission_id", c_sub},
                                         {"manuscript_digest", s.at("manuscript_digest")},
                                         {"role", RoleOf(s, c_did)},
                                         {"decision", name}});
        Json body{{"record", record}};
        if (!c_cred.empty()) body["presentation"] = Present(c_did, c_cred, {"affiliation"}).second;
        Print(Remote().Post(Sid(c_sub) + "/consents", body));
        return 0;
      };
    });
  }

  // journal submissions get|list
  auto* journal = app.add_subcommand("journal", "journal records");
  journal->require_subcommand(1);
  auto* submissions = journal->add_subcommand("submissions", "submissions");
  submissions->require_subcommand(1);
  auto* sub_get = submissions->add_subcommand("get", "one submission");
  std::string g_sub;
  sub_get->add_option("id", g_sub)->required();
  sub_get->callback([&] {
    action = [&] {
      Print(Remote().Get(Sid(g_sub)));
      return 0;
    };
  });
  auto* sub_list = submissions->add_subcommand("list", "all submissions");
  std::string pending_for;
  sub_list->add_option("--pending-for", pending_for, "only those awaiting this DID's consent");
  sub_list->callback([&] {
    action = [&] {
      Print(Remote().Get(pending_for.empty() ? std::string("/journal/submissions")
                                             : "/journal/submissions?pending_for=" +
                                                   pending_for));
      return 0;
    };
  });

  // alert resolve
  auto* alert = app.add_subcommand("alert", "editorial alerts");
  alert->require_subcommand(1);
  auto* resolve = alert->add_subcommand("resolve", "resolve an alert");
  std::string a_sub, a_action;
  uint64_t alert_id = 0;
  resolve->add_option("--submission", a_sub)->required();
  resolve->add_option("--alert", alert_id)->required();
  resolve->add_option("--action", a_action)
      ->required()
      ->check(CLI::IsMember({"RemoveCoauthor", "Reinstate"}));
  resolve->callback([&] {
    action = [&] {
      Print(Remote().Post(Sid(a_sub) + "/alerts/" + std::to_string(alert_id) + "/resolve",
                          Json{{"action", a_action}}));
      return 0;
    };
  });

  // reviewer assign
  auto* reviewer = app.add_subcommand("reviewer", "reviewer assignment");
  reviewer->require_subcommand(1);
  auto* assign = reviewer->add_subcommand("assign", "assign a reviewer");
  std::string r_sub, r_did, r_cred;
  assign->add_option("--submission", r_sub)->required();
  assign->add_option("--reviewer", r_did)->required();
  assign->add_option("--credential-id", r_cred, "credential with an expertise claim")
      ->required();
  assign->callback([&] {
    action = [&] {
      Json p = Present(r_did, r_cred, {"expertise"}).second;
      Print(Remote().Post(Sid(r_sub) + "/reviewers",
                          Json{{"reviewer_did", r_did}, {"presentation", p}}));
      return 0;
    };
  });

  // coi run|verify
  auto* coi_cmd = app.add_subcommand("coi", "private conflict-of-interest check");
  coi_cmd->require_subcommand(1);
  auto* coi_run = coi_cmd->add_subcommand("run", "run the check for an assignment");
  std::string assignment, variant;
  std::vector<std::string> reviewer_set;
  coi_run->add_option("--assignment", assignment)->required();
  coi_run->add_option("--set", reviewer_set, "reviewer conflict element")->required();
  coi_run->add_option("--variant", variant)->check(CLI::IsMember({"dh_blinded", "salted_hash"}));
  coi_run->callback([&] {
    action = [&] {
      Json body{{"reviewer_set", reviewer_set}};
      if (!variant.empty()) body["variant"] = variant;
      Json r = Remote().Post("/journal/coi/" + assignment + "/run", body);
      Print(Json{{"assignment", r.at("assignment")},
                 {"session_id", r.at("transcript").at("session_id")},
                 {"outcome", r.at("transcript").at("outcome")}});
      return 0;
    };
  });
  auto* coi_verify = coi_cmd->add_subcommand("verify", "replay a transcript");
  std::string session, coi_sub;
  bool audit = false;
  coi_verify->add_option("--session", session)->required();
  coi_verify->add_option("--submission", coi_sub)->required();
  coi_verify->add_flag("--audit", audit, "also ask the journal to audit with its opening");
  coi_verify->callback([&] {
    action = [&] {
      auto t = coi::CoiTranscript::FromJson(
          Remote().Get("/journal/coi/" + session + "/transcript"));
      Json s = Remote().Get(Sid(coi_sub));
      std::optional<crypto::Commitment> commitment;
      for (const auto& a : s.at("assignments")) {
        if (a.at("coi_session_id") == session) {
          commitment = crypto::Commitment{
              crypto::Digest::FromBytes(Base64Decode(a.at("coi_commitment").get<std::string>()))};
        }
      }
      AUTHCRED_ENFORCE(commitment.has_value(), ErrorCode::kNotFound,
                       "no assignment on the submission ran session " + session);
      bool replay = false;
      try {
        replay = coi::VerifyTranscript(t, *commitment);
      } catch (const Error&) {
        replay = false;
      }
      Json out{{"replay_valid", replay}, {"outcome", t.outcome.ToJson()}};
      bool ok = replay;
      if (audit) {
        bool audited =
            Remote().Post("/journal/coi/" + session + "/audit").at("valid").get<bool>();
        out["audit_valid"] = audited;
        ok = ok && audited;
      }
      out["ok"] = ok;
      return PrintReport(out);
    };
  });

  // review
  auto* review = app.add_subcommand("review", "record a review");
  std::string rv_sub, rv_assignment, rv_file, recommendation;
  review->add_option("--submission", rv_sub)->required();
  review->add_option("--assignment", rv_assignment)->required();
  review->add_option("--review", rv_file, "review text file")->required();
  review->add_option("--recommendation", recommendation)
      ->required()
      ->check(CLI::IsMember({"Accept", "Revise", "Reject"}));
  review->callback([&] {
    action = [&] {
      Print(Remote().Post(Sid(rv_sub) + "/reviews",
                          Json{{"assignment_id", rv_assignment},
                               {"review_digest", crypto::Hash(ReadFile(rv_file)).ToHex()},
                               {"recommendation", recommendation}}));
      return 0;
    };
  });

  // decide
  auto* decide = app.add_subcommand("decide", "editorial decision");
  std::string d_sub, d_decision;
  decide->add_option("--submission", d_sub)->required();
  decide->add_option("--decision", d_decision)
      ->required()
      ->check(CLI::IsMember({"Accept", "Reject"}));
  decide->callback([&] {
    action = [&] {
      Print(Remote().Post(Sid(d_sub) + "/decision", Json{{"decision", d_decision}}));
      return 0;
    };
  });

  // publish
  auto* publish = app.add_subcommand("publish", "anchor publication metadata");
  std::string p_sub, journal_did, p_out;
  publish->add_option("--submission", p_sub)->required();
  publish->add_option("--journal-did", journal_did)->required();
  publish->add_option("--out", p_out, "write the sidecar here");
  publish->callback([&] {
    action = [&] {
      Json doc = Remote().Post(Sid(p_sub) + "/publish", Json{{"journal_did", journal_did}});
      if (!p_out.empty()) WriteFile(p_out, Canonicalize(doc));
      Print(Json{{"submission_id", p_sub},
                 {"metadata_digest", doc.at("publication_anchor").at("entry").at("key")},
                 {"out", p_out}});
      return 0;
    };
  });

  // verify-publication
  auto* verify_pub = app.add_subcommand("verify-publication", "reader-side checks");
  std::string sidecar, headers_file;
  verify_pub->add_option("sidecar", sidecar, "publication sidecar file")->required();
  verify_pub->add_option("--headers", headers_file,
                         "JSON {\"headers\":[...]}; default fetches from the node");
  verify_pub->callback([&] {
    action = [&] {
      auto headers = HeadersFrom(headers_file);
      return PrintReport(publication::VerifyPublication(headers, ReadFile(sidecar)).ToJson());
    };
  });

  // ledger head|audit|headers
  auto* ledger = app.add_subcommand("ledger", "trust registry");
  ledger->require_subcommand(1);
  std::string ledger_dir;
  auto* head = ledger->add_subcommand("head", "current head hash");
  head->callback([&] {
    action = [] {
      Print(Remote().Get("/ledger/head"));
      return 0;
    };
  });
  auto* headers = ledger->add_subcommand("headers", "all block headers");
  headers->callback([&] {
    action = [] {
      Print(Remote().Get("/ledger/headers"));
      return 0;
    };
  });
  auto* ledger_audit = ledger->add_subcommand("audit", "verify the whole chain");
  ledger_audit->add_option("--data-dir", ledger_dir, "audit a node's files offline");
  ledger_audit->callback([&] {
    action = [&] {
      if (!ledger_dir.empty()) {
        return PrintReport(
            registry::AuditBlockFile(std::filesystem::path(ledger_dir) / "ledger.bin").ToJson());
      }
      return PrintReport(Remote().Get("/ledger/verify"));
    };
  });

  // demo, tamper-demo
  auto* demo = app.add_subcommand("demo", "3-author, 2-reviewer scenario on a fresh node");
  uint64_t demo_seed = 42;
  bool demo_http = false;
  std::string demo_out;
  demo->add_option("--seed", demo_seed);
  demo->add_flag("--http", demo_http, "drive the node over loopback HTTP");
  demo->add_option("--out", demo_out, "write the publication sidecar here");
  demo->callback([&] { action = [&] { return RunDemoCommand(demo_seed, demo_http, demo_out); }; });

  auto* tamper = app.add_subcommand("tamper-demo", "corrupt one ledger byte and audit");
  uint64_t tamper_seed = 42;
  std::string tamper_dir;
  tamper->add_option("--seed", tamper_seed);
  tamper->add_option("--data-dir", tamper_dir, "keep the corrupted node here");
  tamper->callback([&] { action = [&] { return RunTamperDemo(tamper_seed, tamper_dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  auto report_error = [](ErrorCode code, const std::string& message) {
    if (g_opts.output == "json") {
      std::cerr << Canonicalize(Json{{"code", std::string(ErrorCodeName(code))},
                                     {"message", message}})
                << "\n";
    } else {
      std::cerr << "error: " << ErrorCodeName(code) << ": " << message << "\n";
    }
  };
  try {
    return action();
  } catch (const Error& e) {
    report_error(e.code(), e.detail());
    switch (e.code()) {
      case ErrorCode::kIoError:
      case ErrorCode::kBadRequest:
      case ErrorCode::kInvalidConfig:
      case ErrorCode::kPortInUse:
        return kExitUsage;
      default:
        return kExitFailed;
    }
  } catch (const Json::exception& e) {
    report_error(ErrorCode::kParseFailure, e.what());
    return kExitFailed;
  }
}

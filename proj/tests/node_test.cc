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

#include <gtest/gtest.h>
#include <sodium.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "authcred/node/client.h"
#include "authcred/node/scenario.h"
#include "world.h"

namespace authcred::node {
namespace {

using testing::CodeOf;

NodeConfig Seeded(uint64_t seed = 42) {
  NodeConfig c;
  c.seed = seed;
  return c;
}

std::filesystem::path TempDir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  auto dir = std::filesystem::temp_directory_path() /
             ("authcred-node-" + std::string(info->name()) + "-" + std::to_string(getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Keeps every response body the node sends back.
class RecordingApi : public Api {
 public:
  explicit RecordingApi(Api& inner) : inner_(inner) {}
  Response Call(std::string_view method, std::string_view path, const Json& body) override {
    Response r = inner_.Call(method, path, body);
    bodies.push_back(Canonicalize(r.body));
    return r;
  }
  std::vector<std::string> bodies;

 private:
  Api& inner_;
};

TEST(NodeDemo, InProcessPassesAndIsDeterministic) {
  auto start = std::chrono::steady_clock::now();
  Node n1(Seeded());
  InProcessApi api1(n1);
  auto r1 = RunDemo(api1);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 5.0);
  EXPECT_TRUE(r1.publication_report.at("ok").get<bool>()) << r1.publication_report;

  Node n2(Seeded());
  InProcessApi api2(n2);
  auto r2 = RunDemo(api2);
  EXPECT_EQ(r1.head_hash, r2.head_hash);
  EXPECT_EQ(Canonicalize(r1.publication), Canonicalize(r2.publication));

  Node n3(Seeded(43));
  InProcessApi api3(n3);
  EXPECT_NE(RunDemo(api3).head_hash, r1.head_hash);
}

TEST(NodeDemo, HttpMatchesInProcess) {
  Node local(Seeded());
  InProcessApi in_process(local);
  auto expected = RunDemo(in_process);

  Node remote(Seeded());
  HttpServer server(remote);
  int port = server.Bind("127.0.0.1", 0);
  server.Start();
  HttpApi http("http://127.0.0.1:" + std::to_string(port));
  auto got = RunDemo(http);
  server.Stop();
  EXPECT_EQ(got.head_hash, expected.head_hash);
  EXPECT_EQ(got.height, expected.height);
  EXPECT_TRUE(got.publication_report.at("ok").get<bool>());
}

TEST(NodeDemo, LedgerShape) {
  Node n(Seeded());
  InProcessApi api(n);
  auto r = RunDemo(api);
  auto s = n.workflow().Get(n.workflow().List().at(0).id);
  EXPECT_EQ(s.state, workflow::WorkflowState::kPublished);
  ASSERT_EQ(s.assignments.size(), 2u);
  EXPECT_EQ(s.assignments[0].coi_status, workflow::CoiStatus::kClear);
  EXPECT_EQ(s.assignments[1].coi_status, workflow::CoiStatus::kConflict);
  EXPECT_EQ(s.assignments[1].coi_outcome->intersection_cardinality, 1u);
  // Exactly one Deny alert and one COI alert.
  int denied = 0, coi = 0;
  for (const auto& a : s.alerts) {
    denied += a.kind == workflow::AlertKind::kConsentDenied;
    coi += a.kind == workflow::AlertKind::kCoiConflict;
  }
  EXPECT_EQ(denied, 1);
  EXPECT_EQ(coi, 1);
  EXPECT_TRUE(n.registry().VerifyChain().ok);
  EXPECT_EQ(api.Get("/ledger/verify").at("ok"), true);
  // Every COI transcript is retrievable and audits with the journal's opening.
  for (const auto& a : s.assignments) {
    auto t = api.Get("/journal/coi/" + *a.coi_session_id + "/transcript");
    EXPECT_EQ(t.at("outcome"), a.coi_outcome->ToJson());
    EXPECT_EQ(api.Post("/journal/coi/" + *a.coi_session_id + "/audit").at("valid"), true);
  }
}

class NodeApiTest : public ::testing::Test {
 protected:
  NodeApiTest() : node_(Seeded(7)), api_(node_) {}

  std::string NewDid() {
    Json created = api_.Post("/wallet/dids");
    api_.Post("/dids", Json{{"document", created.at("document")}});
    return created.at("did").get<std::string>();
  }

  Node node_;
  InProcessApi api_;
};

TEST_F(NodeApiTest, ErrorStatusAndCodes) {
  auto r = api_.Call("GET", "/nowhere", Json());
  EXPECT_EQ(r.status, 404);
  r = api_.Call("GET", "/journal/submissions/00112233445566778899aabbccddeeff", Json());
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body.at("code"), "UnknownSubmission");
  r = api_.Call("GET", "/dids/not-a-did", Json());
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body.at("code"), "MalformedDid");
  r = api_.Call("GET", "/ledger/blocks/99", Json());
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body.at("code"), "BlockNotFound");
  EXPECT_EQ(node_.Handle("POST", "/journal/challenges", "{not json").status, 400);
  EXPECT_EQ(node_.Handle("POST", "/ledger/head", "").status, 405);

  Json doc = api_.Post("/wallet/dids").at("document");
  EXPECT_EQ(api_.Call("POST", "/dids", Json{{"document", doc}}).status, 201);
  r = api_.Call("POST", "/dids", Json{{"document", doc}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body.at("code"), "DuplicateDid");
  EXPECT_EQ(api_.Get("/dids/" + doc.at("did").get<std::string>()), doc);
}

TEST_F(NodeApiTest, BadConsentSignatureIs422) {
  std::string issuer = NewDid();
  std::string a = NewDid();
  std::string b = NewDid();
  std::string mallory = NewDid();
  Json vc = api_.Post("/issuer/credentials",
                      Json{{"issuer_did", issuer},
                           {"subject_did", a},
                           {"claims", {{"affiliation", "MIT"}}}});
  api_.Post("/wallet/" + a + "/credentials", Json{{"credential", vc.at("credential")}});
  Json ch = api_.Post("/journal/challenges");
  Json p = api_.Post("/wallet/" + a + "/present",
                     Json{{"credential_id", vc.at("credential_id")},
                          {"disclose", {"affiliation"}},
                          {"challenge", ch.at("challenge")}});
  std::string md = crypto::Hash("m").ToHex();
  auto sign = [&](const std::string& who, const std::string& role) {
    return api_.Post("/wallet/" + who + "/sign-consent",
                     Json{{"submission_id", ch.at("submission_id")},
                          {"manuscript_digest", md},
                          {"role", role},
                          {"decision", "Grant"}});
  };
  Json s = api_.Post("/journal/submissions",
                     Json{{"manuscript_digest", md},
                          {"author_presentation", p},
                          {"corresponding_role", "software"},
                          {"corresponding_consent", sign(a, "software")},
                          {"coauthors", {{{"did", b}, {"role", "validation"}}}}});
  EXPECT_EQ(s.at("state"), "AwaitingConsent");
  std::string sid = s.at("id").get<std::string>();

  // Mallory signs, then claims the record is B's.
  Json forged = sign(mallory, "validation");
  forged["coauthor_did"] = b;
  auto r = api_.Call("POST", "/journal/submissions/" + sid + "/consents",
                     Json{{"record", forged}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body.at("code"), "BadConsentSignature");

  r = api_.Call("POST", "/journal/submissions/" + sid + "/consents",
                Json{{"record", sign(mallory, "validation")}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body.at("code"), "NotACoauthor");

  // The consent inbox query, in process and over HTTP.
  auto pending = [&](Api& api, const std::string& did) {
    return api.Get("/journal/submissions?pending_for=" + did).at("submissions").size();
  };
  HttpServer server(node_);
  int port = server.Bind("127.0.0.1", 0);
  server.Start();
  HttpApi http("http://127.0.0.1:" + std::to_string(port));
  EXPECT_EQ(pending(api_, b), 1u);
  EXPECT_EQ(pending(http, b), 1u);
  EXPECT_EQ(pending(api_, a), 0u);
  EXPECT_EQ(pending(http, mallory), 0u);
  EXPECT_EQ(api_.Call("GET", "/journal/submissions?pending_for=nope", Json()).status, 400);

  EXPECT_EQ(api_.Post("/journal/submissions/" + sid + "/consents",
                      Json{{"record", sign(b, "validation")}})
                .at("state"),
            "ConsentComplete");
  EXPECT_EQ(pending(http, b), 0u);
  server.Stop();
  r = api_.Call("POST", "/journal/submissions/" + sid + "/consents",
                Json{{"record", sign(b, "validation")}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(api_.Get("/journal/submissions").at("submissions").size(), 1u);
}

TEST_F(NodeApiTest, WalletErrors) {
  auto r = api_.Call("POST", "/wallet/did:authcred:11111111111111111111/sign-consent",
                     Json{{"submission_id", "00112233445566778899aabbccddeeff"},
                          {"manuscript_digest", crypto::Hash("m").ToHex()},
                          {"role", "software"},
                          {"decision", "Grant"}});
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body.at("code"), "UnknownWalletDid");
  std::string a = NewDid();
  r = api_.Call("POST", "/wallet/" + a + "/present",
                Json{{"credential_id", "00"}, {"disclose", Json::array()},
                     {"challenge", Base64Encode(Bytes(32, 1))}});
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(api_.Get("/wallet/dids").at("dids").size(), 1u);
}

TEST_F(NodeApiTest, LocalWalletSignsForNode) {
  auto file = std::filesystem::temp_directory_path() /
              ("authcred-local-wallet-" + std::to_string(getpid()) + ".bin");
  std::filesystem::remove(file);
  std::string issuer = NewDid();
  std::string b = NewDid();
  std::string a;
  std::string credential_id;
  {
    SystemRng rng;
    StepClock clock(1'700'000'000, 1);
    Wallet wallet(file, "pw", rng);
    LocalWalletApi local(wallet, clock);
    Json created = local.Post("/wallet/dids");
    a = created.at("did").get<std::string>();
    api_.Post("/dids", Json{{"document", created.at("document")}});
    Json vc = api_.Post("/issuer/credentials", Json{{"issuer_did", issuer},
                                                    {"subject_did", a},
                                                    {"claims", {{"affiliation", "MIT"}}}});
    credential_id =
        local.Post("/wallet/" + a + "/credentials", Json{{"credential", vc.at("credential")}})
            .at("credential_id")
            .get<std::string>();
    EXPECT_EQ(local.Call("GET", "/ledger/head", Json()).status, 404);
  }
  // The node holds the document but not the key.
  EXPECT_EQ(api_.Call("POST", "/wallet/" + a + "/present",
                      Json{{"credential_id", credential_id},
                           {"disclose", {"affiliation"}},
                           {"challenge", Base64Encode(Bytes(32, 1))}})
                .body.at("code"),
            "UnknownWalletDid");

  SystemRng rng;
  StepClock clock(1'700'000'000, 1);
  Wallet reopened(file, "pw", rng);
  LocalWalletApi local(reopened, clock);
  Json ch = api_.Post("/journal/challenges");
  Json p = local.Post("/wallet/" + a + "/present",
                      Json{{"credential_id", credential_id},
                           {"disclose", {"affiliation"}},
                           {"challenge", ch.at("challenge")}});
  std::string md = crypto::Hash("m").ToHex();
  Json consent = local.Post("/wallet/" + a + "/sign-consent",
                            Json{{"submission_id", ch.at("submission_id")},
                                 {"manuscript_digest", md},
                                 {"role", "software"},
                                 {"decision", "Grant"}});
  Json s = api_.Post("/journal/submissions",
                     Json{{"manuscript_digest", md},
                          {"author_presentation", p},
                          {"corresponding_role", "software"},
                          {"corresponding_consent", consent},
                          {"coauthors", {{{"did", b}, {"role", "validation"}}}}});
  EXPECT_EQ(s.at("state"), "AwaitingConsent");
  auto r = local.Call("POST", "/wallet/" + b + "/sign-consent",
                      Json{{"submission_id", ch.at("submission_id")},
                           {"manuscript_digest", md},
                           {"role", "validation"},
                           {"decision", "Grant"}});
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body.at("code"), "UnknownWalletDid");
  std::filesystem::remove(file);
}

TEST(NodeConfigTest, RoleGating) {
  NodeConfig c = Seeded();
  c.roles = {false, false, false, false};
  EXPECT_EQ(CodeOf([&] { Node n(c); }), ErrorCode::kInvalidConfig);
  c.roles = {true, true, false, true};
  EXPECT_EQ(CodeOf([&] { Node n(c); }), ErrorCode::kInvalidConfig);
  c.roles = {false, false, false, true};
  Node reader(c);
  EXPECT_EQ(reader.Handle("POST", "/journal/challenges", "").status, 404);
  EXPECT_EQ(reader.Handle("POST", "/wallet/dids", "").status, 404);
  EXPECT_EQ(reader.Handle("GET", "/ledger/head", "").status, 200);
}

TEST(NodeConfigTest, UnwritableDataDir) {
  auto file = std::filesystem::temp_directory_path() /
              ("authcred-not-a-dir-" + std::to_string(getpid()));
  std::ofstream(file) << "x";
  NodeConfig c = Seeded();
  c.data_dir = file / "data";
  EXPECT_EQ(CodeOf([&] { Node n(c); }), ErrorCode::kInvalidConfig);
  std::filesystem::remove(file);
}

TEST(NodeConfigTest, PortInUse) {
  Node n(Seeded());
  HttpServer a(n);
  int port = a.Bind("127.0.0.1", 0);
  HttpServer b(n);
  EXPECT_EQ(CodeOf([&] { b.Bind("127.0.0.1", port); }), ErrorCode::kPortInUse);
}

class NodeDiskTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = TempDir(); }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  NodeConfig OnDisk(std::optional<std::string> pass = "correct horse") {
    NodeConfig c = Seeded();
    c.data_dir = dir_;
    c.wallet_passphrase = pass;
    return c;
  }

  std::filesystem::path dir_;
};

TEST_F(NodeDiskTest, RestartKeepsHeadAndPublication) {
  std::string head;
  std::string sid;
  {
    Node n(OnDisk());
    InProcessApi api(n);
    auto r = RunDemo(api);
    head = r.head_hash;
    sid = r.submission_id;
  }
  Node n(OnDisk());
  InProcessApi api(n);
  EXPECT_EQ(api.Get("/ledger/head").at("head_hash"), head);
  EXPECT_EQ(api.Get("/reader/publications/" + sid + "/verify").at("ok"), true);
  EXPECT_EQ(api.Get("/journal/submissions/" + sid).at("state"), "Published");
  EXPECT_EQ(api.Get("/wallet/dids").at("dids").size(), 7u);
}

TEST_F(NodeDiskTest, TamperedLedgerRefusesToStart) {
  {
    Node n(OnDisk());
    InProcessApi api(n);
    RunDemo(api);
  }
  auto path = dir_ / "ledger.bin";
  std::string bytes = ReadFile(path);
  ASSERT_GT(bytes.size(), 200u);
  bytes[bytes.size() / 2] ^= 0x01;
  std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
  EXPECT_EQ(CodeOf([&] { Node n(OnDisk()); }), ErrorCode::kCorruptLedgerAtStartup);
}

TEST_F(NodeDiskTest, WalletLocked) {
  { Node n(OnDisk()); InProcessApi(n).Post("/wallet/dids"); }
  EXPECT_EQ(CodeOf([&] { Node n(OnDisk("wrong")); }), ErrorCode::kWalletLocked);
  unsetenv("AUTHCRED_WALLET_PASSPHRASE");
  EXPECT_EQ(CodeOf([&] { Node n(OnDisk(std::nullopt)); }), ErrorCode::kWalletLocked);
  setenv("AUTHCRED_WALLET_PASSPHRASE", "correct horse", 1);
  Node n(OnDisk(std::nullopt));
  EXPECT_EQ(InProcessApi(n).Get("/wallet/dids").at("dids").size(), 1u);
  unsetenv("AUTHCRED_WALLET_PASSPHRASE");
}

// Opens the wallet file independently from its documented format and returns
// every private seed it holds.
std::vector<Bytes> WalletSeeds(const std::filesystem::path& path, const std::string& pass) {
  Json j = ParseJson(ReadFile(path));
  EXPECT_EQ(j.at("kdf"), "argon2id13");
  Bytes salt = Base64Decode(j.at("salt").get<std::string>());
  Bytes nonce = Base64Decode(j.at("nonce").get<std::string>());
  Bytes box = Base64Decode(j.at("box").get<std::string>());
  uint8_t key[32];
  EXPECT_EQ(crypto_pwhash(key, 32, pass.data(), pass.size(), salt.data(),
                          crypto_pwhash_OPSLIMIT_INTERACTIVE,
                          crypto_pwhash_MEMLIMIT_INTERACTIVE, crypto_pwhash_ALG_ARGON2ID13),
            0);
  Bytes plain(box.size() - crypto_secretbox_MACBYTES);
  EXPECT_EQ(crypto_secretbox_open_easy(plain.data(), box.data(), box.size(), nonce.data(), key),
            0);
  std::vector<Bytes> seeds;
  for (const auto& e : ParseJson(ToString(plain))) {
    seeds.push_back(Base64Decode(e.at("seed").get<std::string>()));
  }
  return seeds;
}

bool Contains(const std::string& hay, const Bytes& seed) {
  return hay.find(ToString(seed)) != std::string::npos ||
         hay.find(ToHex(seed)) != std::string::npos ||
         hay.find(Base64Encode(seed)) != std::string::npos;
}

TEST_F(NodeDiskTest, PrivateKeysNeverLeaveTheWallet) {
  const std::string pass = "correct horse";
  std::vector<std::string> bodies;
  {
    Node n(OnDisk(pass));
    HttpServer server(n);
    int port = server.Bind("127.0.0.1", 0);
    server.Start();
    HttpApi http("http://127.0.0.1:" + std::to_string(port));
    RecordingApi rec(http);
    RunDemo(rec);
    server.Stop();
    bodies = rec.bodies;
  }
  auto seeds = WalletSeeds(dir_ / "wallet.bin", pass);
  ASSERT_EQ(seeds.size(), 7u);
  std::string wallet_file = ReadFile(dir_ / "wallet.bin");
  std::vector<std::string> other_files;
  for (const auto& f : std::filesystem::recursive_directory_iterator(dir_)) {
    if (f.is_regular_file() && f.path().filename() != "wallet.bin") {
      other_files.push_back(ReadFile(f.path()));
    }
  }
  EXPECT_GT(other_files.size(), 10u);
  for (const auto& seed : seeds) {
    ASSERT_EQ(seed.size(), 32u);
    EXPECT_FALSE(Contains(wallet_file, seed));
    for (const auto& b : bodies) EXPECT_FALSE(Contains(b, seed));
    for (const auto& f : other_files) EXPECT_FALSE(Contains(f, seed));
  }
}

}  // namespace
}  // namespace authcred::node

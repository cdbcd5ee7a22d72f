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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "authcred/coi/psi.h"
#include "authcred/common/blob_store.h"
#include "authcred/common/canonical_json.h"
#include "authcred/common/clock.h"
#include "authcred/common/rng.h"
#include "authcred/identity/did.h"
#include "authcred/node/wallet.h"
#include "authcred/registry/ledger.h"
#include "authcred/workflow/submission.h"

namespace authcred::node {

struct Roles {
  bool issuer = true;
  bool journal = true;
  bool wallet = true;
  bool reader = true;
};

struct NodeConfig {
  // Empty: everything in memory.
  std::optional<std::filesystem::path> data_dir;
  std::string host = "127.0.0.1";
  int port = 8700;
  Roles roles;
  int64_t consent_deadline_days = 14;
  int64_t credential_validity_days = 365;
  coi::Variant coi_variant = coi::Variant::kDhBlinded;
  // Set: seeded RNG and a step clock starting at clock_start, for
  // reproducible runs.
  std::optional<uint64_t> seed;
  int64_t clock_start = 1'700'000'000;
  std::optional<std::string> wallet_passphrase;

  void Validate() const;  // kInvalidConfig
};

struct Response {
  int status = 200;
  Json body;
};

// HTTP status for an error code.
int StatusFor(ErrorCode code);

// Issuer, journal, wallet and reader roles over one trust registry. Every
// endpoint maps to one library operation; Handle is the router the HTTP
// server and in-process callers share.
//
// Data directory layout: ledger.bin, wallet.bin, dids/, submissions/, coi/,
// coi-openings/, publications/.
class Node {
 public:
  // Errors: kInvalidConfig, kCorruptLedgerAtStartup, kWalletLocked.
  explicit Node(NodeConfig config);
  ~Node();

  // `target` is the path with an optional "?k=v&..." query (values decoded).
  Response Handle(std::string_view method, std::string_view target, std::string_view body);

  const NodeConfig& config() const { return config_; }
  registry::Registry& registry() { return *registry_; }
  workflow::Workflow& workflow() { return *workflow_; }
  identity::DidDirectory& directory() { return *directory_; }

 private:
  struct Routes;
  Json Dispatch(std::string_view method, std::string_view target, const Json& body,
                int& status);
  Wallet& RequireWallet();
  void RequireRole(bool enabled, std::string_view role) const;
  workflow::Submission SubmissionForAssignment(const std::string& assignment_id) const;

  Json RunCoi(const std::string& assignment_id, const Json& body);

  NodeConfig config_;
  std::unique_ptr<Clock> clock_;
  std::unique_ptr<Rng> rng_;
  std::unique_ptr<BlobStore> store_;
  std::unique_ptr<registry::Registry> registry_;
  std::unique_ptr<identity::DidDirectory> directory_;
  std::unique_ptr<workflow::Workflow> workflow_;
  std::unique_ptr<Wallet> wallet_;
  coi::SaltRegistry salts_;
};

// Thin cpp-httplib front end over Node::Handle.
class HttpServer {
 public:
  explicit HttpServer(Node& node);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Errors: kPortInUse.
  int Bind(const std::string& host, int port);
  // Serves on a background thread until Stop().
  void Start();
  // Serves on the calling thread until Stop() from elsewhere.
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace authcred::node

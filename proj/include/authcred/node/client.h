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

#include <memory>
#include <string>
#include <string_view>

#include "authcred/common/canonical_json.h"
#include "authcred/common/clock.h"
#include "authcred/common/rng.h"
#include "authcred/node/node.h"
#include "authcred/node/wallet.h"

// Clients for the node's REST surface. Both raise authcred::Error carrying
// the server's error code on a non-2xx response.
namespace authcred::node {

class Api {
 public:
  virtual ~Api() = default;
  virtual Response Call(std::string_view method, std::string_view path, const Json& body) = 0;

  Json Get(std::string_view path);
  Json Post(std::string_view path, const Json& body = Json::object());

 private:
  Json Checked(Response r);
};

// Calls the router directly, no transport.
class InProcessApi : public Api {
 public:
  explicit InProcessApi(Node& node) : node_(node) {}
  Response Call(std::string_view method, std::string_view path, const Json& body) override;

 private:
  Node& node_;
};

// Errors: kIoError when the node is unreachable.
class HttpApi : public Api {
 public:
  // base_url like "http://127.0.0.1:8700".
  explicit HttpApi(const std::string& base_url);
  ~HttpApi() override;
  Response Call(std::string_view method, std::string_view path, const Json& body) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Serves the /wallet/* routes from a wallet owned by the caller, with the
// same bodies and error codes as a node. Other paths get 404.
class LocalWalletApi : public Api {
 public:
  LocalWalletApi(Wallet& wallet, Clock& clock) : wallet_(wallet), clock_(clock) {}
  Response Call(std::string_view method, std::string_view path, const Json& body) override;

 private:
  Json Dispatch(std::string_view method, const std::string& path, const Json& body,
                int& status);

  Wallet& wallet_;
  Clock& clock_;
};

}  // namespace authcred::node

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

#include <httplib.h>

#include <thread>

#include "authcred/common/error.h"
#include "authcred/node/client.h"
#include "authcred/node/node.h"

namespace authcred::node {

struct HttpServer::Impl {
  Node& node;
  httplib::Server server;
  std::thread thread;
  bool bound = false;

  explicit Impl(Node& n) : node(n) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      std::string target = req.path;
      char sep = '?';
      for (const auto& [k, v] : req.params) {
        target += sep + k + "=" + v;
        sep = '&';
      }
      Response r = node.Handle(req.method, target, req.body);
      res.status = r.status;
      res.set_content(Canonicalize(r.body), "application/json");
    };
    // Only SO_REUSEADDR: with SO_REUSEPORT a second node could share the port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    server.Get(".*", handler);
    server.Post(".*", handler);
  }
};

HttpServer::HttpServer(Node& node) : impl_(std::make_unique<Impl>(node)) {}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  int bound_port = port;
  if (port == 0) {
    bound_port = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound_port = -1;
  }
  AUTHCRED_ENFORCE(bound_port > 0, ErrorCode::kPortInUse,
                   "cannot bind " + host + ":" + std::to_string(port));
  impl_->bound = true;
  return bound_port;
}

void HttpServer::Start() {
  AUTHCRED_ENFORCE(impl_->bound, ErrorCode::kBadRequest, "Bind before Start");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::Run() {
  AUTHCRED_ENFORCE(impl_->bound, ErrorCode::kBadRequest, "Bind before Run");
  impl_->server.listen_after_bind();
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

// --- clients ---------------------------------------------------------------

Json Api::Checked(Response r) {
  if (r.status >= 200 && r.status < 300) return std::move(r.body);
  ErrorCode code = ErrorCode::kBadRequest;
  std::string message = "HTTP " + std::to_string(r.status);
  if (r.body.is_object()) {
    if (r.body.contains("code") && r.body.at("code").is_string()) {
      if (auto c = ErrorCodeFromName(r.body.at("code").get<std::string>())) code = *c;
    }
    if (r.body.contains("message") && r.body.at("message").is_string()) {
      message = r.body.at("message").get<std::string>();
    }
  }
  throw Error(code, message);
}

Json Api::Get(std::string_view path) { return Checked(Call("GET", path, Json())); }

Json Api::Post(std::string_view path, const Json& body) {
  return Checked(Call("POST", path, body));
}

Response InProcessApi::Call(std::string_view method, std::string_view path, const Json& body) {
  return node_.Handle(method, path, body.is_null() ? std::string() : Canonicalize(body));
}

struct HttpApi::Impl {
  httplib::Client client;
  explicit Impl(const std::string& url) : client(url) {
    client.set_connection_timeout(5);
    client.set_read_timeout(60);
  }
};

HttpApi::HttpApi(const std::string& base_url) : impl_(std::make_unique<Impl>(base_url)) {
  AUTHCRED_ENFORCE(impl_->client.is_valid(), ErrorCode::kBadRequest, "bad node URL " + base_url);
}

HttpApi::~HttpApi() = default;

Response HttpApi::Call(std::string_view method, std::string_view path, const Json& body) {
  // Query values are sent percent-encoded; the server decodes them.
  std::string p(path.substr(0, path.find('?')));
  if (const size_t q = path.find('?'); q != std::string_view::npos) {
    httplib::Params params;
    httplib::detail::parse_query_text(std::string(path.substr(q + 1)), params);
    p = httplib::append_query_params(p, params);
  }
  httplib::Result res = method == "GET"
                            ? impl_->client.Get(p)
                            : impl_->client.Post(p, body.is_null() ? "" : Canonicalize(body),
                                                 "application/json");
  AUTHCRED_ENFORCE(static_cast<bool>(res), ErrorCode::kIoError,
                   "node unreachable: " + httplib::to_string(res.error()));
  Response r;
  r.status = res->status;
  r.body = res->body.empty() ? Json() : ParseJson(res->body);
  return r;
}

}  // namespace authcred::node

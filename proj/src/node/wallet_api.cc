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

#include <algorithm>
#include <regex>

#include "authcred/common/bytes.h"
#include "authcred/node/client.h"

namespace authcred::node {
namespace {

using identity::Did;

std::string Field(const Json& b, const char* key) {
  AUTHCRED_ENFORCE(b.contains(key) && b.at(key).is_string(), ErrorCode::kBadRequest,
                   std::string("missing string field ") + key);
  return b.at(key).get<std::string>();
}

workflow::SubmissionId Sid(const std::string& hex) {
  Bytes b;
  try {
    b = FromHex(hex);
  } catch (const Error&) {
    b.clear();
  }
  AUTHCRED_ENFORCE(b.size() == 16, ErrorCode::kUnknownSubmission, "bad submission id " + hex);
  workflow::SubmissionId id{};
  std::copy(b.begin(), b.end(), id.begin());
  return id;
}

credentials::Challenge ChallengeOf(const std::string& b64) {
  Bytes b = Base64Decode(b64);
  AUTHCRED_ENFORCE(b.size() == 32, ErrorCode::kBadRequest, "challenge must be 32 bytes");
  credentials::Challenge c{};
  std::copy(b.begin(), b.end(), c.begin());
  return c;
}

}  // namespace

Json LocalWalletApi::Dispatch(std::string_view method, const std::string& path,
                              const Json& body, int& status) {
  static const std::regex kDid("^/wallet/([^/]+)/(credentials|sign-consent|present)$");
  status = 200;
  if (path == "/wallet/dids") {
    if (method == "GET") {
      Json dids = Json::array();
      for (const auto& d : wallet_.Dids()) dids.push_back(d.ToString());
      return Json{{"dids", dids}};
    }
    std::optional<std::string> endpoint;
    if (body.contains("service_endpoint")) endpoint = Field(body, "service_endpoint");
    auto doc = wallet_.CreateDid(clock_.Now(), endpoint);
    status = 201;
    return Json{{"did", doc.did.ToString()}, {"document", doc.ToJson()}};
  }
  std::smatch m;
  if (!std::regex_match(path, m, kDid)) {
    throw Error(ErrorCode::kNotFound, "not a wallet route: " + path);
  }
  const Did did = Did::Parse(m[1].str());
  const std::string op = m[2].str();
  if (op == "credentials" && method == "GET") {
    Json out = Json::array();
    for (const auto& vc : wallet_.Credentials(did)) {
      Json names = Json::array();
      for (const auto& c : vc.claims) names.push_back(c.name);
      out.push_back({{"id", vc.Id()},
                     {"issuer_did", vc.issuer_did.ToString()},
                     {"claim_names", names},
                     {"expires_at", vc.expires_at}});
    }
    return Json{{"credentials", out}};
  }
  AUTHCRED_ENFORCE(method == "POST", ErrorCode::kNotFound, "method not allowed");
  if (op == "credentials") {
    auto vc = credentials::VerifiableCredential::FromJson(body.at("credential"));
    wallet_.AddCredential(did, vc);
    status = 201;
    return Json{{"credential_id", vc.Id()}};
  }
  if (op == "sign-consent") {
    return wallet_
        .SignConsent(did, Sid(Field(body, "submission_id")),
                     crypto::Digest::FromHex(Field(body, "manuscript_digest")),
                     Field(body, "role"), workflow::DecisionFromName(Field(body, "decision")))
        .ToJson();
  }
  AUTHCRED_ENFORCE(body.contains("disclose") && body.at("disclose").is_array(),
                   ErrorCode::kBadRequest, "missing array field disclose");
  std::set<std::string> disclose;
  for (const auto& v : body.at("disclose")) disclose.insert(v.get<std::string>());
  return wallet_
      .Present(did, Field(body, "credential_id"), disclose,
               ChallengeOf(Field(body, "challenge")))
      .ToJson();
}

Response LocalWalletApi::Call(std::string_view method, std::string_view path,
                              const Json& body) {
  Response r;
  try {
    r.body = Dispatch(method, std::string(path.substr(0, path.find('?'))),
                      body.is_null() ? Json::object() : body, r.status);
  } catch (const Error& e) {
    r.status = StatusFor(e.code());
    r.body = Json{{"code", std::string(ErrorCodeName(e.code()))}, {"message", e.detail()}};
  } catch (const Json::exception& e) {
    r.status = 400;
    r.body = Json{{"code", "BadRequest"}, {"message", e.what()}};
  }
  return r;
}

}  // namespace authcred::node

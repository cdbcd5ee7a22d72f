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

#include "authcred/identity/did.h"

#include "authcred/common/error.h"

namespace authcred::identity {

using registry::EntryKind;

Did Did::Parse(std::string_view text) {
  AUTHCRED_ENFORCE(text.starts_with("did:"), ErrorCode::kMalformedDid,
                   "missing did: prefix");
  std::string_view rest = text.substr(4);
  size_t colon = rest.find(':');
  AUTHCRED_ENFORCE(colon != std::string_view::npos && colon > 0 &&
                       colon + 1 < rest.size(),
                   ErrorCode::kMalformedDid, "expected did:<method>:<id>");
  std::string_view method = rest.substr(0, colon);
  std::string_view id = rest.substr(colon + 1);
  for (char c : method) {
    AUTHCRED_ENFORCE((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'),
                     ErrorCode::kMalformedDid, "bad method character");
  }
  static constexpr std::string_view kAlphabet =
      "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
  for (char c : id) {
    AUTHCRED_ENFORCE(kAlphabet.find(c) != std::string_view::npos,
                     ErrorCode::kMalformedDid, "id is not base58");
  }
  return Did{std::string(method), std::string(id)};
}

Did Did::FromPublicKey(const crypto::PublicKey& key, std::string_view method) {
  crypto::Digest d = crypto::Hash(key.span());
  return Did{std::string(method), Base58Encode(d.span().first(16))};
}

Json DidDocument::ToJson() const {
  Json j = {{"did", did.ToString()},
            {"verification_key", Base64Encode(verification_key.span())},
            {"created_at", created_at}};
  if (service_endpoint) j["service_endpoint"] = *service_endpoint;
  return j;
}

DidDocument DidDocument::FromJson(const Json& j) {
  try {
    DidDocument doc;
    doc.did = Did::Parse(j.at("did").get<std::string>());
    doc.verification_key = crypto::PublicKey::FromBytes(
        Base64Decode(j.at("verification_key").get<std::string>()));
    doc.created_at = j.at("created_at").get<int64_t>();
    if (j.contains("service_endpoint")) {
      doc.service_endpoint = j.at("service_endpoint").get<std::string>();
    }
    return doc;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailure, e.detail());
  }
}

crypto::Digest DidDocument::AnchorDigest() const {
  return crypto::TaggedHash(crypto::tags::kDidDocument, Canonical());
}

bool DidDocument::IsConsistent() const {
  return created_at > 0 &&
         Did::FromPublicKey(verification_key, did.method) == did;
}

std::pair<Did, DidDocument> CreateDid(const crypto::KeyPair& keypair,
                                      std::string_view method,
                                      int64_t created_at,
                                      std::optional<std::string> service_endpoint) {
  Did did = Did::FromPublicKey(keypair.public_key, method);
  return {did, DidDocument{did, keypair.public_key, created_at,
                           std::move(service_endpoint)}};
}

registry::LedgerReceipt DidDirectory::Register(const DidDocument& doc) {
  AUTHCRED_ENFORCE(doc.IsConsistent(), ErrorCode::kInconsistentDocument,
                   "document id does not derive from its key");
  std::lock_guard lock(mu_);
  const std::string key = doc.did.ToString();
  AUTHCRED_ENFORCE(registry_.Query(EntryKind::kDidRegistration, key).empty(),
                   ErrorCode::kDuplicateDid, key + " already registered");
  store_.Put(kCollection, key, doc.Canonical());
  return registry_.AppendOne(
      {EntryKind::kDidRegistration, key, doc.AnchorDigest()});
}

bool DidDirectory::IsRegistered(const Did& did) const {
  return !registry_.Query(EntryKind::kDidRegistration, did.ToString()).empty();
}

std::pair<registry::LedgerEntry, uint64_t> DidDirectory::Registration(
    const Did& did) const {
  auto entries = registry_.Query(EntryKind::kDidRegistration, did.ToString());
  AUTHCRED_ENFORCE(!entries.empty(), ErrorCode::kNotFound,
                   did.ToString() + " is not registered");
  return entries.front();
}

DidDocument DidDirectory::Resolve(const Did& did) const {
  const std::string key = did.ToString();
  auto [entry, block] = Registration(did);
  std::optional<std::string> stored = store_.Get(kCollection, key);
  AUTHCRED_ENFORCE(stored.has_value(), ErrorCode::kAnchorMismatch,
                   "document for " + key + " missing from local store");
  AUTHCRED_ENFORCE(crypto::TaggedHash(crypto::tags::kDidDocument, *stored) ==
                       entry.payload_digest,
                   ErrorCode::kAnchorMismatch,
                   "stored document for " + key + " does not match its anchor");
  DidDocument doc;
  try {
    doc = DidDocument::FromJson(ParseCanonical(*stored));
  } catch (const Error& e) {
    throw Error(ErrorCode::kAnchorMismatch, e.detail());
  }
  AUTHCRED_ENFORCE(doc.did == did && doc.IsConsistent(),
                   ErrorCode::kAnchorMismatch, "anchored document is inconsistent");
  return doc;
}

}  // namespace authcred::identity

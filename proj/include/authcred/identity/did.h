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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "authcred/common/blob_store.h"
#include "authcred/common/canonical_json.h"
#include "authcred/crypto/crypto.h"
#include "authcred/registry/ledger.h"

namespace authcred::identity {

inline constexpr std::string_view kDidMethod = "authcred";

// did:<method>:<id>, where id = base58(SHA-256(public_key)[0..16]).
struct Did {
  std::string method;
  std::string id;

  std::string ToString() const { return "did:" + method + ":" + id; }
  static Did Parse(std::string_view text);  // kMalformedDid
  static Did FromPublicKey(const crypto::PublicKey& key,
                           std::string_view method = kDidMethod);

  auto operator<=>(const Did&) const = default;
};

struct DidDocument {
  Did did;
  crypto::PublicKey verification_key;
  int64_t created_at = 0;
  std::optional<std::string> service_endpoint;

  Json ToJson() const;
  static DidDocument FromJson(const Json& j);  // kParseFailure
  std::string Canonical() const { return Canonicalize(ToJson()); }
  // Value anchored on the ledger: hash(tag || canonical document).
  crypto::Digest AnchorDigest() const;
  // did.id derives from verification_key and created_at > 0.
  bool IsConsistent() const;
  bool operator==(const DidDocument&) const = default;
};

std::pair<Did, DidDocument> CreateDid(
    const crypto::KeyPair& keypair, std::string_view method, int64_t created_at,
    std::optional<std::string> service_endpoint = std::nullopt);

// DID registration and resolution over the trust registry. Documents live in
// a node-local BlobStore; the ledger holds only their digests.
class DidDirectory {
 public:
  static constexpr std::string_view kCollection = "dids";

  DidDirectory(registry::Registry& registry, BlobStore& store)
      : registry_(registry), store_(store) {}

  // kInconsistentDocument, kDuplicateDid.
  registry::LedgerReceipt Register(const DidDocument& doc);
  // kNotFound, kAnchorMismatch.
  DidDocument Resolve(const Did& did) const;
  DidDocument Resolve(std::string_view did) const { return Resolve(Did::Parse(did)); }
  bool IsRegistered(const Did& did) const;
  // (block_index, entry) of the registration.
  std::pair<registry::LedgerEntry, uint64_t> Registration(const Did& did) const;

 private:
  registry::Registry& registry_;
  BlobStore& store_;
  mutable std::mutex mu_;
};

}  // namespace authcred::identity

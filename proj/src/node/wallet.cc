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

#include "authcred/node/wallet.h"

#include <sodium.h>

#include <fstream>
#include <sstream>

#include "authcred/common/error.h"

namespace authcred::node {

namespace {

constexpr std::string_view kKdfName = "argon2id13";

std::array<uint8_t, 32> DeriveKey(const std::string& passphrase,
                                  const std::array<uint8_t, 16>& salt) {
  static_assert(crypto_pwhash_SALTBYTES == 16);
  std::array<uint8_t, 32> key{};
  const int rc = crypto_pwhash(key.data(), key.size(), passphrase.data(), passphrase.size(),
                               salt.data(), crypto_pwhash_OPSLIMIT_INTERACTIVE,
                               crypto_pwhash_MEMLIMIT_INTERACTIVE, crypto_pwhash_ALG_ARGON2ID13);
  AUTHCRED_ENFORCE(rc == 0, ErrorCode::kWalletLocked, "key derivation failed");
  return key;
}

}  // namespace

Wallet::Wallet(Rng& rng) : rng_(rng) { EnsureSodiumInitialized(); }

Wallet::Wallet(std::filesystem::path path, std::optional<std::string> passphrase, Rng& rng)
    : rng_(rng), path_(std::move(path)) {
  EnsureSodiumInitialized();
  AUTHCRED_ENFORCE(passphrase.has_value(), ErrorCode::kWalletLocked,
                   "wallet passphrase not configured");
  if (std::filesystem::exists(*path_)) {
    std::ifstream in(*path_, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j;
    Bytes nonce;
    Bytes box;
    try {
      j = ParseJson(ss.str());
      AUTHCRED_ENFORCE(j.at("kdf").get<std::string>() == kKdfName, ErrorCode::kWalletLocked,
                       "unknown wallet kdf");
      const Bytes salt = Base64Decode(j.at("salt").get<std::string>());
      AUTHCRED_ENFORCE(salt.size() == salt_.size(), ErrorCode::kWalletLocked, "bad salt");
      std::copy(salt.begin(), salt.end(), salt_.begin());
      nonce = Base64Decode(j.at("nonce").get<std::string>());
      box = Base64Decode(j.at("box").get<std::string>());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kWalletLocked, std::string("unreadable wallet: ") + e.what());
    }
    key_ = DeriveKey(*passphrase, salt_);
    AUTHCRED_ENFORCE(nonce.size() == crypto_secretbox_NONCEBYTES &&
                         box.size() >= crypto_secretbox_MACBYTES,
                     ErrorCode::kWalletLocked, "malformed wallet box");
    Bytes plain(box.size() - crypto_secretbox_MACBYTES);
    AUTHCRED_ENFORCE(crypto_secretbox_open_easy(plain.data(), box.data(), box.size(),
                                                nonce.data(), key_->data()) == 0,
                     ErrorCode::kWalletLocked, "wrong passphrase");
    const Json entries = ParseCanonical(ToString(plain));
    sodium_memzero(plain.data(), plain.size());
    for (const auto& e : entries) {
      const Bytes seed = Base64Decode(e.at("seed").get<std::string>());
      Entry entry{crypto::GenerateKeypair(seed), {}};
      for (const auto& vc : e.at("credentials")) {
        entry.credentials.push_back(credentials::VerifiableCredential::FromJson(vc));
      }
      entries_.emplace(identity::Did::Parse(e.at("did").get<std::string>()), std::move(entry));
    }
  } else {
    salt_ = rng_.RandomArray<16>();
    key_ = DeriveKey(*passphrase, salt_);
    Save();
  }
}

Wallet::~Wallet() {
  if (key_) sodium_memzero(key_->data(), key_->size());
}

void Wallet::Save() {
  if (!path_) return;
  Json entries = Json::array();
  for (const auto& [did, e] : entries_) {
    const auto seed = e.keypair.private_key.Seed();
    Json vcs = Json::array();
    for (const auto& vc : e.credentials) vcs.push_back(vc.ToJson());
    entries.push_back({{"did", did.ToString()}, {"seed", Base64Encode(seed)}, {"credentials", vcs}});
  }
  std::string plain = Canonicalize(entries);
  const auto nonce = rng_.RandomArray<crypto_secretbox_NONCEBYTES>();
  Bytes box(plain.size() + crypto_secretbox_MACBYTES);
  crypto_secretbox_easy(box.data(), reinterpret_cast<const uint8_t*>(plain.data()),
                        plain.size(), nonce.data(), key_->data());
  sodium_memzero(plain.data(), plain.size());

  Json j;
  j["kdf"] = kKdfName;
  j["salt"] = Base64Encode(salt_);
  j["nonce"] = Base64Encode(nonce);
  j["box"] = Base64Encode(box);
  const auto tmp = path_->string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << Canonicalize(j);
    AUTHCRED_ENFORCE(out.good(), ErrorCode::kIoError, "cannot write wallet");
  }
  std::filesystem::rename(tmp, *path_);
}

identity::DidDocument Wallet::CreateDid(int64_t created_at,
                                        std::optional<std::string> service_endpoint) {
  auto kp = crypto::GenerateKeypair(rng_);
  auto [did, doc] = identity::CreateDid(kp, identity::kDidMethod, created_at,
                                        std::move(service_endpoint));
  std::lock_guard lock(mu_);
  entries_.emplace(did, Entry{std::move(kp), {}});
  Save();
  return doc;
}

bool Wallet::Has(const identity::Did& did) const {
  std::lock_guard lock(mu_);
  return entries_.contains(did);
}

std::vector<identity::Did> Wallet::Dids() const {
  std::lock_guard lock(mu_);
  std::vector<identity::Did> out;
  for (const auto& [did, e] : entries_) out.push_back(did);
  return out;
}

const Wallet::Entry& Wallet::Get(const identity::Did& did) const {
  auto it = entries_.find(did);
  AUTHCRED_ENFORCE(it != entries_.end(), ErrorCode::kUnknownWalletDid,
                   did.ToString() + " is not held by this wallet");
  return it->second;
}

void Wallet::AddCredential(const identity::Did& holder,
                           const credentials::VerifiableCredential& vc) {
  std::lock_guard lock(mu_);
  Get(holder);
  AUTHCRED_ENFORCE(vc.subject_did == holder, ErrorCode::kBadRequest,
                   "credential subject is not the holder");
  entries_.at(holder).credentials.push_back(vc);
  Save();
}

std::vector<credentials::VerifiableCredential> Wallet::Credentials(
    const identity::Did& holder) const {
  std::lock_guard lock(mu_);
  return Get(holder).credentials;
}

workflow::ConsentRecord Wallet::SignConsent(const identity::Did& did,
                                            const workflow::SubmissionId& id,
                                            const crypto::Digest& manuscript_digest,
                                            const std::string& role,
                                            workflow::Decision decision) {
  std::lock_guard lock(mu_);
  return workflow::SignConsent(Get(did).keypair, did, id, manuscript_digest, role, decision);
}

credentials::Presentation Wallet::Present(const identity::Did& holder,
                                          const std::string& credential_id,
                                          const std::set<std::string>& disclose,
                                          const credentials::Challenge& challenge) {
  std::lock_guard lock(mu_);
  const Entry& e = Get(holder);
  for (const auto& vc : e.credentials) {
    if (vc.Id() == credential_id) {
      return credentials::CreatePresentation(vc, disclose, e.keypair, challenge);
    }
  }
  throw Error(ErrorCode::kNotFound, "no credential " + credential_id);
}

credentials::VerifiableCredential Wallet::Issue(
    const identity::Did& issuer, const identity::DidDirectory& directory,
    const identity::Did& subject,
    const std::vector<std::pair<std::string, std::string>>& claims,
    credentials::Validity validity) {
  std::lock_guard lock(mu_);
  return credentials::IssueCredential(directory, Get(issuer).keypair, issuer, subject, claims,
                                      validity, rng_);
}

}  // namespace authcred::node

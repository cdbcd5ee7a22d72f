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
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "authcred/common/clock.h"
#include "authcred/common/rng.h"
#include "authcred/credentials/credential.h"
#include "authcred/identity/did.h"
#include "authcred/workflow/submission.h"

// Key custody. Private keys are generated, stored and used only here; callers
// get DIDs, documents, signatures and presentations back.
//
// On disk (file mode) the wallet is one JSON object
//   {"box":b64,"kdf":"argon2id13","nonce":b64,"salt":b64}
// where box = secretbox(canonical JSON of the entries, key) and key =
// argon2id(passphrase, salt) at the interactive cost level.
namespace authcred::node {

class Wallet {
 public:
  // In-memory wallet.
  explicit Wallet(Rng& rng);
  // File-backed wallet; loads `path` if it exists. Errors: kWalletLocked
  // (no passphrase, or the passphrase does not open the file).
  Wallet(std::filesystem::path path, std::optional<std::string> passphrase, Rng& rng);
  ~Wallet();
  Wallet(const Wallet&) = delete;
  Wallet& operator=(const Wallet&) = delete;

  // New key pair and its DID document (not registered).
  identity::DidDocument CreateDid(int64_t created_at,
                                  std::optional<std::string> service_endpoint = std::nullopt);
  bool Has(const identity::Did& did) const;
  std::vector<identity::Did> Dids() const;

  // Errors below: kUnknownWalletDid.
  void AddCredential(const identity::Did& holder, const credentials::VerifiableCredential& vc);
  std::vector<credentials::VerifiableCredential> Credentials(const identity::Did& holder) const;

  workflow::ConsentRecord SignConsent(const identity::Did& did,
                                      const workflow::SubmissionId& id,
                                      const crypto::Digest& manuscript_digest,
                                      const std::string& role, workflow::Decision decision);

  // Errors also: kNotFound (credential id), kUnknownClaimName.
  credentials::Presentation Present(const identity::Did& holder,
                                    const std::string& credential_id,
                                    const std::set<std::string>& disclose,
                                    const credentials::Challenge& challenge);

  credentials::VerifiableCredential Issue(
      const identity::Did& issuer, const identity::DidDirectory& directory,
      const identity::Did& subject,
      const std::vector<std::pair<std::string, std::string>>& claims,
      credentials::Validity validity);

 private:
  struct Entry {
    crypto::KeyPair keypair;
    std::vector<credentials::VerifiableCredential> credentials;
  };

  const Entry& Get(const identity::Did& did) const;
  void Load();
  void Save();

  Rng& rng_;
  std::optional<std::filesystem::path> path_;
  std::optional<std::array<uint8_t, 32>> key_;
  std::array<uint8_t, 16> salt_{};
  mutable std::mutex mu_;
  std::map<identity::Did, Entry> entries_;
};

}  // namespace authcred::node

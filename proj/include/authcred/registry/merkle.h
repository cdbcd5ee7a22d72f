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

#include <span>
#include <vector>

#include "authcred/crypto/crypto.h"

// RFC 6962 style Merkle tree over entry digests:
//   leaf  = SHA-256(0x00 || entry_digest)
//   node  = SHA-256(0x01 || left || right)
//   empty = SHA-256("")
// Non power-of-two sizes split at the largest power of two below n.
namespace authcred::registry {

using crypto::Digest;

enum class Side { kLeft, kRight };

// One step of an audit path: the sibling and which side it sits on.
struct ProofStep {
  Digest sibling;
  Side side;
  bool operator==(const ProofStep&) const = default;
};

Digest MerkleLeafHash(const Digest& entry_digest);
Digest MerkleRoot(std::span<const Digest> entry_digests);
std::vector<ProofStep> MerklePath(std::span<const Digest> entry_digests,
                                  size_t index);
Digest FoldPath(const Digest& entry_digest, std::span<const ProofStep> path);

}  // namespace authcred::registry

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

#include "authcred/registry/merkle.h"

#include <cassert>

namespace authcred::registry {

namespace {

Digest NodeHash(const Digest& left, const Digest& right) {
  Bytes buf;
  buf.reserve(1 + 2 * Digest::kSize);
  buf.push_back(0x01);
  buf.insert(buf.end(), left.bytes().begin(), left.bytes().end());
  buf.insert(buf.end(), right.bytes().begin(), right.bytes().end());
  return crypto::Hash(buf);
}

size_t SplitPoint(size_t n) {
  size_t k = 1;
  while (k * 2 < n) k *= 2;
  return k;
}

Digest SubtreeRoot(std::span<const Digest> leaves) {
  if (leaves.size() == 1) return MerkleLeafHash(leaves[0]);
  size_t k = SplitPoint(leaves.size());
  return NodeHash(SubtreeRoot(leaves.first(k)), SubtreeRoot(leaves.subspan(k)));
}

void CollectPath(std::span<const Digest> leaves, size_t index,
                 std::vector<ProofStep>& out) {
  if (leaves.size() <= 1) return;
  size_t k = SplitPoint(leaves.size());
  if (index < k) {
    CollectPath(leaves.first(k), index, out);
    out.push_back({SubtreeRoot(leaves.subspan(k)), Side::kRight});
  } else {
    CollectPath(leaves.subspan(k), index - k, out);
    out.push_back({SubtreeRoot(leaves.first(k)), Side::kLeft});
  }
}

}  // namespace

Digest MerkleLeafHash(const Digest& entry_digest) {
  Bytes buf;
  buf.reserve(1 + Digest::kSize);
  buf.push_back(0x00);
  buf.insert(buf.end(), entry_digest.bytes().begin(),
             entry_digest.bytes().end());
  return crypto::Hash(buf);
}

Digest MerkleRoot(std::span<const Digest> entry_digests) {
  if (entry_digests.empty()) return crypto::Hash(ByteSpan{});
  return SubtreeRoot(entry_digests);
}

std::vector<ProofStep> MerklePath(std::span<const Digest> entry_digests,
                                  size_t index) {
  assert(index < entry_digests.size());
  std::vector<ProofStep> path;
  CollectPath(entry_digests, index, path);
  return path;
}

Digest FoldPath(const Digest& entry_digest, std::span<const ProofStep> path) {
  Digest acc = MerkleLeafHash(entry_digest);
  for (const auto& step : path) {
    acc = step.side == Side::kLeft ? NodeHash(step.sibling, acc)
                                   : NodeHash(acc, step.sibling);
  }
  return acc;
}

}  // namespace authcred::registry

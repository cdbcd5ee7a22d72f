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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "authcred/common/canonical_json.h"
#include "authcred/common/clock.h"
#include "authcred/crypto/crypto.h"
#include "authcred/registry/merkle.h"

// Tamper-evident append-only trust registry: a single-writer hash chain of
// blocks, each committing to up to 64 entries through a Merkle root.
//
// Block file format: a sequence of records `u32 big-endian length || block`,
// where block is the canonical JSON encoding of LedgerBlock::ToJson().
namespace authcred::registry {

inline constexpr size_t kMaxEntriesPerBlock = 64;

enum class EntryKind {
  kDidRegistration,
  kCredentialAnchor,
  kConsentRecord,
  kReviewAttestation,
  kCoiOutcome,
  kPublicationAnchor,
};

std::string_view EntryKindName(EntryKind kind);
EntryKind EntryKindFromName(std::string_view name);  // kParseFailure
// Kinds for which (kind, key) must be unique across the whole ledger.
bool IsUniqueKind(EntryKind kind);

struct LedgerEntry {
  EntryKind kind;
  std::string key;
  Digest payload_digest;
  int64_t recorded_at = 0;

  Json ToJson() const;
  static LedgerEntry FromJson(const Json& j);
  // hash("authcred/ledger-entry/v1" || canonical(ToJson()))
  Digest EntryDigest() const;
  bool operator==(const LedgerEntry&) const = default;
};

// What a caller supplies; the registry stamps recorded_at.
struct NewEntry {
  EntryKind kind;
  std::string key;
  Digest payload_digest;
};

struct BlockHeader {
  uint64_t index = 0;
  Digest prev_hash;
  Digest merkle_root;
  int64_t timestamp = 0;
  Digest block_hash;

  // hash("authcred/block/v1" || u64be(index) || prev_hash || merkle_root ||
  //      u64be(timestamp))
  Digest ComputeHash() const;
  Json ToJson() const;
  static BlockHeader FromJson(const Json& j);
  bool operator==(const BlockHeader&) const = default;
};

struct LedgerBlock {
  BlockHeader header;
  std::vector<LedgerEntry> entries;

  std::vector<Digest> EntryDigests() const;
  Json ToJson() const;
  static LedgerBlock FromJson(const Json& j);
};

struct InclusionProof {
  Digest entry_digest;
  std::vector<ProofStep> sibling_path;
  uint64_t block_index = 0;

  Json ToJson() const;
  static InclusionProof FromJson(const Json& j);
  bool operator==(const InclusionProof&) const = default;
};

struct LedgerReceipt {
  uint64_t block_index = 0;
  Digest entry_digest;
  InclusionProof proof;
  Digest block_hash;

  Json ToJson() const;
  static LedgerReceipt FromJson(const Json& j);
};

struct ChainReport {
  bool ok = true;
  uint64_t blocks_checked = 0;
  std::optional<uint64_t> first_bad_block;
  std::string reason;

  Json ToJson() const;
};

// Header-only chain check: indices are 0..n-1, block 0 has a zero prev_hash,
// every block_hash recomputes, every prev_hash links, timestamps never
// decrease.
ChainReport VerifyHeaders(std::span<const BlockHeader> headers);

// Full check over parsed blocks (headers plus Merkle roots).
ChainReport VerifyBlocks(std::span<const LedgerBlock> blocks);

// Parses and checks a raw block file image. Any framing, parse or
// non-canonical encoding failure is reported at the record where it occurs.
ChainReport VerifyBlockFile(ByteSpan file_bytes);
ChainReport AuditBlockFile(const std::filesystem::path& path);

// Reader-side proof check: `headers` must form a valid chain whose last
// block_hash equals `trusted_head`, and folding the path from the entry
// digest must reproduce that block's merkle_root.
bool VerifyInclusion(const InclusionProof& proof, const Digest& trusted_head,
                     std::span<const BlockHeader> headers);
// Same, without the chain check (caller has already validated the headers).
bool VerifyInclusionInBlock(const InclusionProof& proof,
                            std::span<const BlockHeader> headers);

class Registry {
 public:
  // In-memory registry with a freshly minted genesis block.
  static std::unique_ptr<Registry> CreateInMemory(Clock& clock);
  // File-backed registry: loads `path` if present (throws kCorruptLedger if
  // it does not verify), otherwise writes a new genesis block.
  static std::unique_ptr<Registry> Open(const std::filesystem::path& path,
                                        Clock& clock);

  // Appends one block holding `entries` (1..=64). Throws kEmptyBatch,
  // kBatchTooLarge, kUniquenessViolation.
  std::vector<LedgerReceipt> Append(const std::vector<NewEntry>& entries);
  LedgerReceipt AppendOne(const NewEntry& entry) { return Append({entry})[0]; }

  ChainReport VerifyChain() const;

  // kEntryNotFound when the digest is not in that block.
  InclusionProof ProveInclusion(uint64_t block_index,
                                const Digest& entry_digest) const;
  std::vector<std::pair<LedgerEntry, uint64_t>> Query(
      EntryKind kind, std::string_view key) const;
  // The entry with this digest and its block index.
  std::optional<std::pair<LedgerEntry, uint64_t>> FindByDigest(
      const Digest& entry_digest) const;

  std::vector<BlockHeader> Headers() const;
  LedgerBlock Block(uint64_t index) const;  // kBlockNotFound
  Digest HeadHash() const;
  uint64_t Height() const;  // number of blocks including genesis
  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  Registry(Clock& clock, std::optional<std::filesystem::path> path);
  void Index(const LedgerBlock& block);
  void Persist(const LedgerBlock& block);
  LedgerBlock MakeBlock(std::vector<LedgerEntry> entries, int64_t timestamp) const;

  Clock& clock_;
  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mu_;
  std::vector<LedgerBlock> blocks_;
  std::map<std::pair<EntryKind, std::string>,
           std::vector<std::pair<uint64_t, size_t>>>
      by_key_;
  std::map<Digest, std::pair<uint64_t, size_t>> by_digest_;
};

// Encodes one block record (length prefix + canonical JSON).
Bytes EncodeBlockRecord(const LedgerBlock& block);

}  // namespace authcred::registry

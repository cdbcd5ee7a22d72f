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

#include "authcred/registry/ledger.h"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <iterator>
#include <mutex>
#include <set>

#include "authcred/common/error.h"

namespace authcred::registry {

namespace {

constexpr std::pair<EntryKind, std::string_view> kKindNames[] = {
    {EntryKind::kDidRegistration, "DidRegistration"},
    {EntryKind::kCredentialAnchor, "CredentialAnchor"},
    {EntryKind::kConsentRecord, "ConsentRecord"},
    {EntryKind::kReviewAttestation, "ReviewAttestation"},
    {EntryKind::kCoiOutcome, "CoiOutcome"},
    {EntryKind::kPublicationAnchor, "PublicationAnchor"},
};

Digest DigestField(const Json& j, const char* name) {
  return Digest::FromHex(j.at(name).get<std::string>());
}

// Wraps nlohmann access errors (missing key, wrong type) as kParseFailure.
template <typename Fn>
auto Parsing(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseFailure) throw;
    throw Error(ErrorCode::kParseFailure, e.detail());
  }
}

ChainReport Fail(ChainReport report, uint64_t index, std::string reason) {
  report.ok = false;
  report.first_bad_block = index;
  report.reason = std::move(reason);
  return report;
}

}  // namespace

std::string_view EntryKindName(EntryKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

EntryKind EntryKindFromName(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw Error(ErrorCode::kParseFailure,
              "unknown entry kind '" + std::string(name) + "'");
}

bool IsUniqueKind(EntryKind kind) {
  return kind == EntryKind::kDidRegistration ||
         kind == EntryKind::kPublicationAnchor;
}

Json LedgerEntry::ToJson() const {
  return {{"kind", EntryKindName(kind)},
          {"key", key},
          {"payload_digest", payload_digest.ToHex()},
          {"recorded_at", recorded_at}};
}

LedgerEntry LedgerEntry::FromJson(const Json& j) {
  return Parsing([&] {
    AUTHCRED_ENFORCE(j.is_object() && j.size() == 4, ErrorCode::kParseFailure,
                     "ledger entry must have exactly 4 fields");
    return LedgerEntry{EntryKindFromName(j.at("kind").get<std::string>()),
                       j.at("key").get<std::string>(),
                       DigestField(j, "payload_digest"),
                       j.at("recorded_at").get<int64_t>()};
  });
}

Digest LedgerEntry::EntryDigest() const {
  return crypto::TaggedHash(crypto::tags::kLedgerEntry, Canonicalize(ToJson()));
}

Digest BlockHeader::ComputeHash() const {
  Bytes buf;
  AppendU64BE(buf, index);
  buf.insert(buf.end(), prev_hash.bytes().begin(), prev_hash.bytes().end());
  buf.insert(buf.end(), merkle_root.bytes().begin(), merkle_root.bytes().end());
  AppendU64BE(buf, static_cast<uint64_t>(timestamp));
  return crypto::TaggedHash(crypto::tags::kBlock, buf);
}

Json BlockHeader::ToJson() const {
  return {{"index", index},
          {"prev_hash", prev_hash.ToHex()},
          {"merkle_root", merkle_root.ToHex()},
          {"timestamp", timestamp},
          {"block_hash", block_hash.ToHex()}};
}

BlockHeader BlockHeader::FromJson(const Json& j) {
  return Parsing([&] {
    return BlockHeader{j.at("index").get<uint64_t>(),
                       DigestField(j, "prev_hash"),
                       DigestField(j, "merkle_root"),
                       j.at("timestamp").get<int64_t>(),
                       DigestField(j, "block_hash")};
  });
}

std::vector<Digest> LedgerBlock::EntryDigests() const {
  std::vector<Digest> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.EntryDigest());
  return out;
}

Json LedgerBlock::ToJson() const {
  Json j = header.ToJson();
  Json list = Json::array();
  for (const auto& e : entries) list.push_back(e.ToJson());
  j["entries"] = std::move(list);
  return j;
}

LedgerBlock LedgerBlock::FromJson(const Json& j) {
  return Parsing([&] {
    AUTHCRED_ENFORCE(j.is_object() && j.size() == 6, ErrorCode::kParseFailure,
                     "block must have exactly 6 fields");
    LedgerBlock block{BlockHeader::FromJson(j), {}};
    for (const auto& e : j.at("entries")) {
      block.entries.push_back(LedgerEntry::FromJson(e));
    }
    return block;
  });
}

Json InclusionProof::ToJson() const {
  Json path = Json::array();
  for (const auto& step : sibling_path) {
    path.push_back({{"sibling", step.sibling.ToHex()},
                    {"side", step.side == Side::kLeft ? "left" : "right"}});
  }
  return {{"entry_digest", entry_digest.ToHex()},
          {"sibling_path", std::move(path)},
          {"block_index", block_index}};
}

InclusionProof InclusionProof::FromJson(const Json& j) {
  return Parsing([&] {
    InclusionProof p;
    p.entry_digest = DigestField(j, "entry_digest");
    p.block_index = j.at("block_index").get<uint64_t>();
    for (const auto& step : j.at("sibling_path")) {
      std::string side = step.at("side").get<std::string>();
      AUTHCRED_ENFORCE(side == "left" || side == "right",
                       ErrorCode::kParseFailure, "bad proof side");
      p.sibling_path.push_back(
          {DigestField(step, "sibling"),
           side == "left" ? Side::kLeft : Side::kRight});
    }
    return p;
  });
}

Json LedgerReceipt::ToJson() const {
  return {{"block_index", block_index},
          {"entry_digest", entry_digest.ToHex()},
          {"proof", proof.ToJson()},
          {"block_hash", block_hash.ToHex()}};
}

LedgerReceipt LedgerReceipt::FromJson(const Json& j) {
  return Parsing([&] {
    return LedgerReceipt{j.at("block_index").get<uint64_t>(),
                         DigestField(j, "entry_digest"),
                         InclusionProof::FromJson(j.at("proof")),
                         DigestField(j, "block_hash")};
  });
}

Json ChainReport::ToJson() const {
  Json j = {{"ok", ok}, {"blocks_checked", blocks_checked}};
  if (first_bad_block) j["first_bad_block"] = *first_bad_block;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

namespace {

// Checks header i against its predecessor; returns an empty string if fine.
std::string CheckHeader(const BlockHeader& h, const BlockHeader* prev,
                        uint64_t i) {
  if (h.index != i) return "index out of sequence";
  const Digest expected_prev = prev ? prev->block_hash : Digest::Zero();
  if (h.prev_hash != expected_prev) return "prev_hash does not link";
  if (prev && h.timestamp < prev->timestamp) return "timestamp decreased";
  if (h.ComputeHash() != h.block_hash) return "block_hash does not recompute";
  return {};
}

}  // namespace

ChainReport VerifyHeaders(std::span<const BlockHeader> headers) {
  ChainReport report;
  if (headers.empty()) return Fail(report, 0, "no genesis block");
  for (size_t i = 0; i < headers.size(); ++i) {
    std::string why = CheckHeader(headers[i], i ? &headers[i - 1] : nullptr, i);
    if (!why.empty()) return Fail(report, i, why);
    report.blocks_checked = i + 1;
  }
  return report;
}

ChainReport VerifyBlocks(std::span<const LedgerBlock> blocks) {
  ChainReport report;
  if (blocks.empty()) return Fail(report, 0, "no genesis block");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const LedgerBlock& b = blocks[i];
    if (i > 0 && (b.entries.empty() || b.entries.size() > kMaxEntriesPerBlock)) {
      return Fail(report, i, "entry count out of range");
    }
    std::string why =
        CheckHeader(b.header, i ? &blocks[i - 1].header : nullptr, i);
    if (!why.empty()) return Fail(report, i, why);
    if (MerkleRoot(b.EntryDigests()) != b.header.merkle_root) {
      return Fail(report, i, "merkle_root does not recompute");
    }
    report.blocks_checked = i + 1;
  }
  return report;
}

namespace {

// Parses a block file image. Stops at the first bad record and reports it.
std::vector<LedgerBlock> ParseBlockFile(ByteSpan bytes, ChainReport& report) {
  std::vector<LedgerBlock> blocks;
  size_t pos = 0;
  while (pos < bytes.size()) {
    const uint64_t index = blocks.size();
    if (bytes.size() - pos < 4) {
      report = Fail(report, index, "truncated length prefix");
      return blocks;
    }
    uint32_t len = (uint32_t{bytes[pos]} << 24) | (uint32_t{bytes[pos + 1]} << 16) |
                   (uint32_t{bytes[pos + 2]} << 8) | uint32_t{bytes[pos + 3]};
    pos += 4;
    if (len == 0 || bytes.size() - pos < len) {
      report = Fail(report, index, "record length exceeds file");
      return blocks;
    }
    std::string_view text(reinterpret_cast<const char*>(bytes.data() + pos), len);
    pos += len;
    try {
      blocks.push_back(LedgerBlock::FromJson(ParseCanonical(text)));
    } catch (const Error& e) {
      report = Fail(report, index, "unparseable block: " + e.detail());
      return blocks;
    }
  }
  return blocks;
}

}  // namespace

ChainReport VerifyBlockFile(ByteSpan file_bytes) {
  ChainReport parse_report;
  std::vector<LedgerBlock> blocks = ParseBlockFile(file_bytes, parse_report);
  ChainReport report = VerifyBlocks(blocks);
  if (!parse_report.ok && (report.ok || *report.first_bad_block >= blocks.size())) {
    parse_report.blocks_checked = blocks.size();
    return parse_report;
  }
  return report;
}

ChainReport AuditBlockFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ChainReport r;
    return Fail(r, 0, "cannot open " + path.string());
  }
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return VerifyBlockFile(bytes);
}

bool VerifyInclusionInBlock(const InclusionProof& proof,
                            std::span<const BlockHeader> headers) {
  if (proof.block_index >= headers.size()) return false;
  if (proof.sibling_path.size() > 6) return false;
  return FoldPath(proof.entry_digest, proof.sibling_path) ==
         headers[proof.block_index].merkle_root;
}

bool VerifyInclusion(const InclusionProof& proof, const Digest& trusted_head,
                     std::span<const BlockHeader> headers) {
  if (headers.empty() || headers.back().block_hash != trusted_head) return false;
  if (!VerifyHeaders(headers).ok) return false;
  return VerifyInclusionInBlock(proof, headers);
}

Bytes EncodeBlockRecord(const LedgerBlock& block) {
  std::string text = Canonicalize(block.ToJson());
  Bytes out;
  out.reserve(4 + text.size());
  uint32_t len = static_cast<uint32_t>(text.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(len >> shift));
  }
  out.insert(out.end(), text.begin(), text.end());
  return out;
}

Registry::Registry(Clock& clock, std::optional<std::filesystem::path> path)
    : clock_(clock), path_(std::move(path)) {}

LedgerBlock Registry::MakeBlock(std::vector<LedgerEntry> entries,
                                int64_t timestamp) const {
  LedgerBlock block;
  block.header.index = blocks_.size();
  block.header.prev_hash =
      blocks_.empty() ? Digest::Zero() : blocks_.back().header.block_hash;
  block.header.timestamp = timestamp;
  block.entries = std::move(entries);
  block.header.merkle_root = MerkleRoot(block.EntryDigests());
  block.header.block_hash = block.header.ComputeHash();
  return block;
}

std::unique_ptr<Registry> Registry::CreateInMemory(Clock& clock) {
  std::unique_ptr<Registry> r(new Registry(clock, std::nullopt));
  LedgerBlock genesis = r->MakeBlock({}, clock.Now());
  r->Index(genesis);
  r->blocks_.push_back(std::move(genesis));
  return r;
}

std::unique_ptr<Registry> Registry::Open(const std::filesystem::path& path,
                                         Clock& clock) {
  std::unique_ptr<Registry> r(new Registry(clock, path));
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    Bytes bytes((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
    ChainReport report;
    std::vector<LedgerBlock> blocks = ParseBlockFile(bytes, report);
    if (report.ok) report = VerifyBlocks(blocks);
    AUTHCRED_ENFORCE(report.ok, ErrorCode::kCorruptLedger,
                     "block " + std::to_string(report.first_bad_block.value_or(0)) +
                         ": " + report.reason);
    for (auto& b : blocks) {
      r->Index(b);
      r->blocks_.push_back(std::move(b));
    }
  } else {
    LedgerBlock genesis = r->MakeBlock({}, clock.Now());
    r->Persist(genesis);
    r->Index(genesis);
    r->blocks_.push_back(std::move(genesis));
  }
  return r;
}

void Registry::Index(const LedgerBlock& block) {
  for (size_t i = 0; i < block.entries.size(); ++i) {
    const LedgerEntry& e = block.entries[i];
    by_key_[{e.kind, e.key}].emplace_back(block.header.index, i);
    by_digest_.emplace(e.EntryDigest(), std::make_pair(block.header.index, i));
  }
}

void Registry::Persist(const LedgerBlock& block) {
  if (!path_) return;
  Bytes record = EncodeBlockRecord(block);
  int fd = ::open(path_->c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  AUTHCRED_ENFORCE(fd >= 0, ErrorCode::kIoError, "cannot open " + path_->string());
  size_t written = 0;
  while (written < record.size()) {
    ssize_t n = ::write(fd, record.data() + written, record.size() - written);
    if (n <= 0) {
      ::close(fd);
      throw Error(ErrorCode::kIoError, "short write to " + path_->string());
    }
    written += static_cast<size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

std::vector<LedgerReceipt> Registry::Append(const std::vector<NewEntry>& entries) {
  AUTHCRED_ENFORCE(!entries.empty(), ErrorCode::kEmptyBatch, "no entries");
  AUTHCRED_ENFORCE(entries.size() <= kMaxEntriesPerBlock, ErrorCode::kBatchTooLarge,
                   std::to_string(entries.size()) + " entries exceeds 64");
  std::unique_lock lock(mu_);

  const int64_t timestamp =
      std::max(clock_.Now(), blocks_.back().header.timestamp);
  std::vector<LedgerEntry> stamped;
  std::set<std::pair<EntryKind, std::string>> batch_keys;
  std::set<Digest> batch_digests;
  for (const auto& e : entries) {
    if (IsUniqueKind(e.kind)) {
      AUTHCRED_ENFORCE(!by_key_.contains({e.kind, e.key}) &&
                           batch_keys.insert({e.kind, e.key}).second,
                       ErrorCode::kUniquenessViolation,
                       std::string(EntryKindName(e.kind)) + " already recorded for " + e.key);
    }
    LedgerEntry entry{e.kind, e.key, e.payload_digest, timestamp};
    Digest d = entry.EntryDigest();
    AUTHCRED_ENFORCE(!by_digest_.contains(d) && batch_digests.insert(d).second,
                     ErrorCode::kUniquenessViolation, "identical entry already recorded");
    stamped.push_back(std::move(entry));
  }

  LedgerBlock block = MakeBlock(std::move(stamped), timestamp);
  Persist(block);
  Index(block);

  std::vector<Digest> digests = block.EntryDigests();
  std::vector<LedgerReceipt> receipts;
  for (size_t i = 0; i < digests.size(); ++i) {
    InclusionProof proof{digests[i], MerklePath(digests, i), block.header.index};
    receipts.push_back({block.header.index, digests[i], std::move(proof),
                        block.header.block_hash});
  }
  blocks_.push_back(std::move(block));
  return receipts;
}

ChainReport Registry::VerifyChain() const {
  std::shared_lock lock(mu_);
  ChainReport report = VerifyBlocks(blocks_);
  if (!report.ok || !path_) return report;
  // The persisted image is the artifact auditors see; check it too.
  return AuditBlockFile(*path_);
}

InclusionProof Registry::ProveInclusion(uint64_t block_index,
                                        const Digest& entry_digest) const {
  std::shared_lock lock(mu_);
  auto it = by_digest_.find(entry_digest);
  AUTHCRED_ENFORCE(it != by_digest_.end() && it->second.first == block_index,
                   ErrorCode::kEntryNotFound,
                   "entry " + entry_digest.ToHex() + " not in block " +
                       std::to_string(block_index));
  std::vector<Digest> digests = blocks_[block_index].EntryDigests();
  return {entry_digest, MerklePath(digests, it->second.second), block_index};
}

std::vector<std::pair<LedgerEntry, uint64_t>> Registry::Query(
    EntryKind kind, std::string_view key) const {
  std::shared_lock lock(mu_);
  std::vector<std::pair<LedgerEntry, uint64_t>> out;
  auto it = by_key_.find({kind, std::string(key)});
  if (it == by_key_.end()) return out;
  for (const auto& [block, idx] : it->second) {
    out.emplace_back(blocks_[block].entries[idx], block);
  }
  return out;
}

std::optional<std::pair<LedgerEntry, uint64_t>> Registry::FindByDigest(
    const Digest& entry_digest) const {
  std::shared_lock lock(mu_);
  auto it = by_digest_.find(entry_digest);
  if (it == by_digest_.end()) return std::nullopt;
  const auto& [block, idx] = it->second;
  return std::make_pair(blocks_[block].entries[idx], block);
}

std::vector<BlockHeader> Registry::Headers() const {
  std::shared_lock lock(mu_);
  std::vector<BlockHeader> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.header);
  return out;
}

LedgerBlock Registry::Block(uint64_t index) const {
  std::shared_lock lock(mu_);
  AUTHCRED_ENFORCE(index < blocks_.size(), ErrorCode::kBlockNotFound,
                   "no block " + std::to_string(index));
  return blocks_[index];
}

Digest Registry::HeadHash() const {
  std::shared_lock lock(mu_);
  return blocks_.back().header.block_hash;
}

uint64_t Registry::Height() const {
  std::shared_lock lock(mu_);
  return blocks_.size();
}

}  // namespace authcred::registry

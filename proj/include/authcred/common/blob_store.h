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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Node-local document persistence (DID documents, submissions, transcripts).
// Only digests of these documents go on the ledger; the store itself is not
// trusted and every read is re-checked against an anchor by the caller.
namespace authcred {

class BlobStore {
 public:
  virtual ~BlobStore() = default;
  virtual void Put(std::string_view collection, std::string_view key,
                   std::string_view bytes) = 0;
  virtual std::optional<std::string> Get(std::string_view collection,
                                         std::string_view key) const = 0;
  // Stored names in lexicographic order (sanitized keys for FileBlobStore).
  virtual std::vector<std::string> List(std::string_view collection) const = 0;
};

class MemoryBlobStore : public BlobStore {
 public:
  void Put(std::string_view collection, std::string_view key,
           std::string_view bytes) override;
  std::optional<std::string> Get(std::string_view collection,
                                 std::string_view key) const override;
  std::vector<std::string> List(std::string_view collection) const override;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::map<std::string, std::string>> data_;
};

// Stores each blob as `<root>/<collection>/<key>.json`, with ':' and '/' in
// keys replaced by '_'. Writes go through a temp file and rename.
class FileBlobStore : public BlobStore {
 public:
  explicit FileBlobStore(std::filesystem::path root);
  void Put(std::string_view collection, std::string_view key,
           std::string_view bytes) override;
  std::optional<std::string> Get(std::string_view collection,
                                 std::string_view key) const override;
  std::vector<std::string> List(std::string_view collection) const override;

  std::filesystem::path PathFor(std::string_view collection,
                                std::string_view key) const;

 private:
  std::filesystem::path root_;
  mutable std::mutex mu_;
};

}  // namespace authcred

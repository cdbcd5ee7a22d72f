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

#include "authcred/common/blob_store.h"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "authcred/common/error.h"

namespace authcred {

namespace fs = std::filesystem;

void MemoryBlobStore::Put(std::string_view collection, std::string_view key,
                          std::string_view bytes) {
  std::lock_guard lock(mu_);
  data_[std::string(collection)][std::string(key)] = std::string(bytes);
}

std::optional<std::string> MemoryBlobStore::Get(std::string_view collection,
                                                std::string_view key) const {
  std::lock_guard lock(mu_);
  auto c = data_.find(std::string(collection));
  if (c == data_.end()) return std::nullopt;
  auto it = c->second.find(std::string(key));
  if (it == c->second.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> MemoryBlobStore::List(std::string_view collection) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> keys;
  auto c = data_.find(std::string(collection));
  if (c == data_.end()) return keys;
  for (const auto& [k, v] : c->second) keys.push_back(k);
  return keys;
}

FileBlobStore::FileBlobStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

fs::path FileBlobStore::PathFor(std::string_view collection,
                                std::string_view key) const {
  std::string name(key);
  std::replace(name.begin(), name.end(), ':', '_');
  std::replace(name.begin(), name.end(), '/', '_');
  return root_ / std::string(collection) / (name + ".json");
}

void FileBlobStore::Put(std::string_view collection, std::string_view key,
                        std::string_view bytes) {
  std::lock_guard lock(mu_);
  fs::path target = PathFor(collection, key);
  fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    AUTHCRED_ENFORCE(out.good(), ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    AUTHCRED_ENFORCE(out.good(), ErrorCode::kIoError, "short write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<std::string> FileBlobStore::Get(std::string_view collection,
                                              std::string_view key) const {
  std::lock_guard lock(mu_);
  std::ifstream in(PathFor(collection, key), std::ios::binary);
  if (!in) return std::nullopt;
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::vector<std::string> FileBlobStore::List(std::string_view collection) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> keys;
  fs::path dir = root_ / std::string(collection);
  if (!fs::exists(dir)) return keys;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    keys.push_back(entry.path().stem().string());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace authcred

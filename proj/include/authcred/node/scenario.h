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

#include <functional>
#include <string>

#include "authcred/common/canonical_json.h"
#include "authcred/node/client.h"

// The reference end-to-end run: authors A, B, C and reviewers R1, R2.
// C denies, is removed by the editor, re-listed and then grants. R1 shares
// no affiliation with the authors; R2 shares B's and is flagged. R1 reviews,
// the editor accepts, the journal publishes and a reader verifies.
//
// The scenario talks to a node only through Api, so the same code drives an
// in-process router or a remote node over HTTP.
namespace authcred::node {

struct DemoResult {
  std::string head_hash;
  std::string submission_id;
  uint64_t height = 0;
  Json publication_report;
  Json publication;
};

using DemoLog = std::function<void(const std::string&)>;

DemoResult RunDemo(Api& api, const DemoLog& log = {});

}  // namespace authcred::node

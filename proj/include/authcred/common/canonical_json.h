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

#include <string>
#include <string_view>

#include "json.hpp"

namespace authcred {

using Json = nlohmann::json;

// Canonical JSON profile used for every digest and signature input:
//   - object keys sorted by UTF-8 byte order (nlohmann's std::map ordering),
//   - no insignificant whitespace,
//   - integers in base 10, no floating point values at all,
//   - binary fields carried as base64 or lowercase hex strings by callers.
// Throws kBadEncoding if the value contains a float.
std::string Canonicalize(const Json& value);

// Parses `text` and requires it to be in canonical form already (re-encoding
// must reproduce the input byte for byte). Throws kParseFailure otherwise.
Json ParseCanonical(std::string_view text);

// Lenient parse for request bodies; throws kParseFailure on syntax errors.
Json ParseJson(std::string_view text);

}  // namespace authcred

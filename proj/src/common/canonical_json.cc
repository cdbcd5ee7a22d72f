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

#include "authcred/common/canonical_json.h"

#include "authcred/common/error.h"

namespace authcred {

namespace {

void RejectFloats(const Json& value) {
  switch (value.type()) {
    case Json::value_t::number_float:
      throw Error(ErrorCode::kBadEncoding,
                  "floating point values are not canonical");
    case Json::value_t::object:
    case Json::value_t::array:
      for (const auto& item : value) RejectFloats(item);
      break;
    default:
      break;
  }
}

}  // namespace

std::string Canonicalize(const Json& value) {
  RejectFloats(value);
  return value.dump(-1, ' ', false, Json::error_handler_t::strict);
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    // Parser messages quote the input, which may not be UTF-8.
    std::string msg;
    for (unsigned char c : std::string_view(e.what())) {
      if (c >= 0x20 && c < 0x7f) {
        msg += static_cast<char>(c);
      } else {
        static constexpr char kHex[] = "0123456789abcdef";
        msg += "\\x";
        msg += kHex[c >> 4];
        msg += kHex[c & 15];
      }
    }
    throw Error(ErrorCode::kParseFailure, msg);
  }
}

Json ParseCanonical(std::string_view text) {
  Json value = ParseJson(text);
  std::string again;
  try {
    again = Canonicalize(value);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailure, e.detail());
  }
  AUTHCRED_ENFORCE(again == text, ErrorCode::kParseFailure,
                   "document is not in canonical form");
  return value;
}

}  // namespace authcred

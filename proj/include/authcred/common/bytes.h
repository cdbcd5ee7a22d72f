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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authcred {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes ToBytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string ToString(ByteSpan b) {
  return std::string(b.begin(), b.end());
}

// Lowercase hex. FromHex rejects uppercase digits so that every byte string
// has exactly one accepted encoding.
std::string ToHex(ByteSpan bytes);
Bytes FromHex(std::string_view hex);

// RFC 4648 base64 with padding. Decoding is strict: non-canonical inputs
// (stray bits in the final quantum, missing padding) are rejected.
std::string Base64Encode(ByteSpan bytes);
Bytes Base64Decode(std::string_view text);

// Bitcoin-alphabet base58.
std::string Base58Encode(ByteSpan bytes);

template <typename... Parts>
Bytes Concat(const Parts&... parts) {
  Bytes out;
  (out.insert(out.end(), std::begin(parts), std::end(parts)), ...);
  return out;
}

void AppendU64BE(Bytes& out, uint64_t v);

}  // namespace authcred

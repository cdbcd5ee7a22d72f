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

#include "authcred/common/rng.h"

#include <sodium.h>

#include <chrono>
#include <cstdlib>

#include "authcred/common/clock.h"

namespace authcred {

void EnsureSodiumInitialized() {
  static const bool ok = [] { return sodium_init() >= 0; }();
  if (!ok) std::abort();
}

int64_t SystemClock::Now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

uint64_t Rng::Uniform(uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection sampling to avoid modulo bias.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    std::array<uint8_t, 8> raw = RandomArray<8>();
    uint64_t v = 0;
    for (uint8_t b : raw) v = (v << 8) | b;
    if (v < limit) return v % bound;
  }
}

void SystemRng::Fill(std::span<uint8_t> out) {
  EnsureSodiumInitialized();
  randombytes_buf(out.data(), out.size());
}

DeterministicRng DeterministicRng::FromU64(uint64_t seed) {
  return DeterministicRng(SeedFromU64(seed));
}

std::array<uint8_t, 32> DeterministicRng::SeedFromU64(uint64_t seed) {
  Bytes tagged = ToBytes("authcred/rng/v1");
  AppendU64BE(tagged, seed);
  std::array<uint8_t, 32> key;
  crypto_hash_sha256(key.data(), tagged.data(), tagged.size());
  return key;
}

void DeterministicRng::Fill(std::span<uint8_t> out) {
  std::lock_guard<std::mutex> lock(mu_);
  Bytes material(seed_.begin(), seed_.end());
  AppendU64BE(material, counter_++);
  std::array<uint8_t, randombytes_SEEDBYTES> call_seed;
  crypto_hash_sha256(call_seed.data(), material.data(), material.size());
  randombytes_buf_deterministic(out.data(), out.size(), call_seed.data());
}

}  // namespace authcred

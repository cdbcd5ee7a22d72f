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

#include <array>
#include <cstdint>
#include <mutex>
#include <span>

#include "authcred/common/bytes.h"

namespace authcred {

// Idempotent libsodium initialization; aborts if the library is unusable.
void EnsureSodiumInitialized();

// Byte source for keys, salts, scalars, identifiers and shuffles.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void Fill(std::span<uint8_t> out) = 0;

  Bytes RandomBytes(size_t n) {
    Bytes out(n);
    Fill(out);
    return out;
  }
  template <size_t N>
  std::array<uint8_t, N> RandomArray() {
    std::array<uint8_t, N> out;
    Fill(out);
    return out;
  }
  // Uniform in [0, bound).
  uint64_t Uniform(uint64_t bound);

  // Fisher-Yates driven by this source.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Uniform(i);
      std::swap(items[i - 1], items[j]);
    }
  }
};

// OS entropy (libsodium randombytes).
class SystemRng : public Rng {
 public:
  void Fill(std::span<uint8_t> out) override;
};

// Reproducible stream keyed by a 32-byte seed. Thread-safe; the output
// sequence depends only on the seed and the order of Fill calls.
class DeterministicRng : public Rng {
 public:
  explicit DeterministicRng(std::array<uint8_t, 32> seed) : seed_(seed) {}
  static DeterministicRng FromU64(uint64_t seed);
  static std::array<uint8_t, 32> SeedFromU64(uint64_t seed);
  void Fill(std::span<uint8_t> out) override;

 private:
  std::mutex mu_;
  std::array<uint8_t, 32> seed_;
  uint64_t counter_ = 0;
};

}  // namespace authcred

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

#include <atomic>
#include <cstdint>

namespace authcred {

// UTC seconds source. Deterministic runs inject a StepClock.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual int64_t Now() = 0;
};

class SystemClock : public Clock {
 public:
  int64_t Now() override;
};

// Returns start, start + step, start + 2*step, ... on successive calls.
class StepClock : public Clock {
 public:
  explicit StepClock(int64_t start, int64_t step = 1)
      : next_(start), step_(step) {}
  int64_t Now() override { return next_.fetch_add(step_); }
  // Peek without advancing.
  int64_t Peek() const { return next_.load(); }
  void Set(int64_t t) { next_.store(t); }

 private:
  std::atomic<int64_t> next_;
  int64_t step_;
};

constexpr int64_t kSecondsPerDay = 86400;

}  // namespace authcred

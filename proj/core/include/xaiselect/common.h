// Copyright 2026 The xaiselect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XAISELECT_COMMON_H_
#define XAISELECT_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xaiselect {

enum class Task { kRegression, kClassification };

std::string ToString(Task task);
Task ParseTask(const std::string& text);

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input files, malformed configs, out-of-domain hyperparameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Numerical failure while computing (divergence, singular systems).
class ComputeFailure : public Error {
 public:
  using Error::Error;
};

// Deterministic seed derivation for per-item random streams. Mixing is
// splitmix64 so nearby (seed, index) pairs give unrelated streams.
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace xaiselect

#endif  // XAISELECT_COMMON_H_

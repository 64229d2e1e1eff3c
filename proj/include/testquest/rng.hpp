// Copyright 2026 The TestQuest Authors
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

#ifndef TESTQUEST_RNG_HPP_
#define TESTQUEST_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace testquest {

// Explicitly seeded random source. The std distributions are not portable
// across standard libraries, so the mapping from engine output to doubles
// and indices is done here; the same seed gives the same draws everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();

  // Uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit hash of a string (FNV-1a). Used where std::hash would make
// results depend on the standard library build.
std::uint64_t stable_hash(std::string_view text);

// Mixes a base seed with a salt (for example a user id) so independent
// streams can be derived from one run seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view salt);

}  // namespace testquest

#endif  // TESTQUEST_RNG_HPP_

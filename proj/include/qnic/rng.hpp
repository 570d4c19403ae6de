// Copyright 2026 The qnic authors
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

#ifndef QNIC_RNG_HPP
#define QNIC_RNG_HPP

#include <cstdint>
#include <random>

namespace qnic {

// std::uniform_real_distribution is not pinned across standard library
// implementations, so uniform doubles are derived from the raw mt19937_64
// stream (which the standard does pin). Seeded results are reproducible
// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, hi).
  double next_in(double hi) { return next_unit() * hi; }

  /// Fair coin from the top bit.
  int next_bit() { return static_cast<int>(engine_() >> 63); }

  std::mt19937_64 &engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qnic

#endif  // QNIC_RNG_HPP

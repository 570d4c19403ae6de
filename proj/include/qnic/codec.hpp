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

#ifndef QNIC_CODEC_HPP
#define QNIC_CODEC_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace qnic {

/// Real amplitude vector over the computational basis. Length must be a
/// power of two for encodable samples; freshly encoded states are unit norm.
using StateVector = std::vector<double>;

/// One flattened image: row-major pixels in [0,1], length = side*side.
struct ImageSample {
  std::vector<double> pixels;
  int id = 0;
};

/// The per-image squared pixel sum retained at encode time. Decoding an
/// amplitude vector back to pixel space is only exact with this value.
struct NormContext {
  double sum_sq = 0.0;
};

/// Row-major flattening of a square image.
ImageSample flatten(const std::vector<std::vector<double>> &image, int id = 0);

/// Amplitude-encode a sample: amplitudes = pixels / sqrt(sum of squares).
/// Throws ZeroVectorError for an all-zero sample.
std::pair<StateVector, NormContext> encode(const ImageSample &sample);

/// Invert the encoding: pixel_j = |amplitude_j| * sqrt(sum_sq).
/// Sign information is discarded; outputs are always nonnegative.
std::vector<double> decode(const StateVector &amplitudes, const NormContext &ctx);

/// True iff n is a power of two (n >= 1).
constexpr bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace qnic

#endif  // QNIC_CODEC_HPP

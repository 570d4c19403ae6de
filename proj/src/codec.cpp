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

#include "qnic/codec.hpp"

#include <cmath>
#include <string>

#include "qnic/errors.hpp"

namespace qnic {

ImageSample flatten(const std::vector<std::vector<double>> &image, int id) {
  ImageSample out;
  out.id = id;
  out.pixels.reserve(image.size() * (image.empty() ? 0 : image.front().size()));
  for (const auto &row : image) {
    if (row.size() != image.size()) {
      throw DimensionMismatchError("flatten: image must be square, got row of length " +
                                   std::to_string(row.size()) + " in a " +
                                   std::to_string(image.size()) + "-row image");
    }
    out.pixels.insert(out.pixels.end(), row.begin(), row.end());
  }
  return out;
}

std::pair<StateVector, NormContext> encode(const ImageSample &sample) {
  double sum_sq = 0.0;
  for (double v : sample.pixels) sum_sq += v * v;
  if (sum_sq == 0.0) {
    throw ZeroVectorError("encode: sample " + std::to_string(sample.id) +
                          " is all-zero and cannot be normalized");
  }
  const double inv_norm = 1.0 / std::sqrt(sum_sq);
  StateVector amps(sample.pixels.size());
  for (std::size_t j = 0; j < amps.size(); ++j) amps[j] = sample.pixels[j] * inv_norm;
  return {std::move(amps), NormContext{sum_sq}};
}

std::vector<double> decode(const StateVector &amplitudes, const NormContext &ctx) {
  const double scale = std::sqrt(ctx.sum_sq);
  std::vector<double> pixels(amplitudes.size());
  for (std::size_t j = 0; j < pixels.size(); ++j) pixels[j] = std::abs(amplitudes[j]) * scale;
  return pixels;
}

}  // namespace qnic

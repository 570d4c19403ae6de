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

#ifndef QNIC_DATASET_HPP
#define QNIC_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qnic/codec.hpp"

namespace qnic {

enum class DatasetKind { Binary, Grayscale };

/// Provenance and the retained per-sample squared sums. Persisted next to
/// the pixel data so decoding never has to recompute them.
struct DatasetManifest {
  int version = 1;
  int side = 0;
  int m = 0;
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<double> sum_sq;
};

struct ImageDataset {
  int side = 0;
  std::vector<ImageSample> samples;
  DatasetManifest manifest;

  int n() const { return side * side; }
  int m() const { return static_cast<int>(samples.size()); }
};

/// Seeded dataset generator. Binary draws each pixel fairly from {0,1};
/// grayscale draws uniformly from [0,1). All-zero draws and exact duplicates
/// are rejected and redrawn. Throws UnsatisfiableError when m distinct
/// nonzero binary images cannot exist for the given side.
ImageDataset generate_dataset(int m, int side, std::uint64_t seed, DatasetKind kind);

/// Recompute and store per-sample squared sums in the manifest.
void refresh_manifest_sums(ImageDataset &dataset);

/// Canonical on-disk form: <dir>/images.csv (one full-precision row per
/// sample) plus <dir>/manifest.json.
void save_dataset(const ImageDataset &dataset, const std::filesystem::path &dir);
ImageDataset load_dataset(const std::filesystem::path &dir);

enum class ImageFormat { Pbm, Pgm, Csv };

/// Maps "pbm" / "pgm" / "csv" (or a filename ending in one of those) to the
/// format enum; throws UnsupportedFormatError otherwise.
ImageFormat parse_image_format(const std::string &name);

/// Write a batch of flattened square images to one file. CSV holds one row
/// per image at full precision. PBM (bits) and PGM (maxval 255, quantizing)
/// stack the images vertically into a single side x (side*count) sheet.
void save_images(const std::vector<std::vector<double>> &images, int side,
                 const std::filesystem::path &path, ImageFormat format);

/// Read back a file written by save_images. Returns flattened rows.
std::vector<std::vector<double>> load_images(const std::filesystem::path &path,
                                             ImageFormat format);

}  // namespace qnic

#endif  // QNIC_DATASET_HPP

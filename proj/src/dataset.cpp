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

#include "qnic/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qnic/errors.hpp"
#include "qnic/rng.hpp"

namespace qnic {

namespace {

using nlohmann::json;

void validate_pixels(const std::vector<double> &pixels, int expected_len, const std::string &what) {
  if (static_cast<int>(pixels.size()) != expected_len) {
    throw MalformedFileError(what + ": expected " + std::to_string(expected_len) +
                             " pixels per image, got " + std::to_string(pixels.size()));
  }
  for (double v : pixels) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw MalformedFileError(what + ": pixel value " + std::to_string(v) +
                               " outside [0,1] or non-finite");
    }
  }
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> parse_csv_rows(std::istream &in, const std::string &what) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const char *begin = cell.c_str();
      char *end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0') {
        throw MalformedFileError(what + ": cannot parse cell '" + cell + "' as a number");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw MalformedFileError(what + ": ragged CSV rows");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Reads one whitespace-delimited PNM token, skipping '#' comments.
bool next_pnm_token(std::istream &in, std::string &token) {
  token.clear();
  char c;
  while (in.get(c)) {
    if (c == '#') {
      while (in.get(c) && c != '\n') {
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) return true;
      continue;
    }
    token.push_back(c);
  }
  return !token.empty();
}

long pnm_int(std::istream &in, const std::string &what) {
  std::string token;
  if (!next_pnm_token(in, token)) {
    throw MalformedFileError(what + ": truncated header");
  }
  try {
    return std::stol(token);
  } catch (const std::exception &) {
    throw MalformedFileError(what + ": bad integer token '" + token + "'");
  }
}

}  // namespace

ImageDataset generate_dataset(int m, int side, std::uint64_t seed, DatasetKind kind) {
  if (m < 1) throw std::invalid_argument("generate_dataset: m must be >= 1");
  if (side < 1) throw std::invalid_argument("generate_dataset: side must be >= 1");
  const int n = side * side;
  if (!is_power_of_two(static_cast<std::size_t>(n))) {
    throw std::invalid_argument("generate_dataset: side*side = " + std::to_string(n) +
                                " must be a power of two");
  }
  if (kind == DatasetKind::Binary && n < 64) {
    const std::uint64_t capacity = (std::uint64_t{1} << n) - 1;  // nonzero images
    if (static_cast<std::uint64_t>(m) > capacity) {
      throw UnsatisfiableError("generate_dataset: cannot draw " + std::to_string(m) +
                               " distinct nonzero binary " + std::to_string(side) + "x" +
                               std::to_string(side) + " images, only " +
                               std::to_string(capacity) + " exist");
    }
  }

  ImageDataset dataset;
  dataset.side = side;
  dataset.manifest.side = side;
  dataset.manifest.m = m;
  dataset.manifest.seed = seed;
  dataset.manifest.kind = kind == DatasetKind::Binary ? "binary" : "grayscale";

  Rng rng(seed);
  std::set<std::vector<double>> seen;
  while (dataset.m() < m) {
    std::vector<double> pixels(static_cast<std::size_t>(n));
    bool nonzero = false;
    for (double &v : pixels) {
      v = kind == DatasetKind::Binary ? static_cast<double>(rng.next_bit()) : rng.next_unit();
      if (v != 0.0) nonzero = true;
    }
    if (!nonzero) continue;
    if (!seen.insert(pixels).second) continue;
    dataset.samples.push_back(ImageSample{std::move(pixels), dataset.m()});
  }
  refresh_manifest_sums(dataset);
  return dataset;
}

void refresh_manifest_sums(ImageDataset &dataset) {
  dataset.manifest.sum_sq.clear();
  dataset.manifest.sum_sq.reserve(dataset.samples.size());
  for (const auto &sample : dataset.samples) {
    double s = 0.0;
    for (double v : sample.pixels) s += v * v;
    dataset.manifest.sum_sq.push_back(s);
  }
  dataset.manifest.m = dataset.m();
  dataset.manifest.side = dataset.side;
}

void save_dataset(const ImageDataset &dataset, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::vector<double>> rows;
  rows.reserve(dataset.samples.size());
  for (const auto &sample : dataset.samples) rows.push_back(sample.pixels);
  save_images(rows, dataset.side, dir / "images.csv", ImageFormat::Csv);

  json manifest;
  manifest["version"] = dataset.manifest.version;
  manifest["side"] = dataset.manifest.side;
  manifest["m"] = dataset.manifest.m;
  manifest["kind"] = dataset.manifest.kind;
  manifest["seed"] = dataset.manifest.seed;
  manifest["sum_sq"] = dataset.manifest.sum_sq;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("save_dataset: cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

ImageDataset load_dataset(const std::filesystem::path &dir) {
  const auto manifest_path = dir / "manifest.json";
  std::ifstream manifest_in(manifest_path);
  if (!manifest_in) {
    throw IoError("load_dataset: missing dataset manifest " + manifest_path.string());
  }
  json manifest;
  try {
    manifest_in >> manifest;
  } catch (const json::exception &e) {
    throw MalformedFileError("load_dataset: " + manifest_path.string() + ": " + e.what());
  }

  ImageDataset dataset;
  try {
    dataset.manifest.version = manifest.at("version").get<int>();
    dataset.manifest.side = manifest.at("side").get<int>();
    dataset.manifest.m = manifest.at("m").get<int>();
    dataset.manifest.kind = manifest.at("kind").get<std::string>();
    dataset.manifest.seed = manifest.at("seed").get<std::uint64_t>();
    dataset.manifest.sum_sq = manifest.at("sum_sq").get<std::vector<double>>();
  } catch (const json::exception &e) {
    throw MalformedFileError("load_dataset: " + manifest_path.string() + ": " + e.what());
  }
  dataset.side = dataset.manifest.side;

  auto rows = load_images(dir / "images.csv", ImageFormat::Csv);
  if (static_cast<int>(rows.size()) != dataset.manifest.m) {
    throw MalformedFileError("load_dataset: manifest lists " +
                             std::to_string(dataset.manifest.m) + " samples, images.csv has " +
                             std::to_string(rows.size()));
  }
  if (dataset.manifest.sum_sq.size() != rows.size()) {
    throw MalformedFileError("load_dataset: manifest sum_sq length mismatch");
  }
  const int n = dataset.n();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    validate_pixels(rows[i], n, "load_dataset");
    double s = 0.0;
    for (double v : rows[i]) s += v * v;
    if (s == 0.0) {
      throw MalformedFileError("load_dataset: sample " + std::to_string(i) + " is all-zero");
    }
    // Guards against a manifest copied from a different images.csv.
    const double recorded = dataset.manifest.sum_sq[i];
    if (std::abs(recorded - s) > 1e-6 * std::max(1.0, s)) {
      throw MalformedFileError("load_dataset: manifest sum_sq[" + std::to_string(i) +
                               "] does not match pixel data");
    }
    dataset.samples.push_back(ImageSample{std::move(rows[i]), static_cast<int>(i)});
  }
  return dataset;
}

ImageFormat parse_image_format(const std::string &name) {
  auto ends_with = [&](const char *suffix) {
    const std::string s(suffix);
    return name.size() >= s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0;
  };
  if (name == "pbm" || ends_with(".pbm")) return ImageFormat::Pbm;
  if (name == "pgm" || ends_with(".pgm")) return ImageFormat::Pgm;
  if (name == "csv" || ends_with(".csv")) return ImageFormat::Csv;
  throw UnsupportedFormatError("unsupported image format '" + name +
                               "' (expected pbm, pgm, or csv)");
}

void save_images(const std::vector<std::vector<double>> &images, int side,
                 const std::filesystem::path &path, ImageFormat format) {
  if (images.empty()) throw std::invalid_argument("save_images: no images");
  const int n = side * side;
  for (const auto &img : images) {
    if (static_cast<int>(img.size()) != n) {
      throw DimensionMismatchError("save_images: image length " + std::to_string(img.size()) +
                                   " != side*side = " + std::to_string(n));
    }
  }
  std::ofstream out(path);
  if (!out) throw IoError("save_images: cannot write " + path.string());

  switch (format) {
    case ImageFormat::Csv: {
      for (const auto &img : images) {
        for (std::size_t j = 0; j < img.size(); ++j) {
          if (j) out << ',';
          out << format_full(img[j]);
        }
        out << '\n';
      }
      break;
    }
    case ImageFormat::Pbm: {
      // One sheet, images stacked vertically. PBM uses 1 for black; pixel
      // value 1 is written as 1 so the roundtrip is the identity.
      out << "P1\n" << side << ' ' << side * images.size() << '\n';
      for (const auto &img : images) {
        for (int r = 0; r < side; ++r) {
          for (int c = 0; c < side; ++c) {
            const double v = img[static_cast<std::size_t>(r * side + c)];
            if (v != 0.0 && v != 1.0) {
              throw UnsupportedFormatError("save_images: PBM requires binary pixels, got " +
                                           std::to_string(v));
            }
            out << (c ? " " : "") << (v != 0.0 ? 1 : 0);
          }
          out << '\n';
        }
      }
      break;
    }
    case ImageFormat::Pgm: {
      out << "P2\n" << side << ' ' << side * images.size() << "\n255\n";
      for (const auto &img : images) {
        for (int r = 0; r < side; ++r) {
          for (int c = 0; c < side; ++c) {
            const double v = img[static_cast<std::size_t>(r * side + c)];
            const int q = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
            out << (c ? " " : "") << q;
          }
          out << '\n';
        }
      }
      break;
    }
  }
  if (!out) throw IoError("save_images: write failure on " + path.string());
}

std::vector<std::vector<double>> load_images(const std::filesystem::path &path,
                                             ImageFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("load_images: cannot open " + path.string());
  const std::string what = "load_images(" + path.string() + ")";

  if (format == ImageFormat::Csv) {
    auto rows = parse_csv_rows(in, what);
    if (rows.empty()) throw MalformedFileError(what + ": no rows");
    return rows;
  }

  std::string magic;
  if (!next_pnm_token(in, magic)) throw MalformedFileError(what + ": empty file");
  const char *expected_magic = format == ImageFormat::Pbm ? "P1" : "P2";
  if (magic != expected_magic) {
    throw MalformedFileError(what + ": expected magic " + expected_magic + ", got '" + magic +
                             "'");
  }
  const long width = pnm_int(in, what);
  const long height = pnm_int(in, what);
  if (width < 1 || height < width || height % width != 0) {
    throw MalformedFileError(what + ": sheet must stack square images, got " +
                             std::to_string(width) + "x" + std::to_string(height));
  }
  long maxval = 1;
  if (format == ImageFormat::Pgm) {
    maxval = pnm_int(in, what);
    if (maxval < 1 || maxval > 65535) throw MalformedFileError(what + ": bad maxval");
  }

  const long count = height / width;
  const long side = width;
  std::vector<std::vector<double>> images(
      static_cast<std::size_t>(count),
      std::vector<double>(static_cast<std::size_t>(side * side)));
  std::string token;
  for (long i = 0; i < count; ++i) {
    for (long p = 0; p < side * side; ++p) {
      if (!next_pnm_token(in, token)) throw MalformedFileError(what + ": truncated pixel data");
      long raw = 0;
      try {
        raw = std::stol(token);
      } catch (const std::exception &) {
        throw MalformedFileError(what + ": bad pixel token '" + token + "'");
      }
      if (raw < 0 || raw > maxval) {
        throw MalformedFileError(what + ": pixel " + std::to_string(raw) + " exceeds maxval");
      }
      images[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] =
          format == ImageFormat::Pbm ? static_cast<double>(raw)
                                     : static_cast<double>(raw) / static_cast<double>(maxval);
    }
  }
  return images;
}

}  // namespace qnic

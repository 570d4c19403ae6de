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

#include "qnic/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qnic/errors.hpp"

namespace qnic {

std::pair<int, double> accuracy(const std::vector<double> &x, const std::vector<double> &xhat,
                                double tol) {
  if (x.size() != xhat.size()) {
    throw DimensionMismatchError("accuracy: image lengths differ (" + std::to_string(x.size()) +
                                 " vs " + std::to_string(xhat.size()) + ")");
  }
  int similar = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(xhat[j] - x[j]) <= tol) ++similar;
  }
  const double pct = x.empty() ? 100.0 : 100.0 * similar / static_cast<double>(x.size());
  return {similar, pct};
}

AccuracyReport accuracy_report(const std::vector<std::vector<double>> &truth,
                               const std::vector<std::vector<double>> &recon, double tol) {
  if (truth.size() != recon.size()) {
    throw DimensionMismatchError("accuracy_report: sample counts differ");
  }
  AccuracyReport report;
  report.tol = tol;
  double sum_pct = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto [count, pct] = accuracy(truth[i], recon[i], tol);
    report.similar_counts.push_back(count);
    report.per_sample_pct.push_back(pct);
    sum_pct += pct;
  }
  report.mean_pct = truth.empty() ? 0.0 : sum_pct / static_cast<double>(truth.size());
  return report;
}

std::vector<double> threshold_pixels(const std::vector<double> &xhat) {
  std::vector<double> out = xhat;
  for (double &v : out) {
    if (v <= 0.01) {
      v = 0.0;
    } else if (v >= 0.99) {
      v = 1.0;
    }
  }
  return out;
}

std::vector<double> binarize_amplitudes(const std::vector<double> &xhat) {
  std::vector<double> out = xhat;
  for (double &v : out) v = v < 0.5 ? 0.0 : 1.0;
  return out;
}

std::vector<double> post_process(const std::vector<double> &xhat, PostProcess mode) {
  switch (mode) {
    case PostProcess::Clamp:
      return threshold_pixels(xhat);
    case PostProcess::Binarize:
      return binarize_amplitudes(xhat);
    case PostProcess::None:
    default:
      return xhat;
  }
}

std::string comparison_csv(const std::vector<MethodResult> &rows) {
  std::ostringstream out;
  out << "method,accuracy_percent,runtime_s,matrix_size\n";
  char buf[64];
  for (const auto &row : rows) {
    std::snprintf(buf, sizeof(buf), "%.2f", row.accuracy_pct);
    out << row.method << ',' << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.2f", row.runtime_s);
    out << buf << ',' << row.matrix_size << '\n';
  }
  return out.str();
}

std::string comparison_text(const std::vector<MethodResult> &rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %12s %12s %12s\n", "Method", "Accuracy", "Runtime",
                "Matrix");
  out << line;
  for (const auto &row : rows) {
    char acc[32], rt[32];
    std::snprintf(acc, sizeof(acc), "%.2f%%", row.accuracy_pct);
    std::snprintf(rt, sizeof(rt), "%.2fs", row.runtime_s);
    std::snprintf(line, sizeof(line), "%-12s %12s %12s %12s\n", row.method.c_str(), acc, rt,
                  row.matrix_size.c_str());
    out << line;
  }
  return out.str();
}

}  // namespace qnic

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

#ifndef QNIC_METRICS_HPP
#define QNIC_METRICS_HPP

#include <string>
#include <vector>

namespace qnic {

/// Per-sample similar-pixel counts and accuracy percentages at a given
/// absolute pixel tolerance (0.01 unless overridden).
struct AccuracyReport {
  std::vector<int> similar_counts;
  std::vector<double> per_sample_pct;
  double mean_pct = 0.0;
  double tol = 0.01;
};

/// Count pixels with |xhat - x| <= tol (inclusive) and the percentage.
std::pair<int, double> accuracy(const std::vector<double> &x, const std::vector<double> &xhat,
                                double tol = 0.01);

/// accuracy() over a whole dataset of reconstructions.
AccuracyReport accuracy_report(const std::vector<std::vector<double>> &truth,
                               const std::vector<std::vector<double>> &recon, double tol = 0.01);

/// Soft clamp: values <= 0.01 snap to 0, values >= 0.99 snap to 1,
/// everything else passes through. Idempotent.
std::vector<double> threshold_pixels(const std::vector<double> &xhat);

/// Hard binarization at 0.5: value < 0.5 maps to 0, >= 0.5 maps to 1.
std::vector<double> binarize_amplitudes(const std::vector<double> &xhat);

/// Post-processing applied to decoded pixels before scoring.
enum class PostProcess { None, Clamp, Binarize };

std::vector<double> post_process(const std::vector<double> &xhat, PostProcess mode);

/// One row of the method-comparison report.
struct MethodResult {
  std::string method;
  double accuracy_pct = 0.0;
  double runtime_s = 0.0;
  std::string matrix_size;
};

/// CSV with header method,accuracy_percent,runtime_s,matrix_size.
std::string comparison_csv(const std::vector<MethodResult> &rows);

/// The same table as aligned plain text.
std::string comparison_text(const std::vector<MethodResult> &rows);

}  // namespace qnic

#endif  // QNIC_METRICS_HPP

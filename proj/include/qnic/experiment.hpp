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

#ifndef QNIC_EXPERIMENT_HPP
#define QNIC_EXPERIMENT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "qnic/baseline.hpp"
#include "qnic/io.hpp"
#include "qnic/metrics.hpp"
#include "qnic/trainer.hpp"

namespace qnic {

/// A full training run: dataset in, artifacts out.
struct ExperimentConfig {
  std::filesystem::path data_dir;
  std::filesystem::path out_dir;
  TrainConfig train;
  double eval_tol = 0.01;
  PostProcess post = PostProcess::Clamp;
  bool timing = false;  // measured elapsed seconds in loss.csv (off keeps reruns byte-identical)
};

struct ExperimentResult {
  TrainResult train;
  AccuracyReport accuracy;
  double min_loss_c = 0.0;
  double min_loss_r = 0.0;
  std::filesystem::path checkpoint_path;
  std::filesystem::path loss_csv_path;
  std::filesystem::path recon_csv_path;
  std::filesystem::path summary_path;
};

/// encode -> train -> decode -> score; writes loss.csv, model.json,
/// recon.csv, recon_post.csv and summary.json under out_dir.
ExperimentResult run_experiment(const ExperimentConfig &config);

struct BaselineRunConfig {
  std::filesystem::path data_dir;
  std::filesystem::path out_dir;
  int sparsity = 4;
  int iterations = 150;
  double eval_tol = 0.01;
  PostProcess post = PostProcess::Clamp;
  bool timing = false;
};

struct BaselineRunResult {
  BaselineFit fit;
  AccuracyReport accuracy;
  double final_loss = 0.0;
  double total_seconds = 0.0;
  std::filesystem::path loss_csv_path;
  std::filesystem::path dictionary_csv_path;
  std::filesystem::path summary_path;
};

/// K-SVD over the encoded amplitude vectors of the same dataset; decoded and
/// scored with the same codec and metrics as the mesh pipeline. Writes
/// baseline_loss.csv, dictionary.csv and baseline_summary.json.
BaselineRunResult run_baseline(const BaselineRunConfig &config);

/// Gather summary.json / baseline_summary.json rows from run directories
/// into one comparison table; returns the rows and writes CSV + text.
std::vector<MethodResult> compare_runs(const std::vector<std::filesystem::path> &run_dirs,
                                       const std::filesystem::path &out_csv);

}  // namespace qnic

#endif  // QNIC_EXPERIMENT_HPP

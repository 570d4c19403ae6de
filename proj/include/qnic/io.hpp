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

#ifndef QNIC_IO_HPP
#define QNIC_IO_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnic/mesh.hpp"
#include "qnic/trainer.hpp"

namespace qnic {

/// Everything needed to reload and re-run a trained model.
struct Checkpoint {
  int version = 1;
  int n = 0;
  int d = 0;
  std::vector<int> retained;
  GivensMesh u_c;
  GivensMesh u_r;
  std::uint64_t seed = 0;
  nlohmann::json config_echo;
};

nlohmann::json config_to_json(const TrainConfig &config);
TrainConfig config_from_json(const nlohmann::json &j);

/// Apply the keys present in `j` on top of `base`. Unknown keys are errors.
TrainConfig config_with_overrides(TrainConfig base, const nlohmann::json &j);

void save_checkpoint(const Checkpoint &ckpt, const std::filesystem::path &path);
Checkpoint load_checkpoint(const std::filesystem::path &path);

Checkpoint checkpoint_from_result(const TrainResult &result, const TrainConfig &config);

/// iteration,L_C,L_R,accuracy_percent,elapsed_s. With timing disabled the
/// elapsed column is written as 0 so reruns with the same seed are
/// byte-identical.
std::string loss_csv(const std::vector<LossRecord> &records, bool timing);
void write_loss_csv(const std::vector<LossRecord> &records, const std::filesystem::path &path,
                    bool timing);

/// Full-precision CSV of a dense matrix (one row per line).
void write_matrix_csv(const Eigen::MatrixXd &m, const std::filesystem::path &path);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path &path);

void write_text_file(const std::string &content, const std::filesystem::path &path);
std::string read_text_file(const std::filesystem::path &path);

}  // namespace qnic

#endif  // QNIC_IO_HPP

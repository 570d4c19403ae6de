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

#include "qnic/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "qnic/dataset.hpp"
#include "qnic/errors.hpp"

namespace qnic {

namespace {

using nlohmann::json;

json summary_common(const std::string &method, double accuracy_pct, double runtime_s, int n) {
  json j;
  j["method"] = method;
  j["accuracy_percent"] = accuracy_pct;
  j["runtime_s"] = runtime_s;
  j["matrix_size"] = std::to_string(n) + "*" + std::to_string(n);
  return j;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig &config) {
  const ImageDataset dataset = load_dataset(config.data_dir);
  TrainResult trained = train(dataset, config.train);

  const EncodedDataset encoded = encode_dataset(dataset);
  auto raw_recon = reconstruct_dataset(encoded, trained.u_c, trained.projector, trained.u_r);
  std::vector<std::vector<double>> post_recon;
  post_recon.reserve(raw_recon.size());
  for (const auto &r : raw_recon) post_recon.push_back(post_process(r, config.post));

  ExperimentResult result;
  result.accuracy = accuracy_report(encoded.pixels, post_recon, config.eval_tol);
  result.min_loss_c = trained.records.front().loss_c;
  result.min_loss_r = trained.records.front().loss_r;
  for (const auto &rec : trained.records) {
    result.min_loss_c = std::min(result.min_loss_c, rec.loss_c);
    result.min_loss_r = std::min(result.min_loss_r, rec.loss_r);
  }

  std::filesystem::create_directories(config.out_dir);
  result.loss_csv_path = config.out_dir / "loss.csv";
  write_loss_csv(trained.records, result.loss_csv_path, config.timing);

  result.checkpoint_path = config.out_dir / "model.json";
  save_checkpoint(checkpoint_from_result(trained, config.train), result.checkpoint_path);

  result.recon_csv_path = config.out_dir / "recon.csv";
  save_images(raw_recon, dataset.side, result.recon_csv_path, ImageFormat::Csv);
  save_images(post_recon, dataset.side, config.out_dir / "recon_post.csv", ImageFormat::Csv);

  json summary = summary_common("QN-based", result.accuracy.mean_pct, trained.total_seconds,
                                dataset.n());
  summary["final_L_C"] = trained.records.back().loss_c;
  summary["final_L_R"] = trained.records.back().loss_r;
  summary["min_L_C"] = result.min_loss_c;
  summary["min_L_R"] = result.min_loss_r;
  summary["iterations_run"] = trained.records.back().iteration;
  summary["eval_tol"] = config.eval_tol;
  summary["data_dir"] = config.data_dir.string();
  summary["dataset_seed"] = dataset.manifest.seed;
  summary["dataset_kind"] = dataset.manifest.kind;
  summary["config"] = config_to_json(config.train);
  result.summary_path = config.out_dir / "summary.json";
  write_text_file(summary.dump(2) + "\n", result.summary_path);

  result.train = std::move(trained);
  return result;
}

BaselineRunResult run_baseline(const BaselineRunConfig &config) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  const ImageDataset dataset = load_dataset(config.data_dir);
  const EncodedDataset encoded = encode_dataset(dataset);
  const Eigen::MatrixXd y = encoded_matrix(encoded);

  BaselineRunResult result;
  result.fit = fit_dictionary(y, config.sparsity, config.iterations);
  result.final_loss = result.fit.loss_curve.back();
  result.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();

  // Decode the sparse reconstructions with the same codec and score them
  // with the same post-processing as the mesh pipeline.
  std::vector<std::vector<double>> recon;
  recon.reserve(static_cast<std::size_t>(encoded.m()));
  for (int i = 0; i < encoded.m(); ++i) {
    const Eigen::VectorXd s = sparse_code(y.col(i), result.fit.dictionary);
    const Eigen::VectorXd yhat = result.fit.dictionary.atoms * s;
    StateVector state(static_cast<std::size_t>(yhat.size()));
    for (Eigen::Index j = 0; j < yhat.size(); ++j) state[static_cast<std::size_t>(j)] = yhat(j);
    auto decoded = decode(state, encoded.contexts[static_cast<std::size_t>(i)]);
    recon.push_back(post_process(decoded, config.post));
  }
  result.accuracy = accuracy_report(encoded.pixels, recon, config.eval_tol);

  std::filesystem::create_directories(config.out_dir);
  std::vector<LossRecord> records;
  for (std::size_t i = 0; i < result.fit.loss_curve.size(); ++i) {
    LossRecord rec;
    rec.iteration = static_cast<int>(i);
    // One residual drives both columns: sparse coding is the compression and
    // D*s is the reconstruction of the same objective.
    rec.loss_c = result.fit.loss_curve[i];
    rec.loss_r = result.fit.loss_curve[i];
    rec.accuracy_pct = result.accuracy.mean_pct;
    rec.elapsed_s = 0.0;
    records.push_back(rec);
  }
  if (config.timing && !records.empty()) records.back().elapsed_s = result.total_seconds;
  result.loss_csv_path = config.out_dir / "baseline_loss.csv";
  write_loss_csv(records, result.loss_csv_path, config.timing);

  result.dictionary_csv_path = config.out_dir / "dictionary.csv";
  write_matrix_csv(result.fit.dictionary.atoms, result.dictionary_csv_path);

  json summary = summary_common("CSC-based", result.accuracy.mean_pct, result.total_seconds,
                                dataset.n());
  summary["final_loss"] = result.final_loss;
  summary["sparsity"] = config.sparsity;
  summary["iterations"] = config.iterations;
  summary["reseeded_atoms"] = result.fit.reseeded_atoms;
  summary["eval_tol"] = config.eval_tol;
  summary["data_dir"] = config.data_dir.string();
  result.summary_path = config.out_dir / "baseline_summary.json";
  write_text_file(summary.dump(2) + "\n", result.summary_path);
  return result;
}

std::vector<MethodResult> compare_runs(const std::vector<std::filesystem::path> &run_dirs,
                                       const std::filesystem::path &out_csv) {
  std::vector<MethodResult> rows;
  for (const auto &dir : run_dirs) {
    for (const char *name : {"summary.json", "baseline_summary.json"}) {
      const auto path = dir / name;
      if (!std::filesystem::exists(path)) continue;
      json j;
      std::ifstream in(path);
      try {
        in >> j;
      } catch (const json::exception &e) {
        throw MalformedFileError("compare: " + path.string() + ": " + e.what());
      }
      MethodResult row;
      row.method = j.value("method", "?");
      row.accuracy_pct = j.value("accuracy_percent", 0.0);
      row.runtime_s = j.value("runtime_s", 0.0);
      row.matrix_size = j.value("matrix_size", "?");
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    throw IoError("compare: no summary.json or baseline_summary.json found in given runs");
  }
  write_text_file(comparison_csv(rows), out_csv);
  return rows;
}

}  // namespace qnic

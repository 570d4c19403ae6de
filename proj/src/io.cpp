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

#include "qnic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qnic/errors.hpp"

namespace qnic {

namespace {

using nlohmann::json;

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json mesh_to_json(const GivensMesh &mesh) {
  json j;
  j["layers"] = mesh.layer_count();
  j["order"] = to_string(mesh.order);
  j["theta"] = mesh.flat_thetas();
  return j;
}

GivensMesh mesh_from_json(const json &j, int n) {
  const int layers = j.at("layers").get<int>();
  GivensMesh mesh = init_mesh(layers, n, InitScheme::Uniform, 0,
                              gate_order_from_string(j.at("order").get<std::string>()), 0.0);
  mesh.set_flat_thetas(j.at("theta").get<std::vector<double>>());
  return mesh;
}

}  // namespace

json config_to_json(const TrainConfig &config) {
  json j;
  j["eta"] = config.eta;
  j["iters"] = config.iterations;
  j["delta"] = config.delta;
  j["lc"] = config.layers_c;
  j["lr-layers"] = config.layers_r;
  j["d"] = config.d;
  j["grad-mode"] = to_string(config.grad_mode);
  j["loss-norm"] = to_string(config.loss_norm);
  j["schedule"] = to_string(config.schedule);
  j["target-mode"] = to_string(config.target_mode);
  j["update-mode"] = to_string(config.update_mode);
  j["init"] = to_string(config.init);
  j["uniform-theta"] = config.uniform_theta;
  j["seed"] = config.seed;
  j["converge-tol"] = config.converge_tol;
  j["retained"] = config.retained;
  return j;
}

TrainConfig config_from_json(const json &j) { return config_with_overrides(TrainConfig{}, j); }

TrainConfig config_with_overrides(TrainConfig base, const json &j) {
  for (const auto &[key, value] : j.items()) {
    try {
      if (key == "eta") {
        base.eta = value.get<double>();
      } else if (key == "iters") {
        base.iterations = value.get<int>();
      } else if (key == "delta") {
        base.delta = value.get<double>();
      } else if (key == "lc") {
        base.layers_c = value.get<int>();
      } else if (key == "lr-layers") {
        base.layers_r = value.get<int>();
      } else if (key == "d") {
        base.d = value.get<int>();
      } else if (key == "grad-mode") {
        base.grad_mode = grad_mode_from_string(value.get<std::string>());
      } else if (key == "loss-norm") {
        base.loss_norm = loss_norm_from_string(value.get<std::string>());
      } else if (key == "schedule") {
        base.schedule = schedule_from_string(value.get<std::string>());
      } else if (key == "target-mode") {
        base.target_mode = target_mode_from_string(value.get<std::string>());
      } else if (key == "update-mode") {
        base.update_mode = update_mode_from_string(value.get<std::string>());
      } else if (key == "init") {
        base.init = init_scheme_from_string(value.get<std::string>());
      } else if (key == "uniform-theta") {
        base.uniform_theta = value.get<double>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "converge-tol") {
        base.converge_tol = value.get<double>();
      } else if (key == "retained") {
        base.retained = value.get<std::vector<int>>();
      } else if (key == "data" || key == "out" || key == "tol" || key == "post" ||
                 key == "timing") {
        // Experiment-level keys live beside training keys in config files.
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    } catch (const json::exception &e) {
      throw MalformedFileError("config key '" + key + "': " + e.what());
    }
  }
  return base;
}

void save_checkpoint(const Checkpoint &ckpt, const std::filesystem::path &path) {
  json j;
  j["version"] = ckpt.version;
  j["n"] = ckpt.n;
  j["d"] = ckpt.d;
  j["retained"] = ckpt.retained;
  j["compression"] = mesh_to_json(ckpt.u_c);
  j["reconstruction"] = mesh_to_json(ckpt.u_r);
  j["seed"] = ckpt.seed;
  j["config"] = ckpt.config_echo;
  write_text_file(j.dump(2) + "\n", path);
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
  json j;
  {
    std::ifstream in(path);
    if (!in) throw IoError("load_checkpoint: cannot open " + path.string());
    try {
      in >> j;
    } catch (const json::exception &e) {
      throw MalformedFileError("load_checkpoint: " + path.string() + ": " + e.what());
    }
  }
  Checkpoint ckpt;
  try {
    ckpt.version = j.at("version").get<int>();
    ckpt.n = j.at("n").get<int>();
    ckpt.d = j.at("d").get<int>();
    ckpt.retained = j.at("retained").get<std::vector<int>>();
    ckpt.u_c = mesh_from_json(j.at("compression"), ckpt.n);
    ckpt.u_r = mesh_from_json(j.at("reconstruction"), ckpt.n);
    ckpt.seed = j.at("seed").get<std::uint64_t>();
    ckpt.config_echo = j.value("config", json::object());
  } catch (const json::exception &e) {
    throw MalformedFileError("load_checkpoint: " + path.string() + ": " + e.what());
  }
  return ckpt;
}

Checkpoint checkpoint_from_result(const TrainResult &result, const TrainConfig &config) {
  Checkpoint ckpt;
  ckpt.n = result.u_c.n;
  ckpt.d = result.projector.d();
  ckpt.retained = result.projector.retained;
  ckpt.u_c = result.u_c;
  ckpt.u_r = result.u_r;
  ckpt.seed = config.seed;
  ckpt.config_echo = config_to_json(config);
  return ckpt;
}

std::string loss_csv(const std::vector<LossRecord> &records, bool timing) {
  std::ostringstream out;
  out << "iteration,L_C,L_R,accuracy_percent,elapsed_s\n";
  for (const auto &rec : records) {
    out << rec.iteration << ',' << full(rec.loss_c) << ',' << full(rec.loss_r) << ','
        << full(rec.accuracy_pct) << ',' << full(timing ? rec.elapsed_s : 0.0) << '\n';
  }
  return out.str();
}

void write_loss_csv(const std::vector<LossRecord> &records, const std::filesystem::path &path,
                    bool timing) {
  write_text_file(loss_csv(records, timing), path);
}

void write_matrix_csv(const Eigen::MatrixXd &m, const std::filesystem::path &path) {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << full(m(r, c));
    }
    out << '\n';
  }
  write_text_file(out.str(), path);
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_matrix_csv: cannot open " + path.string());
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
        throw MalformedFileError("read_matrix_csv: bad cell '" + cell + "' in " + path.string());
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw MalformedFileError("read_matrix_csv: ragged rows in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw MalformedFileError("read_matrix_csv: empty file " + path.string());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

void write_text_file(const std::string &content, const std::filesystem::path &path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failure on " + path.string());
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace qnic

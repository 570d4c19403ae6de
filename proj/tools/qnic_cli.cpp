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
//
// Command-line front end: dataset generation, training, evaluation, the
// classical dictionary baseline, and report assembly.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>

#include "qnic/dataset.hpp"
#include "qnic/errors.hpp"
#include "qnic/experiment.hpp"
#include "qnic/io.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 2 bad arguments/config, 3 I/O failure,
// 4 malformed or unsupported file, 5 non-finite loss, 6 unsatisfiable
// dataset request, 7 domain error (dimension mismatch, zero vector, ...).
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitBadFile = 4;
constexpr int kExitNonFinite = 5;
constexpr int kExitUnsatisfiable = 6;
constexpr int kExitDomain = 7;

qnic::PostProcess post_from_string(const std::string &s) {
  if (s == "none") return qnic::PostProcess::None;
  if (s == "clamp") return qnic::PostProcess::Clamp;
  if (s == "binary") return qnic::PostProcess::Binarize;
  throw std::invalid_argument("post: unknown value '" + s + "' (none|clamp|binary)");
}

json load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw qnic::IoError("config file not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw qnic::MalformedFileError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) {
    throw qnic::MalformedFileError("config file " + path + ": expected a flat JSON object");
  }
  return j;
}

struct TrainCliOptions {
  std::string data;
  std::string out = "run/";
  std::string config_path;
  std::string grad_mode = "fd";
  std::string loss_norm = "mean";
  std::string schedule = "alternating";
  std::string target_mode = "leakage";
  std::string update_mode = "gauss-seidel";
  std::string init = "random";
  std::string post = "clamp";
  std::vector<int> retained;
  qnic::TrainConfig cli;
  double tol = 0.01;
  bool timing = false;
};

// Config-file values override defaults; explicit command-line flags override
// the config file.
qnic::ExperimentConfig resolve_train_config(const CLI::App &cmd, const TrainCliOptions &opt) {
  qnic::TrainConfig train = opt.cli;
  json file_json = json::object();
  if (!opt.config_path.empty()) file_json = load_config_file(opt.config_path);
  train = qnic::config_with_overrides(train, file_json);

  qnic::ExperimentConfig cfg;
  cfg.data_dir = file_json.value("data", std::string{});
  cfg.out_dir = file_json.value("out", std::string{"run/"});
  cfg.eval_tol = file_json.value("tol", 0.01);
  cfg.post = post_from_string(file_json.value("post", std::string{"clamp"}));
  cfg.timing = file_json.value("timing", false);

  const auto passed = [&](const std::string &flag) { return cmd.count(flag) > 0; };
  if (passed("--data")) cfg.data_dir = opt.data;
  if (passed("--out")) cfg.out_dir = opt.out;
  if (passed("--tol")) cfg.eval_tol = opt.tol;
  if (passed("--post")) cfg.post = post_from_string(opt.post);
  if (passed("--timing")) cfg.timing = opt.timing;

  if (passed("--eta")) train.eta = opt.cli.eta;
  if (passed("--iters")) train.iterations = opt.cli.iterations;
  if (passed("--delta")) train.delta = opt.cli.delta;
  if (passed("--lc")) train.layers_c = opt.cli.layers_c;
  if (passed("--lr-layers")) train.layers_r = opt.cli.layers_r;
  if (passed("--d")) train.d = opt.cli.d;
  if (passed("--seed")) train.seed = opt.cli.seed;
  if (passed("--uniform-theta")) train.uniform_theta = opt.cli.uniform_theta;
  if (passed("--converge-tol")) train.converge_tol = opt.cli.converge_tol;
  if (passed("--grad-mode")) train.grad_mode = qnic::grad_mode_from_string(opt.grad_mode);
  if (passed("--loss-norm")) train.loss_norm = qnic::loss_norm_from_string(opt.loss_norm);
  if (passed("--schedule")) train.schedule = qnic::schedule_from_string(opt.schedule);
  if (passed("--target-mode")) train.target_mode = qnic::target_mode_from_string(opt.target_mode);
  if (passed("--update-mode")) train.update_mode = qnic::update_mode_from_string(opt.update_mode);
  if (passed("--init")) train.init = qnic::init_scheme_from_string(opt.init);
  if (passed("--retained")) train.retained = opt.retained;

  if (cfg.data_dir.empty()) {
    throw std::invalid_argument("train: --data (or a 'data' config key) is required");
  }
  cfg.train = train;
  return cfg;
}

int dispatch(int argc, char **argv) {
  CLI::App app{"qnic: image compression/reconstruction with trained Givens meshes"};
  app.require_subcommand(1);

  // --- gen-data ---------------------------------------------------------
  auto *gen = app.add_subcommand("gen-data", "Generate a seeded image dataset");
  int gen_m = 25, gen_side = 4;
  std::uint64_t gen_seed = 42;
  std::string gen_kind = "binary", gen_out = "data/", gen_export;
  gen->add_option("--m", gen_m, "Number of images");
  gen->add_option("--side", gen_side, "Image side length D (D*D must be a power of two)");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--kind", gen_kind, "binary|grayscale");
  gen->add_option("--out", gen_out, "Output dataset directory");
  gen->add_option("--export", gen_export, "Also write an image sheet (pbm|pgm)");

  // --- train ------------------------------------------------------------
  auto *tr = app.add_subcommand("train", "Train compression + reconstruction meshes");
  TrainCliOptions opt;
  tr->add_option("--data", opt.data, "Dataset directory (from gen-data)");
  tr->add_option("--out", opt.out, "Output run directory");
  tr->add_option("--config", opt.config_path, "Flat JSON config file (flags override)");
  tr->add_option("--eta", opt.cli.eta, "Learning rate");
  tr->add_option("--iters", opt.cli.iterations, "Training iterations");
  tr->add_option("--delta", opt.cli.delta, "Forward-difference step");
  tr->add_option("--lc", opt.cli.layers_c, "Compression mesh layers");
  tr->add_option("--lr-layers", opt.cli.layers_r, "Reconstruction mesh layers");
  tr->add_option("--d", opt.cli.d, "Compressed dimension");
  tr->add_option("--seed", opt.cli.seed, "Initialization seed");
  tr->add_option("--grad-mode", opt.grad_mode, "fd|analytic");
  tr->add_option("--loss-norm", opt.loss_norm, "mean|sum");
  tr->add_option("--schedule", opt.schedule, "alternating|sequential");
  tr->add_option("--target-mode", opt.target_mode, "leakage|explicit");
  tr->add_option("--update-mode", opt.update_mode, "gauss-seidel|batch");
  tr->add_option("--init", opt.init, "random|uniform");
  tr->add_option("--uniform-theta", opt.cli.uniform_theta, "Angle for uniform init");
  tr->add_option("--converge-tol", opt.cli.converge_tol,
                 "Stop early when max(L_C, L_R) <= tol (0 disables)");
  tr->add_option("--retained", opt.retained, "Retained indices (default last d)")
      ->delimiter(',');
  tr->add_option("--tol", opt.tol, "Pixel tolerance for the accuracy report");
  tr->add_option("--post", opt.post, "Pixel post-processing: none|clamp|binary");
  tr->add_flag("--timing", opt.timing,
               "Record measured elapsed seconds in loss.csv (off keeps reruns byte-identical)");

  // --- eval -------------------------------------------------------------
  auto *ev = app.add_subcommand("eval", "Score a checkpoint against a dataset");
  std::string ev_ckpt, ev_data, ev_post = "clamp", ev_out;
  double ev_tol = 0.01;
  ev->add_option("--checkpoint", ev_ckpt, "model.json path")->required();
  ev->add_option("--data", ev_data, "Dataset directory")->required();
  ev->add_option("--tol", ev_tol, "Pixel tolerance");
  ev->add_option("--post", ev_post, "none|clamp|binary");
  ev->add_option("--out", ev_out, "Optional directory for recon CSV + report");

  // --- baseline ---------------------------------------------------------
  auto *bl = app.add_subcommand("baseline", "K-SVD sparse-coding baseline");
  qnic::BaselineRunConfig blc;
  std::string bl_data, bl_out = "run/", bl_post = "clamp";
  bl->add_option("--data", bl_data, "Dataset directory")->required();
  bl->add_option("--sparsity", blc.sparsity, "Nonzeros per code");
  bl->add_option("--iters", blc.iterations, "K-SVD iterations");
  bl->add_option("--out", bl_out, "Output run directory");
  bl->add_option("--tol", blc.eval_tol, "Pixel tolerance");
  bl->add_option("--post", bl_post, "none|clamp|binary");
  bl->add_flag("--timing", blc.timing, "Record measured elapsed seconds in baseline_loss.csv");

  // --- compare ----------------------------------------------------------
  auto *cp = app.add_subcommand("compare", "Assemble the method comparison table");
  std::vector<std::string> cp_runs;
  std::string cp_out = "table1.csv";
  cp->add_option("--runs", cp_runs, "Run directories with summaries")->required();
  cp->add_option("--out", cp_out, "Output CSV path");

  // --- export-unitary ----------------------------------------------------
  auto *ex = app.add_subcommand("export-unitary", "Write a mesh's dense matrix as CSV");
  std::string ex_ckpt, ex_which = "c", ex_out = "unitary.csv";
  ex->add_option("--checkpoint", ex_ckpt, "model.json path")->required();
  ex->add_option("--which", ex_which, "c (compression) or r (reconstruction)");
  ex->add_option("--out", ex_out, "Output CSV path");

  // --- roundtrip ----------------------------------------------------------
  auto *rt = app.add_subcommand("roundtrip", "Encode/decode self-test over a dataset");
  std::string rt_data;
  double rt_tol = 1e-12;
  rt->add_option("--data", rt_data, "Dataset directory")->required();
  rt->add_option("--tol", rt_tol, "Max allowed |decode(encode(x)) - x|");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    const auto kind = gen_kind == "binary"     ? qnic::DatasetKind::Binary
                      : gen_kind == "grayscale" ? qnic::DatasetKind::Grayscale
                                                : throw std::invalid_argument(
                                                      "kind must be binary or grayscale");
    auto dataset = qnic::generate_dataset(gen_m, gen_side, gen_seed, kind);
    qnic::save_dataset(dataset, gen_out);
    if (!gen_export.empty()) {
      const auto fmt = qnic::parse_image_format(gen_export);
      std::vector<std::vector<double>> rows;
      for (const auto &s : dataset.samples) rows.push_back(s.pixels);
      const char *ext = fmt == qnic::ImageFormat::Pbm ? "images.pbm" : "images.pgm";
      qnic::save_images(rows, dataset.side, std::filesystem::path(gen_out) / ext, fmt);
    }
    std::cout << "wrote " << dataset.m() << " " << gen_side << "x" << gen_side << " " << gen_kind
              << " images to " << gen_out << "\n";
    return 0;
  }

  if (tr->parsed()) {
    const auto cfg = resolve_train_config(*tr, opt);
    const auto result = qnic::run_experiment(cfg);
    const auto &last = result.train.records.back();
    std::cout << "trained " << last.iteration << " iterations in " << result.train.total_seconds
              << " s\n"
              << "final L_C=" << last.loss_c << " L_R=" << last.loss_r
              << " accuracy=" << result.accuracy.mean_pct << "%\n"
              << "min  L_C=" << result.min_loss_c << " L_R=" << result.min_loss_r << "\n"
              << "artifacts: " << result.loss_csv_path << ", " << result.checkpoint_path << ", "
              << result.recon_csv_path << ", " << result.summary_path << "\n";
    return 0;
  }

  if (ev->parsed()) {
    const auto ckpt = qnic::load_checkpoint(ev_ckpt);
    const auto dataset = qnic::load_dataset(ev_data);
    if (dataset.n() != ckpt.n) {
      throw qnic::DimensionMismatchError("eval: dataset N=" + std::to_string(dataset.n()) +
                                         " but checkpoint N=" + std::to_string(ckpt.n));
    }
    const auto encoded = qnic::encode_dataset(dataset);
    const qnic::Projector projector(ckpt.n, ckpt.retained);
    auto recon = qnic::reconstruct_dataset(encoded, ckpt.u_c, projector, ckpt.u_r);
    const auto mode = post_from_string(ev_post);
    std::vector<std::vector<double>> post;
    for (const auto &r : recon) post.push_back(qnic::post_process(r, mode));
    const auto report = qnic::accuracy_report(encoded.pixels, post, ev_tol);

    std::cout << "mean accuracy: " << report.mean_pct << "% (tol " << ev_tol << ", post "
              << ev_post << ")\n";
    for (std::size_t i = 0; i < report.per_sample_pct.size(); ++i) {
      std::cout << "  sample " << i << ": " << report.similar_counts[i] << "/" << dataset.n()
                << " = " << report.per_sample_pct[i] << "%\n";
    }
    if (!ev_out.empty()) {
      std::filesystem::create_directories(ev_out);
      qnic::save_images(post, dataset.side, std::filesystem::path(ev_out) / "eval_recon.csv",
                        qnic::ImageFormat::Csv);
      json rep;
      rep["mean_accuracy_percent"] = report.mean_pct;
      rep["per_sample_percent"] = report.per_sample_pct;
      rep["similar_counts"] = report.similar_counts;
      rep["tol"] = ev_tol;
      rep["post"] = ev_post;
      qnic::write_text_file(rep.dump(2) + "\n",
                            std::filesystem::path(ev_out) / "eval_report.json");
    }
    return 0;
  }

  if (bl->parsed()) {
    blc.data_dir = bl_data;
    blc.out_dir = bl_out;
    blc.post = post_from_string(bl_post);
    const auto result = qnic::run_baseline(blc);
    std::cout << "K-SVD final loss=" << result.final_loss
              << " accuracy=" << result.accuracy.mean_pct << "% in " << result.total_seconds
              << " s (reseeded atoms: " << result.fit.reseeded_atoms << ")\n"
              << "artifacts: " << result.loss_csv_path << ", " << result.dictionary_csv_path
              << ", " << result.summary_path << "\n";
    return 0;
  }

  if (cp->parsed()) {
    std::vector<std::filesystem::path> dirs(cp_runs.begin(), cp_runs.end());
    const auto rows = qnic::compare_runs(dirs, cp_out);
    std::cout << qnic::comparison_text(rows) << "wrote " << cp_out << "\n";
    return 0;
  }

  if (ex->parsed()) {
    const auto ckpt = qnic::load_checkpoint(ex_ckpt);
    if (ex_which != "c" && ex_which != "r") {
      throw std::invalid_argument("export-unitary: --which must be c or r");
    }
    const auto &mesh = ex_which == "c" ? ckpt.u_c : ckpt.u_r;
    qnic::write_matrix_csv(qnic::mesh_matrix(mesh), ex_out);
    std::cout << "wrote " << mesh.n << "x" << mesh.n << " matrix to " << ex_out << "\n";
    return 0;
  }

  if (rt->parsed()) {
    const auto dataset = qnic::load_dataset(rt_data);
    double max_err = 0.0;
    for (const auto &sample : dataset.samples) {
      const auto [state, ctx] = qnic::encode(sample);
      const auto back = qnic::decode(state, ctx);
      for (std::size_t j = 0; j < back.size(); ++j) {
        max_err = std::max(max_err, std::abs(back[j] - sample.pixels[j]));
      }
    }
    std::cout << "roundtrip max |error| = " << max_err << " over " << dataset.m()
              << " samples (tol " << rt_tol << ")\n";
    return max_err <= rt_tol ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return dispatch(argc, argv);
  } catch (const qnic::NonFiniteLossError &e) {
    std::cerr << "error (non-finite loss): " << e.what() << "\n";
    return kExitNonFinite;
  } catch (const qnic::UnsatisfiableError &e) {
    std::cerr << "error (unsatisfiable): " << e.what() << "\n";
    return kExitUnsatisfiable;
  } catch (const qnic::MalformedFileError &e) {
    std::cerr << "error (malformed file): " << e.what() << "\n";
    return kExitBadFile;
  } catch (const qnic::UnsupportedFormatError &e) {
    std::cerr << "error (unsupported format): " << e.what() << "\n";
    return kExitBadFile;
  } catch (const qnic::IoError &e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return kExitIo;
  } catch (const qnic::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

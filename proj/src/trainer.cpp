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

#include "qnic/trainer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qnic/errors.hpp"
#include "qnic/metrics.hpp"

namespace qnic {

namespace {

double norm_divisor(LossNorm norm, int m, int n) {
  return norm == LossNorm::Mean ? static_cast<double>(m) * static_cast<double>(n) : 1.0;
}

// Residual of one sample at the context's current parameters. The leakage
// residual lives outside the retained set; the explicit residual inside it.
StateVector stage_residual(const PipelineContext &ctx, std::size_t i) {
  StateVector out = apply_mesh((*ctx.inputs)[i], *ctx.mesh);
  if (ctx.stage == Stage::Compression) {
    if (ctx.target_mode == TargetMode::Explicit) {
      StateVector r = apply_projector(out, *ctx.projector);
      const auto &b = ctx.target->b[i];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= b[j];
      return r;
    }
    for (int j : ctx.projector->retained) out[static_cast<std::size_t>(j)] = 0.0;
    return out;  // P0-masked leakage
  }
  const auto &ref = (*ctx.references)[i];
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= ref[j];
  return out;
}

// Stage output whose derivative enters the gradient. For the leakage target
// the residual is already masked to the complement, so the unprojected mesh
// output is the right thing to differentiate.
StateVector stage_output(const PipelineContext &ctx, const StateVector &input) {
  StateVector out = apply_mesh(input, *ctx.mesh);
  if (ctx.stage == Stage::Compression && ctx.target_mode == TargetMode::Explicit) {
    return apply_projector(out, *ctx.projector);
  }
  return out;
}

double dot(const StateVector &a, const StateVector &b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc;
}

struct SweepPlan {
  bool update_c = true;
  bool update_r = true;
};

}  // namespace

std::string to_string(GradMode v) {
  return v == GradMode::FiniteDifference ? "fd" : "analytic";
}
std::string to_string(LossNorm v) { return v == LossNorm::Mean ? "mean" : "sum"; }
std::string to_string(Schedule v) {
  return v == Schedule::Alternating ? "alternating" : "sequential";
}
std::string to_string(TargetMode v) { return v == TargetMode::Leakage ? "leakage" : "explicit"; }
std::string to_string(UpdateMode v) {
  return v == UpdateMode::GaussSeidel ? "gauss-seidel" : "batch";
}
std::string to_string(InitScheme v) { return v == InitScheme::Random ? "random" : "uniform"; }
std::string to_string(GateOrder v) {
  return v == GateOrder::Ascending ? "ascending" : "descending";
}

namespace {
[[noreturn]] void bad_enum(const char *what, const std::string &s) {
  throw std::invalid_argument(std::string(what) + ": unknown value '" + s + "'");
}
}  // namespace

GradMode grad_mode_from_string(const std::string &s) {
  if (s == "fd" || s == "finite-difference") return GradMode::FiniteDifference;
  if (s == "analytic") return GradMode::Analytic;
  bad_enum("grad-mode", s);
}
LossNorm loss_norm_from_string(const std::string &s) {
  if (s == "mean") return LossNorm::Mean;
  if (s == "sum") return LossNorm::Sum;
  bad_enum("loss-norm", s);
}
Schedule schedule_from_string(const std::string &s) {
  if (s == "alternating") return Schedule::Alternating;
  if (s == "sequential") return Schedule::Sequential;
  bad_enum("schedule", s);
}
TargetMode target_mode_from_string(const std::string &s) {
  if (s == "leakage") return TargetMode::Leakage;
  if (s == "explicit") return TargetMode::Explicit;
  bad_enum("target-mode", s);
}
UpdateMode update_mode_from_string(const std::string &s) {
  if (s == "gauss-seidel") return UpdateMode::GaussSeidel;
  if (s == "batch") return UpdateMode::Batch;
  bad_enum("update-mode", s);
}
InitScheme init_scheme_from_string(const std::string &s) {
  if (s == "random") return InitScheme::Random;
  if (s == "uniform") return InitScheme::Uniform;
  bad_enum("init", s);
}
GateOrder gate_order_from_string(const std::string &s) {
  if (s == "ascending") return GateOrder::Ascending;
  if (s == "descending") return GateOrder::Descending;
  bad_enum("order", s);
}

void TrainConfig::validate(int n) const {
  if (eta <= 0.0) throw std::invalid_argument("TrainConfig: eta must be > 0");
  if (delta <= 0.0) throw std::invalid_argument("TrainConfig: delta must be > 0");
  if (iterations < 0) throw std::invalid_argument("TrainConfig: iterations must be >= 0");
  if (layers_c < 1 || layers_r < 1) {
    throw std::invalid_argument("TrainConfig: layer counts must be >= 1");
  }
  if (d < 1 || d > n) {
    throw std::invalid_argument("TrainConfig: d must satisfy 0 < d <= N (N=" +
                                std::to_string(n) + ")");
  }
  if (!retained.empty() && static_cast<int>(retained.size()) != d) {
    throw std::invalid_argument("TrainConfig: retained set size must equal d");
  }
}

Projector TrainConfig::make_projector(int n) const {
  if (retained.empty()) return Projector::last(n, d);
  return Projector(n, retained);
}

CompressionTarget CompressionTarget::leakage() { return CompressionTarget{}; }

CompressionTarget CompressionTarget::uniform_explicit(int m, const Projector &p) {
  CompressionTarget t;
  t.mode = TargetMode::Explicit;
  std::vector<double> b(static_cast<std::size_t>(p.n), 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(p.d()));
  for (int j : p.retained) b[static_cast<std::size_t>(j)] = amp;
  t.b.assign(static_cast<std::size_t>(m), b);
  return t;
}

CompressionTarget CompressionTarget::explicit_targets(std::vector<std::vector<double>> targets) {
  CompressionTarget t;
  t.mode = TargetMode::Explicit;
  t.b = std::move(targets);
  return t;
}

void CompressionTarget::validate(int m, const Projector &p) const {
  if (mode == TargetMode::Leakage) return;
  if (static_cast<int>(b.size()) != m) {
    throw TargetShapeMismatchError("CompressionTarget: " + std::to_string(b.size()) +
                                   " target vectors for " + std::to_string(m) + " samples");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (static_cast<int>(b[i].size()) != p.n) {
      throw TargetShapeMismatchError("CompressionTarget: target " + std::to_string(i) +
                                     " has length " + std::to_string(b[i].size()) +
                                     ", expected N=" + std::to_string(p.n));
    }
    double norm_sq = 0.0;
    for (int j = 0; j < p.n; ++j) {
      const double v = b[i][static_cast<std::size_t>(j)];
      if (!p.is_retained(j) && v != 0.0) {
        throw TargetShapeMismatchError("CompressionTarget: target " + std::to_string(i) +
                                       " is nonzero outside the retained set");
      }
      norm_sq += v * v;
    }
    if (std::abs(norm_sq - 1.0) > 1e-12) {
      throw TargetShapeMismatchError("CompressionTarget: target " + std::to_string(i) +
                                     " is not unit norm");
    }
  }
}

EncodedDataset encode_dataset(const ImageDataset &dataset) {
  EncodedDataset out;
  out.n = dataset.n();
  out.states.reserve(dataset.samples.size());
  out.contexts.reserve(dataset.samples.size());
  out.pixels.reserve(dataset.samples.size());
  for (const auto &sample : dataset.samples) {
    auto [state, ctx] = encode(sample);
    out.states.push_back(std::move(state));
    out.contexts.push_back(ctx);
    out.pixels.push_back(sample.pixels);
  }
  return out;
}

PipelineContext PipelineContext::compression(const GivensMesh &u_c, const Projector &p,
                                             const CompressionTarget &target,
                                             const std::vector<StateVector> &psi) {
  PipelineContext ctx;
  ctx.stage = Stage::Compression;
  ctx.mesh = &u_c;
  ctx.projector = &p;
  ctx.target_mode = target.mode;
  ctx.target = &target;
  ctx.inputs = &psi;
  return ctx;
}

PipelineContext PipelineContext::reconstruction(const GivensMesh &u_r, const Projector &p,
                                                const std::vector<StateVector> &compressed,
                                                const std::vector<StateVector> &references) {
  PipelineContext ctx;
  ctx.stage = Stage::Reconstruction;
  ctx.mesh = &u_r;
  ctx.projector = &p;
  ctx.inputs = &compressed;
  ctx.references = &references;
  return ctx;
}

double compression_loss(const EncodedDataset &data, const GivensMesh &u_c, const Projector &p,
                        const CompressionTarget &target, LossNorm norm) {
  target.validate(data.m(), p);
  double loss = 0.0;
  for (int i = 0; i < data.m(); ++i) {
    StateVector out = apply_mesh(data.states[static_cast<std::size_t>(i)], u_c);
    if (target.mode == TargetMode::Explicit) {
      const auto &b = target.b[static_cast<std::size_t>(i)];
      // Outside the retained set both the projected amplitude and the
      // target are zero, so only retained coordinates contribute.
      for (int j : p.retained) {
        const double r = out[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)];
        loss += r * r;
      }
    } else {
      for (int j = 0; j < p.n; ++j) {
        if (!p.is_retained(j)) {
          const double v = out[static_cast<std::size_t>(j)];
          loss += v * v;
        }
      }
    }
  }
  return loss / norm_divisor(norm, data.m(), data.n);
}

double reconstruction_loss(const EncodedDataset &data, const GivensMesh &u_c, const Projector &p,
                           const GivensMesh &u_r, LossNorm norm) {
  double loss = 0.0;
  for (int i = 0; i < data.m(); ++i) {
    const auto &psi = data.states[static_cast<std::size_t>(i)];
    StateVector out = apply_mesh(apply_projector(apply_mesh(psi, u_c), p), u_r);
    for (std::size_t j = 0; j < out.size(); ++j) {
      const double r = out[j] - psi[j];
      loss += r * r;
    }
  }
  return loss / norm_divisor(norm, data.m(), data.n);
}

std::vector<StateVector> pipeline_residuals(const PipelineContext &ctx) {
  std::vector<StateVector> residuals;
  residuals.reserve(ctx.inputs->size());
  for (std::size_t i = 0; i < ctx.inputs->size(); ++i) residuals.push_back(stage_residual(ctx, i));
  return residuals;
}

std::vector<StateVector> fd_partial(const PipelineContext &ctx, int layer, int gate_index,
                                    double delta) {
  if (delta <= 0.0) throw std::invalid_argument("fd_partial: delta must be > 0");
  // The mesh is borrowed mutable for the perturbed pass and restored exactly.
  auto &mesh = *const_cast<GivensMesh *>(ctx.mesh);
  const double saved = mesh.theta(layer, gate_index);

  std::vector<StateVector> partials;
  partials.reserve(ctx.inputs->size());
  for (const auto &input : *ctx.inputs) {
    StateVector base = stage_output(ctx, input);
    mesh.theta(layer, gate_index) = saved + delta;
    StateVector bumped = stage_output(ctx, input);
    mesh.theta(layer, gate_index) = saved;
    for (std::size_t j = 0; j < bumped.size(); ++j) bumped[j] = (bumped[j] - base[j]) / delta;
    partials.push_back(std::move(bumped));
  }
  return partials;
}

std::vector<StateVector> analytic_partial(const PipelineContext &ctx, int layer, int gate_index) {
  std::vector<StateVector> partials;
  partials.reserve(ctx.inputs->size());
  for (const auto &input : *ctx.inputs) {
    StateVector d = apply_mesh_derivative(input, *ctx.mesh, layer, gate_index);
    if (ctx.stage == Stage::Compression && ctx.target_mode == TargetMode::Explicit) {
      d = apply_projector(d, *ctx.projector);
    }
    partials.push_back(std::move(d));
  }
  return partials;
}

double loss_gradient_component(const PipelineContext &ctx, int layer, int gate_index,
                               GradMode mode, double delta, LossNorm norm) {
  const auto residuals = pipeline_residuals(ctx);
  const auto partials = mode == GradMode::FiniteDifference
                            ? fd_partial(ctx, layer, gate_index, delta)
                            : analytic_partial(ctx, layer, gate_index);
  double g = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) g += dot(residuals[i], partials[i]);
  const int n = static_cast<int>(ctx.inputs->front().size());
  return 2.0 * g / norm_divisor(norm, static_cast<int>(ctx.inputs->size()), n);
}

GradientVector loss_gradient(const PipelineContext &ctx, GradMode mode, double delta,
                             LossNorm norm) {
  const auto residuals = pipeline_residuals(ctx);
  const int n = static_cast<int>(ctx.inputs->front().size());
  const double divisor = norm_divisor(norm, static_cast<int>(ctx.inputs->size()), n);

  GradientVector grad;
  grad.reserve(static_cast<std::size_t>(ctx.mesh->parameter_count()));
  for (int layer = 0; layer < ctx.mesh->layer_count(); ++layer) {
    for (int g = 0; g < ctx.mesh->gates_per_layer(); ++g) {
      const auto partials = mode == GradMode::FiniteDifference
                                ? fd_partial(ctx, layer, g, delta)
                                : analytic_partial(ctx, layer, g);
      double acc = 0.0;
      for (std::size_t i = 0; i < residuals.size(); ++i) acc += dot(residuals[i], partials[i]);
      grad.push_back(2.0 * acc / divisor);
    }
  }
  return grad;
}

std::vector<double> gd_step(const std::vector<double> &theta, const GradientVector &gradient,
                            double eta) {
  if (eta <= 0.0) throw std::invalid_argument("gd_step: eta must be > 0");
  if (theta.size() != gradient.size()) {
    throw DimensionMismatchError("gd_step: theta and gradient lengths differ");
  }
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = theta[i] - eta * gradient[i];
  return out;
}

namespace {

std::vector<StateVector> compress_all(const std::vector<StateVector> &psi, const GivensMesh &u_c,
                                      const Projector &p) {
  std::vector<StateVector> out;
  out.reserve(psi.size());
  for (const auto &state : psi) out.push_back(apply_projector(apply_mesh(state, u_c), p));
  return out;
}

// One coordinate sweep over every parameter of the context's mesh,
// layer-major / gate-minor. GaussSeidel refreshes residuals and updates each
// angle in place; Batch takes a single step along the frozen gradient.
void sweep_network(GivensMesh &mesh, const PipelineContext &ctx, const TrainConfig &config) {
  if (config.update_mode == UpdateMode::Batch) {
    GradientVector grad = loss_gradient(ctx, config.grad_mode, config.delta, config.loss_norm);
    mesh.set_flat_thetas(gd_step(mesh.flat_thetas(), grad, config.eta));
    return;
  }
  for (int layer = 0; layer < mesh.layer_count(); ++layer) {
    for (int g = 0; g < mesh.gates_per_layer(); ++g) {
      const double grad = loss_gradient_component(ctx, layer, g, config.grad_mode, config.delta,
                                                  config.loss_norm);
      mesh.theta(layer, g) -= config.eta * grad;
    }
  }
}

double dataset_accuracy(const EncodedDataset &data, const GivensMesh &u_c, const Projector &p,
                        const GivensMesh &u_r) {
  double sum_pct = 0.0;
  for (int i = 0; i < data.m(); ++i) {
    const auto &psi = data.states[static_cast<std::size_t>(i)];
    StateVector out = apply_mesh(apply_projector(apply_mesh(psi, u_c), p), u_r);
    auto decoded = decode(out, data.contexts[static_cast<std::size_t>(i)]);
    decoded = threshold_pixels(decoded);
    sum_pct += accuracy(data.pixels[static_cast<std::size_t>(i)], decoded).second;
  }
  return data.m() == 0 ? 0.0 : sum_pct / data.m();
}

}  // namespace

TrainResult train(const ImageDataset &dataset, const TrainConfig &config) {
  const int n = dataset.n();
  config.validate(n);
  const Projector p = config.make_projector(n);
  if (config.target_mode == TargetMode::Explicit) {
    return train(dataset, config, CompressionTarget::uniform_explicit(dataset.m(), p));
  }
  return train(dataset, config, CompressionTarget::leakage());
}

TrainResult train(const ImageDataset &dataset, const TrainConfig &config,
                  const CompressionTarget &target) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  if (dataset.m() < 1) throw std::invalid_argument("train: dataset is empty");
  const int n = dataset.n();
  config.validate(n);
  if (target.mode != config.target_mode) {
    throw std::invalid_argument("train: target mode does not match config.target_mode");
  }

  TrainResult result;
  result.projector = config.make_projector(n);
  target.validate(dataset.m(), result.projector);

  EncodedDataset data = encode_dataset(dataset);
  result.u_c = init_mesh(config.layers_c, n, config.init, config.seed, GateOrder::Ascending,
                         config.uniform_theta);
  // The reconstruction chain runs in reverse gate order; its own seed keeps
  // the two networks decorrelated at init.
  result.u_r = init_mesh(config.layers_r, n, config.init, config.seed + 1,
                         GateOrder::Descending, config.uniform_theta);

  const auto record_point = [&](int iteration) {
    LossRecord rec;
    rec.iteration = iteration;
    rec.loss_c = compression_loss(data, result.u_c, result.projector, target, config.loss_norm);
    rec.loss_r = reconstruction_loss(data, result.u_c, result.projector, result.u_r,
                                     config.loss_norm);
    rec.accuracy_pct = dataset_accuracy(data, result.u_c, result.projector, result.u_r);
    rec.elapsed_s = std::chrono::duration<double>(clock::now() - t0).count();
    if (!std::isfinite(rec.loss_c) || !std::isfinite(rec.loss_r)) {
      throw NonFiniteLossError("train: loss became non-finite at iteration " +
                               std::to_string(iteration) + " (L_C=" + std::to_string(rec.loss_c) +
                               ", L_R=" + std::to_string(rec.loss_r) + ")");
    }
    result.records.push_back(rec);
    return rec;
  };

  record_point(0);

  const int total_iterations =
      config.schedule == Schedule::Sequential ? 2 * config.iterations : config.iterations;
  for (int t = 1; t <= total_iterations; ++t) {
    SweepPlan plan;
    if (config.schedule == Schedule::Sequential) {
      plan.update_c = t <= config.iterations;
      plan.update_r = t > config.iterations;
    }

    if (plan.update_c) {
      auto ctx = PipelineContext::compression(result.u_c, result.projector, target, data.states);
      sweep_network(result.u_c, ctx, config);
    }
    if (plan.update_r) {
      const auto compressed = compress_all(data.states, result.u_c, result.projector);
      auto ctx = PipelineContext::reconstruction(result.u_r, result.projector, compressed,
                                                 data.states);
      sweep_network(result.u_r, ctx, config);
    }

    const LossRecord rec = record_point(t);
    if (config.converge_tol > 0.0 && std::max(rec.loss_c, rec.loss_r) <= config.converge_tol) {
      break;
    }
  }

  result.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return result;
}

std::vector<std::vector<double>> reconstruct_dataset(const EncodedDataset &data,
                                                     const GivensMesh &u_c, const Projector &p,
                                                     const GivensMesh &u_r) {
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(data.m()));
  for (int i = 0; i < data.m(); ++i) {
    const auto &psi = data.states[static_cast<std::size_t>(i)];
    StateVector b = apply_mesh(apply_projector(apply_mesh(psi, u_c), p), u_r);
    out.push_back(decode(b, data.contexts[static_cast<std::size_t>(i)]));
  }
  return out;
}

}  // namespace qnic

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

#ifndef QNIC_TRAINER_HPP
#define QNIC_TRAINER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qnic/codec.hpp"
#include "qnic/dataset.hpp"
#include "qnic/mesh.hpp"

namespace qnic {

enum class GradMode { FiniteDifference, Analytic };
enum class LossNorm { Mean, Sum };
enum class Schedule { Alternating, Sequential };
enum class TargetMode { Leakage, Explicit };
enum class UpdateMode { GaussSeidel, Batch };

std::string to_string(GradMode v);
std::string to_string(LossNorm v);
std::string to_string(Schedule v);
std::string to_string(TargetMode v);
std::string to_string(UpdateMode v);
std::string to_string(InitScheme v);
std::string to_string(GateOrder v);
GradMode grad_mode_from_string(const std::string &s);
LossNorm loss_norm_from_string(const std::string &s);
Schedule schedule_from_string(const std::string &s);
TargetMode target_mode_from_string(const std::string &s);
UpdateMode update_mode_from_string(const std::string &s);
InitScheme init_scheme_from_string(const std::string &s);
GateOrder gate_order_from_string(const std::string &s);

struct TrainConfig {
  double eta = 0.01;
  int iterations = 150;
  double delta = 1e-8;
  int layers_c = 12;
  int layers_r = 14;
  int d = 4;
  GradMode grad_mode = GradMode::FiniteDifference;
  LossNorm loss_norm = LossNorm::Mean;
  Schedule schedule = Schedule::Alternating;
  TargetMode target_mode = TargetMode::Leakage;
  UpdateMode update_mode = UpdateMode::GaussSeidel;
  InitScheme init = InitScheme::Random;
  double uniform_theta = kPi / 4;
  std::uint64_t seed = 0;
  double converge_tol = 0.0;  // 0 disables early stopping
  std::vector<int> retained;  // empty selects {N-d, ..., N-1}

  void validate(int n) const;
  Projector make_projector(int n) const;
};

/// Compression targets. Leakage mode has no stored vectors: the target is
/// the projected output itself, so only out-of-subspace amplitude is
/// penalized. Explicit mode carries one unit-norm vector per sample,
/// supported inside the retained set.
struct CompressionTarget {
  TargetMode mode = TargetMode::Leakage;
  std::vector<std::vector<double>> b;

  static CompressionTarget leakage();
  /// Every sample shares the uniform amplitude 1/sqrt(d) over the retained set.
  static CompressionTarget uniform_explicit(int m, const Projector &p);
  static CompressionTarget explicit_targets(std::vector<std::vector<double>> targets);

  /// Throws TargetShapeMismatchError on wrong sample count / dimension, and
  /// rejects explicit vectors that are unnormalized or leak outside the
  /// retained set.
  void validate(int m, const Projector &p) const;
};

struct LossRecord {
  int iteration = 0;
  double loss_c = 0.0;
  double loss_r = 0.0;
  double accuracy_pct = 0.0;
  double elapsed_s = 0.0;
};

/// Per-parameter partial derivatives, layer-major / gate-minor.
using GradientVector = std::vector<double>;

/// Amplitude-encoded dataset plus everything needed to score reconstructions.
struct EncodedDataset {
  int n = 0;
  std::vector<StateVector> states;
  std::vector<NormContext> contexts;
  std::vector<std::vector<double>> pixels;

  int m() const { return static_cast<int>(states.size()); }
};

EncodedDataset encode_dataset(const ImageDataset &dataset);

enum class Stage { Compression, Reconstruction };

/// Everything a gradient evaluation needs about the surrounding pipeline:
/// which network is being differentiated, its fixed per-sample inputs, the
/// projector, and what the residual is measured against.
struct PipelineContext {
  Stage stage = Stage::Compression;
  const GivensMesh *mesh = nullptr;                      // network under differentiation
  const Projector *projector = nullptr;
  TargetMode target_mode = TargetMode::Leakage;          // compression stage only
  const CompressionTarget *target = nullptr;             // explicit-mode b vectors
  const std::vector<StateVector> *inputs = nullptr;      // psi (C stage) or compressed (R stage)
  const std::vector<StateVector> *references = nullptr;  // encoded A vectors (R stage)

  static PipelineContext compression(const GivensMesh &u_c, const Projector &p,
                                     const CompressionTarget &target,
                                     const std::vector<StateVector> &psi);
  static PipelineContext reconstruction(const GivensMesh &u_r, const Projector &p,
                                        const std::vector<StateVector> &compressed,
                                        const std::vector<StateVector> &references);
};

/// L_C: squared residual against the compression target, summed over samples
/// and dimensions. Mean normalization divides by M*N.
double compression_loss(const EncodedDataset &data, const GivensMesh &u_c, const Projector &p,
                        const CompressionTarget &target, LossNorm norm);

/// L_R: squared residual of the full pipeline output against the encoded
/// input amplitudes.
double reconstruction_loss(const EncodedDataset &data, const GivensMesh &u_c, const Projector &p,
                           const GivensMesh &u_r, LossNorm norm);

/// Per-sample residual vectors at the context's current parameters.
std::vector<StateVector> pipeline_residuals(const PipelineContext &ctx);

/// Forward-difference partial of each sample's stage output with respect to
/// one angle: [T(theta+delta) - T(theta)] / delta.
std::vector<StateVector> fd_partial(const PipelineContext &ctx, int layer, int gate_index,
                                    double delta);

/// Closed-form partial: the gate's block is replaced by its derivative and
/// the chain is re-applied.
std::vector<StateVector> analytic_partial(const PipelineContext &ctx, int layer, int gate_index);

/// One component of the loss gradient: 2 * sum_i <residual_i, partial_i>,
/// divided by M*N under mean normalization.
double loss_gradient_component(const PipelineContext &ctx, int layer, int gate_index,
                               GradMode mode, double delta, LossNorm norm);

/// The full gradient at frozen parameters.
GradientVector loss_gradient(const PipelineContext &ctx, GradMode mode, double delta,
                             LossNorm norm);

/// theta' = theta - eta * gradient, elementwise.
std::vector<double> gd_step(const std::vector<double> &theta, const GradientVector &gradient,
                            double eta);

struct TrainResult {
  GivensMesh u_c;
  GivensMesh u_r;
  Projector projector;
  std::vector<LossRecord> records;  // records[0] is the pre-training baseline
  double total_seconds = 0.0;
};

/// Coordinate-sweep gradient descent over both networks. Each angle is
/// updated immediately after its own gradient under GaussSeidel discipline;
/// Batch computes the whole gradient at frozen parameters first. Alternating
/// trains compression then reconstruction inside every iteration; Sequential
/// spends `iterations` on compression, then `iterations` on reconstruction.
/// Deterministic for a fixed (dataset, config, seed).
TrainResult train(const ImageDataset &dataset, const TrainConfig &config);
TrainResult train(const ImageDataset &dataset, const TrainConfig &config,
                  const CompressionTarget &target);

/// Decoded pipeline outputs for every sample (no post-processing).
std::vector<std::vector<double>> reconstruct_dataset(const EncodedDataset &data,
                                                     const GivensMesh &u_c, const Projector &p,
                                                     const GivensMesh &u_r);

}  // namespace qnic

#endif  // QNIC_TRAINER_HPP

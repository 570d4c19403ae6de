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

#ifndef QNIC_MESH_HPP
#define QNIC_MESH_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "qnic/codec.hpp"

namespace qnic {

inline constexpr double kPi = 3.14159265358979323846;

/// A real beam-splitter gate coupling adjacent modes k and k+1 (k is
/// 1-indexed, 1 <= k <= N-1). The phase shift is fixed to zero, so the
/// induced 2x2 block is the proper rotation by theta.
struct BeamSplitterGate {
  int k = 1;
  double theta = 0.0;
};

/// One layer: a chain of exactly N-1 adjacent-mode gates, k = 1..N-1.
struct MeshLayer {
  std::vector<BeamSplitterGate> gates;
};

/// Within-layer gate application order.
enum class GateOrder { Ascending, Descending };

/// Initialization scheme for gate angles.
enum class InitScheme { Random, Uniform };

/// A layered chain of beam-splitter gates acting on an N-dimensional real
/// state. Layers are applied in storage order; gates within a layer are
/// applied in `order`. The induced N x N matrix is orthogonal for any
/// parameter values.
struct GivensMesh {
  int n = 0;
  GateOrder order = GateOrder::Ascending;
  std::vector<MeshLayer> layers;

  int layer_count() const { return static_cast<int>(layers.size()); }
  int gates_per_layer() const { return n - 1; }
  int parameter_count() const { return layer_count() * gates_per_layer(); }

  /// Flat parameter access, layer-major / gate-minor in storage order.
  double theta(int layer, int gate_index) const { return layers[layer].gates[gate_index].theta; }
  double &theta(int layer, int gate_index) { return layers[layer].gates[gate_index].theta; }

  /// All angles as one flat vector (layer-major, gate-minor).
  std::vector<double> flat_thetas() const;
  void set_flat_thetas(const std::vector<double> &thetas);
};

/// Complementary coordinate projections. `retained` is the sorted index set
/// S realizing P1; the complement realizes P0.
struct Projector {
  int n = 0;
  std::vector<int> retained;

  Projector() = default;
  Projector(int dim, std::vector<int> retained_indices);

  /// Retained set {n-d, ..., n-1}.
  static Projector last(int dim, int d);

  int d() const { return static_cast<int>(retained.size()); }
  bool is_retained(int j) const { return mask_[static_cast<std::size_t>(j)] != 0; }
  Projector complement() const;

 private:
  std::vector<std::uint8_t> mask_;
};

/// The 2x2 rotation block for angle theta: [[cos, -sin], [sin, cos]].
std::array<std::array<double, 2>, 2> gate_matrix(double theta);

/// Apply one gate to a state (coordinates k-1 and k, 0-indexed, are mixed).
StateVector apply_gate(const StateVector &state, const BeamSplitterGate &gate);
void apply_gate_in_place(StateVector &state, const BeamSplitterGate &gate);

/// Apply every layer of the mesh in sequence.
StateVector apply_mesh(const StateVector &state, const GivensMesh &mesh);
void apply_mesh_in_place(StateVector &state, const GivensMesh &mesh);

/// Apply the mesh with gate (layer, gate_index) replaced by its theta
/// derivative block [[-sin, -cos], [cos, -sin]]. The result is the partial
/// derivative of apply_mesh(state) with respect to that angle.
StateVector apply_mesh_derivative(const StateVector &state, const GivensMesh &mesh, int layer,
                                  int gate_index);

/// Dense N x N matrix of the mesh; column j is apply_mesh(e_j).
Eigen::MatrixXd mesh_matrix(const GivensMesh &mesh);

/// Zero all coordinates outside p.retained. With renormalize set, rescale
/// the survivor to unit norm (ZeroProjectionError if it is exactly zero).
StateVector apply_projector(const StateVector &state, const Projector &p,
                            bool renormalize = false);

/// P1 * U_C * state: mesh then projection, no renormalization.
StateVector compress(const StateVector &state, const GivensMesh &u_c, const Projector &p);

/// U_R applied to an already-compressed state.
StateVector reconstruct(const StateVector &compressed, const GivensMesh &u_r);

/// Build a mesh. Random draws each theta uniformly from [0, 2*pi) with a
/// deterministic seeded generator; Uniform sets every theta to `uniform_theta`.
GivensMesh init_mesh(int layers, int n, InitScheme scheme, std::uint64_t seed,
                     GateOrder order = GateOrder::Ascending, double uniform_theta = kPi / 4);

/// The exact inverse mesh: layers and within-layer order reversed, angles
/// negated. apply_mesh(apply_mesh(s, m), inverse_mesh(m)) == s up to rounding.
GivensMesh inverse_mesh(const GivensMesh &mesh);

}  // namespace qnic

#endif  // QNIC_MESH_HPP

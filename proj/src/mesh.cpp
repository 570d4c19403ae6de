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

#include "qnic/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnic/errors.hpp"
#include "qnic/rng.hpp"

namespace qnic {

namespace {

void check_state_dim(const StateVector &state, int n, const char *where) {
  if (static_cast<int>(state.size()) != n) {
    throw DimensionMismatchError(std::string(where) + ": state has length " +
                                 std::to_string(state.size()) + ", expected " +
                                 std::to_string(n));
  }
}

void check_gate_index(int k, int n, const char *where) {
  if (k < 1 || k > n - 1) {
    throw DimensionMismatchError(std::string(where) + ": gate index k=" + std::to_string(k) +
                                 " out of range for N=" + std::to_string(n));
  }
}

inline void rotate_pair(StateVector &state, int k, double c, double s) {
  const double a = state[k - 1];
  const double b = state[k];
  state[k - 1] = c * a - s * b;
  state[k] = s * a + c * b;
}

// Derivative block [[-sin, -cos], [cos, -sin]] applied to coordinates
// (k-1, k); everything else of the state is untouched by this gate but the
// chain rule still routes it through the remaining gates.
inline void rotate_pair_derivative(StateVector &state, int k, double c, double s) {
  const double a = state[k - 1];
  const double b = state[k];
  state[k - 1] = -s * a - c * b;
  state[k] = c * a - s * b;
}

template <typename PerGate>
void for_each_gate_in_order(const GivensMesh &mesh, int layer, PerGate &&fn) {
  const auto &gates = mesh.layers[layer].gates;
  const int m = static_cast<int>(gates.size());
  if (mesh.order == GateOrder::Ascending) {
    for (int g = 0; g < m; ++g) fn(layer, g, gates[g]);
  } else {
    for (int g = m - 1; g >= 0; --g) fn(layer, g, gates[g]);
  }
}

}  // namespace

std::vector<double> GivensMesh::flat_thetas() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(parameter_count()));
  for (const auto &layer : layers)
    for (const auto &gate : layer.gates) out.push_back(gate.theta);
  return out;
}

void GivensMesh::set_flat_thetas(const std::vector<double> &thetas) {
  if (static_cast<int>(thetas.size()) != parameter_count()) {
    throw DimensionMismatchError("set_flat_thetas: got " + std::to_string(thetas.size()) +
                                 " angles, mesh has " + std::to_string(parameter_count()) +
                                 " parameters");
  }
  std::size_t i = 0;
  for (auto &layer : layers)
    for (auto &gate : layer.gates) gate.theta = thetas[i++];
}

Projector::Projector(int dim, std::vector<int> retained_indices)
    : n(dim), retained(std::move(retained_indices)) {
  std::sort(retained.begin(), retained.end());
  retained.erase(std::unique(retained.begin(), retained.end()), retained.end());
  if (!retained.empty() && (retained.front() < 0 || retained.back() >= n)) {
    throw DimensionMismatchError("Projector: retained index out of range for N=" +
                                 std::to_string(n));
  }
  mask_.assign(static_cast<std::size_t>(n), 0);
  for (int j : retained) mask_[static_cast<std::size_t>(j)] = 1;
}

Projector Projector::last(int dim, int d) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(d));
  for (int j = dim - d; j < dim; ++j) idx.push_back(j);
  return Projector(dim, std::move(idx));
}

Projector Projector::complement() const {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(n - d()));
  for (int j = 0; j < n; ++j)
    if (!is_retained(j)) idx.push_back(j);
  return Projector(n, std::move(idx));
}

std::array<std::array<double, 2>, 2> gate_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {{{c, -s}, {s, c}}};
}

StateVector apply_gate(const StateVector &state, const BeamSplitterGate &gate) {
  StateVector out = state;
  apply_gate_in_place(out, gate);
  return out;
}

void apply_gate_in_place(StateVector &state, const BeamSplitterGate &gate) {
  const int n = static_cast<int>(state.size());
  check_gate_index(gate.k, n, "apply_gate");
  rotate_pair(state, gate.k, std::cos(gate.theta), std::sin(gate.theta));
}

StateVector apply_mesh(const StateVector &state, const GivensMesh &mesh) {
  StateVector out = state;
  apply_mesh_in_place(out, mesh);
  return out;
}

void apply_mesh_in_place(StateVector &state, const GivensMesh &mesh) {
  check_state_dim(state, mesh.n, "apply_mesh");
  for (int layer = 0; layer < mesh.layer_count(); ++layer) {
    for_each_gate_in_order(mesh, layer, [&](int, int, const BeamSplitterGate &gate) {
      rotate_pair(state, gate.k, std::cos(gate.theta), std::sin(gate.theta));
    });
  }
}

StateVector apply_mesh_derivative(const StateVector &state, const GivensMesh &mesh, int layer,
                                  int gate_index) {
  check_state_dim(state, mesh.n, "apply_mesh_derivative");
  StateVector out = state;
  for (int l = 0; l < mesh.layer_count(); ++l) {
    for_each_gate_in_order(mesh, l, [&](int, int g, const BeamSplitterGate &gate) {
      const double c = std::cos(gate.theta);
      const double s = std::sin(gate.theta);
      if (l == layer && g == gate_index) {
        rotate_pair_derivative(out, gate.k, c, s);
      } else {
        rotate_pair(out, gate.k, c, s);
      }
    });
  }
  return out;
}

Eigen::MatrixXd mesh_matrix(const GivensMesh &mesh) {
  Eigen::MatrixXd u(mesh.n, mesh.n);
  StateVector basis(static_cast<std::size_t>(mesh.n), 0.0);
  for (int j = 0; j < mesh.n; ++j) {
    basis.assign(static_cast<std::size_t>(mesh.n), 0.0);
    basis[static_cast<std::size_t>(j)] = 1.0;
    apply_mesh_in_place(basis, mesh);
    for (int i = 0; i < mesh.n; ++i) u(i, j) = basis[static_cast<std::size_t>(i)];
  }
  return u;
}

StateVector apply_projector(const StateVector &state, const Projector &p, bool renormalize) {
  check_state_dim(state, p.n, "apply_projector");
  StateVector out(state.size(), 0.0);
  double norm_sq = 0.0;
  for (int j : p.retained) {
    out[static_cast<std::size_t>(j)] = state[static_cast<std::size_t>(j)];
    norm_sq += state[static_cast<std::size_t>(j)] * state[static_cast<std::size_t>(j)];
  }
  if (renormalize) {
    if (norm_sq == 0.0) {
      throw ZeroProjectionError("apply_projector: projected state is exactly zero");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int j : p.retained) out[static_cast<std::size_t>(j)] *= inv;
  }
  return out;
}

StateVector compress(const StateVector &state, const GivensMesh &u_c, const Projector &p) {
  return apply_projector(apply_mesh(state, u_c), p);
}

StateVector reconstruct(const StateVector &compressed, const GivensMesh &u_r) {
  return apply_mesh(compressed, u_r);
}

GivensMesh init_mesh(int layers, int n, InitScheme scheme, std::uint64_t seed, GateOrder order,
                     double uniform_theta) {
  if (layers < 1) {
    throw DimensionMismatchError("init_mesh: layer count must be >= 1, got " +
                                 std::to_string(layers));
  }
  GivensMesh mesh;
  mesh.n = n;
  mesh.order = order;
  mesh.layers.resize(static_cast<std::size_t>(layers));
  Rng rng(seed);
  for (auto &layer : mesh.layers) {
    layer.gates.resize(static_cast<std::size_t>(n - 1));
    for (int k = 1; k <= n - 1; ++k) {
      auto &gate = layer.gates[static_cast<std::size_t>(k - 1)];
      gate.k = k;
      gate.theta = scheme == InitScheme::Random ? rng.next_in(2.0 * kPi) : uniform_theta;
    }
  }
  return mesh;
}

GivensMesh inverse_mesh(const GivensMesh &mesh) {
  GivensMesh inv;
  inv.n = mesh.n;
  inv.order = mesh.order == GateOrder::Ascending ? GateOrder::Descending : GateOrder::Ascending;
  inv.layers.assign(mesh.layers.rbegin(), mesh.layers.rend());
  for (auto &layer : inv.layers)
    for (auto &gate : layer.gates) gate.theta = -gate.theta;
  return inv;
}

}  // namespace qnic

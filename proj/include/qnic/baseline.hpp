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

#ifndef QNIC_BASELINE_HPP
#define QNIC_BASELINE_HPP

#include <Eigen/Dense>
#include <vector>

#include "qnic/trainer.hpp"

namespace qnic {

/// Learned dictionary: N x N atoms in columns, each unit norm, plus the
/// sparsity budget used for coding.
struct Dictionary {
  Eigen::MatrixXd atoms;
  int sparsity = 4;
};

struct BaselineFit {
  Dictionary dictionary;
  std::vector<double> loss_curve;  // entry 0 is the SVD-initialized loss
  int reseeded_atoms = 0;
};

/// Orthogonal matching pursuit: greedy support selection with a least-squares
/// refit per step. At most `dictionary.sparsity` nonzeros.
Eigen::VectorXd sparse_code(const Eigen::VectorXd &y, const Dictionary &dictionary);

/// K-SVD dictionary learning on the columns of `data` (N x M). Initialization
/// is the full set of left singular vectors of the data matrix. Each
/// iteration sparse-codes every sample, then updates each atom by a rank-1
/// SVD of its restricted residual. Atoms used by no sample are re-seeded from
/// the worst-reconstructed sample.
BaselineFit fit_dictionary(const Eigen::MatrixXd &data, int sparsity, int iterations);

/// Samples as matrix columns (the amplitude-encoded states).
Eigen::MatrixXd encoded_matrix(const EncodedDataset &data);

}  // namespace qnic

#endif  // QNIC_BASELINE_HPP

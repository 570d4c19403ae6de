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

#include "qnic/baseline.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qnic/errors.hpp"

namespace qnic {

namespace {

// Greedy support growth; coefficients come from a least-squares refit over
// the selected atoms, so residuals stay orthogonal to the chosen span.
struct OmpResult {
  std::vector<int> support;
  Eigen::VectorXd coeffs;
};

OmpResult omp_select(const Eigen::VectorXd &y, const Eigen::MatrixXd &atoms, int sparsity) {
  OmpResult result;
  Eigen::VectorXd residual = y;
  for (int step = 0; step < sparsity; ++step) {
    int best = -1;
    double best_corr = 0.0;
    for (int j = 0; j < atoms.cols(); ++j) {
      bool used = false;
      for (int s : result.support) {
        if (s == j) {
          used = true;
          break;
        }
      }
      if (used) continue;
      const double corr = std::abs(atoms.col(j).dot(residual));
      if (corr > best_corr) {
        best_corr = corr;
        best = j;
      }
    }
    if (best < 0 || best_corr < 1e-14) break;
    result.support.push_back(best);

    Eigen::MatrixXd sub(atoms.rows(), static_cast<Eigen::Index>(result.support.size()));
    for (std::size_t c = 0; c < result.support.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = atoms.col(result.support[c]);
    }
    result.coeffs = sub.colPivHouseholderQr().solve(y);
    residual = y - sub * result.coeffs;
  }
  return result;
}

}  // namespace

Eigen::VectorXd sparse_code(const Eigen::VectorXd &y, const Dictionary &dictionary) {
  if (y.size() != dictionary.atoms.rows()) {
    throw DimensionMismatchError("sparse_code: signal length " + std::to_string(y.size()) +
                                 " != atom length " + std::to_string(dictionary.atoms.rows()));
  }
  const OmpResult picked = omp_select(y, dictionary.atoms, dictionary.sparsity);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(dictionary.atoms.cols());
  for (std::size_t c = 0; c < picked.support.size(); ++c) {
    s(picked.support[c]) = picked.coeffs(static_cast<Eigen::Index>(c));
  }
  return s;
}

Eigen::MatrixXd encoded_matrix(const EncodedDataset &data) {
  Eigen::MatrixXd y(data.n, data.m());
  for (int i = 0; i < data.m(); ++i) {
    for (int j = 0; j < data.n; ++j) {
      y(j, i) = data.states[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return y;
}

BaselineFit fit_dictionary(const Eigen::MatrixXd &data, int sparsity, int iterations) {
  const Eigen::Index n = data.rows();
  const Eigen::Index m = data.cols();
  if (m < 1) throw std::invalid_argument("fit_dictionary: dataset is empty");
  if (sparsity < 1 || sparsity > n) {
    throw std::invalid_argument("fit_dictionary: sparsity must satisfy 1 <= d <= N");
  }
  if (iterations < 0) throw std::invalid_argument("fit_dictionary: iterations must be >= 0");

  BaselineFit fit;
  fit.dictionary.sparsity = sparsity;
  // Full left singular basis: orthonormal, spans the data, and reduces to
  // the PCA basis when coding picks the top components.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeFullU);
  fit.dictionary.atoms = svd.matrixU();

  Eigen::MatrixXd codes(n, m);
  const auto code_all = [&]() {
    for (Eigen::Index i = 0; i < m; ++i) {
      codes.col(i) = sparse_code(data.col(i), fit.dictionary);
    }
  };
  const auto current_loss = [&]() { return (data - fit.dictionary.atoms * codes).squaredNorm(); };

  code_all();
  fit.loss_curve.push_back(current_loss());

  for (int it = 0; it < iterations; ++it) {
    code_all();
    for (Eigen::Index k = 0; k < fit.dictionary.atoms.cols(); ++k) {
      std::vector<Eigen::Index> users;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (codes(k, i) != 0.0) users.push_back(i);
      }
      if (users.empty()) {
        // Re-seed a dead atom from the worst-reconstructed sample so it can
        // start earning usage next sweep.
        Eigen::Index worst = 0;
        double worst_err = -1.0;
        for (Eigen::Index i = 0; i < m; ++i) {
          const double err = (data.col(i) - fit.dictionary.atoms * codes.col(i)).squaredNorm();
          if (err > worst_err) {
            worst_err = err;
            worst = i;
          }
        }
        const double norm = data.col(worst).norm();
        if (norm > 0.0) fit.dictionary.atoms.col(k) = data.col(worst) / norm;
        ++fit.reseeded_atoms;
        continue;
      }

      Eigen::MatrixXd restricted(n, static_cast<Eigen::Index>(users.size()));
      for (std::size_t c = 0; c < users.size(); ++c) {
        const Eigen::Index i = users[c];
        restricted.col(static_cast<Eigen::Index>(c)) =
            data.col(i) - fit.dictionary.atoms * codes.col(i) +
            fit.dictionary.atoms.col(k) * codes(k, i);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> rank1(restricted,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
      fit.dictionary.atoms.col(k) = rank1.matrixU().col(0);
      const double sigma = rank1.singularValues()(0);
      for (std::size_t c = 0; c < users.size(); ++c) {
        codes(k, users[c]) = sigma * rank1.matrixV()(static_cast<Eigen::Index>(c), 0);
      }
    }
    fit.loss_curve.push_back(current_loss());
  }
  return fit;
}

}  // namespace qnic

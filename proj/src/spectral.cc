// Copyright 2026 The rekoop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rekoop/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "rekoop/errors.h"

namespace rekoop {

bool DominanceLess(const Complex& a, const Complex& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

void SortByDominance(std::vector<Complex>& values) {
  std::stable_sort(values.begin(), values.end(), DominanceLess);
}

Spectrum Eig(const Eigen::Ref<const Eigen::MatrixXd>& matrix, std::int64_t source_count) {
  if (matrix.rows() != matrix.cols()) throw InvalidArgument("eig: matrix must be square");
  if (!matrix.allFinite()) throw InvalidArgument("eig: matrix has non-finite entries");
  Spectrum out;
  out.source_count = source_count;
  const Eigen::Index k = matrix.rows();
  if (k == 0) return out;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig: real Schur iteration did not converge");
  }
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  if (!values.allFinite() || !vectors.allFinite()) {
    throw NumericalError("eig: eigensolver produced non-finite values");
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return DominanceLess(values[a], values[b]);
  });
  out.eigenvalues.reserve(static_cast<size_t>(k));
  out.eigenvectors.resize(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index src = order[static_cast<size_t>(j)];
    out.eigenvalues.push_back(values[src]);
    Eigen::VectorXcd v = vectors.col(src);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    out.eigenvectors.col(j) = v;
  }
  return out;
}

Spectrum Eig(const KoopmanModel& model) { return Eig(model.k_matrix, model.sample_count); }

std::vector<Complex> Dominant(const Spectrum& spectrum, int m) {
  if (m < 0) throw InvalidArgument("dominant: m must be positive");
  if (static_cast<size_t>(m) > spectrum.eigenvalues.size()) {
    throw InvalidArgument("dominant: m=" + std::to_string(m) + " exceeds spectrum size " +
                          std::to_string(spectrum.eigenvalues.size()));
  }
  return {spectrum.eigenvalues.begin(), spectrum.eigenvalues.begin() + m};
}

std::vector<Complex> UnstableModes(const Spectrum& spectrum, double tol) {
  std::vector<Complex> out;
  for (const Complex& lambda : spectrum.eigenvalues) {
    if (std::abs(lambda) > 1.0 + tol) out.push_back(lambda);
  }
  return out;
}

ContinuousSpectrum ToContinuous(const std::vector<Complex>& eigenvalues, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("to_continuous: dt must be positive");
  ContinuousSpectrum out;
  for (const Complex& lambda : eigenvalues) {
    if (lambda == Complex(0.0, 0.0)) {
      ++out.dropped_zero;
      continue;
    }
    out.values.push_back(std::log(lambda) / dt);
  }
  return out;
}

ContinuousSpectrum ToContinuous(const Spectrum& spectrum, double dt) {
  return ToContinuous(spectrum.eigenvalues, dt);
}

double GreedyMatchDistance(std::vector<Complex> estimate, std::vector<Complex> truth, int m) {
  if (m < 0 || static_cast<size_t>(m) > estimate.size() ||
      static_cast<size_t>(m) > truth.size()) {
    throw InvalidArgument("greedy match: m exceeds the number of eigenvalues");
  }
  SortByDominance(estimate);
  std::vector<bool> taken(truth.size(), false);
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    size_t best_j = 0;
    for (size_t j = 0; j < truth.size(); ++j) {
      if (taken[j]) continue;
      const double d = std::abs(estimate[static_cast<size_t>(i)] - truth[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    taken[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double HausdorffDistance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const Complex& p : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const Complex& q : to) nearest = std::min(nearest, std::abs(p - q));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace rekoop

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

#include "rekoop/dictionary.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rekoop/errors.h"

namespace rekoop {

std::string_view ToString(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::kLinear:
      return "linear";
    case DictionaryKind::kGaussianRbf:
      return "gaussian_rbf";
    case DictionaryKind::kComposite:
      return "composite";
  }
  return "unknown";
}

DictionaryKind DictionaryKindFromString(std::string_view name) {
  if (name == "linear") return DictionaryKind::kLinear;
  if (name == "gaussian_rbf" || name == "rbf") return DictionaryKind::kGaussianRbf;
  if (name == "composite") return DictionaryKind::kComposite;
  throw InvalidArgument("unknown dictionary kind '" + std::string(name) + "'");
}

Dictionary Dictionary::Linear(int state_dim) {
  if (state_dim < 1) {
    throw InvalidArgument("linear dictionary needs state_dim >= 1");
  }
  Dictionary d;
  d.kind_ = DictionaryKind::kLinear;
  d.state_dim_ = state_dim;
  d.feature_dim_ = state_dim;
  return d;
}

Dictionary Dictionary::Rbf(const Eigen::MatrixXd& centers, double gamma,
                           bool include_state) {
  if (centers.rows() < 1 || centers.cols() < 1) {
    throw InvalidArgument("rbf dictionary needs at least one center of dimension >= 1");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("rbf gamma must be positive and finite");
  }
  if (!centers.allFinite()) {
    throw InvalidArgument("rbf centers must be finite");
  }
  Dictionary d;
  d.kind_ = include_state ? DictionaryKind::kComposite : DictionaryKind::kGaussianRbf;
  d.state_dim_ = static_cast<int>(centers.cols());
  d.centers_ = centers;
  d.gamma_ = gamma;
  d.feature_dim_ = static_cast<int>(centers.rows()) + (include_state ? d.state_dim_ : 0);
  return d;
}

void Dictionary::LiftInto(const Eigen::Ref<const Eigen::VectorXd>& x,
                          Eigen::Ref<Eigen::VectorXd> out) const {
  if (kind_ == DictionaryKind::kLinear) {
    out = x;
    return;
  }
  Eigen::Index offset = 0;
  if (kind_ == DictionaryKind::kComposite) {
    out.head(state_dim_) = x;
    offset = state_dim_;
  }
  const Eigen::Index n_centers = centers_.rows();
  // Scalar loops: vectorized exp would make the result depend on the
  // alignment of out, breaking Lift/LiftBatch bitwise agreement.
  for (Eigen::Index j = 0; j < n_centers; ++j) {
    double dist2 = 0.0;
    for (Eigen::Index i = 0; i < state_dim_; ++i) {
      const double diff = x[i] - centers_(j, i);
      dist2 += diff * diff;
    }
    out[offset + j] = std::exp(-gamma_ * dist2);
  }
}

Eigen::VectorXd Dictionary::Lift(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != state_dim_) {
    throw InvalidArgument("lift: state has dimension " + std::to_string(x.size()) +
                          ", dictionary expects " + std::to_string(state_dim_));
  }
  if (!x.allFinite()) {
    throw InvalidArgument("lift: state has non-finite entries");
  }
  Eigen::VectorXd out(feature_dim_);
  LiftInto(x, out);
  return out;
}

Eigen::MatrixXd Dictionary::LiftBatch(const Eigen::Ref<const Eigen::MatrixXd>& states) const {
  if (states.rows() != state_dim_) {
    throw InvalidArgument("lift_batch: states have " + std::to_string(states.rows()) +
                          " rows, dictionary expects " + std::to_string(state_dim_));
  }
  if (!states.allFinite()) {
    throw InvalidArgument("lift_batch: states have non-finite entries");
  }
  if (kind_ == DictionaryKind::kLinear) return states;
  Eigen::MatrixXd out(feature_dim_, states.cols());
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    LiftInto(states.col(j), out.col(j));
  }
  return out;
}

bool Dictionary::operator==(const Dictionary& other) const {
  return kind_ == other.kind_ && state_dim_ == other.state_dim_ &&
         feature_dim_ == other.feature_dim_ && gamma_ == other.gamma_ &&
         centers_.rows() == other.centers_.rows() &&
         centers_.cols() == other.centers_.cols() && centers_ == other.centers_;
}

double MedianHeuristicGamma(const Eigen::MatrixXd& centers) {
  const Eigen::Index k = centers.rows();
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(k * (k - 1) / 2));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      dists.push_back((centers.row(i) - centers.row(j)).norm());
    }
  }
  if (dists.empty()) {
    throw InvalidArgument("median heuristic needs at least two centers");
  }
  const size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
  double median = dists[mid];
  if (dists.size() % 2 == 0) {
    const double lower = *std::max_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  if (!(median > 0.0)) {
    throw InvalidArgument("median heuristic: centers are not distinct");
  }
  return 1.0 / (median * median);
}

Eigen::MatrixXd CentersFromData(const Eigen::Ref<const Eigen::MatrixXd>& data, int k,
                                std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("centers_from_data: k must be >= 1");
  if (k > data.cols()) {
    throw InvalidArgument("centers_from_data: k=" + std::to_string(k) +
                          " exceeds the " + std::to_string(data.cols()) + " available columns");
  }
  if (!data.allFinite()) {
    throw InvalidArgument("centers_from_data: data has non-finite entries");
  }
  // Partial Fisher-Yates over column indices.
  std::vector<Eigen::Index> idx(static_cast<size_t>(data.cols()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<size_t> pick(static_cast<size_t>(i), idx.size() - 1);
    std::swap(idx[static_cast<size_t>(i)], idx[pick(rng)]);
  }
  Eigen::MatrixXd centers(k, data.rows());
  for (int i = 0; i < k; ++i) {
    centers.row(i) = data.col(idx[static_cast<size_t>(i)]).transpose();
  }
  return centers;
}

}  // namespace rekoop

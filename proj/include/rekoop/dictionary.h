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

#ifndef REKOOP_DICTIONARY_H_
#define REKOOP_DICTIONARY_H_

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace rekoop {

enum class DictionaryKind { kLinear, kGaussianRbf, kComposite };

std::string_view ToString(DictionaryKind kind);
DictionaryKind DictionaryKindFromString(std::string_view name);

// A fixed set of observables psi_1..psi_K mapping states in R^N to R^K.
//
// Linear is the identity (plain DMD). GaussianRbf evaluates
// exp(-gamma * |x - c_j|^2) for each center c_j. Composite stacks the raw
// state coordinates on top of the RBF block.
//
// Immutable after construction; safe for concurrent readers.
class Dictionary {
 public:
  static Dictionary Linear(int state_dim);
  // centers is K_rbf x N, one center per row.
  static Dictionary Rbf(const Eigen::MatrixXd& centers, double gamma,
                        bool include_state);

  DictionaryKind kind() const { return kind_; }
  int state_dim() const { return state_dim_; }
  int feature_dim() const { return feature_dim_; }
  int rbf_count() const { return static_cast<int>(centers_.rows()); }
  const Eigen::MatrixXd& centers() const { return centers_; }
  double gamma() const { return gamma_; }
  bool include_state() const { return kind_ == DictionaryKind::kComposite; }

  // Psi(x). Throws InvalidArgument on a dimension mismatch or non-finite x.
  Eigen::VectorXd Lift(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  // Column j of the result is Lift(column j of states).
  Eigen::MatrixXd LiftBatch(const Eigen::Ref<const Eigen::MatrixXd>& states) const;

  // Writes Psi(x) into out without validating x; out must have feature_dim
  // rows. Used on hot paths after the caller has already checked the input.
  void LiftInto(const Eigen::Ref<const Eigen::VectorXd>& x,
                Eigen::Ref<Eigen::VectorXd> out) const;

  bool operator==(const Dictionary& other) const;

 private:
  Dictionary() = default;

  DictionaryKind kind_ = DictionaryKind::kLinear;
  int state_dim_ = 0;
  int feature_dim_ = 0;
  Eigen::MatrixXd centers_;
  double gamma_ = 0.0;
};

// Median heuristic: 1 / median(pairwise center distance)^2. Needs at least
// two distinct centers.
double MedianHeuristicGamma(const Eigen::MatrixXd& centers);

// Picks k columns of data (N x M) by seeded uniform sampling without
// replacement and returns them as the rows of a k x N matrix.
Eigen::MatrixXd CentersFromData(const Eigen::Ref<const Eigen::MatrixXd>& data,
                                int k, std::uint64_t seed);

}  // namespace rekoop

#endif  // REKOOP_DICTIONARY_H_

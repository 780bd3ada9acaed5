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

#ifndef REKOOP_KOOPMAN_H_
#define REKOOP_KOOPMAN_H_

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "rekoop/dictionary.h"

namespace rekoop {

// A frozen finite-dimensional Koopman operator. The convention throughout is
// k_matrix * Psi(x) ~= Psi(T(x)) on lifted column vectors.
struct KoopmanModel {
  Eigen::MatrixXd k_matrix;
  Dictionary dict;
  // Optional N x K map from feature space back to state space.
  std::optional<Eigen::MatrixXd> projection;
  std::int64_t sample_count = 0;
  double delta = 0.0;
  // Number of leading trajectory rows the fit consumed, when known.
  std::optional<std::int64_t> train_rows;

  // Throws InvalidArgument when shapes disagree with the dictionary.
  void Validate() const;
};

enum class UpdateStatus { kAccepted, kRejected };

// Recursive EDMD state.
//
// Holds phi_inv = (delta*I + sum_i u_i u_i^T)^-1 and z = sum_i v_i u_i^T for
// lifted pairs (u_i, v_i) = (Psi(x_i), Psi(y_i)), and the operator
// K = z * phi_inv. Every update is a Sherman-Morrison rank-one downdate of
// phi_inv plus rank-one corrections of z and K: O(K^2) work, never a K x K
// inversion or factorization.
//
// K is carried in innovation form, K += (v - K u) g^T / (1 + u^T g) with
// g = phi_inv * u, which equals z_{M+1} * phi_inv_{M+1} exactly in real
// arithmetic but does not inherit the cancellation in phi_inv when delta is
// tiny and phi_inv starts at 1/delta.
//
// Single writer: updates must be applied in arrival order from one thread.
class KoopmanStream {
 public:
  // Throws InvalidArgument unless delta > 0.
  KoopmanStream(Dictionary dict, double delta);

  // Lifts the pair and applies one update. Non-finite states (or lifts) are
  // rejected and counted without touching the state; a dimension mismatch
  // throws InvalidArgument.
  UpdateStatus Update(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y);

  // Same as Update for already lifted vectors of length feature_dim.
  UpdateStatus UpdateLifted(const Eigen::Ref<const Eigen::VectorXd>& u,
                            const Eigen::Ref<const Eigen::VectorXd>& v);

  const Eigen::MatrixXd& CurrentOperator() const { return k_; }

  // z * phi_inv recomputed from the accumulated moments; O(K^3).
  Eigen::MatrixXd OperatorFromMoments() const { return z_ * phi_inv_; }

  KoopmanModel Snapshot() const;

  const Dictionary& dictionary() const { return dict_; }
  const Eigen::MatrixXd& phi_inv() const { return phi_inv_; }
  const Eigen::MatrixXd& z() const { return z_; }
  double delta() const { return delta_; }
  std::int64_t count() const { return count_; }
  std::int64_t rejected_count() const { return rejected_; }
  // Smallest Sherman-Morrison denominator 1 + u^T phi_inv u seen so far
  // (+inf before the first accepted update).
  double min_denominator() const { return min_denominator_; }
  double last_denominator() const { return last_denominator_; }

 private:
  Dictionary dict_;
  double delta_;
  Eigen::MatrixXd phi_inv_;
  Eigen::MatrixXd z_;
  Eigen::MatrixXd k_;
  std::int64_t count_ = 0;
  std::int64_t rejected_ = 0;
  double min_denominator_;
  double last_denominator_;
  // Scratch, reused across updates.
  Eigen::VectorXd u_, v_, gain_, residual_;
};

// stream_init followed by one update per column pair, in column order.
KoopmanStream StreamFit(const Dictionary& dict,
                        const Eigen::Ref<const Eigen::MatrixXd>& xp,
                        const Eigen::Ref<const Eigen::MatrixXd>& xf, double delta);

// yf * pinv(yp) with singular values below max(K, M) * eps * sigma_max
// treated as zero. Empty data gives the zero operator.
Eigen::MatrixXd FitBatchPinv(const Eigen::Ref<const Eigen::MatrixXd>& yp,
                             const Eigen::Ref<const Eigen::MatrixXd>& yf);

// yf * yp^T * (yp * yp^T + delta * I)^-1 through a Cholesky factorization.
// This is the closed form of the streamed operator.
Eigen::MatrixXd FitBatchRidge(const Eigen::Ref<const Eigen::MatrixXd>& yp,
                              const Eigen::Ref<const Eigen::MatrixXd>& yf, double delta);

// target * pinv(features) for any row count of target; shared by the
// pseudo-inverse fit and the state projection.
Eigen::MatrixXd RightPinvSolve(const Eigen::Ref<const Eigen::MatrixXd>& features,
                               const Eigen::Ref<const Eigen::MatrixXd>& target);

}  // namespace rekoop

#endif  // REKOOP_KOOPMAN_H_

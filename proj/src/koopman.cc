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

#include "rekoop/koopman.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "rekoop/errors.h"

namespace rekoop {

void KoopmanModel::Validate() const {
  const Eigen::Index k = dict.feature_dim();
  if (k_matrix.rows() != k || k_matrix.cols() != k) {
    throw InvalidArgument("model: k_matrix must be " + std::to_string(k) + "x" +
                          std::to_string(k));
  }
  if (!k_matrix.allFinite()) throw InvalidArgument("model: k_matrix has non-finite entries");
  if (projection) {
    if (projection->rows() != dict.state_dim() || projection->cols() != k) {
      throw InvalidArgument("model: projection must be " + std::to_string(dict.state_dim()) +
                            "x" + std::to_string(k));
    }
    if (!projection->allFinite()) {
      throw InvalidArgument("model: projection has non-finite entries");
    }
  }
}

KoopmanStream::KoopmanStream(Dictionary dict, double delta)
    : dict_(std::move(dict)),
      delta_(delta),
      min_denominator_(std::numeric_limits<double>::infinity()),
      last_denominator_(std::numeric_limits<double>::quiet_NaN()) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("stream: delta must be positive and finite");
  }
  const Eigen::Index k = dict_.feature_dim();
  phi_inv_ = Eigen::MatrixXd::Identity(k, k) / delta_;
  z_ = Eigen::MatrixXd::Zero(k, k);
  k_ = Eigen::MatrixXd::Zero(k, k);
  u_.resize(k);
  v_.resize(k);
  gain_.resize(k);
  residual_.resize(k);
}

UpdateStatus KoopmanStream::Update(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  const int n = dict_.state_dim();
  if (x.size() != n || y.size() != n) {
    throw InvalidArgument("stream update: pair has dimensions (" + std::to_string(x.size()) +
                          ", " + std::to_string(y.size()) + "), expected " + std::to_string(n));
  }
  if (!x.allFinite() || !y.allFinite()) {
    ++rejected_;
    return UpdateStatus::kRejected;
  }
  dict_.LiftInto(x, u_);
  dict_.LiftInto(y, v_);
  return UpdateLifted(u_, v_);
}

UpdateStatus KoopmanStream::UpdateLifted(const Eigen::Ref<const Eigen::VectorXd>& u,
                                         const Eigen::Ref<const Eigen::VectorXd>& v) {
  const Eigen::Index k = dict_.feature_dim();
  if (u.size() != k || v.size() != k) {
    throw InvalidArgument("stream update: lifted pair has wrong dimension, expected " +
                          std::to_string(k));
  }
  if (!u.allFinite() || !v.allFinite()) {
    ++rejected_;
    return UpdateStatus::kRejected;
  }

  // g = phi_inv u; phi_inv is exactly symmetric so g^T = u^T phi_inv.
  gain_.noalias() = phi_inv_ * u;
  const double denom = 1.0 + u.dot(gain_);
  if (!std::isfinite(denom)) {
    ++rejected_;
    return UpdateStatus::kRejected;
  }

  // K <- K + (v - K u) g^T / denom
  residual_ = v;
  residual_.noalias() -= k_ * u;
  k_.noalias() += (residual_ / denom) * gain_.transpose();

  // z <- z + v u^T
  z_.noalias() += v * u.transpose();

  // phi_inv <- phi_inv - h h^T with h = g / sqrt(denom). Entry (i, j)
  // subtracts h_i * h_j, which rounds identically to h_j * h_i, so an exactly
  // symmetric phi_inv stays exactly symmetric.
  gain_ /= std::sqrt(denom);
  phi_inv_.noalias() -= gain_ * gain_.transpose();

  last_denominator_ = denom;
  min_denominator_ = std::min(min_denominator_, denom);
  ++count_;
  return UpdateStatus::kAccepted;
}

KoopmanModel KoopmanStream::Snapshot() const {
  return KoopmanModel{.k_matrix = k_,
                      .dict = dict_,
                      .projection = std::nullopt,
                      .sample_count = count_,
                      .delta = delta_,
                      .train_rows = std::nullopt};
}

KoopmanStream StreamFit(const Dictionary& dict, const Eigen::Ref<const Eigen::MatrixXd>& xp,
                        const Eigen::Ref<const Eigen::MatrixXd>& xf, double delta) {
  if (xp.rows() != xf.rows() || xp.cols() != xf.cols()) {
    throw InvalidArgument("stream_fit: Xp and Xf must have the same shape");
  }
  KoopmanStream stream(dict, delta);
  for (Eigen::Index j = 0; j < xp.cols(); ++j) {
    stream.Update(xp.col(j), xf.col(j));
  }
  return stream;
}

Eigen::MatrixXd RightPinvSolve(const Eigen::Ref<const Eigen::MatrixXd>& features,
                               const Eigen::Ref<const Eigen::MatrixXd>& target) {
  if (features.cols() != target.cols()) {
    throw InvalidArgument("pinv solve: features and target need the same column count");
  }
  const Eigen::Index k = features.rows();
  const Eigen::Index m = features.cols();
  if (m == 0 || k == 0) return Eigen::MatrixXd::Zero(target.rows(), k);
  if (!features.allFinite() || !target.allFinite()) {
    throw InvalidArgument("pinv solve: non-finite data");
  }

  // features = U S V^T  =>  target * features^+ = target V S^+ U^T
  Eigen::BDCSVD<Eigen::MatrixXd> svd(features, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("pinv solve: SVD did not converge");
  }
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double rtol =
      static_cast<double>(std::max(k, m)) * std::numeric_limits<double>::epsilon();
  const double cutoff = sigma.size() > 0 ? rtol * sigma[0] : 0.0;
  Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff) inv_sigma[i] = 1.0 / sigma[i];
  }
  Eigen::MatrixXd tv = target * svd.matrixV();
  tv *= inv_sigma.asDiagonal();
  return tv * svd.matrixU().transpose();
}

Eigen::MatrixXd FitBatchPinv(const Eigen::Ref<const Eigen::MatrixXd>& yp,
                             const Eigen::Ref<const Eigen::MatrixXd>& yf) {
  if (yp.rows() != yf.rows() || yp.cols() != yf.cols()) {
    throw InvalidArgument("fit_batch_pinv: Yp and Yf must have the same shape");
  }
  return RightPinvSolve(yp, yf);
}

Eigen::MatrixXd FitBatchRidge(const Eigen::Ref<const Eigen::MatrixXd>& yp,
                              const Eigen::Ref<const Eigen::MatrixXd>& yf, double delta) {
  if (yp.rows() != yf.rows() || yp.cols() != yf.cols()) {
    throw InvalidArgument("fit_batch_ridge: Yp and Yf must have the same shape");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("fit_batch_ridge: delta must be positive and finite");
  }
  const Eigen::Index k = yp.rows();
  if (yp.cols() == 0) return Eigen::MatrixXd::Zero(k, k);
  if (!yp.allFinite() || !yf.allFinite()) {
    throw InvalidArgument("fit_batch_ridge: non-finite data");
  }

  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(k, k) * delta;
  gram.selfadjointView<Eigen::Lower>().rankUpdate(yp);
  Eigen::LLT<Eigen::MatrixXd> llt(gram.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success) {
    throw NumericalError("fit_batch_ridge: Gram matrix is not positive definite");
  }
  // K^T = G^-1 (yp yf^T) since G is symmetric.
  Eigen::MatrixXd rhs = yp * yf.transpose();
  return llt.solve(rhs).transpose();
}

}  // namespace rekoop

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

#include "rekoop/predictor.h"

#include <string>
#include <utility>

#include "rekoop/errors.h"

namespace rekoop {

ProjectionFit FitProjection(const Dictionary& dict,
                            const Eigen::Ref<const Eigen::MatrixXd>& states) {
  if (states.cols() < 1) throw InvalidArgument("fit_projection: no data");
  if (states.rows() != dict.state_dim()) {
    throw InvalidArgument("fit_projection: states have the wrong dimension");
  }
  ProjectionFit fit;
  if (dict.kind() == DictionaryKind::kLinear) {
    // Identity attains zero residual, so it is a least-squares minimizer.
    fit.c = Eigen::MatrixXd::Identity(dict.state_dim(), dict.feature_dim());
    fit.residual = 0.0;
    return fit;
  }
  const Eigen::MatrixXd lifted = dict.LiftBatch(states);
  fit.c = RightPinvSolve(lifted, states);
  fit.residual = (states - fit.c * lifted).squaredNorm();
  return fit;
}

Predictor::Predictor(KoopmanModel model) : model_(std::move(model)) {
  model_.Validate();
  if (!model_.projection) {
    throw InvalidArgument("predictor: model has no projection matrix");
  }
}

Prediction Predictor::Predict(const Eigen::Ref<const Eigen::VectorXd>& x0, int n_steps) const {
  if (n_steps < 0) throw InvalidArgument("predict: n_steps must be nonnegative");
  const Eigen::MatrixXd& c = *model_.projection;
  const Eigen::MatrixXd& k = model_.k_matrix;

  Prediction out;
  out.states.resize(model_.dict.state_dim(), n_steps + 1);
  Eigen::VectorXd z = model_.dict.Lift(x0);
  Eigen::VectorXd next(z.size());
  out.states.col(0) = c * z;
  for (int n = 1; n <= n_steps; ++n) {
    next.noalias() = k * z;
    out.states.col(n).noalias() = c * next;
    if (!next.allFinite() || !out.states.col(n).allFinite()) {
      out.overflow_step = n;
      out.states.conservativeResize(Eigen::NoChange, n);
      break;
    }
    z.swap(next);
  }
  return out;
}

MseResult Mse(const Eigen::Ref<const Eigen::MatrixXd>& predicted,
              const Eigen::Ref<const Eigen::MatrixXd>& truth) {
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
    throw InvalidArgument("mse: shape mismatch");
  }
  if (predicted.cols() == 0) throw InvalidArgument("mse: empty horizon");
  MseResult out;
  out.per_state = (predicted - truth).array().square().rowwise().mean();
  out.mean = out.per_state.mean();
  return out;
}

std::vector<HorizonResult> EvaluateHorizon(const Dictionary& dict, double delta,
                                           const std::vector<int>& train_sizes,
                                           const Eigen::Ref<const Eigen::MatrixXd>& trajectory,
                                           int test_start, int test_end) {
  if (test_start < 0 || test_end < test_start || test_end >= trajectory.cols()) {
    throw InvalidArgument("evaluate_horizon: test window [" + std::to_string(test_start) + ", " +
                          std::to_string(test_end) + "] is outside the trajectory");
  }
  for (int size : train_sizes) {
    if (size < 1) throw InvalidArgument("evaluate_horizon: training sizes must be >= 1");
    // Training touches rows 0..size.
    if (size >= test_start) {
      throw InvalidArgument("evaluate_horizon: training size " + std::to_string(size) +
                            " overlaps the test window starting at " +
                            std::to_string(test_start));
    }
  }

  const Eigen::MatrixXd truth = trajectory.middleCols(test_start, test_end - test_start + 1);
  std::vector<HorizonResult> results;
  results.reserve(train_sizes.size());
  for (int size : train_sizes) {
    KoopmanStream stream = StreamFit(dict, trajectory.leftCols(size),
                                     trajectory.middleCols(1, size), delta);
    KoopmanModel model = stream.Snapshot();
    model.projection = FitProjection(dict, trajectory.leftCols(size + 1)).c;
    model.train_rows = size + 1;
    const Predictor predictor(std::move(model));
    const Prediction pred = predictor.Predict(truth.col(0), test_end - test_start);

    HorizonResult row;
    row.train_size = size;
    row.overflow_step = pred.overflow_step;
    row.mse = Mse(pred.states, truth.leftCols(pred.states.cols()));
    results.push_back(std::move(row));
  }
  return results;
}

}  // namespace rekoop

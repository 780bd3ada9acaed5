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

#ifndef REKOOP_PREDICTOR_H_
#define REKOOP_PREDICTOR_H_

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "rekoop/dictionary.h"
#include "rekoop/koopman.h"

namespace rekoop {

struct ProjectionFit {
  Eigen::MatrixXd c;     // N x K
  double residual = 0;   // sum_i |x_i - C Psi(x_i)|^2
};

// Least-squares map from feature space back to state space,
// C = X * pinv(Psi(X)). For a linear dictionary this is the identity.
ProjectionFit FitProjection(const Dictionary& dict, const Eigen::Ref<const Eigen::MatrixXd>& states);

struct Prediction {
  // N x (steps + 1); column 0 is C * Psi(x0). Truncated at the overflow step
  // if propagation stopped early.
  Eigen::MatrixXd states;
  // First step whose lifted state was non-finite, if any.
  std::optional<int> overflow_step;
};

// Linear predictor: lift x0 once, propagate z_n = K z_{n-1} in feature space
// and read states back out as C z_n.
class Predictor {
 public:
  // The model must carry a projection.
  explicit Predictor(KoopmanModel model);

  Prediction Predict(const Eigen::Ref<const Eigen::VectorXd>& x0, int n_steps) const;

  const KoopmanModel& model() const { return model_; }

 private:
  KoopmanModel model_;
};

struct MseResult {
  Eigen::VectorXd per_state;
  double mean = 0.0;
};

MseResult Mse(const Eigen::Ref<const Eigen::MatrixXd>& predicted,
              const Eigen::Ref<const Eigen::MatrixXd>& truth);

struct HorizonResult {
  int train_size = 0;
  MseResult mse;
  std::optional<int> overflow_step;
};

// For each training size M: stream-fit on the first M pairs of the
// trajectory, fit C on rows 0..M, then predict rows test_start..test_end
// (inclusive) from the true state at test_start. Throws InvalidArgument if a
// training window reaches into the test window.
std::vector<HorizonResult> EvaluateHorizon(const Dictionary& dict, double delta,
                                           const std::vector<int>& train_sizes,
                                           const Eigen::Ref<const Eigen::MatrixXd>& trajectory,
                                           int test_start, int test_end);

}  // namespace rekoop

#endif  // REKOOP_PREDICTOR_H_

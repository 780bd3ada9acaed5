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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rekoop/datagen.h"
#include "rekoop/errors.h"
#include "rekoop/koopman.h"
#include "rekoop/predictor.h"

namespace rekoop {
namespace {

KoopmanModel LinearModel(const Eigen::MatrixXd& k) {
  const int n = static_cast<int>(k.rows());
  return KoopmanModel{.k_matrix = k,
                      .dict = Dictionary::Linear(n),
                      .projection = Eigen::MatrixXd::Identity(n, n)};
}

TEST(FitProjection, LinearIsIdentity) {
  const ProjectionFit fit = FitProjection(Dictionary::Linear(3), Eigen::MatrixXd::Random(3, 10));
  EXPECT_EQ(fit.c, Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(fit.residual, 0.0);
}

TEST(FitProjection, CompositeRecoversStates) {
  const Dictionary d = Dictionary::Rbf(Eigen::MatrixXd::Random(6, 2), 1.0, true);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(2, 40);
  const ProjectionFit fit = FitProjection(d, x);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_LT((fit.c * d.LiftBatch(x) - x).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FitProjection, SinglePointInterpolated) {
  const Dictionary d = Dictionary::Rbf(Eigen::MatrixXd::Random(5, 3), 0.4, false);
  const Eigen::Vector3d x(0.2, -0.4, 0.9);
  const ProjectionFit fit = FitProjection(d, x);
  EXPECT_LT((fit.c * d.Lift(x) - x).norm(), 1e-10);
  EXPECT_THROW(FitProjection(d, Eigen::MatrixXd(3, 0)), InvalidArgument);
}

TEST(Predict, PowersExactOperator) {
  const LinearSystem sys = RandomStableLinear(5, 0.9, 4);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(5);
  const Prediction p = Predictor(LinearModel(sys.a_matrix)).Predict(x0, 100);
  ASSERT_EQ(p.states.cols(), 101);
  EXPECT_FALSE(p.overflow_step);
  Eigen::VectorXd x = x0;
  for (int n = 0; n <= 100; ++n) {
    EXPECT_LT((p.states.col(n) - x).norm(), 1e-8);
    x = sys.a_matrix * x;
  }
}

TEST(Predict, IdentityAndZeroOperators) {
  const Eigen::Vector2d x0(0.3, -1.2);
  const Prediction hold = Predictor(LinearModel(Eigen::Matrix2d::Identity())).Predict(x0, 5);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(hold.states.col(n), Eigen::VectorXd(x0));
  const Prediction zero = Predictor(LinearModel(Eigen::Matrix2d::Zero())).Predict(x0, 3);
  EXPECT_EQ(zero.states.col(0), Eigen::VectorXd(x0));
  EXPECT_EQ(zero.states.rightCols(3), Eigen::MatrixXd::Zero(2, 3));
  EXPECT_EQ(Predictor(LinearModel(Eigen::Matrix2d::Zero())).Predict(x0, 0).states.cols(), 1);
}

TEST(Predict, OverflowTruncates) {
  const Prediction p = Predictor(LinearModel(Eigen::Matrix2d::Identity() * 1e200)).Predict(Eigen::Vector2d(1, 1), 10);
  ASSERT_TRUE(p.overflow_step.has_value());
  EXPECT_EQ(p.states.cols(), *p.overflow_step);
  EXPECT_TRUE(p.states.allFinite());
}

TEST(Predict, RequiresProjection) {
  KoopmanModel m = LinearModel(Eigen::Matrix2d::Identity());
  m.projection.reset();
  EXPECT_THROW(Predictor{m}, InvalidArgument);
}

TEST(Predict, OneStepResidualBoundedByFitObjective) {
  const Dictionary d = Dictionary::Rbf(Eigen::MatrixXd::Random(10, 2), 1.0, true);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd xp(2, 80), xf(2, 80);
  for (Eigen::Index j = 0; j < 80; ++j) {
    xp.col(j) << normal(rng), normal(rng);
    xf.col(j) << std::sin(xp(0, j)), 0.5 * xp(1, j) + 0.1 * xp(0, j) * xp(0, j);
  }
  const Eigen::MatrixXd yp = d.LiftBatch(xp), yf = d.LiftBatch(xf);
  KoopmanModel m = StreamFit(d, xp, xf, 1e-8).Snapshot();
  m.projection = Eigen::MatrixXd::Zero(2, 12);
  m.projection->leftCols(2) = Eigen::Matrix2d::Identity();
  const double objective = (m.k_matrix * yp - yf).squaredNorm() / 80.0;
  double one_step = 0.0;
  const Predictor p(m);
  for (Eigen::Index j = 0; j < 80; ++j) {
    one_step += (p.Predict(xp.col(j), 1).states.col(1) - xf.col(j)).squaredNorm();
  }
  EXPECT_LE(one_step / 80.0, objective * (1 + 1e-9) + 1e-15);
}

TEST(Mse, HandCases) {
  const Eigen::MatrixXd t = Eigen::MatrixXd::Random(3, 4);
  EXPECT_EQ(Mse(t, t).mean, 0.0);
  const MseResult off = Mse(t.array() + 1.0, t);
  EXPECT_NEAR(off.mean, 1.0, 1e-15);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(off.per_state[i], 1.0, 1e-15);
  Eigen::MatrixXd p(1, 2), q(1, 2);
  p << 1, 3;
  q << 0, 0;
  EXPECT_DOUBLE_EQ(Mse(p, q).mean, 5.0);
  EXPECT_THROW(Mse(p, Eigen::MatrixXd::Zero(1, 3)), InvalidArgument);
  EXPECT_THROW(Mse(Eigen::MatrixXd(1, 0), Eigen::MatrixXd(1, 0)), InvalidArgument);
}

TEST(Mse, PermutationInvariantAcrossTime) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(2, 5), b = Eigen::MatrixXd::Random(2, 5);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
  perm.indices() << 4, 2, 0, 3, 1;
  EXPECT_NEAR(Mse(a * perm, b * perm).mean, Mse(a, b).mean, 1e-15);
  EXPECT_GE(Mse(a, b).mean, 0.0);
}

TEST(EvaluateHorizon, LeakageGuardAndTrend) {
  const LinearSystem sys = RandomStableLinear(6, 0.99, 6);
  const Eigen::MatrixXd traj = SimulateLinear(sys, Eigen::VectorXd::Ones(6), 1200);
  const Dictionary d = Dictionary::Linear(6);
  EXPECT_THROW(EvaluateHorizon(d, 1e-8, {700}, traj, 600, 900), InvalidArgument);
  const auto rows = EvaluateHorizon(d, 1e-8, {50, 1000}, traj, 1050, 1150);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LE(rows[1].mse.mean, rows[0].mse.mean);
  EXPECT_LT(rows[1].mse.mean, 1e-10);
}

}  // namespace
}  // namespace rekoop

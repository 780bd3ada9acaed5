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
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rekoop/datagen.h"
#include "rekoop/errors.h"
#include "rekoop/koopman.h"
#include "rekoop/spectral.h"

namespace rekoop {
namespace {

TEST(Eig, Diagonal) {
  const Spectrum s = Eig(Eigen::Vector2d(0.5, 0.9).asDiagonal().toDenseMatrix());
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(std::abs(s.eigenvalues[0] - Complex(0.9, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvalues[1] - Complex(0.5, 0)), 0.0, 1e-15);
}

TEST(Eig, RotationScaling) {
  Eigen::Matrix2d m;
  m << 0.8, -0.3, 0.3, 0.8;
  const Spectrum s = Eig(m);
  EXPECT_NEAR(std::abs(s.eigenvalues[0] - Complex(0.8, 0.3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvalues[1] - Complex(0.8, -0.3)), 0.0, 1e-14);
}

TEST(Eig, RandomMatrixInvariants) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd k(6, 6);
  for (Eigen::Index i = 0; i < k.size(); ++i) k.data()[i] = normal(rng);
  const Spectrum s = Eig(k, 42);
  EXPECT_EQ(s.source_count, 42);
  const auto& ev = s.eigenvalues;
  for (size_t i = 1; i < ev.size(); ++i) EXPECT_GE(std::abs(ev[i - 1]), std::abs(ev[i]) - 1e-15);
  // Conjugate closure: every eigenvalue has its conjugate in the list.
  std::vector<bool> used(ev.size(), false);
  for (size_t i = 0; i < ev.size(); ++i) {
    double best = INFINITY;
    for (size_t j = 0; j < ev.size(); ++j) best = std::min(best, std::abs(std::conj(ev[i]) - ev[j]));
    EXPECT_LT(best, 1e-12);
  }
  const Eigen::MatrixXcd kc = k.cast<Complex>();
  for (size_t j = 0; j < ev.size(); ++j) {
    const Eigen::VectorXcd v = s.eigenvectors.col(static_cast<Eigen::Index>(j));
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LE((kc * v - ev[j] * v).norm(), 1e-8 * k.norm() * v.norm());
  }
}

TEST(Eig, ModelOverloadUsesSampleCount) {
  KoopmanModel m{.k_matrix = Eigen::Matrix2d::Identity() * 0.5, .dict = Dictionary::Linear(2), .sample_count = 7};
  EXPECT_EQ(Eig(m).source_count, 7);
}

TEST(Eig, NonFiniteInputThrows) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  m(0, 1) = NAN;
  EXPECT_THROW(Eig(m), InvalidArgument);
}

TEST(Dominant, SelectsLeadingAndBreaksTiesByRealPart) {
  const Spectrum s = Eig(Eigen::Vector3d(0.1, 0.9, 0.5).asDiagonal().toDenseMatrix());
  const auto top = Dominant(s, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_NEAR(top[0].real(), 0.9, 1e-15);
  EXPECT_NEAR(top[1].real(), 0.5, 1e-15);
  EXPECT_EQ(Dominant(s, 3).size(), 3u);
  EXPECT_THROW(Dominant(s, 4), InvalidArgument);

  const Spectrum tie = Eig(Eigen::Vector2d(-0.5, 0.5).asDiagonal().toDenseMatrix());
  EXPECT_NEAR(Dominant(tie, 1)[0].real(), 0.5, 1e-15);
}

TEST(UnstableModes, Threshold) {
  EXPECT_TRUE(UnstableModes(Eig(Eigen::Vector2d(0.99, 0.5).asDiagonal().toDenseMatrix()), 0.0).empty());
  const auto u = UnstableModes(Eig(Eigen::Vector2d(1.02, 0.9).asDiagonal().toDenseMatrix()), 0.01);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_NEAR(u[0].real(), 1.02, 1e-15);
}

TEST(UnstableModes, EmptyForLearnedStableSystem) {
  const LinearSystem sys = RandomStableLinear(10, 0.95, 8);
  const SnapshotPairs p = ToPairs(SimulateLinearBursts(sys, 1000, 25, 1.0, 9));
  const KoopmanStream s = StreamFit(Dictionary::Linear(10), p.xp, p.xf, 1e-6);
  EXPECT_TRUE(UnstableModes(Eig(s.CurrentOperator()), 1e-3).empty());
}

TEST(ToContinuous, LogMap) {
  const double dt = 0.01;
  const auto c = ToContinuous(std::vector<Complex>{Complex(1, 0), std::exp(Complex(-0.02, 0)),
                                                   std::exp(Complex(-1, 2) * dt), Complex(0, 0)},
                              dt);
  ASSERT_EQ(c.values.size(), 3u);
  EXPECT_NEAR(std::abs(c.values[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.values[1] - Complex(-2, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.values[2] - Complex(-1, 2)), 0.0, 1e-12);
  EXPECT_EQ(c.dropped_zero, 1);
  EXPECT_THROW(ToContinuous(std::vector<Complex>{1.0}, 0.0), InvalidArgument);
}

TEST(GreedyMatch, HandCases) {
  const std::vector<Complex> truth = {Complex(0.9, 0.1), Complex(0.9, -0.1), Complex(0.2, 0)};
  EXPECT_DOUBLE_EQ(GreedyMatchDistance(truth, truth, 3), 0.0);
  const std::vector<Complex> est = {Complex(0.9, 0.1), Complex(0.9, -0.1), Complex(0.25, 0)};
  EXPECT_NEAR(GreedyMatchDistance(est, truth, 3), 0.05, 1e-15);
  EXPECT_NEAR(GreedyMatchDistance(est, truth, 2), 0.0, 1e-15);
  EXPECT_THROW(GreedyMatchDistance(est, truth, 4), InvalidArgument);
}

TEST(Hausdorff, Symmetric) {
  const std::vector<Complex> a = {0.0, 1.0};
  const std::vector<Complex> b = {0.0, 1.0, 3.0};
  EXPECT_DOUBLE_EQ(HausdorffDistance(a, b), 2.0);
  EXPECT_DOUBLE_EQ(HausdorffDistance(b, a), 2.0);
}

TEST(Spectrum, DmdEigenvaluesMatchSystem) {
  const LinearSystem sys = RandomStableLinear(6, 0.9, 12);
  const SnapshotPairs p = ToPairs(SimulateLinearBursts(sys, 30, 3, 1.0, 13));
  const KoopmanStream s = StreamFit(Dictionary::Linear(6), p.xp, p.xf, 1e-12);
  EXPECT_LT(HausdorffDistance(Eig(s.CurrentOperator()).eigenvalues, sys.true_eigenvalues), 1e-6);
}

}  // namespace
}  // namespace rekoop

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

#ifndef REKOOP_DATAGEN_H_
#define REKOOP_DATAGEN_H_

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace rekoop {

// Derives an independent stream seed from a base seed and a counter, so one
// configured seed can feed every random consumer of a run.
std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t counter);

struct LinearSystem {
  Eigen::MatrixXd a_matrix;  // discrete-time transition x+ = A x
  double dt = 0.01;
  std::vector<std::complex<double>> true_eigenvalues;  // dominance order
  double spectral_radius = 0.0;
};

// Random Gaussian matrix rescaled so its spectral radius equals `radius`.
LinearSystem RandomStableLinear(int n, double radius, std::uint64_t seed, double dt = 0.01);

// Column 0 is x0; x_{t+1} = A x_t + noise_std * N(0, I).
Eigen::MatrixXd SimulateLinear(const LinearSystem& sys, const Eigen::Ref<const Eigen::VectorXd>& x0,
                               int steps, double noise_std = 0.0, std::uint64_t seed = 0);

// States plus the id of the trajectory segment each row belongs to. Snapshot
// pairs are only formed between consecutive states of the same segment.
struct SegmentedTrajectory {
  Eigen::MatrixXd states;     // N x L
  std::vector<int> segments;  // size L, or empty for a single segment
};

// Noiseless data from repeated perturbations: every `restart_every` steps
// the state is redrawn as N(0, perturbation^2 I) around the equilibrium 0.
SegmentedTrajectory SimulateLinearBursts(const LinearSystem& sys, int total_pairs,
                                         int restart_every, double perturbation,
                                         std::uint64_t seed);

struct SnapshotPairs {
  Eigen::MatrixXd xp;
  Eigen::MatrixXd xf;
};

// Xp = columns 0..L-1, Xf = columns 1..L. Throws on fewer than two columns.
SnapshotPairs ToPairs(const Eigen::Ref<const Eigen::MatrixXd>& trajectory);
SnapshotPairs ToPairs(const SegmentedTrajectory& trajectory);

// Classical multi-machine swing network with state (angles, frequencies):
//   d(delta_i)/dt = omega_i
//   M_i d(omega_i)/dt = P_i - D_i omega_i - sum_j k_ij sin(delta_i - delta_j)
struct SwingNetwork {
  Eigen::VectorXd inertia;
  Eigen::VectorXd damping;
  Eigen::MatrixXd coupling;  // symmetric, zero diagonal
  Eigen::VectorXd power_injection;

  int n_machines() const { return static_cast<int>(inertia.size()); }
  void Validate() const;
};

// Three machines in a ring, with injections chosen so that
// DefaultThreeMachineEquilibrium() is a synchronous equilibrium.
SwingNetwork DefaultThreeMachine();
Eigen::VectorXd DefaultThreeMachineEquilibrium();

// Injections P_i = sum_j k_ij sin(a_i - a_j) that make `angles` (with zero
// frequencies) an equilibrium of the network.
Eigen::VectorXd BalancingInjection(const Eigen::MatrixXd& coupling,
                                   const Eigen::Ref<const Eigen::VectorXd>& angles);

Eigen::VectorXd SwingRhs(const SwingNetwork& net, const Eigen::Ref<const Eigen::VectorXd>& state);

// Jacobian of SwingRhs at `state` (2n x 2n).
Eigen::MatrixXd SwingJacobian(const SwingNetwork& net, const Eigen::Ref<const Eigen::VectorXd>& state);

// E = 1/2 sum M_i w_i^2 - sum P_i d_i - sum_{i<j} k_ij cos(d_i - d_j);
// conserved when damping is zero.
double SwingEnergy(const SwingNetwork& net, const Eigen::Ref<const Eigen::VectorXd>& state);

// Equilibrium plus seeded uniform offsets in [-angle_mag, angle_mag] on the
// angles and [-freq_mag, freq_mag] on the frequencies.
Eigen::VectorXd PerturbState(const Eigen::Ref<const Eigen::VectorXd>& equilibrium, int n_machines,
                             double angle_mag, double freq_mag, std::uint64_t seed);

using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct RkTrajectory {
  Eigen::MatrixXd states;  // N x (steps + 1), or fewer columns if truncated
  std::optional<int> truncated_at;  // first step that produced a non-finite state
};

// Classical fourth-order Runge-Kutta with a fixed step.
RkTrajectory SimulateRk4(const VectorField& rhs, const Eigen::Ref<const Eigen::VectorXd>& x0,
                         double dt, int steps);

// Swing data from repeated perturbations around the equilibrium.
SegmentedTrajectory SimulateSwingBursts(const SwingNetwork& net,
                                        const Eigen::Ref<const Eigen::VectorXd>& equilibrium,
                                        double dt, int total_pairs, int restart_every,
                                        double angle_mag, double freq_mag, std::uint64_t seed);

}  // namespace rekoop

#endif  // REKOOP_DATAGEN_H_

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

#include "rekoop/datagen.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rekoop/errors.h"
#include "rekoop/spectral.h"

namespace rekoop {

std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer over seed + counter * golden gamma.
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

LinearSystem RandomStableLinear(int n, double radius, std::uint64_t seed, double dt) {
  if (n < 1) throw InvalidArgument("random_stable_linear: n must be >= 1");
  if (!(radius > 0.0 && radius < 1.0)) {
    throw InvalidArgument("random_stable_linear: spectral radius must lie in (0, 1)");
  }
  if (!(dt > 0.0)) throw InvalidArgument("random_stable_linear: dt must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  double actual = 0.0;
  for (const Complex& lambda : Eig(g).eigenvalues) actual = std::max(actual, std::abs(lambda));
  if (!(actual > 0.0)) throw NumericalError("random_stable_linear: degenerate random matrix");

  LinearSystem sys;
  sys.a_matrix = g * (radius / actual);
  sys.dt = dt;
  sys.true_eigenvalues = Eig(sys.a_matrix).eigenvalues;
  sys.spectral_radius = std::abs(sys.true_eigenvalues.front());
  return sys;
}

Eigen::MatrixXd SimulateLinear(const LinearSystem& sys, const Eigen::Ref<const Eigen::VectorXd>& x0,
                               int steps, double noise_std, std::uint64_t seed) {
  const Eigen::Index n = sys.a_matrix.rows();
  if (x0.size() != n) throw InvalidArgument("simulate_linear: x0 has the wrong dimension");
  if (steps < 1) throw InvalidArgument("simulate_linear: steps must be >= 1");
  if (noise_std < 0.0) throw InvalidArgument("simulate_linear: noise_std must be >= 0");

  Eigen::MatrixXd traj(n, steps + 1);
  traj.col(0) = x0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < steps; ++t) {
    traj.col(t + 1).noalias() = sys.a_matrix * traj.col(t);
    if (noise_std > 0.0) {
      for (Eigen::Index i = 0; i < n; ++i) traj(i, t + 1) += noise_std * normal(rng);
    }
  }
  return traj;
}

namespace {

// Lays out total_pairs transitions in segments of restart_every pairs; each
// segment starts from draw_start(segment) and advances with step().
template <typename Start, typename Step>
SegmentedTrajectory Bursts(Eigen::Index n, int total_pairs, int restart_every, Start draw_start,
                           Step step) {
  if (total_pairs < 1) throw InvalidArgument("bursts: total_pairs must be >= 1");
  if (restart_every < 0) throw InvalidArgument("bursts: restart_every must be >= 0");
  const int per_segment = restart_every == 0 ? total_pairs : restart_every;
  const int n_segments = (total_pairs + per_segment - 1) / per_segment;

  SegmentedTrajectory out;
  out.states.resize(n, total_pairs + n_segments);
  out.segments.reserve(static_cast<size_t>(total_pairs + n_segments));
  Eigen::Index col = 0;
  int remaining = total_pairs;
  for (int s = 0; s < n_segments; ++s) {
    const int pairs = std::min(per_segment, remaining);
    remaining -= pairs;
    out.states.col(col) = draw_start(s);
    out.segments.push_back(s);
    ++col;
    for (int t = 0; t < pairs; ++t, ++col) {
      out.states.col(col) = step(out.states.col(col - 1));
      out.segments.push_back(s);
    }
  }
  return out;
}

}  // namespace

SegmentedTrajectory SimulateLinearBursts(const LinearSystem& sys, int total_pairs,
                                         int restart_every, double perturbation,
                                         std::uint64_t seed) {
  if (!(perturbation > 0.0)) throw InvalidArgument("bursts: perturbation must be positive");
  const Eigen::Index n = sys.a_matrix.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, perturbation);
  return Bursts(
      n, total_pairs, restart_every,
      [&](int) {
        Eigen::VectorXd x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
        return x;
      },
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return sys.a_matrix * x; });
}

SnapshotPairs ToPairs(const Eigen::Ref<const Eigen::MatrixXd>& trajectory) {
  if (trajectory.cols() < 2) {
    throw InvalidArgument("to_pairs: trajectory needs at least two states");
  }
  const Eigen::Index l = trajectory.cols() - 1;
  return {trajectory.leftCols(l), trajectory.rightCols(l)};
}

SnapshotPairs ToPairs(const SegmentedTrajectory& trajectory) {
  if (trajectory.segments.empty()) return ToPairs(trajectory.states);
  if (trajectory.segments.size() != static_cast<size_t>(trajectory.states.cols())) {
    throw InvalidArgument("to_pairs: segment ids do not match the number of states");
  }
  std::vector<Eigen::Index> starts;
  for (Eigen::Index j = 0; j + 1 < trajectory.states.cols(); ++j) {
    if (trajectory.segments[static_cast<size_t>(j)] ==
        trajectory.segments[static_cast<size_t>(j + 1)]) {
      starts.push_back(j);
    }
  }
  if (starts.empty()) throw InvalidArgument("to_pairs: no segment holds two consecutive states");
  SnapshotPairs out;
  const Eigen::Index n = trajectory.states.rows();
  const auto m = static_cast<Eigen::Index>(starts.size());
  out.xp.resize(n, m);
  out.xf.resize(n, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.xp.col(i) = trajectory.states.col(starts[static_cast<size_t>(i)]);
    out.xf.col(i) = trajectory.states.col(starts[static_cast<size_t>(i)] + 1);
  }
  return out;
}

void SwingNetwork::Validate() const {
  const Eigen::Index n = inertia.size();
  if (n < 1) throw InvalidArgument("swing network: needs at least one machine");
  if (damping.size() != n || power_injection.size() != n || coupling.rows() != n ||
      coupling.cols() != n) {
    throw InvalidArgument("swing network: parameter sizes disagree");
  }
  if ((inertia.array() <= 0.0).any()) throw InvalidArgument("swing network: inertia must be > 0");
  if ((damping.array() < 0.0).any()) throw InvalidArgument("swing network: damping must be >= 0");
  if ((coupling.array() < 0.0).any()) {
    throw InvalidArgument("swing network: coupling must be nonnegative");
  }
  if (coupling != coupling.transpose() || coupling.diagonal().any()) {
    throw InvalidArgument("swing network: coupling must be symmetric with zero diagonal");
  }
}

Eigen::VectorXd BalancingInjection(const Eigen::MatrixXd& coupling,
                                   const Eigen::Ref<const Eigen::VectorXd>& angles) {
  const Eigen::Index n = angles.size();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) p[i] += coupling(i, j) * std::sin(angles[i] - angles[j]);
    }
  }
  return p;
}

Eigen::VectorXd DefaultThreeMachineEquilibrium() {
  Eigen::VectorXd eq = Eigen::VectorXd::Zero(6);
  eq.head(3) << 0.20, 0.05, -0.15;
  return eq;
}

SwingNetwork DefaultThreeMachine() {
  SwingNetwork net;
  net.inertia.resize(3);
  net.inertia << 0.125, 0.034, 0.016;
  net.damping.resize(3);
  net.damping << 0.05, 0.02, 0.01;
  net.coupling.resize(3, 3);
  net.coupling << 0.0, 1.6, 1.2,
                  1.6, 0.0, 1.4,
                  1.2, 1.4, 0.0;
  net.power_injection = BalancingInjection(net.coupling, DefaultThreeMachineEquilibrium().head(3));
  return net;
}

Eigen::VectorXd SwingRhs(const SwingNetwork& net, const Eigen::Ref<const Eigen::VectorXd>& state) {
  const Eigen::Index n = net.inertia.size();
  if (state.size() != 2 * n) throw InvalidArgument("swing_rhs: state must have 2n entries");
  Eigen::VectorXd out(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double flow = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) flow += net.coupling(i, j) * std::sin(state[i] - state[j]);
    }
    const double omega = state[n + i];
    out[i] = omega;
    out[n + i] = (net.power_injection[i] - net.damping[i] * omega - flow) / net.inertia[i];
  }
  return out;
}

Eigen::MatrixXd SwingJacobian(const SwingNetwork& net,
                              const Eigen::Ref<const Eigen::VectorXd>& state) {
  const Eigen::Index n = net.inertia.size();
  if (state.size() != 2 * n) throw InvalidArgument("swing_jacobian: state must have 2n entries");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  jac.topRightCorner(n, n).setIdentity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = net.coupling(i, j) * std::cos(state[i] - state[j]) / net.inertia[i];
      jac(n + i, i) -= c;
      jac(n + i, j) += c;
    }
    jac(n + i, n + i) = -net.damping[i] / net.inertia[i];
  }
  return jac;
}

double SwingEnergy(const SwingNetwork& net, const Eigen::Ref<const Eigen::VectorXd>& state) {
  const Eigen::Index n = net.inertia.size();
  double energy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double omega = state[n + i];
    energy += 0.5 * net.inertia[i] * omega * omega - net.power_injection[i] * state[i];
    for (Eigen::Index j = i + 1; j < n; ++j) {
      energy -= net.coupling(i, j) * std::cos(state[i] - state[j]);
    }
  }
  return energy;
}

Eigen::VectorXd PerturbState(const Eigen::Ref<const Eigen::VectorXd>& equilibrium, int n_machines,
                             double angle_mag, double freq_mag, std::uint64_t seed) {
  if (equilibrium.size() != 2 * n_machines) {
    throw InvalidArgument("perturb_state: equilibrium must have 2n entries");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd x = equilibrium;
  for (int i = 0; i < n_machines; ++i) x[i] += angle_mag * unit(rng);
  for (int i = 0; i < n_machines; ++i) x[n_machines + i] += freq_mag * unit(rng);
  return x;
}

RkTrajectory SimulateRk4(const VectorField& rhs, const Eigen::Ref<const Eigen::VectorXd>& x0,
                         double dt, int steps) {
  if (!(dt > 0.0)) throw InvalidArgument("simulate_rk4: dt must be positive");
  if (steps < 0) throw InvalidArgument("simulate_rk4: steps must be >= 0");
  RkTrajectory out;
  out.states.resize(x0.size(), steps + 1);
  out.states.col(0) = x0;
  Eigen::VectorXd x = x0;
  for (int t = 0; t < steps; ++t) {
    const Eigen::VectorXd k1 = rhs(x);
    const Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite()) {
      out.truncated_at = t + 1;
      out.states.conservativeResize(Eigen::NoChange, t + 1);
      return out;
    }
    out.states.col(t + 1) = x;
  }
  return out;
}

SegmentedTrajectory SimulateSwingBursts(const SwingNetwork& net,
                                        const Eigen::Ref<const Eigen::VectorXd>& equilibrium,
                                        double dt, int total_pairs, int restart_every,
                                        double angle_mag, double freq_mag, std::uint64_t seed) {
  net.Validate();
  const int n = net.n_machines();
  const VectorField rhs = [&net](const Eigen::VectorXd& s) { return SwingRhs(net, s); };
  return Bursts(
      2 * n, total_pairs, restart_every,
      [&](int segment) {
        return PerturbState(equilibrium, n, angle_mag, freq_mag,
                            SubSeed(seed, static_cast<std::uint64_t>(segment)));
      },
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        RkTrajectory one = SimulateRk4(rhs, x, dt, 1);
        if (one.truncated_at) throw NumericalError("swing simulation diverged");
        return one.states.col(1);
      });
}

}  // namespace rekoop

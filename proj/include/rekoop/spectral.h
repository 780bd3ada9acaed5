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

#ifndef REKOOP_SPECTRAL_H_
#define REKOOP_SPECTRAL_H_

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rekoop/koopman.h"

namespace rekoop {

using Complex = std::complex<double>;

struct Spectrum {
  // Sorted by descending magnitude, then descending real part, then
  // descending imaginary part.
  std::vector<Complex> eigenvalues;
  // Column j pairs with eigenvalues[j]; unit 2-norm columns.
  Eigen::MatrixXcd eigenvectors;
  std::int64_t source_count = 0;
};

// Full eigendecomposition of a real nonsymmetric matrix via the real Schur
// form. Throws NumericalError if the QR iteration does not converge or the
// result is non-finite.
Spectrum Eig(const Eigen::Ref<const Eigen::MatrixXd>& matrix, std::int64_t source_count = 0);
Spectrum Eig(const KoopmanModel& model);

// Strict weak ordering used for the spectrum sort and dominance ties.
bool DominanceLess(const Complex& a, const Complex& b);
void SortByDominance(std::vector<Complex>& values);

// The first m eigenvalues. Throws InvalidArgument if m > K.
std::vector<Complex> Dominant(const Spectrum& spectrum, int m);

inline constexpr double kUnstableTol = 1e-9;

// Eigenvalues with |lambda| > 1 + tol, in spectrum order.
std::vector<Complex> UnstableModes(const Spectrum& spectrum, double tol = kUnstableTol);

struct ContinuousSpectrum {
  std::vector<Complex> values;  // log(lambda) / dt, principal branch
  int dropped_zero = 0;         // eigenvalues equal to zero that were skipped
};

ContinuousSpectrum ToContinuous(const Spectrum& spectrum, double dt);
ContinuousSpectrum ToContinuous(const std::vector<Complex>& eigenvalues, double dt);

// Greedy nearest-neighbour matching: the first m entries of `estimate`
// (taken in dominance order) each claim the closest unclaimed entry of
// `truth`. Returns the largest matched distance.
double GreedyMatchDistance(std::vector<Complex> estimate, std::vector<Complex> truth, int m);

// Symmetric Hausdorff distance between two finite point sets in C.
double HausdorffDistance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace rekoop

#endif  // REKOOP_SPECTRAL_H_

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

// Plain-text CSV formats.
//
// Snapshot files hold one state per row under an `x1,...,xN` header.
// Consecutive rows form snapshot pairs. An optional leading `segment` column
// splits a file into independent trajectories; pairs never cross a segment
// boundary.

#ifndef REKOOP_CSV_H_
#define REKOOP_CSV_H_

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rekoop/datagen.h"
#include "rekoop/predictor.h"
#include "rekoop/spectral.h"

namespace rekoop {

// 17 significant digits; parses back to the same double.
std::string FormatDouble(double v);
double ParseDouble(std::string_view text);

struct SnapshotFile {
  SegmentedTrajectory trajectory;
  // 1-based line numbers of rows holding NaN or Inf. Those rows are kept so
  // that pair adjacency is preserved; consumers reject the affected pairs.
  std::vector<int> nonfinite_lines;
};

void WriteSnapshotCsv(std::ostream& out, const SegmentedTrajectory& trajectory);
void WriteSnapshotCsv(const std::string& path, const SegmentedTrajectory& trajectory);

// Throws DataError naming the offending line for malformed input.
SnapshotFile ReadSnapshotCsv(std::istream& in);
SnapshotFile ReadSnapshotCsv(const std::string& path);

// index,re,im,magnitude
void WriteSpectrumCsv(std::ostream& out, const Spectrum& spectrum);

// Streaming eigenvalue trajectories: sample_count,index,re,im
void WriteEigenTrajectoryHeader(std::ostream& out);
void WriteEigenTrajectoryRows(std::ostream& out, std::int64_t sample_count,
                              const std::vector<std::complex<double>>& eigenvalues);

// train_size,state_index,mse,mean_mse
void WriteHorizonCsv(std::ostream& out, const std::vector<HorizonResult>& results);

}  // namespace rekoop

#endif  // REKOOP_CSV_H_

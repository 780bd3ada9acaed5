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

#ifndef REKOOP_BENCHMARK_H_
#define REKOOP_BENCHMARK_H_

#include <iosfwd>
#include <vector>

#include "rekoop/datagen.h"
#include "rekoop/dictionary.h"

namespace rekoop {

struct CheckpointTiming {
  int sample_count = 0;
  // Wall time of all streaming updates (lift + rank-one update) up to here.
  double stream_cumulative_s = 0.0;
  // One from-scratch batch ridge fit on the first sample_count pairs,
  // including lifting every state.
  double batch_fit_s = 0.0;
  double ratio = 0.0;  // batch_fit_s / stream_cumulative_s
  // Same prefix fitted with the SVD pseudo-inverse (the unregularized EDMD
  // formula), timed the same way.
  double batch_pinv_fit_s = 0.0;
  // Eigendecomposition of the operator at this checkpoint, reported apart
  // from the fit times.
  double eig_s = 0.0;
  // Max-entry difference between streamed and batch operators (sanity).
  double operator_gap = 0.0;
};

struct BenchmarkResult {
  std::vector<CheckpointTiming> checkpoints;
  std::vector<double> update_s;  // per streamed pair
  double stream_total_s = 0.0;
  double batch_checkpoint_total_s = 0.0;
  double batch_pinv_checkpoint_total_s = 0.0;
  // Fitted per-fit cost a + b*M, summed over every M = 1..max checkpoint:
  // the cost of recomputing the batch fit at every new sample.
  double batch_every_step_extrapolated_s = 0.0;
  double cost_intercept_s = 0.0;
  double cost_slope_s = 0.0;

  // Median per-update time over pair indices [begin, end).
  double MedianUpdate(size_t begin, size_t end) const;
};

// Streams the trajectory pair by pair (each arriving state lifted once) and,
// at every checkpoint, times a from-scratch batch ridge fit on the same
// prefix. Checkpoints must be increasing and within the pair count.
BenchmarkResult RunBenchmark(const Dictionary& dict, const SegmentedTrajectory& data,
                             double delta, const std::vector<int>& checkpoints);

// sample_count,stream_cumulative_s,batch_fit_s,ratio,batch_pinv_fit_s,eig_s,
// operator_gap
void WriteBenchmarkCsv(std::ostream& out, const BenchmarkResult& result);
// update_index,seconds
void WriteUpdateTimesCsv(std::ostream& out, const BenchmarkResult& result);

}  // namespace rekoop

#endif  // REKOOP_BENCHMARK_H_

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

#include "rekoop/benchmark.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <ostream>
#include <string>

#include "rekoop/csv.h"
#include "rekoop/errors.h"
#include "rekoop/koopman.h"
#include "rekoop/spectral.h"

namespace rekoop {

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

// Batch fits are timed as the best of a few runs so the comparison never
// flatters the streaming side.
constexpr int kBatchRepeats = 3;

}  // namespace

double BenchmarkResult::MedianUpdate(size_t begin, size_t end) const {
  end = std::min(end, update_s.size());
  if (begin >= end) throw InvalidArgument("median update: empty range");
  std::vector<double> slice(update_s.begin() + static_cast<std::ptrdiff_t>(begin),
                            update_s.begin() + static_cast<std::ptrdiff_t>(end));
  const size_t mid = slice.size() / 2;
  std::nth_element(slice.begin(), slice.begin() + static_cast<std::ptrdiff_t>(mid), slice.end());
  if (slice.size() % 2 == 1) return slice[mid];
  const double upper = slice[mid];
  const double lower =
      *std::max_element(slice.begin(), slice.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

BenchmarkResult RunBenchmark(const Dictionary& dict, const SegmentedTrajectory& data,
                             double delta, const std::vector<int>& checkpoints) {
  const Eigen::MatrixXd& states = data.states;
  if (states.rows() != dict.state_dim()) {
    throw InvalidArgument("bench: data dimension does not match the dictionary");
  }
  if (!states.allFinite()) throw DataError("bench: data contains non-finite states");
  if (!data.segments.empty() && data.segments.size() != static_cast<size_t>(states.cols())) {
    throw InvalidArgument("bench: segment ids do not match the number of states");
  }
  auto same_segment = [&](Eigen::Index j) {
    return data.segments.empty() || data.segments[static_cast<size_t>(j - 1)] ==
                                        data.segments[static_cast<size_t>(j)];
  };

  // Column of the first state of each pair.
  std::vector<Eigen::Index> pair_start;
  for (Eigen::Index j = 1; j < states.cols(); ++j) {
    if (same_segment(j)) pair_start.push_back(j - 1);
  }
  if (checkpoints.empty()) throw InvalidArgument("bench: no checkpoints");
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw InvalidArgument("bench: checkpoints must be positive and increasing");
    }
  }
  if (static_cast<size_t>(checkpoints.back()) > pair_start.size()) {
    throw InvalidArgument("bench: data has " + std::to_string(pair_start.size()) +
                          " pairs, fewer than the largest checkpoint " +
                          std::to_string(checkpoints.back()));
  }

  BenchmarkResult result;
  result.update_s.reserve(static_cast<size_t>(checkpoints.back()));
  KoopmanStream stream(dict, delta);
  const Eigen::Index k = dict.feature_dim();
  Eigen::VectorXd prev(k), cur(k);
  double carry = 0.0;  // lift time of segment-leading states
  double cumulative = 0.0;
  size_t next_checkpoint = 0;

  for (Eigen::Index j = 0; j < states.cols() && next_checkpoint < checkpoints.size(); ++j) {
    const auto t0 = Clock::now();
    dict.LiftInto(states.col(j), cur);
    const bool pair = j > 0 && same_segment(j);
    if (pair) stream.UpdateLifted(prev, cur);
    const auto t1 = Clock::now();
    std::swap(prev, cur);
    if (!pair) {
      carry += Seconds(t0, t1);
      continue;
    }
    const double dt = Seconds(t0, t1) + carry;
    carry = 0.0;
    cumulative += dt;
    result.update_s.push_back(dt);

    const int m = static_cast<int>(result.update_s.size());
    if (m != checkpoints[next_checkpoint]) continue;
    ++next_checkpoint;

    CheckpointTiming row;
    row.sample_count = m;
    row.stream_cumulative_s = cumulative;

    const auto e0 = Clock::now();
    [[maybe_unused]] const Spectrum spectrum = Eig(stream.CurrentOperator(), m);
    row.eig_s = Seconds(e0, Clock::now());

    // From scratch: lift the prefix, assemble Yp/Yf, solve.
    const Eigen::Index last_col = pair_start[static_cast<size_t>(m - 1)] + 1;
    Eigen::MatrixXd batch_k;
    auto batch_fit = [&](bool pinv) {
      const Eigen::MatrixXd lifted = dict.LiftBatch(states.leftCols(last_col + 1));
      if (data.segments.empty()) {
        return pinv ? FitBatchPinv(lifted.leftCols(m), lifted.middleCols(1, m))
                    : FitBatchRidge(lifted.leftCols(m), lifted.middleCols(1, m), delta);
      }
      Eigen::MatrixXd yp(k, m), yf(k, m);
      for (int i = 0; i < m; ++i) {
        yp.col(i) = lifted.col(pair_start[static_cast<size_t>(i)]);
        yf.col(i) = lifted.col(pair_start[static_cast<size_t>(i)] + 1);
      }
      return pinv ? FitBatchPinv(yp, yf) : FitBatchRidge(yp, yf, delta);
    };
    row.batch_fit_s = std::numeric_limits<double>::infinity();
    row.batch_pinv_fit_s = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < kBatchRepeats; ++rep) {
      const auto b0 = Clock::now();
      batch_k = batch_fit(false);
      const auto b1 = Clock::now();
      batch_fit(true);
      row.batch_fit_s = std::min(row.batch_fit_s, Seconds(b0, b1));
      row.batch_pinv_fit_s = std::min(row.batch_pinv_fit_s, Seconds(b1, Clock::now()));
    }
    row.ratio = row.batch_fit_s / row.stream_cumulative_s;
    row.operator_gap = (batch_k - stream.CurrentOperator()).cwiseAbs().maxCoeff();
    result.batch_checkpoint_total_s += row.batch_fit_s;
    result.batch_pinv_checkpoint_total_s += row.batch_pinv_fit_s;
    result.checkpoints.push_back(row);
  }
  result.stream_total_s = cumulative;

  // Least-squares line through (M, batch time).
  const size_t c = result.checkpoints.size();
  if (c == 1) {
    result.cost_slope_s = result.checkpoints[0].batch_fit_s / result.checkpoints[0].sample_count;
  } else {
    double sm = 0, st = 0, smm = 0, smt = 0;
    for (const CheckpointTiming& row : result.checkpoints) {
      sm += row.sample_count;
      st += row.batch_fit_s;
      smm += static_cast<double>(row.sample_count) * row.sample_count;
      smt += row.sample_count * row.batch_fit_s;
    }
    const double denom = static_cast<double>(c) * smm - sm * sm;
    result.cost_slope_s = (static_cast<double>(c) * smt - sm * st) / denom;
    result.cost_intercept_s = (st - result.cost_slope_s * sm) / static_cast<double>(c);
  }
  const double m_max = checkpoints.back();
  result.batch_every_step_extrapolated_s =
      result.cost_intercept_s * m_max + result.cost_slope_s * m_max * (m_max + 1.0) / 2.0;
  return result;
}

void WriteBenchmarkCsv(std::ostream& out, const BenchmarkResult& result) {
  out << "sample_count,stream_cumulative_s,batch_fit_s,ratio,batch_pinv_fit_s,eig_s,"
         "operator_gap\n";
  for (const CheckpointTiming& row : result.checkpoints) {
    out << row.sample_count << ',' << FormatDouble(row.stream_cumulative_s) << ','
        << FormatDouble(row.batch_fit_s) << ',' << FormatDouble(row.ratio) << ','
        << FormatDouble(row.batch_pinv_fit_s) << ',' << FormatDouble(row.eig_s) << ',' << FormatDouble(row.operator_gap) << '\n';
  }
}

void WriteUpdateTimesCsv(std::ostream& out, const BenchmarkResult& result) {
  out << "update_index,seconds\n";
  for (size_t i = 0; i < result.update_s.size(); ++i) {
    out << (i + 1) << ',' << FormatDouble(result.update_s[i]) << '\n';
  }
}

}  // namespace rekoop

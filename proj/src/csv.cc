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

#include "rekoop/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rekoop/errors.h"

namespace rekoop {

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    std::string_view f = line.substr(start, comma == std::string_view::npos ? comma : comma - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) {
      f.remove_suffix(1);
    }
    fields.push_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text) {
  // from_chars does not accept a leading '+'.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw DataError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

void WriteSnapshotCsv(std::ostream& out, const SegmentedTrajectory& trajectory) {
  const Eigen::MatrixXd& s = trajectory.states;
  const bool segmented = !trajectory.segments.empty();
  if (segmented && trajectory.segments.size() != static_cast<size_t>(s.cols())) {
    throw InvalidArgument("snapshot csv: segment ids do not match the number of states");
  }
  if (segmented) out << "segment,";
  for (Eigen::Index i = 0; i < s.rows(); ++i) out << (i ? "," : "") << 'x' << (i + 1);
  out << '\n';
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    if (segmented) out << trajectory.segments[static_cast<size_t>(j)] << ',';
    for (Eigen::Index i = 0; i < s.rows(); ++i) out << (i ? "," : "") << FormatDouble(s(i, j));
    out << '\n';
  }
}

void WriteSnapshotCsv(const std::string& path, const SegmentedTrajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  WriteSnapshotCsv(out, trajectory);
  if (!out) throw DataError("failed writing '" + path + "'");
}

SnapshotFile ReadSnapshotCsv(std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!IsBlank(line)) break;
  }
  if (line_no == 0 || IsBlank(line)) throw DataError("snapshot csv: empty input");

  const std::vector<std::string_view> header = SplitFields(line);
  const bool segmented = header.front() == "segment";
  const size_t first = segmented ? 1 : 0;
  const size_t n = header.size() - first;
  if (n < 1) throw DataError("snapshot csv: header declares no state columns");
  for (size_t i = 0; i < n; ++i) {
    if (header[first + i] != "x" + std::to_string(i + 1)) {
      throw DataError("snapshot csv line " + std::to_string(line_no) + ": expected column 'x" +
                      std::to_string(i + 1) + "', found '" + std::string(header[first + i]) + "'");
    }
  }

  std::vector<double> values;
  std::vector<int> segments;
  SnapshotFile file;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const std::vector<std::string_view> fields = SplitFields(line);
    if (fields.size() != header.size()) {
      throw DataError("snapshot csv line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    try {
      if (segmented) {
        const double seg = ParseDouble(fields[0]);
        if (seg != std::floor(seg) || !std::isfinite(seg)) {
          throw DataError("segment id must be an integer");
        }
        segments.push_back(static_cast<int>(seg));
      }
      bool finite = true;
      for (size_t i = 0; i < n; ++i) {
        const double v = ParseDouble(fields[first + i]);
        finite = finite && std::isfinite(v);
        values.push_back(v);
      }
      if (!finite) file.nonfinite_lines.push_back(line_no);
    } catch (const DataError& e) {
      throw DataError("snapshot csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  const auto rows = static_cast<Eigen::Index>(values.size() / n);
  file.trajectory.states =
      Eigen::Map<const Eigen::MatrixXd>(values.data(), static_cast<Eigen::Index>(n), rows);
  file.trajectory.segments = std::move(segments);
  return file;
}

SnapshotFile ReadSnapshotCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return ReadSnapshotCsv(in);
}

void WriteSpectrumCsv(std::ostream& out, const Spectrum& spectrum) {
  out << "index,re,im,magnitude\n";
  for (size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    const Complex& l = spectrum.eigenvalues[i];
    out << i << ',' << FormatDouble(l.real()) << ',' << FormatDouble(l.imag()) << ','
        << FormatDouble(std::abs(l)) << '\n';
  }
}

void WriteEigenTrajectoryHeader(std::ostream& out) { out << "sample_count,index,re,im\n"; }

void WriteEigenTrajectoryRows(std::ostream& out, std::int64_t sample_count,
                              const std::vector<std::complex<double>>& eigenvalues) {
  for (size_t i = 0; i < eigenvalues.size(); ++i) {
    out << sample_count << ',' << i << ',' << FormatDouble(eigenvalues[i].real()) << ','
        << FormatDouble(eigenvalues[i].imag()) << '\n';
  }
}

void WriteHorizonCsv(std::ostream& out, const std::vector<HorizonResult>& results) {
  out << "train_size,state_index,mse,mean_mse\n";
  for (const HorizonResult& r : results) {
    for (Eigen::Index i = 0; i < r.mse.per_state.size(); ++i) {
      out << r.train_size << ',' << i << ',' << FormatDouble(r.mse.per_state[i]) << ','
          << FormatDouble(r.mse.mean) << '\n';
    }
  }
}

}  // namespace rekoop

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

#include "commands.h"

#include <algorithm>
#include <optional>
#include <utility>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rekoop/benchmark.h"
#include "rekoop/csv.h"
#include "rekoop/dictionary.h"
#include "rekoop/errors.h"
#include "rekoop/koopman.h"
#include "rekoop/predictor.h"
#include "rekoop/serialize.h"
#include "rekoop/spectral.h"

namespace rekoop::cli {

using nlohmann::json;

namespace {

// Sub-seed counters; one per random consumer.
enum SeedSlot : std::uint64_t {
  kSeedSystem = 0,
  kSeedInitial = 1,
  kSeedNoise = 2,
  kSeedCenters = 3,
};

json ComplexListToJson(const std::vector<Complex>& values) {
  json arr = json::array();
  for (const Complex& v : values) arr.push_back({v.real(), v.imag()});
  return arr;
}

std::vector<Complex> ComplexListFromJson(const json& arr) {
  std::vector<Complex> out;
  for (const json& v : arr) out.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  return out;
}

std::string FormatComplex(const Complex& c) {
  return FormatDouble(c.real()) + (c.imag() < 0 ? "-" : "+") + FormatDouble(std::abs(c.imag())) +
         "i";
}

// Output stream for a path, or the fallback when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DataError("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

SegmentedTrajectory Prefix(const SegmentedTrajectory& data, Eigen::Index rows) {
  SegmentedTrajectory out;
  out.states = data.states.leftCols(rows);
  if (!data.segments.empty()) {
    out.segments.assign(data.segments.begin(), data.segments.begin() + rows);
  }
  return out;
}

bool SameSegment(const SegmentedTrajectory& data, Eigen::Index a, Eigen::Index b) {
  return data.segments.empty() ||
         data.segments[static_cast<size_t>(a)] == data.segments[static_cast<size_t>(b)];
}

Eigen::MatrixXd FiniteColumns(const Eigen::MatrixXd& states) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    if (states.col(j).allFinite()) keep.push_back(j);
  }
  Eigen::MatrixXd out(states.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = states.col(keep[i]);
  return out;
}

// Reads the snapshot file and applies train_rows.
SnapshotFile LoadTraining(const RunConfig& cfg, std::ostream& log) {
  if (cfg.input.empty()) throw ConfigError("no input file given");
  SnapshotFile file = ReadSnapshotCsv(cfg.input);
  const Eigen::Index rows = file.trajectory.states.cols();
  if (!file.nonfinite_lines.empty()) {
    log << "warning: " << file.nonfinite_lines.size()
        << " rows hold non-finite values (first at line " << file.nonfinite_lines.front()
        << "); pairs touching them are skipped\n";
  }
  if (cfg.train_rows) {
    if (*cfg.train_rows > rows) {
      throw ConfigError("train_rows=" + std::to_string(*cfg.train_rows) + " exceeds the " +
                        std::to_string(rows) + " rows in '" + cfg.input + "'");
    }
    file.trajectory = Prefix(file.trajectory, *cfg.train_rows);
  }
  return file;
}

Dictionary BuildDictionary(const RunConfig& cfg, const Eigen::MatrixXd& training_states) {
  const int n = static_cast<int>(training_states.rows());
  if (cfg.dictionary.kind == "linear") return Dictionary::Linear(n);
  const Eigen::MatrixXd finite = FiniteColumns(training_states);
  if (finite.cols() < cfg.dictionary.rbf_count) {
    throw ConfigError("dictionary.rbf_count=" + std::to_string(cfg.dictionary.rbf_count) +
                      " exceeds the " + std::to_string(finite.cols()) + " usable training states");
  }
  const Eigen::MatrixXd centers =
      CentersFromData(finite, cfg.dictionary.rbf_count, SubSeed(cfg.seed, kSeedCenters));
  const double gamma = cfg.dictionary.gamma ? *cfg.dictionary.gamma : MedianHeuristicGamma(centers);
  return Dictionary::Rbf(centers, gamma, cfg.dictionary.kind == "composite");
}

void LogDominant(std::ostream& log, const Spectrum& spectrum, int m) {
  const std::vector<Complex> dom = Dominant(spectrum, std::min<int>(m, spectrum.eigenvalues.size()));
  log << "dominant eigenvalues:";
  for (const Complex& c : dom) log << ' ' << FormatComplex(c);
  log << '\n';
}

void CompareWithTruth(const RunConfig& cfg, const Spectrum& spectrum, std::ostream& log) {
  if (cfg.truth.empty()) return;
  std::ifstream in(cfg.truth);
  if (!in) throw DataError("cannot open truth sidecar '" + cfg.truth + "'");
  json truth;
  try {
    in >> truth;
  } catch (const json::exception& e) {
    throw DataError("truth sidecar: " + std::string(e.what()));
  }
  const std::vector<Complex> reference = ComplexListFromJson(truth.at("eigenvalues"));
  const int m = std::min<int>({cfg.dominant, static_cast<int>(spectrum.eigenvalues.size()),
                               static_cast<int>(reference.size())});
  log << "greedy-matched distance of top " << m << " eigenvalues to truth: "
      << FormatDouble(GreedyMatchDistance(spectrum.eigenvalues, reference, m)) << '\n';
}

}  // namespace

SimulatedData SimulateFromConfig(const RunConfig& cfg) {
  const SystemConfig& s = cfg.system;
  SimulatedData out;
  if (s.kind == "linear") {
    const LinearSystem sys =
        RandomStableLinear(s.n, s.spectral_radius, SubSeed(cfg.seed, kSeedSystem), s.dt);
    if (s.restart_every > 0) {
      out.trajectory = SimulateLinearBursts(sys, s.steps, s.restart_every, s.perturbation,
                                            SubSeed(cfg.seed, kSeedInitial));
    } else {
      std::mt19937_64 rng(SubSeed(cfg.seed, kSeedInitial));
      std::normal_distribution<double> normal(0.0, s.perturbation);
      Eigen::VectorXd x0(s.n);
      for (int i = 0; i < s.n; ++i) x0[i] = normal(rng);
      out.trajectory.states =
          SimulateLinear(sys, x0, s.steps, s.noise_std, SubSeed(cfg.seed, kSeedNoise));
    }
    out.truth = {{"kind", "linear"},
                 {"dt", sys.dt},
                 {"spectral_radius", sys.spectral_radius},
                 {"a_matrix", MatrixToJson(sys.a_matrix)},
                 {"eigenvalues", ComplexListToJson(sys.true_eigenvalues)}};
    return out;
  }

  SwingNetwork net = DefaultThreeMachine();
  net.damping *= s.damping_scale;
  const Eigen::VectorXd eq = DefaultThreeMachineEquilibrium();
  out.trajectory = SimulateSwingBursts(net, eq, s.dt, s.steps, s.restart_every,
                                       s.angle_perturbation, s.freq_perturbation,
                                       SubSeed(cfg.seed, kSeedInitial));
  // Linearization at the equilibrium, sampled at dt: lambda = exp(mu * dt).
  const Spectrum continuous = Eig(SwingJacobian(net, eq));
  std::vector<Complex> discrete;
  for (const Complex& mu : continuous.eigenvalues) discrete.push_back(std::exp(mu * s.dt));
  SortByDominance(discrete);
  out.truth = {{"kind", "swing"},
               {"dt", s.dt},
               {"n_machines", net.n_machines()},
               {"equilibrium", std::vector<double>(eq.data(), eq.data() + eq.size())},
               {"continuous_eigenvalues", ComplexListToJson(continuous.eigenvalues)},
               {"eigenvalues", ComplexListToJson(discrete)}};
  return out;
}

void CmdSimulate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const SimulatedData data = SimulateFromConfig(cfg);
  {
    Sink sink(cfg.output, out);
    WriteSnapshotCsv(sink.get(), data.trajectory);
  }
  log << "simulated " << cfg.system.kind << " system: " << data.trajectory.states.cols()
      << " states of dimension " << data.trajectory.states.rows() << '\n';
  if (!cfg.output.empty()) {
    const std::string sidecar = cfg.output + ".truth.json";
    std::ofstream truth(sidecar);
    if (!truth) throw DataError("cannot open '" + sidecar + "' for writing");
    truth << data.truth.dump(2) << '\n';
    log << "true eigenvalues written to " << sidecar << '\n';
  }
}

void CmdFitStream(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const SnapshotFile file = LoadTraining(cfg, log);
  const SegmentedTrajectory& data = file.trajectory;
  const Dictionary dict = BuildDictionary(cfg, data.states);
  KoopmanStream stream(dict, cfg.delta);

  std::ofstream eig_out;
  const bool report = cfg.cadence > 0 && !cfg.eig_output.empty();
  if (report) {
    eig_out.open(cfg.eig_output);
    if (!eig_out) throw DataError("cannot open '" + cfg.eig_output + "' for writing");
    WriteEigenTrajectoryHeader(eig_out);
  }
  const int m = std::min(cfg.dominant, dict.feature_dim());

  double update_s = 0.0;
  for (Eigen::Index j = 1; j < data.states.cols(); ++j) {
    if (!SameSegment(data, j - 1, j)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const UpdateStatus status = stream.Update(data.states.col(j - 1), data.states.col(j));
    update_s += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (status == UpdateStatus::kAccepted && report && stream.count() % cfg.cadence == 0) {
      const Spectrum spectrum = Eig(stream.CurrentOperator(), stream.count());
      WriteEigenTrajectoryRows(eig_out, stream.count(), Dominant(spectrum, m));
    }
  }
  if (stream.count() == 0) throw DataError("no usable snapshot pairs in '" + cfg.input + "'");

  KoopmanModel model = stream.Snapshot();
  model.train_rows = data.states.cols();
  if (cfg.output.empty()) {
    out << ModelToJson(model).dump(2) << '\n';
  } else {
    SaveModel(model, cfg.output);
  }
  log << "streamed " << stream.count() << " pairs (" << stream.rejected_count()
      << " rejected) into K=" << dict.feature_dim() << " features; cumulative update time "
      << FormatDouble(update_s) << " s\n";
  const Spectrum spectrum = Eig(model);
  LogDominant(log, spectrum, m);
  CompareWithTruth(cfg, spectrum, log);
}

void CmdFitBatch(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const SnapshotFile file = LoadTraining(cfg, log);
  const SegmentedTrajectory& data = file.trajectory;
  if (data.states.cols() < 2) throw DataError("'" + cfg.input + "' holds fewer than two states");
  const Dictionary dict = BuildDictionary(cfg, data.states);

  std::vector<Eigen::Index> starts;
  for (Eigen::Index j = 1; j < data.states.cols(); ++j) {
    if (SameSegment(data, j - 1, j) && data.states.col(j - 1).allFinite() &&
        data.states.col(j).allFinite()) {
      starts.push_back(j - 1);
    }
  }
  if (starts.empty()) throw DataError("no usable snapshot pairs in '" + cfg.input + "'");
  const auto m = static_cast<Eigen::Index>(starts.size());
  Eigen::MatrixXd xp(data.states.rows(), m), xf(data.states.rows(), m);
  for (Eigen::Index i = 0; i < m; ++i) {
    xp.col(i) = data.states.col(starts[static_cast<size_t>(i)]);
    xf.col(i) = data.states.col(starts[static_cast<size_t>(i)] + 1);
  }
  const Eigen::MatrixXd yp = dict.LiftBatch(xp);
  const Eigen::MatrixXd yf = dict.LiftBatch(xf);

  const auto t0 = std::chrono::steady_clock::now();
  Eigen::MatrixXd k =
      cfg.solver == "pinv" ? FitBatchPinv(yp, yf) : FitBatchRidge(yp, yf, cfg.delta);
  const double fit_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  KoopmanModel model{.k_matrix = std::move(k),
                     .dict = dict,
                     .projection = std::nullopt,
                     .sample_count = m,
                     .delta = cfg.solver == "pinv" ? 0.0 : cfg.delta,
                     .train_rows = data.states.cols()};
  if (cfg.output.empty()) {
    out << ModelToJson(model).dump(2) << '\n';
  } else {
    SaveModel(model, cfg.output);
  }
  log << cfg.solver << " fit on " << m << " pairs, K=" << dict.feature_dim() << ", "
      << FormatDouble(fit_s) << " s\n";
  const Spectrum spectrum = Eig(model);
  LogDominant(log, spectrum, std::min(cfg.dominant, dict.feature_dim()));
  CompareWithTruth(cfg, spectrum, log);
}

void CmdPredict(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.model.empty()) throw ConfigError("predict needs a model");
  if (cfg.input.empty()) throw ConfigError("predict needs an input trajectory");
  KoopmanModel model = LoadModel(cfg.model);
  const SnapshotFile file = ReadSnapshotCsv(cfg.input);
  const SegmentedTrajectory& data = file.trajectory;
  const Eigen::Index rows = data.states.cols();
  if (data.states.rows() != model.dict.state_dim()) {
    throw DataError("trajectory dimension " + std::to_string(data.states.rows()) +
                    " does not match the model's " + std::to_string(model.dict.state_dim()));
  }
  const Eigen::Index end = static_cast<Eigen::Index>(cfg.start) + cfg.horizon;
  if (end >= rows) {
    throw ConfigError("prediction window [" + std::to_string(cfg.start) + ", " +
                      std::to_string(end) + "] is outside the " + std::to_string(rows) +
                      "-row trajectory");
  }
  if (model.train_rows && cfg.start < *model.train_rows) {
    throw ConfigError("prediction start " + std::to_string(cfg.start) +
                      " lies inside the training rows [0, " + std::to_string(*model.train_rows) +
                      "); refusing to evaluate on training data");
  }
  for (Eigen::Index j = cfg.start + 1; j <= end; ++j) {
    if (!SameSegment(data, cfg.start, j)) {
      throw ConfigError("prediction window crosses a segment boundary");
    }
  }
  if (!model.projection) {
    const Eigen::Index train = model.train_rows ? *model.train_rows : cfg.start;
    if (train < 1) throw ConfigError("no training rows available to fit the projection");
    const Eigen::MatrixXd train_states = FiniteColumns(data.states.leftCols(train));
    const ProjectionFit fit = FitProjection(model.dict, train_states);
    model.projection = fit.c;
    log << "fitted projection on " << train_states.cols() << " training rows, residual "
        << FormatDouble(fit.residual) << '\n';
  }

  const Eigen::MatrixXd truth = data.states.middleCols(cfg.start, cfg.horizon + 1);
  const Predictor predictor(std::move(model));
  const Prediction pred = predictor.Predict(truth.col(0), cfg.horizon);
  if (pred.overflow_step) {
    log << "warning: prediction overflowed at step " << *pred.overflow_step
        << "; horizon truncated\n";
  }
  const MseResult mse = Mse(pred.states, truth.leftCols(pred.states.cols()));

  const Eigen::Index n = truth.rows();
  {
    Sink sink(cfg.output, out);
    std::ostream& os = sink.get();
    os << "step";
    for (Eigen::Index i = 0; i < n; ++i) os << ",pred_x" << (i + 1);
    for (Eigen::Index i = 0; i < n; ++i) os << ",true_x" << (i + 1);
    os << '\n';
    for (Eigen::Index t = 0; t < pred.states.cols(); ++t) {
      os << (cfg.start + t);
      for (Eigen::Index i = 0; i < n; ++i) os << ',' << FormatDouble(pred.states(i, t));
      for (Eigen::Index i = 0; i < n; ++i) os << ',' << FormatDouble(truth(i, t));
      os << '\n';
    }
  }
  // The MSE report goes to stdout unless predictions already occupy it.
  std::ostream& report = cfg.output.empty() ? log : out;
  report << "state_index,mse\n";
  for (Eigen::Index i = 0; i < n; ++i) report << i << ',' << FormatDouble(mse.per_state[i]) << '\n';
  report << "mean," << FormatDouble(mse.mean) << '\n';
}

void CmdSweepDelta(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.deltas.empty()) throw ConfigError("sweep-delta needs at least one delta");
  if (!cfg.train_rows) throw ConfigError("sweep-delta needs train_rows");
  if (cfg.validation.size() != 2) throw ConfigError("sweep-delta needs validation [start, end]");
  if (cfg.input.empty()) throw ConfigError("no input file given");
  const SnapshotFile file = ReadSnapshotCsv(cfg.input);
  const SegmentedTrajectory& data = file.trajectory;
  const int v_start = cfg.validation[0];
  const int v_end = cfg.validation[1];
  if (v_start < *cfg.train_rows) {
    throw ConfigError("validation window must start at or after train_rows (disjoint windows)");
  }
  if (v_end >= data.states.cols()) throw ConfigError("validation window exceeds the trajectory");
  for (int j = v_start + 1; j <= v_end; ++j) {
    if (!SameSegment(data, v_start, j)) {
      throw ConfigError("validation window crosses a segment boundary");
    }
  }

  const SegmentedTrajectory train = Prefix(data, *cfg.train_rows);
  const Dictionary dict = BuildDictionary(cfg, train.states);
  const ProjectionFit projection = FitProjection(dict, FiniteColumns(train.states));
  const Eigen::MatrixXd truth = data.states.middleCols(v_start, v_end - v_start + 1);

  std::vector<double> deltas = cfg.deltas;
  std::sort(deltas.begin(), deltas.end());
  std::vector<double> scores;
  for (double delta : deltas) {
    KoopmanStream stream(dict, delta);
    for (Eigen::Index j = 1; j < train.states.cols(); ++j) {
      if (SameSegment(train, j - 1, j)) stream.Update(train.states.col(j - 1), train.states.col(j));
    }
    KoopmanModel model = stream.Snapshot();
    model.projection = projection.c;
    const Predictor predictor(std::move(model));
    const Prediction pred = predictor.Predict(truth.col(0), v_end - v_start);
    double score = std::numeric_limits<double>::infinity();
    if (!pred.overflow_step) score = Mse(pred.states, truth).mean;
    if (!std::isfinite(score)) score = std::numeric_limits<double>::infinity();
    scores.push_back(score);
  }
  // Ascending deltas and a strict comparison: ties go to the smaller delta.
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] < scores[best]) best = i;
  }

  Sink sink(cfg.output, out);
  std::ostream& os = sink.get();
  os << "delta,mean_mse,selected\n";
  for (size_t i = 0; i < deltas.size(); ++i) {
    os << FormatDouble(deltas[i]) << ',' << FormatDouble(scores[i]) << ','
       << (i == best ? 1 : 0) << '\n';
  }
  log << "selected delta " << FormatDouble(deltas[best]) << " (validation MSE "
      << FormatDouble(scores[best]) << ")\n";
}

void CmdBench(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  SegmentedTrajectory data;
  if (!cfg.input.empty()) {
    data = ReadSnapshotCsv(cfg.input).trajectory;
  } else {
    data = SimulateFromConfig(cfg).trajectory;
  }
  const std::vector<int> checkpoints =
      cfg.checkpoints.empty() ? std::vector<int>{50, 100, 300, 500, 1000} : cfg.checkpoints;
  // Centers come from the states the benchmark will actually stream.
  const Eigen::Index used = std::min<Eigen::Index>(data.states.cols(), checkpoints.back() + 1);
  const Dictionary dict = BuildDictionary(cfg, data.states.leftCols(used));
  const BenchmarkResult result = RunBenchmark(dict, data, cfg.delta, checkpoints);

  {
    Sink sink(cfg.output, out);
    WriteBenchmarkCsv(sink.get(), result);
  }
  if (!cfg.updates_output.empty()) {
    Sink sink(cfg.updates_output, out);
    WriteUpdateTimesCsv(sink.get(), result);
  }
  const size_t total = result.update_s.size();
  const size_t decile = std::max<size_t>(1, total / 10);
  log << "K=" << dict.feature_dim() << ", " << total << " streamed pairs\n"
      << "streaming total:                 " << FormatDouble(result.stream_total_s) << " s\n"
      << "batch ridge at checkpoints:      " << FormatDouble(result.batch_checkpoint_total_s)
      << " s (ratio " << FormatDouble(result.batch_checkpoint_total_s / result.stream_total_s)
      << ")\n"
      << "batch pinv at checkpoints:       " << FormatDouble(result.batch_pinv_checkpoint_total_s)
      << " s (ratio "
      << FormatDouble(result.batch_pinv_checkpoint_total_s / result.stream_total_s) << ")\n"
      << "batch ridge every step (extrap.): " << FormatDouble(result.batch_every_step_extrapolated_s)
      << " s\n"
      << "median update, first decile:     " << FormatDouble(result.MedianUpdate(0, decile))
      << " s\n"
      << "median update, last decile:      "
      << FormatDouble(result.MedianUpdate(total - decile, total)) << " s\n";
}

void CmdEig(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.model.empty()) throw ConfigError("eig needs a model");
  const KoopmanModel model = LoadModel(cfg.model);
  const Spectrum spectrum = Eig(model);
  {
    Sink sink(cfg.output, out);
    WriteSpectrumCsv(sink.get(), spectrum);
  }
  const int m = std::min(cfg.dominant, static_cast<int>(spectrum.eigenvalues.size()));
  LogDominant(log, spectrum, m);
  const std::vector<Complex> unstable = UnstableModes(spectrum);
  log << unstable.size() << " modes outside the unit circle (|lambda| > 1 + "
      << FormatDouble(kUnstableTol) << ")\n";
  const ContinuousSpectrum cont = ToContinuous(Dominant(spectrum, m), cfg.dt);
  log << "continuous-time (dt=" << FormatDouble(cfg.dt) << "):";
  for (const Complex& c : cont.values) log << ' ' << FormatComplex(c);
  log << '\n';
  if (cont.dropped_zero > 0) log << cont.dropped_zero << " zero eigenvalues dropped\n";
  CompareWithTruth(cfg, spectrum, log);
}

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Streaming Koopman operator identification"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> input, output, model, eig_output, truth, updates_output, solver;
  std::optional<std::string> dict_kind, system_kind;
  std::optional<double> delta, gamma, dt;
  std::optional<std::uint64_t> seed;
  std::optional<int> cadence, dominant, start, horizon, train_rows, rbf_count, steps, n,
      restart_every;
  std::vector<double> deltas;
  std::vector<int> checkpoints, validation;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "generate a trajectory CSV and a truth sidecar"},
      {"fit-stream", "fit the operator by streaming rank-one updates"},
      {"fit-batch", "fit the operator in one batch solve"},
      {"predict", "forecast from a fitted model and report MSE"},
      {"sweep-delta", "select the regularizer by validation MSE"},
      {"bench", "time streaming updates against batch refits"},
      {"eig", "eigenvalues of a saved model"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config_path, "JSON config file");
    sub->add_option("-i,--input", input, "input CSV");
    sub->add_option("-o,--output", output, "output path (default: stdout)");
    sub->add_option("--model", model, "model JSON");
    sub->add_option("--eig-output", eig_output, "eigenvalue trajectory CSV");
    sub->add_option("--truth", truth, "truth sidecar JSON for comparison");
    sub->add_option("--updates-output", updates_output, "per-update timing CSV");
    sub->add_option("--solver", solver, "batch solver: ridge | pinv");
    sub->add_option("--dictionary", dict_kind, "linear | rbf | composite");
    sub->add_option("--rbf-count", rbf_count, "number of RBF centers");
    sub->add_option("--gamma", gamma, "RBF width parameter");
    sub->add_option("--system", system_kind, "linear | swing");
    sub->add_option("--n", n, "linear system dimension");
    sub->add_option("--steps", steps, "snapshot pairs to simulate");
    sub->add_option("--restart-every", restart_every, "restart period (0: none)");
    sub->add_option("--delta", delta, "ridge initialization delta");
    sub->add_option("--seed", seed, "base random seed");
    sub->add_option("--cadence", cadence, "eigenvalue report every m samples");
    sub->add_option("--dominant", dominant, "number of dominant eigenvalues");
    sub->add_option("--start", start, "prediction start row");
    sub->add_option("--horizon", horizon, "prediction horizon");
    sub->add_option("--train-rows", train_rows, "rows used for training");
    sub->add_option("--dt", dt, "sampling period");
    sub->add_option("--deltas", deltas, "deltas to sweep");
    sub->add_option("--validation", validation, "validation window start end")->expected(2);
    sub->add_option("--checkpoints", checkpoints, "benchmark checkpoints");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    nlohmann::json j = nlohmann::json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config '" + config_path + "'");
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + config_path + "': " + e.what());
      }
      if (!j.is_object()) throw ConfigError("config '" + config_path + "': expected an object");
    }
    auto set = [&j](const char* key, const auto& value) {
      if (value) j[key] = *value;
    };
    set("input", input);
    set("output", output);
    set("model", model);
    set("eig_output", eig_output);
    set("truth", truth);
    set("updates_output", updates_output);
    set("solver", solver);
    set("delta", delta);
    set("seed", seed);
    set("cadence", cadence);
    set("dominant", dominant);
    set("start", start);
    set("horizon", horizon);
    set("train_rows", train_rows);
    set("dt", dt);
    if (!deltas.empty()) j["deltas"] = deltas;
    if (!validation.empty()) j["validation"] = validation;
    if (!checkpoints.empty()) j["checkpoints"] = checkpoints;
    if (dict_kind || rbf_count || gamma) {
      nlohmann::json& d = j["dictionary"];
      if (d.is_null()) d = nlohmann::json::object();
      if (dict_kind) d["kind"] = *dict_kind;
      if (rbf_count) d["rbf_count"] = *rbf_count;
      if (gamma) d["gamma"] = *gamma;
    }
    if (system_kind || n || steps || restart_every) {
      nlohmann::json& s = j["system"];
      if (s.is_null()) s = nlohmann::json::object();
      if (system_kind) s["kind"] = *system_kind;
      if (n) s["n"] = *n;
      if (steps) s["steps"] = *steps;
      if (restart_every) s["restart_every"] = *restart_every;
    }
    const RunConfig cfg = RunConfig::FromJson(j);

    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "simulate") CmdSimulate(cfg, out, log);
    else if (name == "fit-stream") CmdFitStream(cfg, out, log);
    else if (name == "fit-batch") CmdFitBatch(cfg, out, log);
    else if (name == "predict") CmdPredict(cfg, out, log);
    else if (name == "sweep-delta") CmdSweepDelta(cfg, out, log);
    else if (name == "bench") CmdBench(cfg, out, log);
    else CmdEig(cfg, out, log);
    return kOk;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    log << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericalError& e) {
    log << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace rekoop::cli

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

#include "config.h"

#include <fstream>
#include <set>

namespace rekoop::cli {

using nlohmann::json;

namespace {

void RejectUnknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": key '" + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig RunConfig::FromJson(const json& j) {
  RejectUnknown(j,
                {"seed", "system", "dictionary", "delta", "solver", "cadence", "dominant",
                 "train_rows", "start", "horizon", "deltas", "validation", "checkpoints", "dt",
                 "input", "output", "model", "eig_output", "truth", "updates_output"},
                "config");
  RunConfig c;
  Read(j, "seed", c.seed, "config");
  Read(j, "delta", c.delta, "config");
  Read(j, "solver", c.solver, "config");
  Read(j, "cadence", c.cadence, "config");
  Read(j, "dominant", c.dominant, "config");
  if (j.contains("train_rows") && !j["train_rows"].is_null()) {
    int rows = 0;
    Read(j, "train_rows", rows, "config");
    c.train_rows = rows;
  }
  Read(j, "start", c.start, "config");
  Read(j, "horizon", c.horizon, "config");
  Read(j, "deltas", c.deltas, "config");
  Read(j, "validation", c.validation, "config");
  Read(j, "checkpoints", c.checkpoints, "config");
  Read(j, "dt", c.dt, "config");
  Read(j, "input", c.input, "config");
  Read(j, "output", c.output, "config");
  Read(j, "model", c.model, "config");
  Read(j, "eig_output", c.eig_output, "config");
  Read(j, "truth", c.truth, "config");
  Read(j, "updates_output", c.updates_output, "config");

  if (j.contains("system")) {
    const json& s = j["system"];
    RejectUnknown(s,
                  {"kind", "n", "spectral_radius", "steps", "noise_std", "restart_every",
                   "perturbation", "dt", "angle_perturbation", "freq_perturbation",
                   "damping_scale"},
                  "config.system");
    SystemConfig& sc = c.system;
    Read(s, "kind", sc.kind, "config.system");
    Read(s, "n", sc.n, "config.system");
    Read(s, "spectral_radius", sc.spectral_radius, "config.system");
    Read(s, "steps", sc.steps, "config.system");
    Read(s, "noise_std", sc.noise_std, "config.system");
    Read(s, "restart_every", sc.restart_every, "config.system");
    Read(s, "perturbation", sc.perturbation, "config.system");
    Read(s, "dt", sc.dt, "config.system");
    Read(s, "angle_perturbation", sc.angle_perturbation, "config.system");
    Read(s, "freq_perturbation", sc.freq_perturbation, "config.system");
    Read(s, "damping_scale", sc.damping_scale, "config.system");
  }
  if (j.contains("dictionary")) {
    const json& d = j["dictionary"];
    RejectUnknown(d, {"kind", "rbf_count", "gamma"}, "config.dictionary");
    Read(d, "kind", c.dictionary.kind, "config.dictionary");
    Read(d, "rbf_count", c.dictionary.rbf_count, "config.dictionary");
    if (d.contains("gamma") && !d["gamma"].is_null()) {
      double g = 0;
      Read(d, "gamma", g, "config.dictionary");
      c.dictionary.gamma = g;
    }
  }
  c.Validate();
  return c;
}

RunConfig RunConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return FromJson(j);
}

void RunConfig::Validate() const {
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (solver != "ridge" && solver != "pinv") throw ConfigError("solver must be ridge or pinv");
  if (cadence < 0) throw ConfigError("cadence must be >= 0");
  if (dominant < 1) throw ConfigError("dominant must be >= 1");
  if (train_rows && *train_rows < 2) throw ConfigError("train_rows must be >= 2");
  if (start < 0 || horizon < 0) throw ConfigError("start and horizon must be >= 0");
  for (double d : deltas) {
    if (!(d > 0.0)) throw ConfigError("every sweep delta must be positive");
  }
  if (!validation.empty() && (validation.size() != 2 || validation[0] < 0 ||
                              validation[1] < validation[0])) {
    throw ConfigError("validation must be [start, end] with start <= end");
  }
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");

  const SystemConfig& s = system;
  if (s.kind != "linear" && s.kind != "swing") throw ConfigError("system.kind must be linear or swing");
  if (s.n < 1) throw ConfigError("system.n must be >= 1");
  if (!(s.spectral_radius > 0.0 && s.spectral_radius < 1.0)) {
    throw ConfigError("system.spectral_radius must lie in (0, 1)");
  }
  if (s.steps < 1) throw ConfigError("system.steps must be >= 1");
  if (s.noise_std < 0.0) throw ConfigError("system.noise_std must be >= 0");
  if (s.restart_every < 0) throw ConfigError("system.restart_every must be >= 0");
  if (!(s.perturbation > 0.0)) throw ConfigError("system.perturbation must be positive");
  if (!(s.dt > 0.0)) throw ConfigError("system.dt must be positive");
  if (s.angle_perturbation < 0.0 || s.freq_perturbation < 0.0 || s.damping_scale < 0.0) {
    throw ConfigError("system perturbations and damping_scale must be >= 0");
  }

  const DictionaryConfig& d = dictionary;
  if (d.kind != "linear" && d.kind != "rbf" && d.kind != "composite") {
    throw ConfigError("dictionary.kind must be linear, rbf or composite");
  }
  if (d.rbf_count < 1) throw ConfigError("dictionary.rbf_count must be >= 1");
  if (d.gamma && !(*d.gamma > 0.0)) throw ConfigError("dictionary.gamma must be positive");
}

}  // namespace rekoop::cli

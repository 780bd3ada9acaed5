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

#ifndef REKOOP_TOOLS_CONFIG_H_
#define REKOOP_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rekoop::cli {

// Bad configuration or usage; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemConfig {
  std::string kind = "linear";  // linear | swing
  int n = 20;                   // linear state dimension
  double spectral_radius = 0.95;
  int steps = 1000;  // snapshot pairs to generate
  double noise_std = 0.0;
  int restart_every = 0;  // 0: one trajectory
  double perturbation = 1.0;  // linear restart draw scale
  double dt = 0.01;
  double angle_perturbation = 0.3;
  double freq_perturbation = 0.5;
  double damping_scale = 1.0;  // swing damping multiplier
};

struct DictionaryConfig {
  std::string kind = "linear";  // linear | rbf | composite
  int rbf_count = 150;
  std::optional<double> gamma;  // default: median heuristic
};

struct RunConfig {
  std::uint64_t seed = 1;
  SystemConfig system;
  DictionaryConfig dictionary;
  double delta = 1e-6;
  std::string solver = "ridge";  // ridge | pinv
  int cadence = 0;               // eigenvalue report every m samples; 0 = off
  int dominant = 10;
  std::optional<int> train_rows;
  int start = 0;
  int horizon = 0;
  std::vector<double> deltas;
  std::vector<int> validation;  // [start, end] row indices, inclusive
  std::vector<int> checkpoints;
  double dt = 0.01;  // sampling period for continuous-time conversion
  std::string input;
  std::string output;
  std::string model;
  std::string eig_output;
  std::string truth;
  std::string updates_output;

  // Throws ConfigError on unknown keys, wrong types or invalid values.
  static RunConfig FromJson(const nlohmann::json& j);
  static RunConfig FromFile(const std::string& path);
  void Validate() const;
};

}  // namespace rekoop::cli

#endif  // REKOOP_TOOLS_CONFIG_H_

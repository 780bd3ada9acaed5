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

#ifndef REKOOP_SERIALIZE_H_
#define REKOOP_SERIALIZE_H_

#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "rekoop/dictionary.h"
#include "rekoop/koopman.h"

namespace rekoop {

// Matrices are arrays of rows. Doubles use the shortest representation that
// parses back to the identical bit pattern.
nlohmann::json MatrixToJson(const Eigen::MatrixXd& m);
Eigen::MatrixXd MatrixFromJson(const nlohmann::json& j);

// {kind, state_dim, gamma, include_state, centers}
nlohmann::json DictionaryToJson(const Dictionary& dict);
Dictionary DictionaryFromJson(const nlohmann::json& j);

// {dict, delta, sample_count, k_matrix, projection, train_rows}
nlohmann::json ModelToJson(const KoopmanModel& model);
KoopmanModel ModelFromJson(const nlohmann::json& j);

void SaveModel(const KoopmanModel& model, const std::string& path);
KoopmanModel LoadModel(const std::string& path);

}  // namespace rekoop

#endif  // REKOOP_SERIALIZE_H_

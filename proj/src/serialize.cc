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

#include "rekoop/serialize.h"

#include <fstream>

#include "rekoop/errors.h"

namespace rekoop {

using nlohmann::json;

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd MatrixFromJson(const json& j) {
  if (!j.is_array()) throw DataError("matrix: expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return {};
  if (!j[0].is_array()) throw DataError("matrix: expected an array of rows");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DataError("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<size_t>(c)];
      if (!v.is_number()) throw DataError("matrix: non-numeric entry");
      m(i, c) = v.get<double>();
    }
  }
  return m;
}

json DictionaryToJson(const Dictionary& dict) {
  json j;
  j["kind"] = std::string(ToString(dict.kind()));
  j["state_dim"] = dict.state_dim();
  j["include_state"] = dict.include_state();
  if (dict.kind() == DictionaryKind::kLinear) {
    j["gamma"] = nullptr;
    j["centers"] = json::array();
  } else {
    j["gamma"] = dict.gamma();
    j["centers"] = MatrixToJson(dict.centers());
  }
  return j;
}

Dictionary DictionaryFromJson(const json& j) {
  try {
    const DictionaryKind kind = DictionaryKindFromString(j.at("kind").get<std::string>());
    const int state_dim = j.at("state_dim").get<int>();
    if (kind == DictionaryKind::kLinear) return Dictionary::Linear(state_dim);
    const Eigen::MatrixXd centers = MatrixFromJson(j.at("centers"));
    if (centers.cols() != state_dim) {
      throw DataError("dictionary: centers do not match state_dim");
    }
    return Dictionary::Rbf(centers, j.at("gamma").get<double>(),
                           kind == DictionaryKind::kComposite);
  } catch (const json::exception& e) {
    throw DataError(std::string("dictionary json: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("dictionary json: ") + e.what());
  }
}

json ModelToJson(const KoopmanModel& model) {
  json j;
  j["dict"] = DictionaryToJson(model.dict);
  j["delta"] = model.delta;
  j["sample_count"] = model.sample_count;
  j["k_matrix"] = MatrixToJson(model.k_matrix);
  j["projection"] = model.projection ? MatrixToJson(*model.projection) : json(nullptr);
  if (model.train_rows) j["train_rows"] = *model.train_rows;
  return j;
}

KoopmanModel ModelFromJson(const json& j) {
  try {
    KoopmanModel model{.k_matrix = MatrixFromJson(j.at("k_matrix")),
                       .dict = DictionaryFromJson(j.at("dict")),
                       .projection = std::nullopt,
                       .sample_count = j.at("sample_count").get<std::int64_t>(),
                       .delta = j.at("delta").get<double>(),
                       .train_rows = std::nullopt};
    if (j.contains("projection") && !j["projection"].is_null()) {
      model.projection = MatrixFromJson(j["projection"]);
    }
    if (j.contains("train_rows") && !j["train_rows"].is_null()) {
      model.train_rows = j["train_rows"].get<std::int64_t>();
    }
    model.Validate();
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("model json: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("model json: ") + e.what());
  }
}

void SaveModel(const KoopmanModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << ModelToJson(model).dump(2) << '\n';
  if (!out) throw DataError("failed writing '" + path + "'");
}

KoopmanModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("model '" + path + "': " + e.what());
  }
  return ModelFromJson(j);
}

}  // namespace rekoop

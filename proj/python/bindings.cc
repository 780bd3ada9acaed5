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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rekoop/datagen.h"
#include "rekoop/dictionary.h"
#include "rekoop/errors.h"
#include "rekoop/koopman.h"
#include "rekoop/predictor.h"
#include "rekoop/serialize.h"
#include "rekoop/spectral.h"

namespace py = pybind11;

namespace rekoop {
namespace {

// States are columns, as in the C++ API: an N x M array holds M states.
PYBIND11_MODULE(_rekoop, m) {
  m.doc() = "Streaming Koopman operator identification";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<Dictionary>(m, "Dictionary")
      .def_static("linear", &Dictionary::Linear, py::arg("state_dim"))
      .def_static("rbf", &Dictionary::Rbf, py::arg("centers"), py::arg("gamma"),
                  py::arg("include_state") = false)
      .def_property_readonly("kind", [](const Dictionary& d) { return std::string(ToString(d.kind())); })
      .def_property_readonly("state_dim", &Dictionary::state_dim)
      .def_property_readonly("feature_dim", &Dictionary::feature_dim)
      .def_property_readonly("centers", &Dictionary::centers)
      .def_property_readonly("gamma", &Dictionary::gamma)
      .def("lift", &Dictionary::Lift, py::arg("x"))
      .def("lift_batch", &Dictionary::LiftBatch, py::arg("states"));

  m.def("median_heuristic_gamma", &MedianHeuristicGamma, py::arg("centers"));
  m.def("centers_from_data", &CentersFromData, py::arg("data"), py::arg("k"), py::arg("seed"));

  py::class_<KoopmanModel>(m, "KoopmanModel")
      .def_readonly("k_matrix", &KoopmanModel::k_matrix)
      .def_readonly("dictionary", &KoopmanModel::dict)
      .def_readwrite("projection", &KoopmanModel::projection)
      .def_readonly("sample_count", &KoopmanModel::sample_count)
      .def_readonly("delta", &KoopmanModel::delta)
      .def("to_json", [](const KoopmanModel& model) { return ModelToJson(model).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return ModelFromJson(nlohmann::json::parse(text)); });

  py::class_<KoopmanStream>(m, "KoopmanStream")
      .def(py::init<Dictionary, double>(), py::arg("dictionary"), py::arg("delta"))
      .def("update",
           [](KoopmanStream& s, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
             return s.Update(x, y) == UpdateStatus::kAccepted;
           },
           py::arg("x"), py::arg("y"))
      .def("update_lifted",
           [](KoopmanStream& s, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
             return s.UpdateLifted(u, v) == UpdateStatus::kAccepted;
           },
           py::arg("u"), py::arg("v"))
      .def_property_readonly("operator", &KoopmanStream::CurrentOperator)
      .def_property_readonly("phi_inv", &KoopmanStream::phi_inv)
      .def_property_readonly("z", &KoopmanStream::z)
      .def_property_readonly("count", &KoopmanStream::count)
      .def_property_readonly("rejected_count", &KoopmanStream::rejected_count)
      .def_property_readonly("min_denominator", &KoopmanStream::min_denominator)
      .def("snapshot", &KoopmanStream::Snapshot);

  m.def("stream_fit", &StreamFit, py::arg("dictionary"), py::arg("xp"), py::arg("xf"),
        py::arg("delta"));
  m.def("fit_batch_ridge", &FitBatchRidge, py::arg("yp"), py::arg("yf"), py::arg("delta"));
  m.def("fit_batch_pinv", &FitBatchPinv, py::arg("yp"), py::arg("yf"));

  m.def("eigenvalues",
        [](const Eigen::MatrixXd& k) { return Eig(k).eigenvalues; }, py::arg("matrix"),
        "Eigenvalues sorted by magnitude, largest first.");
  m.def("unstable_modes",
        [](const Eigen::MatrixXd& k, double tol) { return UnstableModes(Eig(k), tol); },
        py::arg("matrix"), py::arg("tol") = kUnstableTol);
  m.def("greedy_match_distance", &GreedyMatchDistance, py::arg("estimate"), py::arg("truth"),
        py::arg("m"));

  m.def("fit_projection",
        [](const Dictionary& d, const Eigen::MatrixXd& states) { return FitProjection(d, states).c; },
        py::arg("dictionary"), py::arg("states"));
  m.def("predict",
        [](const KoopmanModel& model, const Eigen::VectorXd& x0, int steps) {
          return Predictor(model).Predict(x0, steps).states;
        },
        py::arg("model"), py::arg("x0"), py::arg("steps"));
  m.def("mse", [](const Eigen::MatrixXd& p, const Eigen::MatrixXd& t) { return Mse(p, t).mean; },
        py::arg("predicted"), py::arg("truth"));

  py::class_<LinearSystem>(m, "LinearSystem")
      .def_readonly("a_matrix", &LinearSystem::a_matrix)
      .def_readonly("true_eigenvalues", &LinearSystem::true_eigenvalues)
      .def_readonly("spectral_radius", &LinearSystem::spectral_radius);
  m.def("random_stable_linear", &RandomStableLinear, py::arg("n"), py::arg("radius"),
        py::arg("seed"), py::arg("dt") = 0.01);
  m.def("simulate_linear", &SimulateLinear, py::arg("system"), py::arg("x0"), py::arg("steps"),
        py::arg("noise_std") = 0.0, py::arg("seed") = 0);
}

}  // namespace
}  // namespace rekoop

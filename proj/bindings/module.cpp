// Copyright 2026 The hrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hrcsim/analysis.hpp"
#include "hrcsim/clifford.hpp"
#include "hrcsim/crosscheck.hpp"
#include "hrcsim/entanglement.hpp"
#include "hrcsim/protocols.hpp"
#include "hrcsim/records.hpp"
#include "hrcsim/region.hpp"
#include "hrcsim/rng.hpp"
#include "hrcsim/runner.hpp"
#include "hrcsim/tableau.hpp"
#include "hrcsim/version.hpp"

namespace py = pybind11;

namespace {

hrcsim::Region region_of(const std::vector<int>& sites) {
  return hrcsim::Region(sites);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monitored Clifford circuits with variable-range gates";
  m.attr("__version__") = hrcsim::kVersion;

  py::class_<hrcsim::Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next_u64", &hrcsim::Rng::next_u64)
      .def("uniform", &hrcsim::Rng::uniform)
      .def("bernoulli", &hrcsim::Rng::bernoulli, py::arg("p"))
      .def("below", &hrcsim::Rng::below, py::arg("bound"));

  py::enum_<hrcsim::MeasurementKind>(m, "MeasurementKind")
      .value("DETERMINISTIC", hrcsim::MeasurementKind::kDeterministic)
      .value("RANDOM", hrcsim::MeasurementKind::kRandom);

  py::class_<hrcsim::SymplecticGate>(m, "SymplecticGate")
      .def_static("from_mask", &hrcsim::SymplecticGate::from_mask, py::arg("mask"))
      .def_readonly("mask", &hrcsim::SymplecticGate::mask)
      .def("inverse", &hrcsim::SymplecticGate::inverse);

  m.def("two_qubit_clifford_count",
        [] { return hrcsim::two_qubit_clifford_table().size(); });
  m.def(
      "sample_two_qubit_clifford",
      [](hrcsim::Rng& rng) { return hrcsim::sample_two_qubit_clifford(rng); },
      py::arg("rng"));

  py::class_<hrcsim::StabilizerTableau>(m, "StabilizerTableau")
      .def(py::init<int>(), py::arg("n_qubits"))
      .def_property_readonly("n_qubits", &hrcsim::StabilizerTableau::n_qubits)
      .def("apply_two_qubit", &hrcsim::StabilizerTableau::apply_two_qubit,
           py::arg("gate"), py::arg("i"), py::arg("j"))
      .def(
          "measure_z",
          [](hrcsim::StabilizerTableau& t, int site) { return t.measure_z(site); },
          py::arg("site"))
      .def("__str__", &hrcsim::StabilizerTableau::to_string);

  m.def(
      "entanglement_entropy",
      [](const hrcsim::StabilizerTableau& t, const std::vector<int>& region) {
        return hrcsim::entanglement_entropy(t, region_of(region));
      },
      py::arg("tableau"), py::arg("region"));
  m.def(
      "mutual_information",
      [](const hrcsim::StabilizerTableau& t, const std::vector<int>& a,
         const std::vector<int>& b) {
        return hrcsim::mutual_information(t, region_of(a), region_of(b));
      },
      py::arg("tableau"), py::arg("a"), py::arg("b"));
  m.def(
      "tripartite_mutual_information",
      [](const hrcsim::StabilizerTableau& t, const std::vector<int>& a,
         const std::vector<int>& b, const std::vector<int>& c) {
        return hrcsim::tripartite_mutual_information(t, region_of(a),
                                                     region_of(b), region_of(c));
      },
      py::arg("tableau"), py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "log_negativity",
      [](const hrcsim::StabilizerTableau& t, const std::vector<int>& a,
         const std::vector<int>& b) {
        return hrcsim::log_negativity(t, region_of(a), region_of(b));
      },
      py::arg("tableau"), py::arg("a"), py::arg("b"));

  py::enum_<hrcsim::CircuitKind>(m, "CircuitKind")
      .value("CHRC", hrcsim::CircuitKind::kChrc)
      .value("LRHRC", hrcsim::CircuitKind::kLrhrc);

  py::class_<hrcsim::ProtocolConfig>(m, "ProtocolConfig")
      .def(py::init<>())
      .def_readwrite("kind", &hrcsim::ProtocolConfig::kind)
      .def_readwrite("n_sites", &hrcsim::ProtocolConfig::n_sites)
      .def_readwrite("measurement_rate", &hrcsim::ProtocolConfig::measurement_rate)
      .def_readwrite("cluster_size", &hrcsim::ProtocolConfig::cluster_size)
      .def_readwrite("alpha", &hrcsim::ProtocolConfig::alpha)
      .def_readwrite("chordal_distance", &hrcsim::ProtocolConfig::chordal_distance)
      .def_readwrite("n_steps", &hrcsim::ProtocolConfig::n_steps)
      .def_readwrite("master_seed", &hrcsim::ProtocolConfig::master_seed)
      .def_readwrite("n_trajectories", &hrcsim::ProtocolConfig::n_trajectories)
      .def("steps", &hrcsim::ProtocolConfig::steps)
      .def("validate", &hrcsim::ProtocolConfig::validate);

  py::class_<hrcsim::StationaryObservables>(m, "StationaryObservables")
      .def_readonly("half_entropy", &hrcsim::StationaryObservables::half_entropy)
      .def_readonly("mutual_info", &hrcsim::StationaryObservables::mutual_info)
      .def_readonly("tripartite_info",
                    &hrcsim::StationaryObservables::tripartite_info)
      .def_readonly("negativity", &hrcsim::StationaryObservables::negativity);

  py::class_<hrcsim::AncillaObservables>(m, "AncillaObservables")
      .def_readonly("reference_entropy",
                    &hrcsim::AncillaObservables::reference_entropy)
      .def_readonly("preamble_gates", &hrcsim::AncillaObservables::preamble_gates);

  m.def("trajectory_seed", &hrcsim::trajectory_seed, py::arg("config"),
        py::arg("trajectory_id"));
  m.def("run_trajectory", &hrcsim::run_trajectory, py::arg("config"),
        py::arg("trajectory_id"), py::call_guard<py::gil_scoped_release>());
  m.def("run_ancilla_trajectory", &hrcsim::run_ancilla_trajectory,
        py::arg("config"), py::arg("trajectory_id"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<hrcsim::EquivalenceStats>(m, "EquivalenceStats")
      .def_readonly("circuits", &hrcsim::EquivalenceStats::circuits)
      .def_readonly("steps", &hrcsim::EquivalenceStats::steps)
      .def_readonly("comparisons", &hrcsim::EquivalenceStats::comparisons)
      .def_readonly("mismatches", &hrcsim::EquivalenceStats::mismatches)
      .def_readonly("first_mismatch", &hrcsim::EquivalenceStats::first_mismatch);

  m.def(
      "run_tape_equivalence",
      [](hrcsim::CircuitKind kind, int n_sites, int n_circuits,
         std::uint64_t seed) {
        hrcsim::EquivalenceOptions options;
        options.n_circuits = n_circuits;
        options.seed = seed;
        return hrcsim::run_tape_equivalence(kind, n_sites, options);
      },
      py::arg("kind"), py::arg("n_sites"), py::arg("n_circuits") = 50,
      py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());

  py::class_<hrcsim::DataPoint>(m, "DataPoint")
      .def(py::init([](int size, double rate, double mean, double err, long n) {
             return hrcsim::DataPoint{size, rate, mean, err, n};
           }),
           py::arg("size"), py::arg("rate"), py::arg("mean"), py::arg("err"),
           py::arg("n") = 0)
      .def_readwrite("size", &hrcsim::DataPoint::size)
      .def_readwrite("rate", &hrcsim::DataPoint::rate)
      .def_readwrite("mean", &hrcsim::DataPoint::mean)
      .def_readwrite("err", &hrcsim::DataPoint::err)
      .def_readwrite("n", &hrcsim::DataPoint::n);

  py::class_<hrcsim::DataSet>(m, "DataSet")
      .def(py::init([](std::vector<hrcsim::DataPoint> points) {
             hrcsim::DataSet d;
             d.points = std::move(points);
             d.validate();
             return d;
           }),
           py::arg("points"))
      .def_readonly("points", &hrcsim::DataSet::points)
      .def("sizes", &hrcsim::DataSet::sizes)
      .def("rates", &hrcsim::DataSet::rates);

  py::class_<hrcsim::CollapseParams>(m, "CollapseParams")
      .def_readonly("p_c", &hrcsim::CollapseParams::p_c)
      .def_readonly("nu", &hrcsim::CollapseParams::nu)
      .def_readonly("gamma", &hrcsim::CollapseParams::gamma)
      .def_readonly("quality", &hrcsim::CollapseParams::quality)
      .def_readonly("p_c_err", &hrcsim::CollapseParams::p_c_err)
      .def_readonly("nu_err", &hrcsim::CollapseParams::nu_err)
      .def_readonly("gamma_err", &hrcsim::CollapseParams::gamma_err)
      .def_readonly("converged", &hrcsim::CollapseParams::converged)
      .def_readonly("message", &hrcsim::CollapseParams::message);

  m.def(
      "fss_collapse",
      [](const hrcsim::DataSet& data, bool free_gamma, double gamma_fixed,
         std::optional<double> pc_hint, int bootstrap_resamples) {
        hrcsim::CollapseOptions options;
        options.gamma_mode =
            free_gamma ? hrcsim::GammaMode::kFree : hrcsim::GammaMode::kFixed;
        options.gamma_fixed = gamma_fixed;
        options.critical_rate_hint = pc_hint;
        options.bootstrap_resamples = bootstrap_resamples;
        return hrcsim::fss_collapse(data, options);
      },
      py::arg("data"), py::arg("free_gamma") = false,
      py::arg("gamma_fixed") = 0.0, py::arg("pc_hint") = std::nullopt,
      py::arg("bootstrap_resamples") = 100,
      py::call_guard<py::gil_scoped_release>());
  m.def("collapse_quality", &hrcsim::collapse_quality, py::arg("data"),
        py::arg("p_c"), py::arg("nu"), py::arg("gamma") = 0.0);
  m.def("crossing_estimate", &hrcsim::crossing_estimate, py::arg("data"));

  py::class_<hrcsim::PowerLawFit>(m, "PowerLawFit")
      .def_readonly("amplitude", &hrcsim::PowerLawFit::amplitude)
      .def_readonly("exponent", &hrcsim::PowerLawFit::exponent)
      .def_readonly("offset", &hrcsim::PowerLawFit::offset)
      .def_readonly("exponent_err", &hrcsim::PowerLawFit::exponent_err)
      .def_readonly("residual", &hrcsim::PowerLawFit::residual);

  m.def(
      "fit_power_law",
      [](const std::vector<std::tuple<int, double, double>>& points) {
        std::vector<hrcsim::PowerLawPoint> pts;
        for (const auto& [size, mean, err] : points) {
          pts.push_back({size, mean, err});
        }
        return hrcsim::fit_power_law(pts);
      },
      py::arg("points"));

  py::class_<hrcsim::DynamicCollapseParams>(m, "DynamicCollapseParams")
      .def_readonly("z", &hrcsim::DynamicCollapseParams::z)
      .def_readonly("quality", &hrcsim::DynamicCollapseParams::quality)
      .def_readonly("z_err", &hrcsim::DynamicCollapseParams::z_err)
      .def_readonly("converged", &hrcsim::DynamicCollapseParams::converged);

  m.def(
      "dynamic_collapse",
      [](const std::vector<std::tuple<int, std::vector<double>,
                                      std::vector<double>>>& series) {
        std::vector<hrcsim::DecaySeries> s;
        for (const auto& [size, mean, err] : series) {
          s.push_back({size, mean, err});
        }
        return hrcsim::dynamic_collapse(s);
      },
      py::arg("series"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "synthetic_collapse_data",
      [](double p_c, double nu, double gamma, const std::vector<int>& sizes,
         const std::vector<double>& rates, double noise, std::uint64_t seed) {
        return hrcsim::synthetic_collapse_data(p_c, nu, gamma, sizes, rates,
                                               noise, seed);
      },
      py::arg("p_c"), py::arg("nu"), py::arg("gamma"), py::arg("sizes"),
      py::arg("rates"), py::arg("noise"), py::arg("seed"));

  m.def(
      "read_records_dataset",
      [](const std::vector<std::string>& paths, const std::string& observable) {
        std::vector<hrcsim::ResultRecord> records;
        for (const auto& path : paths) {
          auto part = hrcsim::read_records(path);
          records.insert(records.end(), part.begin(), part.end());
        }
        return hrcsim::aggregate_dataset(
            records, hrcsim::observable_from_string(observable),
            hrcsim::RecordFilter{});
      },
      py::arg("paths"), py::arg("observable"));
}

// Copyright 2026 The qdsqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <pybind11/stl/filesystem.h>

#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/experiments.hpp"
#include "qdsqueeze/presets.hpp"

namespace py = pybind11;
using namespace qdsqueeze;

namespace {

py::dict table_dict(const Table& t)
{
    py::dict d;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        d[py::str(t.columns[i])] = t.column(t.columns[i]);
    }
    return d;
}

py::dict observables_dict(const ObservableSet& o, const SteadyStateResult& s)
{
    py::dict d;
    d["a"] = o.exp_a;
    d["adag_a"] = o.exp_adag_a;
    d["a2"] = o.exp_a2;
    d["sigma_minus"] = o.exp_sigma_minus;
    d["exciton_coherence"] = std::abs(o.exp_sigma_minus);
    d["variance_normord"] = o.variance_normord;
    d["theta"] = o.theta;
    d["fock_populations"] = o.fock_populations;
    d["cavity_rho"] = o.fock_coherences;
    d["rho"] = s.rho.matrix();
    d["n_fock_used"] = s.n_fock_used;
    d["residual"] = s.residual;
    d["gap"] = s.gap;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Steady-state squeezing of a driven quantum-dot cavity with phonon coupling";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<InputMode>(m, "InputMode")
        .value("BARE", InputMode::Bare)
        .value("RENORMALIZED", InputMode::Renormalized);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("omega_ueV", &SystemParams::omega_ueV)
        .def_readwrite("g_c_ueV", &SystemParams::g_c_ueV)
        .def_readwrite("delta_xl_ueV", &SystemParams::delta_xl_ueV)
        .def_readwrite("delta_cl_ueV", &SystemParams::delta_cl_ueV)
        .def_readwrite("gamma_ueV", &SystemParams::gamma_ueV)
        .def_readwrite("gamma_prime_ueV", &SystemParams::gamma_prime_ueV)
        .def_readwrite("kappa_ueV", &SystemParams::kappa_ueV)
        .def_readwrite("n_fock", &SystemParams::n_fock)
        .def_readwrite("input_mode", &SystemParams::input_mode)
        .def("validate", &SystemParams::validate);

    py::class_<PhononEnv>(m, "PhononEnv")
        .def(py::init<>())
        .def_readwrite("alpha_p_ps2", &PhononEnv::alpha_p_ps2)
        .def_readwrite("omega_b_ueV", &PhononEnv::omega_b_ueV)
        .def_readwrite("temperature_K", &PhononEnv::temperature_K)
        .def_readwrite("enabled", &PhononEnv::enabled)
        .def("validate", &PhononEnv::validate);

    py::class_<PhononRates>(m, "PhononRates")
        .def_readonly("gamma_sigma_plus", &PhononRates::gamma_sigma_plus)
        .def_readonly("gamma_sigma_minus", &PhononRates::gamma_sigma_minus)
        .def_readonly("gamma_sigma_plus_a", &PhononRates::gamma_sigma_plus_a)
        .def_readonly("gamma_adag_sigma_minus", &PhononRates::gamma_adag_sigma_minus)
        .def_readonly("delta_lx", &PhononRates::delta_lx)
        .def_readonly("delta_cx", &PhononRates::delta_cx);

    m.def("mean_displacement", &mean_displacement, py::arg("env"));
    m.def("phonon_phase", &phonon_phase, py::arg("tau_ps"), py::arg("env"));
    m.def(
        "compute_rates",
        [](const SystemParams& sys, const PhononEnv& env) {
            BathKernel kernel(env);
            return compute_rates(sys, kernel);
        },
        py::arg("system"), py::arg("env"));

    m.def(
        "steady_state",
        [](const SystemParams& sys, const PhononEnv& env, bool auto_truncation, double theta,
           bool include_phonon_rates) {
            py::gil_scoped_release release;
            BathKernel kernel(env);
            AssembleOptions opts;
            opts.include_phonon_rates = include_phonon_rates;
            SteadyStateResult s = solve_point(sys, kernel, auto_truncation, opts, theta);
            ObservableSet o = compute_observables(s.rho, theta);
            py::gil_scoped_acquire acquire;
            return observables_dict(o, s);
        },
        py::arg("system"), py::arg("env"), py::arg("auto_truncation") = true,
        py::arg("theta") = 0.0, py::arg("include_phonon_rates") = true);

    m.def(
        "quadrature_variance",
        [](const Matrix& cavity_rho, double theta) { return quadrature_variance_cavity(cavity_rho, theta); },
        py::arg("cavity_rho"), py::arg("theta") = 0.0);

    m.def(
        "variance_sweep",
        [](const SystemParams& sys, const PhononEnv& env, const std::vector<double>& points,
           const std::string& axis, double theta, int threads) {
            SweepSpec spec;
            spec.axis = axis_from_column(axis);
            spec.system = sys;
            spec.phonons = env;
            spec.points = points;
            spec.theta = theta;
            spec.threads = threads;
            Table t;
            {
                py::gil_scoped_release release;
                t = spec.axis == SweepAxis::Temperature ? run_temperature_sweep(spec).to_table()
                                                        : run_variance_sweep(spec).to_table();
            }
            return table_dict(t);
        },
        py::arg("system"), py::arg("env"), py::arg("points"),
        py::arg("axis") = "delta_cl_over_scale", py::arg("theta") = 0.0, py::arg("threads") = 1);

    m.def(
        "rates_sweep",
        [](const PhononEnv& env, const std::vector<double>& detunings_ueV, const SystemParams& sys) {
            SweepSpec spec;
            spec.axis = SweepAxis::DetuningForRates;
            spec.system = sys;
            spec.phonons = env;
            spec.points = detunings_ueV;
            return table_dict(run_rates_sweep(spec).to_table());
        },
        py::arg("env"), py::arg("detunings_ueV"), py::arg("system") = SystemParams{});

    m.def("presets", [] {
        std::vector<std::string> names;
        for (const auto& p : presets()) {
            names.push_back(p.name);
        }
        return names;
    });

    m.def(
        "run_preset",
        [](const std::string& name, const std::optional<std::string>& config_path,
           const std::optional<std::filesystem::path>& out_dir) {
            std::optional<Config> cfg;
            if (config_path) {
                cfg = load_config(*config_path);
            }
            Recipe recipe = resolve_recipe(find_preset(name), cfg);
            RecipeOutput output;
            {
                py::gil_scoped_release release;
                output = run_recipe(recipe);
                if (out_dir) {
                    write_outputs(recipe, output, *out_dir);
                }
            }
            py::dict tables;
            for (const auto& [label, t] : output.tables) {
                tables[py::str(label)] = table_dict(t);
            }
            py::dict result;
            result["tables"] = tables;
            result["summary"] = py::module_::import("json").attr("loads")(output.summary.dump());
            return result;
        },
        py::arg("name"), py::arg("config") = py::none(), py::arg("out_dir") = py::none());
}

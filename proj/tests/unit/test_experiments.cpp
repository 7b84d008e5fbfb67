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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdsqueeze/experiments.hpp"

using namespace qdsqueeze;

namespace {

SystemParams operating_point()
{
    SystemParams s;
    s.omega_ueV = 50.0;
    s.g_c_ueV = 75.0;
    s.kappa_ueV = 45.0;
    s.delta_xl_ueV = -75.0;
    s.input_mode = InputMode::Renormalized;
    return s;
}

SweepSpec variance_spec(int n)
{
    SweepSpec spec;
    spec.system = operating_point();
    spec.points = linspace(-0.6, 0.0, n);
    return spec;
}

}  // namespace

TEST_CASE("linspace endpoints")
{
    auto v = linspace(-1.0, 1.0, 5);
    CHECK(v.size() == 5);
    CHECK(v.front() == -1.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == doctest::Approx(0.0));
    CHECK(linspace(3.0, 4.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("spec validation")
{
    SweepSpec spec = variance_spec(3);
    CHECK_NOTHROW(spec.validate());
    spec.points = {};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.points = {0.0, 0.1, 0.1};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.points = {0.2, 0.1, -0.3};
    CHECK_NOTHROW(spec.validate());
    spec.points = {0.0, std::nan("")};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("axis names round trip")
{
    for (SweepAxis a : {SweepAxis::DeltaClOverScale, SweepAxis::DeltaXl, SweepAxis::Temperature,
                        SweepAxis::DetuningForRates}) {
        CHECK(axis_from_column(axis_column(a)) == a);
    }
    CHECK_THROWS(axis_from_column("bogus"));
}

TEST_CASE("rate sweep: temperature ordering and zero detuning")
{
    SweepSpec spec;
    spec.axis = SweepAxis::DetuningForRates;
    spec.points = {-1000.0, -200.0, 0.0, 200.0, 1000.0};
    spec.phonons.temperature_K = 4.0;
    SweepResult cold = run_rates_sweep(spec);
    spec.phonons.temperature_K = 10.0;
    SweepResult warm = run_rates_sweep(spec);
    CHECK(cold.columns == rate_columns());
    for (const auto& name : rate_columns()) {
        auto c = cold.column(name);
        auto w = warm.column(name);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] >= 0.0);
            CHECK(w[i] >= c[i]);
        }
    }
    auto plus = warm.column("gamma_sigma_plus_ueV");
    auto minus = warm.column("gamma_sigma_minus_ueV");
    CHECK(plus[2] == doctest::Approx(minus[2]).epsilon(1e-12));
    CHECK(plus[3] == doctest::Approx(minus[1]).epsilon(1e-12));
}

TEST_CASE("variance sweep columns and physical bounds")
{
    SweepResult r = run_variance_sweep(variance_spec(4));
    CHECK(r.columns == variance_columns());
    auto adag_a = r.column("adag_a");
    auto product = r.column("a_adag_product");
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(adag_a[i] - product[i] >= -1e-12);
        CHECK(r.rows[i].residual <= 1e-9);
        CHECK(r.rows[i].n_fock_used >= 4);
    }
    auto v = r.column("variance_normord");
    auto v0 = r.column("variance_normord_no_phonons");
    CHECK(*std::min_element(v0.begin(), v0.end()) < *std::min_element(v.begin(), v.end()));
}

TEST_CASE("recorded column selection")
{
    SweepSpec spec = variance_spec(2);
    spec.recorded = {"exciton_coherence", "variance_normord"};
    SweepResult r = run_variance_sweep(spec);
    CHECK(r.columns == spec.recorded);
    CHECK(r.rows[0].values.size() == 2);
    spec.recorded = {"nope"};
    CHECK_THROWS_AS(run_variance_sweep(spec), std::invalid_argument);
}

TEST_CASE("threaded sweep matches the serial one exactly")
{
    SweepSpec spec = variance_spec(5);
    SweepResult serial = run_variance_sweep(spec);
    spec.threads = 3;
    SweepResult threaded = run_variance_sweep(spec);
    CHECK(to_csv(serial.to_table()) == to_csv(threaded.to_table()));
}

TEST_CASE("table round trip")
{
    SweepResult r = run_variance_sweep(variance_spec(3));
    Table t = r.to_table();
    CHECK(t.columns.front() == "delta_cl_over_scale");
    CHECK(t.columns.back() == "residual");
    SweepResult back = sweep_from_table(t, r.spec);
    CHECK(back.columns == r.columns);
    CHECK(back.rows == r.rows);
    CHECK(back.spec.axis == SweepAxis::DeltaClOverScale);
}

TEST_CASE("zero crossing interpolation")
{
    SweepResult r;
    r.spec.axis = SweepAxis::Temperature;
    r.columns = {"variance_normord"};
    r.rows = {{0.0, {-0.02}}, {1.0, {-0.01}}, {2.0, {0.03}}, {3.0, {-0.01}}};
    auto z = zero_crossing(r, "variance_normord");
    REQUIRE(z);
    CHECK(*z == doctest::Approx(1.25));
    r.rows = {{0.0, {-0.02}}, {1.0, {-0.01}}};
    CHECK_FALSE(zero_crossing(r, "variance_normord"));
    CHECK_THROWS(zero_crossing(r, "missing"));
}

TEST_CASE("temperature sweep: zero temperature still feels phonons")
{
    SweepSpec spec;
    spec.axis = SweepAxis::Temperature;
    spec.system = operating_point();
    spec.system.delta_cl_ueV = -0.3 * std::hypot(50.0, 75.0);
    spec.points = {0.0, 4.0};
    SweepResult r = run_temperature_sweep(spec);
    CHECK(r.columns == temperature_columns());
    auto b = r.column("b_mean");
    CHECK(b[0] == doctest::Approx(std::exp(-0.5 * 0.06 * std::pow(1000.0 / 658.2119569, 2))));
    CHECK(b[1] < b[0]);

    SweepSpec off = variance_spec(2);
    off.system.delta_cl_ueV = 0.0;
    off.points = {-0.3, -0.29};
    SweepResult no_ph = run_variance_sweep(off);
    double v_off = no_ph.column("variance_normord_no_phonons")[0];
    CHECK(std::abs(r.column("variance_normord")[0] - v_off) > 1e-3);
}

TEST_CASE("vanishing drive gives vanishing exciton coherence")
{
    SweepSpec spec = variance_spec(2);
    spec.system.omega_ueV = 1e-6;
    spec.auto_truncation = false;
    spec.system.n_fock = 3;
    SweepResult r = run_variance_sweep(spec);
    for (double c : r.column("exciton_coherence")) {
        CHECK(c < 1e-7);
    }
}

TEST_CASE("contour argmax and long-form table")
{
    ContourSpec spec;
    spec.system = operating_point();
    spec.delta_xl_ueV = {-100.0, -75.0};
    spec.delta_cl_ueV = {-90.0, -40.0, 0.0};
    ContourResult c = run_coherence_contour(spec);
    REQUIRE(c.coherence.size() == 2);
    REQUIRE(c.coherence[0].size() == 3);
    double best = c.coherence[c.argmax_xl][c.argmax_cl];
    for (const auto& row : c.coherence) {
        for (double v : row) {
            CHECK(v <= best);
        }
    }
    Table t = c.to_table();
    CHECK(t.columns == std::vector<std::string>{"delta_xl_ueV", "delta_cl_ueV", "exciton_coherence"});
    CHECK(t.rows.size() == 6);
}

TEST_CASE("fock report tables")
{
    SystemParams s = operating_point();
    s.delta_cl_ueV = -0.3 * std::hypot(50.0, 75.0);
    FockReport rep = run_fock_report(s, PhononEnv{});
    Table p = rep.populations_table();
    CHECK(p.columns == std::vector<std::string>{"n", "population"});
    CHECK(static_cast<int>(p.rows.size()) == rep.n_fock_used + 1);
    Table c = rep.coherence_table();
    CHECK(c.columns == std::vector<std::string>{"n", "m", "re", "im", "abs"});
    CHECK(c.rows.size() == p.rows.size() * p.rows.size());
    for (const auto& row : c.rows) {
        CHECK(row[4] == doctest::Approx(std::hypot(row[2], row[3])));
        if (row[0] == row[1]) {
            CHECK(row[3] == doctest::Approx(0.0));
        }
    }
}

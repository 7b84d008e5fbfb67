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

#include <cmath>

#include "../support/oracles.hpp"
#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/phonon_bath.hpp"
#include "qdsqueeze/units.hpp"

using namespace qdsqueeze;

namespace {

PhononEnv at(double t)
{
    PhononEnv e;
    e.temperature_K = t;
    return e;
}

SystemParams drive_point(double delta_xl, double delta_cl)
{
    SystemParams s;
    s.omega_ueV = 50.0;
    s.g_c_ueV = 75.0;
    s.kappa_ueV = 45.0;
    s.delta_xl_ueV = delta_xl;
    s.delta_cl_ueV = delta_cl;
    s.input_mode = InputMode::Renormalized;
    return s;
}

}  // namespace

TEST_CASE("spectral function shape")
{
    PhononEnv e;
    const double wb = e.omega_b_ueV / units::kHbar;
    CHECK(spectral_function(0.0, e) == 0.0);
    CHECK(spectral_function(wb, e) == doctest::Approx(0.06 * wb * wb * wb * std::exp(-0.5)));
    // maximum of w^3 exp(-w^2/2wb^2) at sqrt(3) wb
    double peak = std::sqrt(3.0) * wb;
    CHECK(spectral_function(peak, e) > spectral_function(0.99 * peak, e));
    CHECK(spectral_function(peak, e) > spectral_function(1.01 * peak, e));
}

TEST_CASE("mean displacement matches an independent Simpson integral")
{
    for (double t : {0.0, 1.0, 4.0, 9.0, 20.0}) {
        double ref = oracle::mean_displacement(0.06, 1000.0, t);
        CHECK(mean_displacement(at(t)) == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("zero temperature closed form")
{
    PhononEnv e = at(0.0);
    const double wb = e.omega_b_ueV / units::kHbar;
    CHECK(mean_displacement(e) == doctest::Approx(std::exp(-0.5 * e.alpha_p_ps2 * wb * wb))
                                       .epsilon(1e-12));
}

TEST_CASE("disabled bath is exactly the identity")
{
    PhononEnv e;
    e.enabled = false;
    CHECK(mean_displacement(e) == 1.0);
    BathKernel k(e);
    CHECK(k.b_mean() == 1.0);
    PhononRates r = compute_rates(drive_point(-75.0, -27.0), k);
    CHECK(r.gamma_sigma_plus == 0.0);
    CHECK(r.gamma_adag_sigma_minus == 0.0);
}

TEST_CASE("phi(0) = -2 ln <B> and the table matches direct evaluation")
{
    for (double t : {0.0, 4.0, 10.0}) {
        BathKernel k(at(t));
        CHECK(k.phase_table()[0].real() == doctest::Approx(-2.0 * std::log(k.b_mean())).epsilon(1e-12));
        CHECK(std::abs(k.phase_table()[0].imag()) < 1e-15);
        for (double tau : {0.5, 1.37, 3.0}) {
            auto idx = static_cast<std::size_t>(std::lround(tau / k.tau_step()));
            double tk = static_cast<double>(idx) * k.tau_step();
            CHECK(std::abs(k.phase_table()[idx] - phonon_phase(tk, at(t))) < 1e-10);
            CHECK(std::abs(k.phase(tk) - oracle::phase(tk, 0.06, 1000.0, t)) < 1e-8);
        }
    }
}

TEST_CASE("tail of phi is below tolerance unless the cutoff cap was hit")
{
    BathKernel warm(at(4.0));
    CHECK(warm.tail_magnitude() <= 1e-8);
    CHECK(warm.tau_max() < 384.0);
    BathKernel cold(at(0.0));
    CHECK(cold.tau_max() == doctest::Approx(384.0));
}

TEST_CASE("phase derivative agrees with a finite difference")
{
    BathKernel k(at(4.0));
    for (double tau : {0.3, 1.0, 2.5}) {
        double h = 1e-5;
        std::complex<double> fd = (k.phase(tau + h) - k.phase(tau - h)) / (2.0 * h);
        CHECK(std::abs(k.phase_derivative(tau) - fd) < 1e-7);
    }
}

TEST_CASE("sideband integral agrees with a Simpson oracle")
{
    BathKernel k(at(4.0));
    auto table = oracle::phase_table(0.06, 1000.0, 4.0, 40.0, 4000);
    for (double d : {-200.0, -30.0, 0.0, 48.0, 300.0}) {
        double ref = oracle::sideband(d, table, 40.0);
        CHECK(k.sideband_integral(d) == doctest::Approx(ref).epsilon(1e-6).scale(1e-6));
    }
}

TEST_CASE("rates are insensitive to doubling the grids")
{
    SystemParams s = drive_point(-75.0, -27.04);
    BathKernel base(at(4.0));
    BathGrid fine;
    fine.omega_nodes = 4000;
    fine.tau_step_ps = 0.005;
    fine.tail_tolerance = 1e-10;
    BathKernel refined(at(4.0), fine);
    PhononRates a = compute_rates(s, base);
    PhononRates b = compute_rates(s, refined);
    CHECK(std::abs(a.gamma_sigma_plus - b.gamma_sigma_plus) < 1e-6);
    CHECK(std::abs(a.gamma_sigma_minus - b.gamma_sigma_minus) < 1e-6);
    CHECK(std::abs(a.gamma_sigma_plus_a - b.gamma_sigma_plus_a) < 1e-6);
    CHECK(std::abs(a.gamma_adag_sigma_minus - b.gamma_adag_sigma_minus) < 1e-6);
}

TEST_CASE("detailed balance between emission and absorption")
{
    for (double t : {4.0, 10.0}) {
        BathKernel k(at(t));
        for (double d : {-150.0, -50.0, 25.0, 100.0, 200.0}) {
            PhononRates r = compute_rates(drive_point(-d, 0.0), k);
            double kms = std::exp(d / units::thermal_energy(t));
            CHECK(r.gamma_sigma_plus / r.gamma_sigma_minus == doctest::Approx(kms).epsilon(0.02));
        }
    }
}

TEST_CASE("zero detuning gives equal rates and rates grow with temperature")
{
    BathKernel k4(at(4.0));
    BathKernel k10(at(10.0));
    PhononRates r0 = compute_rates(drive_point(0.0, 0.0), k4);
    CHECK(r0.gamma_sigma_plus == doctest::Approx(r0.gamma_sigma_minus).epsilon(1e-14));
    CHECK(r0.gamma_sigma_plus_a == doctest::Approx(r0.gamma_adag_sigma_minus).epsilon(1e-14));
    for (double d = -1000.0; d <= 1000.0; d += 100.0) {
        PhononRates a = compute_rates(drive_point(-d, 0.0), k4);
        PhononRates b = compute_rates(drive_point(-d, 0.0), k10);
        CHECK(b.gamma_sigma_plus >= a.gamma_sigma_plus);
        CHECK(b.gamma_sigma_minus >= a.gamma_sigma_minus);
        CHECK(a.gamma_sigma_plus >= 0.0);
        CHECK(a.gamma_sigma_minus >= 0.0);
    }
}

TEST_CASE("zero temperature absorption vanishes")
{
    BathKernel k(at(0.0));
    // Delta_cx > 0: a+ sigma- needs a phonon absorbed.
    PhononRates r = compute_rates(drive_point(-75.0, -27.04), k);
    CHECK(r.gamma_adag_sigma_minus < 1e-6);
    CHECK(r.gamma_sigma_plus_a > 0.1);
}

TEST_CASE("rate clamping")
{
    CHECK(clamp_rate(0.5, "x") == 0.5);
    CHECK(clamp_rate(-5e-7, "x") == 0.0);
    CHECK_THROWS_AS(clamp_rate(-1e-3, "x"), NumericalError);
    CHECK_THROWS_AS(clamp_rate(std::nan(""), "x"), NumericalError);
}

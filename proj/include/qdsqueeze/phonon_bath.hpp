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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qdsqueeze/params.hpp"

namespace qdsqueeze {

/// j(w) = alpha_p w^3 exp(-w^2 / 2 w_b^2), w in rad/ps.
double spectral_function(double omega_rad_ps, const PhononEnv& env);

/// Thermally averaged displacement <B>. Exactly 1 when phonons are
/// disabled. Throws NumericalError if doubling the frequency nodes moves the
/// result by more than 1e-8.
double mean_displacement(const PhononEnv& env);

/// phi(tau) evaluated directly on the default frequency rule (tau >= 0).
std::complex<double> phonon_phase(double tau_ps, const PhononEnv& env);

/// Discretization of the frequency and delay integrals.
struct BathGrid {
    int omega_nodes = 2000;        ///< Gauss-Legendre nodes on [0, 8 w_b]
    double tau_step_ps = 0.01;     ///< base trapezoid step
    double tau_max_ps = 12.0;      ///< initial cutoff, doubled until the tail is small
    double tail_tolerance = 1e-8;  ///< target |phi(tau_max)|
    double tau_max_cap_ps = 384.0;
};

/// Precomputed bath for one PhononEnv: <B> and phi(tau) tabulated on a
/// uniform delay grid. Immutable once built and safe to share between
/// threads.
class BathKernel {
public:
    explicit BathKernel(const PhononEnv& env, const BathGrid& grid = {});

    const PhononEnv& env() const noexcept { return env_; }
    double b_mean() const noexcept { return b_mean_; }
    double tau_step() const noexcept { return tau_step_; }
    double tau_max() const noexcept { return tau_step_ * static_cast<double>(phase_.size() - 1); }
    /// |phi(tau_max)|; below the grid tolerance unless tau_max hit the cap
    /// (only at T ~ 0, where phi decays algebraically).
    double tail_magnitude() const noexcept { return tail_; }
    int omega_nodes() const noexcept { return static_cast<int>(omega_.size()); }

    /// phi at tau_k = k * tau_step(), k = 0 .. N.
    std::span<const std::complex<double>> phase_table() const noexcept { return phase_; }

    /// phi(tau) from the kernel's frequency rule.
    std::complex<double> phase(double tau_ps) const;
    /// d phi / d tau.
    std::complex<double> phase_derivative(double tau_ps) const;

    /// Re int_0^inf dtau exp(i detuning tau / hbar) (e^phi(tau) - 1), in ps. The
    /// linear term is transformed exactly; the rest is integrated to tau_max.
    /// The step is refined below the table step when the detuning demands
    /// dtau <= pi / (10 |detuning| / hbar).
    double sideband_integral(double detuning_ueV) const;

private:
    std::vector<std::complex<double>> tabulate(double step, std::size_t count) const;

    PhononEnv env_;
    double b_mean_ = 1.0;
    double tau_step_ = 0.01;
    double tail_ = 0.0;
    std::vector<double> omega_;    // rad/ps
    std::vector<double> weight_;   // w_k j(w_k) / w_k^2
    std::vector<double> coth_;     // coth(hbar w / 2 k_B T), 1 at T = 0
    std::vector<std::complex<double>> phase_;
};

/// Phonon-induced incoherent rates (ueV) and the detunings they were
/// evaluated at.
struct PhononRates {
    double gamma_sigma_plus = 0.0;
    double gamma_sigma_minus = 0.0;
    double gamma_adag_sigma_minus = 0.0;
    double gamma_sigma_plus_a = 0.0;
    double delta_lx = 0.0;  ///< w_l - w_x = -delta_xl
    double delta_cx = 0.0;  ///< w_c - w_x = delta_cl - delta_xl
};

/// Rates for `sys` using an existing kernel (its <B> renormalizes Omega, g_c).
PhononRates compute_rates(const SystemParams& sys, const BathKernel& kernel);

/// Builds a kernel for `env` and evaluates the rates with renormalization
/// `b_mean`. All rates are 0 when phonons are disabled.
PhononRates compute_rates(const SystemParams& sys, const PhononEnv& env, double b_mean);

/// Applies the non-negativity contract: values in [-1e-6, 0) ueV are
/// clamped to 0, anything more negative throws NumericalError.
double clamp_rate(double rate_ueV, const char* name);

}  // namespace qdsqueeze

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

#include "qdsqueeze/phonon_bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/quadrature.hpp"
#include "qdsqueeze/units.hpp"

namespace qdsqueeze {

namespace {

using cplx = std::complex<double>;

constexpr double kOmegaRangeInCutoffs = 8.0;
constexpr double kDisplacementTolerance = 1e-8;
constexpr double kRateNoiseFloor = 1e-6;  // ueV
constexpr int kResyncInterval = 256;

double omega_cutoff(const PhononEnv& env)
{
    return units::energy_to_angular_frequency(env.omega_b_ueV);
}

double coth_factor(double omega, const PhononEnv& env)
{
    if (env.temperature_K <= 0.0) {
        return 1.0;
    }
    double x = units::kHbar * omega / (2.0 * units::thermal_energy(env.temperature_K));
    return 1.0 / std::tanh(x);
}

// j(w) / w^2 without the 0/0 at w = 0.
double reduced_spectral_function(double omega, const PhononEnv& env)
{
    double wb = omega_cutoff(env);
    return env.alpha_p_ps2 * omega * std::exp(-omega * omega / (2.0 * wb * wb));
}

// int_0^inf dw j(w)/w^2 coth(hbar w / 2 k_B T) on an n-point rule.
double displacement_exponent(const PhononEnv& env, int n)
{
    QuadratureRule rule = gauss_legendre(n, 0.0, kOmegaRangeInCutoffs * omega_cutoff(env));
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double w = rule.nodes[k];
        sum += rule.weights[k] * reduced_spectral_function(w, env) * coth_factor(w, env);
    }
    return sum;
}

// Nodes needed for the rule to resolve cos(w tau) over [0, 8 w_b].
int nodes_for_delay(int base, double omega_range, double tau)
{
    return std::max(base, static_cast<int>(std::ceil(0.75 * omega_range * tau)));
}

}  // namespace

double spectral_function(double omega_rad_ps, const PhononEnv& env)
{
    return omega_rad_ps * omega_rad_ps * reduced_spectral_function(omega_rad_ps, env);
}

double mean_displacement(const PhononEnv& env)
{
    env.validate();
    if (!env.enabled) {
        return 1.0;
    }
    const int n = BathGrid{}.omega_nodes;
    double b = std::exp(-0.5 * displacement_exponent(env, n));
    double b_fine = std::exp(-0.5 * displacement_exponent(env, 2 * n));
    if (std::abs(b - b_fine) > kDisplacementTolerance) {
        throw NumericalError(fmt::format(
            "<B> quadrature not converged: {} nodes give {:.12f}, {} give {:.12f}", n, b, 2 * n,
            b_fine));
    }
    return b;
}

std::complex<double> phonon_phase(double tau_ps, const PhononEnv& env)
{
    env.validate();
    if (!env.enabled) {
        return {0.0, 0.0};
    }
    BathGrid grid;
    double range = kOmegaRangeInCutoffs * omega_cutoff(env);
    int n = nodes_for_delay(grid.omega_nodes, range, tau_ps);
    QuadratureRule rule = gauss_legendre(n, 0.0, range);
    double re = 0.0;
    double im = 0.0;
    for (int k = 0; k < n; ++k) {
        double w = rule.nodes[k];
        double g = rule.weights[k] * reduced_spectral_function(w, env);
        re += g * coth_factor(w, env) * std::cos(w * tau_ps);
        im -= g * std::sin(w * tau_ps);
    }
    return {re, im};
}

BathKernel::BathKernel(const PhononEnv& env, const BathGrid& grid)
    : env_(env), tau_step_(grid.tau_step_ps)
{
    env_.validate();
    if (!(grid.tau_step_ps > 0.0) || !(grid.tau_max_ps > grid.tau_step_ps) ||
        grid.omega_nodes < 1) {
        throw std::invalid_argument("BathKernel: invalid grid");
    }
    if (!env_.enabled) {
        phase_.assign(2, cplx(0.0, 0.0));
        return;
    }

    const double range = kOmegaRangeInCutoffs * omega_cutoff(env_);
    double tau_max = grid.tau_max_ps;
    for (;;) {
        int n = nodes_for_delay(grid.omega_nodes, range, tau_max);
        if (n != static_cast<int>(omega_.size())) {
            QuadratureRule rule = gauss_legendre(n, 0.0, range);
            omega_ = std::move(rule.nodes);
            weight_.resize(n);
            coth_.resize(n);
            for (int k = 0; k < n; ++k) {
                weight_[k] = rule.weights[k] * reduced_spectral_function(omega_[k], env_);
                coth_[k] = coth_factor(omega_[k], env_);
            }
        }
        tail_ = std::max(std::abs(phase(tau_max)), std::abs(phase(tau_max - 0.5)));
        if (tail_ <= grid.tail_tolerance || tau_max >= grid.tau_max_cap_ps) {
            break;
        }
        tau_max = std::min(2.0 * tau_max, grid.tau_max_cap_ps);
    }

    auto count = static_cast<std::size_t>(std::llround(tau_max / tau_step_)) + 1;
    phase_ = tabulate(tau_step_, count);
    b_mean_ = std::exp(-0.5 * phase_.front().real());
    if (!(b_mean_ > 0.0 && b_mean_ <= 1.0)) {
        throw NumericalError(fmt::format("<B> = {} outside (0, 1]", b_mean_));
    }
}

std::complex<double> BathKernel::phase(double tau_ps) const
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < omega_.size(); ++k) {
        double arg = omega_[k] * tau_ps;
        re += weight_[k] * coth_[k] * std::cos(arg);
        im -= weight_[k] * std::sin(arg);
    }
    return {re, im};
}

std::complex<double> BathKernel::phase_derivative(double tau_ps) const
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < omega_.size(); ++k) {
        double arg = omega_[k] * tau_ps;
        re -= weight_[k] * omega_[k] * coth_[k] * std::sin(arg);
        im -= weight_[k] * omega_[k] * std::cos(arg);
    }
    return {re, im};
}

std::vector<std::complex<double>> BathKernel::tabulate(double step, std::size_t count) const
{
    // Rotating phasors z_k = exp(-i w_k tau), resynchronized periodically.
    const std::size_t n = omega_.size();
    std::vector<cplx> z(n, cplx(1.0, 0.0));
    std::vector<cplx> rot(n);
    for (std::size_t k = 0; k < n; ++k) {
        rot[k] = std::polar(1.0, -omega_[k] * step);
    }
    std::vector<cplx> table(count);
    for (std::size_t t = 0; t < count; ++t) {
        if (t % kResyncInterval == 0) {
            double tau = step * static_cast<double>(t);
            for (std::size_t k = 0; k < n; ++k) {
                z[k] = std::polar(1.0, -omega_[k] * tau);
            }
        }
        double re = 0.0;
        double im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            re += weight_[k] * coth_[k] * z[k].real();
            im += weight_[k] * z[k].imag();
            z[k] *= rot[k];
        }
        table[t] = {re, im};
    }
    return table;
}

double BathKernel::sideband_integral(double detuning_ueV) const
{
    if (!env_.enabled) {
        return 0.0;
    }
    const double nu = units::energy_to_angular_frequency(detuning_ueV);
    const double span = tau_max();

    double step = tau_step_;
    std::vector<cplx> refined;
    std::span<const cplx> phi = phase_;
    if (nu != 0.0) {
        double required = std::numbers::pi / (10.0 * std::abs(nu));
        if (required < step) {
            auto factor = static_cast<std::size_t>(std::ceil(step / required));
            step /= static_cast<double>(factor);
            refined = tabulate(step, (phase_.size() - 1) * factor + 1);
            phi = refined;
        }
    }

    // The one-phonon term phi has a closed-form half-line transform; only the
    // remainder e^phi - 1 - phi, which decays like phi^2, is integrated.
    double one_phonon = 0.0;
    if (nu == 0.0) {
        // limit of j(w) / w^2 * n(w) as w -> 0
        one_phonon = std::numbers::pi * env_.alpha_p_ps2 *
                     units::thermal_energy(env_.temperature_K) / units::kHbar;
    } else {
        double w = std::abs(nu);
        double occupation = 0.0;
        if (env_.temperature_K > 0.0) {
            occupation = 1.0 / std::expm1(units::kHbar * w / units::thermal_energy(env_.temperature_K));
        }
        one_phonon = std::numbers::pi * spectral_function(w, env_) / (w * w) *
                     (nu > 0.0 ? occupation + 1.0 : occupation);
    }

    // Trapezoid with the first Euler-Maclaurin end correction.
    const std::size_t last = phi.size() - 1;
    cplx sum(0.0, 0.0);
    for (std::size_t k = 0; k <= last; ++k) {
        double tau = step * static_cast<double>(k);
        cplx f = std::polar(1.0, nu * tau) * (std::exp(phi[k]) - 1.0 - phi[k]);
        sum += (k == 0 || k == last) ? 0.5 * f : f;
    }
    auto derivative = [&](double tau, cplx phi_tau) {
        cplx osc = std::polar(1.0, nu * tau);
        cplx e = std::exp(phi_tau);
        return cplx(0.0, nu) * osc * (e - 1.0 - phi_tau) + osc * phase_derivative(tau) * (e - 1.0);
    };
    cplx correction = step * step / 12.0 * (derivative(span, phi[last]) - derivative(0.0, phi[0]));
    return one_phonon + (step * sum - correction).real();
}

double clamp_rate(double rate_ueV, const char* name)
{
    if (!std::isfinite(rate_ueV)) {
        throw NumericalError(fmt::format("phonon rate {} is not finite", name));
    }
    if (rate_ueV < 0.0) {
        if (rate_ueV < -kRateNoiseFloor) {
            throw NumericalError(
                fmt::format("phonon rate {} = {:.3e} ueV is negative beyond quadrature noise",
                            name, rate_ueV));
        }
        return 0.0;
    }
    return rate_ueV;
}

namespace {

PhononRates rates_with(const SystemParams& sys, const BathKernel& kernel, double b_mean)
{
    PhononRates r;
    r.delta_lx = -sys.delta_xl_ueV;
    r.delta_cx = sys.delta_cl_ueV - sys.delta_xl_ueV;
    if (!kernel.env().enabled) {
        return r;
    }
    double omega_r = renormalized_omega(sys, b_mean);
    double g_r = renormalized_g(sys, b_mean);
    double drive_prefactor = omega_r * omega_r / (2.0 * units::kHbar);
    double cavity_prefactor = 2.0 * g_r * g_r / units::kHbar;

    r.gamma_sigma_plus =
        clamp_rate(drive_prefactor * kernel.sideband_integral(r.delta_lx), "sigma_plus");
    r.gamma_sigma_minus =
        clamp_rate(drive_prefactor * kernel.sideband_integral(-r.delta_lx), "sigma_minus");
    r.gamma_sigma_plus_a =
        clamp_rate(cavity_prefactor * kernel.sideband_integral(r.delta_cx), "sigma_plus_a");
    r.gamma_adag_sigma_minus =
        clamp_rate(cavity_prefactor * kernel.sideband_integral(-r.delta_cx), "adag_sigma_minus");
    return r;
}

}  // namespace

PhononRates compute_rates(const SystemParams& sys, const BathKernel& kernel)
{
    return rates_with(sys, kernel, kernel.b_mean());
}

PhononRates compute_rates(const SystemParams& sys, const PhononEnv& env, double b_mean)
{
    if (!env.enabled) {
        PhononRates r;
        r.delta_lx = -sys.delta_xl_ueV;
        r.delta_cx = sys.delta_cl_ueV - sys.delta_xl_ueV;
        return r;
    }
    return rates_with(sys, BathKernel(env), b_mean);
}

}  // namespace qdsqueeze

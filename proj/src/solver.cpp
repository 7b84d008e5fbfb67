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

#include "qdsqueeze/solver.hpp"

#include <cmath>
#include <tuple>
#include <utility>

#include <boost/numeric/odeint.hpp>
#include <fmt/core.h>

#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/observables.hpp"

namespace qdsqueeze {

namespace {

// (||L||_2, sigma_{n-2} / sigma_0) from the singular values of L.
std::pair<double, double> generator_gap(const Liouvillian& L, const SteadyStateOptions& options)
{
    Eigen::BDCSVD<Matrix> svd(L.matrix());
    const auto& sv = svd.singularValues();  // descending
    double gap = sv.size() > 1 && sv(0) > 0.0 ? sv(sv.size() - 2) / sv(0) : 0.0;
    if (!(gap > options.gap_threshold)) {
        throw NumericalError(fmt::format(
            "non-unique steady state: relative Liouvillian gap {:.3e} <= {:.1e}", gap,
            options.gap_threshold));
    }
    return {sv(0), gap};
}

void check_residual(double residual, double generator_norm, const SteadyStateOptions& options)
{
    if (residual > options.residual_factor * generator_norm) {
        throw NumericalError(fmt::format("steady state: residual {:.3e} exceeds {:.1e} * ||L||",
                                         residual, options.residual_factor));
    }
}

}  // namespace

SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& options)
{
    const int d = L.space().dim();
    const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
    const Matrix& gen = L.matrix();

    // Row 0 of L is replaced by vec(1)^T, i.e. Tr rho = 1.
    Matrix system = gen;
    system.row(0).setZero();
    for (int i = 0; i < d; ++i) {
        system(0, static_cast<Eigen::Index>(i) * (d + 1)) = 1.0;
    }
    Vector rhs = Vector::Zero(d2);
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Matrix> lu(system);
    Vector solution = lu.solve(rhs);
    if (!solution.allFinite()) {
        throw NumericalError("steady state: singular linear system (non-unique steady state)");
    }

    Matrix rho = unvectorize(solution, d);
    double correction = 0.5 * (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (correction > options.hermitization_limit) {
        throw NumericalError(
            fmt::format("steady state: Hermitization correction {:.3e} exceeds {:.1e}",
                        correction, options.hermitization_limit));
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double residual = (gen * vectorize(rho)).norm();
    double generator_norm = 0.0;
    double gap = 0.0;
    if (options.compute_gap) {
        std::tie(generator_norm, gap) = generator_gap(L, options);
    } else {
        // Frobenius norm bounds the spectral norm from above.
        generator_norm = gen.norm();
    }
    check_residual(residual, generator_norm, options);

    StateDiagnostics diag = diagnose_state(rho);
    if (diag.min_eigenvalue < options.tolerance.min_eigenvalue) {
        throw NumericalError(fmt::format(
            "steady state: positivity violated (min eigenvalue {:.3e}); truncation too small "
            "or invalid rates",
            diag.min_eigenvalue));
    }
    return SteadyStateResult{DensityMatrix(L.space(), std::move(rho), options.tolerance),
                             residual,
                             generator_norm,
                             gap,
                             correction,
                             L.space().n_fock()};
}

namespace {

using RealState = std::vector<double>;

// Complex vec(rho) stored as [re..., im...] so the stepper's error norm is real.
RealState to_real(const Matrix& rho)
{
    const auto n = static_cast<std::size_t>(rho.size());
    RealState x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rho.data()[i].real();
        x[n + i] = rho.data()[i].imag();
    }
    return x;
}

Matrix from_real(const RealState& x, int dim)
{
    const std::size_t n = x.size() / 2;
    Matrix rho(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        rho.data()[i] = cplx(x[i], x[n + i]);
    }
    return rho;
}

}  // namespace

std::vector<TrajectoryPoint> evolve(const Liouvillian& L, const DensityMatrix& rho0,
                                    double t_final_ps, double dt_hint_ps,
                                    const EvolveOptions& options)
{
    namespace odeint = boost::numeric::odeint;
    check_same_space(L.space(), rho0.space());
    if (!(t_final_ps > 0.0) || !(dt_hint_ps > 0.0)) {
        throw std::invalid_argument("evolve: t_final and dt_hint must be positive");
    }
    const int d = L.space().dim();
    const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
    const Matrix& gen = L.matrix();

    auto rhs = [&](const RealState& x, RealState& dxdt, double /*t*/) {
        Vector v(d2);
        for (Eigen::Index i = 0; i < d2; ++i) {
            v(i) = cplx(x[i], x[d2 + i]);
        }
        Vector dv = gen * v;
        for (Eigen::Index i = 0; i < d2; ++i) {
            dxdt[i] = dv(i).real();
            dxdt[d2 + i] = dv(i).imag();
        }
    };

    std::vector<TrajectoryPoint> trajectory;
    double worst_trace = 0.0;
    auto observer = [&](const RealState& x, double t) {
        Matrix rho = from_real(x, d);
        worst_trace = std::max(worst_trace, std::abs(rho.trace() - cplx(1.0, 0.0)));
        trajectory.push_back({t, std::move(rho)});
    };

    RealState x = to_real(rho0.matrix());
    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                           odeint::runge_kutta_dopri5<RealState>());
    try {
        odeint::integrate_adaptive(stepper, rhs, x, 0.0, t_final_ps, dt_hint_ps, observer);
    } catch (const odeint::odeint_error& e) {
        throw NumericalError(fmt::format("evolve: step size underflow ({})", e.what()));
    }
    if (worst_trace > options.trace_tolerance) {
        throw NumericalError(
            fmt::format("evolve: trace drifted by {:.3e} during integration", worst_trace));
    }
    return trajectory;
}

SteadyStateResult converge_truncation(const SystemParams& sys, const BathKernel& kernel,
                                      const TruncationOptions& options)
{
    SystemParams trial = sys;
    trial.n_fock = std::max(sys.n_fock, 2);

    // The gap is only computed for the truncation that is returned.
    SteadyStateOptions trial_options = options.steady;
    trial_options.compute_gap = false;
    auto solve = [&](const SystemParams& p) {
        Liouvillian L = assemble(p, kernel, options.assemble);
        SteadyStateResult r = steady_state(L, trial_options);
        return std::make_pair(std::move(L), std::move(r));
    };

    auto current = solve(trial);
    CavityMoments current_m = cavity_moments(current.second.rho);
    while (trial.n_fock + options.n_step <= options.n_max) {
        trial.n_fock += options.n_step;
        auto next = solve(trial);
        CavityMoments next_m = cavity_moments(next.second.rho);
        double d_photons = std::abs(next_m.adag_a - current_m.adag_a);
        double d_variance = std::abs(quadrature_variance(next_m, options.theta) -
                                     quadrature_variance(current_m, options.theta));
        if (d_photons <= options.photon_tolerance && d_variance <= options.variance_tolerance) {
            SteadyStateResult& result = current.second;
            if (options.steady.compute_gap) {
                std::tie(result.generator_norm, result.gap) =
                    generator_gap(current.first, options.steady);
                check_residual(result.residual, result.generator_norm, options.steady);
            }
            return std::move(result);
        }
        current = std::move(next);
        current_m = next_m;
    }
    throw NumericalError(fmt::format("Fock truncation did not converge by N = {}", options.n_max));
}

SteadyStateResult converge_truncation(const SystemParams& sys, const PhononEnv& env,
                                      const TruncationOptions& options)
{
    return converge_truncation(sys, BathKernel(env), options);
}

}  // namespace qdsqueeze

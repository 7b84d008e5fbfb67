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

#include <random>

#include "../support/oracles.hpp"
#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/observables.hpp"
#include "qdsqueeze/solver.hpp"

using namespace qdsqueeze;

namespace {

PhononEnv no_phonons()
{
    PhononEnv e;
    e.enabled = false;
    return e;
}

SystemParams operating_point()
{
    SystemParams s;
    s.omega_ueV = 50.0;
    s.g_c_ueV = 75.0;
    s.kappa_ueV = 45.0;
    s.delta_xl_ueV = -75.0;
    s.delta_cl_ueV = -27.04;
    s.input_mode = InputMode::Renormalized;
    return s;
}

}  // namespace

TEST_CASE("uncoupled dot relaxes to the two-level Bloch steady state")
{
    for (auto [d, om, g, gp] : {std::tuple{0.0, 10.0, 2.0, 0.5}, std::tuple{-30.0, 50.0, 2.0, 0.0},
                                std::tuple{12.0, 5.0, 4.0, 3.0}}) {
        SystemParams s;
        s.omega_ueV = om;
        s.g_c_ueV = 0.0;
        s.delta_xl_ueV = d;
        s.delta_cl_ueV = 10.0;
        s.gamma_ueV = g;
        s.gamma_prime_ueV = gp;
        s.kappa_ueV = 20.0;
        s.n_fock = 2;
        SteadyStateResult r = steady_state(assemble(s, no_phonons()));
        auto [ree, reg] = oracle::bloch_steady_state(d, om, g, gp);
        HilbertSpace sp(2);
        CHECK(r.rho.matrix()(sp.index(1, 0), sp.index(1, 0)).real() == doctest::Approx(ree).epsilon(1e-10));
        CHECK(std::abs(r.rho.matrix()(sp.index(1, 0), sp.index(0, 0)) - reg) < 1e-10);
        CHECK(std::abs(exciton_coherence(r.rho) - std::abs(reg)) < 1e-10);
        CHECK(r.gap > 1e-8);
        CHECK(r.residual <= 1e-10 * r.generator_norm);
    }
}

TEST_CASE("steady state at the operating point is a valid unique state")
{
    SystemParams s = operating_point();
    s.n_fock = 6;
    SteadyStateResult r = steady_state(assemble(s, PhononEnv{}));
    StateDiagnostics d = diagnose_state(r.rho.matrix());
    CHECK(d.hermiticity_error <= 1e-10);
    CHECK(d.trace_error <= 1e-10);
    CHECK(d.min_eigenvalue >= -1e-9);
    CHECK(r.gap > 1e-8);
    CHECK(r.residual <= 1e-10 * r.generator_norm);
    CHECK(r.n_fock_used == 6);
}

TEST_CASE("a generator without dissipation has no unique steady state")
{
    SystemParams s;
    s.omega_ueV = 0.0;
    s.g_c_ueV = 0.0;
    s.gamma_ueV = 0.0;
    s.gamma_prime_ueV = 0.0;
    s.kappa_ueV = 0.0;
    s.n_fock = 2;
    CHECK_THROWS_AS(steady_state(assemble(s, no_phonons())), NumericalError);
}

TEST_CASE("time evolution approaches the steady state and keeps the trace")
{
    SystemParams s = operating_point();
    s.n_fock = 4;
    Liouvillian L = assemble(s, PhononEnv{});
    DensityMatrix rho0 = DensityMatrix::basis_state(L.space(), 0, 0);
    auto traj = evolve(L, rho0, 3000.0, 0.1);
    REQUIRE(traj.size() > 2);
    CHECK(traj.front().t_ps == 0.0);
    CHECK(traj.back().t_ps == doctest::Approx(3000.0));
    for (const auto& p : traj) {
        CHECK(std::abs(p.rho.trace() - 1.0) < 1e-8);
    }
    SteadyStateResult ss = steady_state(L);
    CHECK((traj.back().rho - ss.rho.matrix()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("truncation convergence picks the smaller agreeing N")
{
    SystemParams s = operating_point();
    s.n_fock = 3;
    BathKernel k(PhononEnv{});
    SteadyStateResult r = converge_truncation(s, k);
    CHECK(r.n_fock_used >= 5);
    SystemParams bigger = s;
    bigger.n_fock = r.n_fock_used + 2;
    SteadyStateResult ref = steady_state(assemble(bigger, k));
    CHECK(std::abs(cavity_moments(r.rho).adag_a - cavity_moments(ref.rho).adag_a) <= 1e-6);
    CHECK(std::abs(quadrature_variance(r.rho) - quadrature_variance(ref.rho)) <= 1e-7);
    CHECK(r.gap > 1e-8);

    TruncationOptions tight;
    tight.n_max = 4;
    CHECK_THROWS_AS(converge_truncation(s, k, tight), NumericalError);
}

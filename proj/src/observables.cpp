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

#include "qdsqueeze/observables.hpp"

#include <cmath>

namespace qdsqueeze {

namespace {

// Cavity annihilation operator on an (N+1)-dim Fock space.
Matrix annihilation(Eigen::Index dim)
{
    Matrix a = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

cplx trace_product(const Matrix& op, const Matrix& rho)
{
    return op.cwiseProduct(rho.transpose()).sum();
}

}  // namespace

CavityMoments cavity_moments(const DensityMatrix& rho)
{
    SystemOperators ops = build_operators(rho.space());
    CavityMoments m;
    m.a = expectation(ops.a, rho);
    m.a2 = expectation(ops.a * ops.a, rho);
    m.adag_a = expectation(ops.a_dagger * ops.a, rho).real();
    return m;
}

double quadrature_variance(const CavityMoments& m, double theta)
{
    cplx phase = std::polar(1.0, -2.0 * theta);
    return 0.5 * (m.adag_a - std::norm(m.a) + (phase * (m.a2 - m.a * m.a)).real());
}

double quadrature_variance(const DensityMatrix& rho, double theta)
{
    return quadrature_variance(cavity_moments(rho), theta);
}

double quadrature_variance_cavity(const Matrix& rho_cav, double theta)
{
    Matrix a = annihilation(rho_cav.rows());
    CavityMoments m;
    m.a = trace_product(a, rho_cav);
    m.a2 = trace_product(a * a, rho_cav);
    m.adag_a = trace_product(a.adjoint() * a, rho_cav).real();
    return quadrature_variance(m, theta);
}

double exciton_coherence(const DensityMatrix& rho)
{
    return std::abs(expectation(build_operators(rho.space()).sigma_minus, rho));
}

FockStatistics fock_statistics(const DensityMatrix& rho)
{
    FockStatistics s;
    s.coherences = partial_trace_qd(rho);
    s.populations.resize(static_cast<std::size_t>(s.coherences.rows()));
    for (Eigen::Index n = 0; n < s.coherences.rows(); ++n) {
        s.populations[static_cast<std::size_t>(n)] = s.coherences(n, n).real();
    }
    return s;
}

double cavity_field_relation_check(const DensityMatrix& rho, const SystemParams& sys,
                                   double b_mean)
{
    SystemOperators ops = build_operators(rho.space());
    cplx a = expectation(ops.a, rho);
    cplx sm = expectation(ops.sigma_minus, rho);
    double g_r = renormalized_g(sys, b_mean);
    cplx predicted = -g_r * sm / cplx(sys.delta_cl_ueV, -0.5 * sys.kappa_ueV);
    double err = std::abs(a - predicted);
    return std::abs(a) < 1e-12 ? err : err / std::abs(a);
}

ObservableSet compute_observables(const DensityMatrix& rho, double theta)
{
    ObservableSet o;
    CavityMoments m = cavity_moments(rho);
    o.exp_a = m.a;
    o.exp_a2 = m.a2;
    o.exp_adag_a = m.adag_a;
    o.exp_sigma_minus = expectation(build_operators(rho.space()).sigma_minus, rho);
    o.theta = theta;
    o.variance_normord = quadrature_variance(m, theta);
    FockStatistics f = fock_statistics(rho);
    o.fock_populations = std::move(f.populations);
    o.fock_coherences = std::move(f.coherences);
    return o;
}

}  // namespace qdsqueeze

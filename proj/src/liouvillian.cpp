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

#include "qdsqueeze/liouvillian.hpp"

#include <fmt/core.h>

#include "qdsqueeze/units.hpp"

namespace qdsqueeze {

Liouvillian::Liouvillian(HilbertSpace space, Matrix matrix, QOperator hamiltonian,
                         std::vector<DecayChannel> channels, double b_mean, PhononRates rates)
    : space_(space),
      matrix_(std::move(matrix)),
      hamiltonian_(std::move(hamiltonian)),
      channels_(std::move(channels)),
      b_mean_(b_mean),
      rates_(rates)
{
    const Eigen::Index d2 = static_cast<Eigen::Index>(space_.dim()) * space_.dim();
    if (matrix_.rows() != d2 || matrix_.cols() != d2) {
        throw SpaceMismatch("Liouvillian: matrix size does not match space");
    }
}

Matrix Liouvillian::apply(const Matrix& rho) const
{
    return unvectorize(matrix_ * vectorize(rho), space_.dim());
}

Vector vectorize(const Matrix& m)
{
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int dim)
{
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

QOperator build_hamiltonian(const SystemParams& sys, double b_mean, const SystemOperators& ops)
{
    if (sys.input_mode != InputMode::Bare) {
        throw std::invalid_argument("build_hamiltonian: expects bare parameters");
    }
    QOperator h = sys.delta_xl_ueV * (ops.sigma_plus * ops.sigma_minus) +
                  sys.delta_cl_ueV * (ops.a_dagger * ops.a);
    QOperator coupling = (0.5 * sys.omega_ueV) * (ops.sigma_plus + ops.sigma_minus) +
                         sys.g_c_ueV * (ops.sigma_plus * ops.a + ops.a_dagger * ops.sigma_minus);
    return h + b_mean * coupling;
}

Matrix hamiltonian_superoperator(const QOperator& h)
{
    const Eigen::Index d = h.matrix().rows();
    Matrix out = Matrix::Zero(d * d, d * d);
    add_hamiltonian(out, h);
    return out;
}

void add_hamiltonian(Matrix& generator, const QOperator& h)
{
    const Eigen::Index d = h.matrix().rows();
    Matrix id = Matrix::Identity(d, d);
    // vec(H rho - rho H) = (1 (x) H - H^T (x) 1) vec(rho)
    add_kron(generator, cplx(0.0, -1.0), id, h.matrix());
    add_kron(generator, cplx(0.0, 1.0), h.matrix().transpose(), id);
}

Matrix dissipator(double rate_ueV, const QOperator& collapse)
{
    const Eigen::Index d = collapse.matrix().rows();
    Matrix out = Matrix::Zero(d * d, d * d);
    add_dissipator(out, rate_ueV, collapse);
    return out;
}

void add_dissipator(Matrix& generator, double rate_ueV, const QOperator& collapse)
{
    if (!(rate_ueV >= 0.0)) {
        throw std::invalid_argument(fmt::format("dissipator: rate must be >= 0, got {}", rate_ueV));
    }
    if (rate_ueV == 0.0) {
        return;
    }
    const Matrix& o = collapse.matrix();
    const Eigen::Index d = o.rows();
    Matrix id = Matrix::Identity(d, d);
    Matrix odo = o.adjoint() * o;
    // (rate/2)(2 O rho O+ - O+O rho - rho O+O)
    add_kron(generator, rate_ueV, o.conjugate(), o);
    add_kron(generator, -0.5 * rate_ueV, id, odo);
    add_kron(generator, -0.5 * rate_ueV, odo.transpose(), id);
}

Liouvillian assemble_from(const HilbertSpace& space, const QOperator& h,
                          std::vector<DecayChannel> channels, double b_mean, PhononRates rates)
{
    check_same_space(space, h.space());
    Matrix generator = hamiltonian_superoperator(h);
    for (const DecayChannel& c : channels) {
        check_same_space(space, c.collapse.space());
        if (c.rate_ueV > 0.0) {
            add_dissipator(generator, c.rate_ueV, c.collapse);
        } else if (c.rate_ueV < 0.0) {
            throw std::invalid_argument(
                fmt::format("channel {} has negative rate {}", c.name, c.rate_ueV));
        }
    }
    // The only energy -> rate conversion.
    generator /= units::kHbar;
    return Liouvillian(space, std::move(generator), h, std::move(channels), b_mean, rates);
}

Liouvillian assemble(const SystemParams& sys, const BathKernel& kernel,
                     const AssembleOptions& options)
{
    sys.validate();
    const double b = kernel.b_mean();
    SystemParams bare = to_bare(sys, b);
    HilbertSpace space(sys.n_fock);
    SystemOperators ops = build_operators(space);
    QOperator h = build_hamiltonian(bare, b, ops);

    PhononRates rates;
    rates.delta_lx = -sys.delta_xl_ueV;
    rates.delta_cx = sys.delta_cl_ueV - sys.delta_xl_ueV;
    if (options.include_phonon_rates) {
        rates = compute_rates(sys, kernel);
    }

    std::vector<DecayChannel> channels;
    if (kernel.env().enabled && options.include_phonon_rates) {
        channels.push_back({"phonon_sigma_plus", rates.gamma_sigma_plus, ops.sigma_plus});
        channels.push_back({"phonon_sigma_minus", rates.gamma_sigma_minus, ops.sigma_minus});
        channels.push_back({"phonon_adag_sigma_minus", rates.gamma_adag_sigma_minus,
                            ops.a_dagger * ops.sigma_minus});
        channels.push_back(
            {"phonon_sigma_plus_a", rates.gamma_sigma_plus_a, ops.sigma_plus * ops.a});
    }
    channels.push_back({"radiative", sys.gamma_ueV, ops.sigma_minus});
    channels.push_back({"dephasing", sys.gamma_prime_ueV, ops.sigma_plus * ops.sigma_minus});
    channels.push_back({"cavity", sys.kappa_ueV, ops.a});

    return assemble_from(space, h, std::move(channels), b, rates);
}

Liouvillian assemble(const SystemParams& sys, const PhononEnv& env,
                     const AssembleOptions& options)
{
    return assemble(sys, BathKernel(env), options);
}

}  // namespace qdsqueeze

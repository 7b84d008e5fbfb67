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

#include <string>
#include <vector>

#include "qdsqueeze/operators.hpp"
#include "qdsqueeze/params.hpp"
#include "qdsqueeze/phonon_bath.hpp"

namespace qdsqueeze {

/// One Lindblad channel: (rate/2) A[collapse] with rate in ueV.
struct DecayChannel {
    std::string name;
    double rate_ueV;
    QOperator collapse;
};

/// Vectorized master-equation generator acting on column-stacked rho,
/// vec(A X B) = (B^T (x) A) vec(X). The matrix is in rad/ps.
class Liouvillian {
public:
    Liouvillian(HilbertSpace space, Matrix matrix, QOperator hamiltonian,
                std::vector<DecayChannel> channels, double b_mean, PhononRates rates);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    /// H_S in ueV.
    const QOperator& hamiltonian() const noexcept { return hamiltonian_; }
    const std::vector<DecayChannel>& channels() const noexcept { return channels_; }
    double b_mean() const noexcept { return b_mean_; }
    const PhononRates& phonon_rates() const noexcept { return rates_; }

    /// d rho / dt in 1/ps.
    Matrix apply(const Matrix& rho) const;

private:
    HilbertSpace space_;
    Matrix matrix_;
    QOperator hamiltonian_;
    std::vector<DecayChannel> channels_;
    double b_mean_;
    PhononRates rates_;
};

/// Column-stacking vec and its inverse.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int dim);

/// H_S = Dxl s+s- + Dcl a+a + <B>(Omega/2 (s+ + s-) + g_c (s+ a + a+ s-)) in
/// ueV. `sys` must be in Bare mode.
QOperator build_hamiltonian(const SystemParams& sys, double b_mean, const SystemOperators& ops);

/// (rate/2) A[O] with A[O] rho = 2 O rho O+ - O+O rho - rho O+O, as a
/// superoperator in ueV (not yet divided by hbar). Throws for rate < 0.
Matrix dissipator(double rate_ueV, const QOperator& collapse);

/// -i [H, .] in ueV.
Matrix hamiltonian_superoperator(const QOperator& h);

/// In-place forms: generator += dissipator(rate, O), generator += -i [H, .].
void add_dissipator(Matrix& generator, double rate_ueV, const QOperator& collapse);
void add_hamiltonian(Matrix& generator, const QOperator& h);

struct AssembleOptions {
    /// Drop the four phonon-induced channels but keep the <B> renormalization.
    bool include_phonon_rates = true;
};

/// Full generator for `sys` using a prebuilt bath kernel. The space is sized
/// from sys.n_fock.
Liouvillian assemble(const SystemParams& sys, const BathKernel& kernel,
                     const AssembleOptions& options = {});

Liouvillian assemble(const SystemParams& sys, const PhononEnv& env,
                     const AssembleOptions& options = {});

/// Generator from explicit ingredients: H in ueV and channels with rates in ueV.
Liouvillian assemble_from(const HilbertSpace& space, const QOperator& h,
                          std::vector<DecayChannel> channels, double b_mean = 1.0,
                          PhononRates rates = {});

}  // namespace qdsqueeze

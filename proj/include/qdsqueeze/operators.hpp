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
#include <stdexcept>

#include <Eigen/Dense>

namespace qdsqueeze {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncated qubit (x) Fock space. Basis index = qd * (n_fock + 1) + n with
/// qd = 0 for |g> and 1 for |e>.
class HilbertSpace {
public:
    explicit HilbertSpace(int n_fock);

    int n_fock() const noexcept { return n_fock_; }
    int dim_qd() const noexcept { return 2; }
    int dim_cavity() const noexcept { return n_fock_ + 1; }
    int dim() const noexcept { return 2 * (n_fock_ + 1); }

    /// Basis index of |qd, n>; qd is 0 (ground) or 1 (exciton).
    int index(int qd, int photons) const noexcept { return qd * (n_fock_ + 1) + photons; }

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    int n_fock_;
};

class SpaceMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Dense operator on a HilbertSpace. Arithmetic between operators checks
/// that both live on the same space.
class QOperator {
public:
    QOperator(HilbertSpace space, Matrix matrix);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    QOperator adjoint() const;

    QOperator& operator+=(const QOperator& rhs);
    QOperator& operator-=(const QOperator& rhs);
    QOperator& operator*=(cplx s);

    friend QOperator operator+(QOperator lhs, const QOperator& rhs) { return lhs += rhs; }
    friend QOperator operator-(QOperator lhs, const QOperator& rhs) { return lhs -= rhs; }
    friend QOperator operator*(QOperator lhs, cplx s) { return lhs *= s; }
    friend QOperator operator*(cplx s, QOperator rhs) { return rhs *= s; }
    friend QOperator operator*(const QOperator& lhs, const QOperator& rhs);

private:
    HilbertSpace space_;
    Matrix matrix_;
};

QOperator commutator(const QOperator& a, const QOperator& b);

void check_same_space(const HilbertSpace& a, const HilbertSpace& b);

/// Tolerances a matrix must meet to count as a physical state.
struct StateTolerance {
    double hermiticity = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-9;
};

/// Measured deviations of a matrix from a physical state.
struct StateDiagnostics {
    double hermiticity_error = 0.0;  ///< max |rho - rho^dagger|
    double trace_error = 0.0;        ///< |Tr rho - 1|
    double min_eigenvalue = 0.0;     ///< of the Hermitian part

    bool acceptable(const StateTolerance& tol = {}) const noexcept
    {
        return hermiticity_error <= tol.hermiticity && trace_error <= tol.trace &&
               min_eigenvalue >= tol.min_eigenvalue;
    }
};

StateDiagnostics diagnose_state(const Matrix& rho);

class InvalidState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A QOperator that is Hermitian, unit-trace and positive semidefinite
/// (within StateTolerance). Construction validates.
class DensityMatrix {
public:
    DensityMatrix(HilbertSpace space, Matrix matrix, const StateTolerance& tol = {});

    /// Pure product state |qd, n><qd, n|.
    static DensityMatrix basis_state(const HilbertSpace& space, int qd, int photons);
    /// rho_qd (x) rho_cav; both factors must themselves be valid states.
    static DensityMatrix product(const HilbertSpace& space, const Matrix& rho_qd,
                                 const Matrix& rho_cav);

    const HilbertSpace& space() const noexcept { return op_.space(); }
    const Matrix& matrix() const noexcept { return op_.matrix(); }
    const QOperator& as_operator() const noexcept { return op_; }

private:
    QOperator op_;
};

/// The five operators everything else is built from.
struct SystemOperators {
    QOperator sigma_plus;   ///< |e><g| (x) 1
    QOperator sigma_minus;  ///< |g><e| (x) 1
    QOperator a;            ///< 1 (x) sum sqrt(n) |n-1><n|
    QOperator a_dagger;
    QOperator identity;
};

SystemOperators build_operators(const HilbertSpace& space);

/// Tr(op * rho).
cplx expectation(const QOperator& op, const DensityMatrix& rho);

/// Traces out the QD: (rho_cav)_{nm} = sum_q rho_{(q,n),(q,m)}.
Matrix partial_trace_qd(const DensityMatrix& rho);

/// Kronecker product, A (x) B.
Matrix kron(const Matrix& a, const Matrix& b);

/// out += scale * (A (x) B), visiting only the non-zero entries of A and B.
void add_kron(Matrix& out, cplx scale, const Matrix& a, const Matrix& b);

}  // namespace qdsqueeze

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

#include "qdsqueeze/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/core.h>

namespace qdsqueeze {

HilbertSpace::HilbertSpace(int n_fock) : n_fock_(n_fock)
{
    if (n_fock < 1) {
        throw std::invalid_argument(fmt::format("HilbertSpace: n_fock must be >= 1, got {}", n_fock));
    }
}

void check_same_space(const HilbertSpace& a, const HilbertSpace& b)
{
    if (!(a == b)) {
        throw SpaceMismatch(fmt::format("operator spaces differ (n_fock {} vs {})", a.n_fock(),
                                        b.n_fock()));
    }
}

QOperator::QOperator(HilbertSpace space, Matrix matrix)
    : space_(space), matrix_(std::move(matrix))
{
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
        throw SpaceMismatch(fmt::format("matrix is {}x{}, space dimension is {}", matrix_.rows(),
                                        matrix_.cols(), space_.dim()));
    }
}

QOperator QOperator::adjoint() const
{
    return QOperator(space_, matrix_.adjoint());
}

QOperator& QOperator::operator+=(const QOperator& rhs)
{
    check_same_space(space_, rhs.space_);
    matrix_ += rhs.matrix_;
    return *this;
}

QOperator& QOperator::operator-=(const QOperator& rhs)
{
    check_same_space(space_, rhs.space_);
    matrix_ -= rhs.matrix_;
    return *this;
}

QOperator& QOperator::operator*=(cplx s)
{
    matrix_ *= s;
    return *this;
}

QOperator operator*(const QOperator& lhs, const QOperator& rhs)
{
    check_same_space(lhs.space(), rhs.space());
    return QOperator(lhs.space(), lhs.matrix() * rhs.matrix());
}

QOperator commutator(const QOperator& a, const QOperator& b)
{
    return a * b - b * a;
}

StateDiagnostics diagnose_state(const Matrix& rho)
{
    StateDiagnostics d;
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
    Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix, const StateTolerance& tol)
    : op_(space, std::move(matrix))
{
    StateDiagnostics d = diagnose_state(op_.matrix());
    if (!d.acceptable(tol)) {
        throw InvalidState(fmt::format(
            "not a density matrix: hermiticity error {:.3e}, trace error {:.3e}, "
            "min eigenvalue {:.3e}",
            d.hermiticity_error, d.trace_error, d.min_eigenvalue));
    }
}

DensityMatrix DensityMatrix::basis_state(const HilbertSpace& space, int qd, int photons)
{
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    int i = space.index(qd, photons);
    m(i, i) = 1.0;
    return DensityMatrix(space, std::move(m));
}

DensityMatrix DensityMatrix::product(const HilbertSpace& space, const Matrix& rho_qd,
                                     const Matrix& rho_cav)
{
    if (rho_qd.rows() != 2 || rho_cav.rows() != space.dim_cavity()) {
        throw SpaceMismatch("product: factor dimensions do not match the space");
    }
    return DensityMatrix(space, kron(rho_qd, rho_cav));
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out = Matrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    add_kron(out, 1.0, a, b);
    return out;
}

void add_kron(Matrix& out, cplx scale, const Matrix& a, const Matrix& b)
{
    if (out.rows() != a.rows() * b.rows() || out.cols() != a.cols() * b.cols()) {
        throw std::invalid_argument("add_kron: output has the wrong shape");
    }
    struct Entry {
        Eigen::Index row;
        Eigen::Index col;
        cplx value;
    };
    std::vector<Entry> nz;
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        for (Eigen::Index r = 0; r < b.rows(); ++r) {
            if (b(r, c) != cplx(0.0, 0.0)) {
                nz.push_back({r, c, b(r, c)});
            }
        }
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (a(i, j) == cplx(0.0, 0.0)) {
                continue;
            }
            const cplx s = scale * a(i, j);
            for (const Entry& e : nz) {
                out(i * b.rows() + e.row, j * b.cols() + e.col) += s * e.value;
            }
        }
    }
}

SystemOperators build_operators(const HilbertSpace& space)
{
    const int nc = space.dim_cavity();

    Matrix lower_qd = Matrix::Zero(2, 2);
    lower_qd(0, 1) = 1.0;  // |g><e|

    Matrix a_cav = Matrix::Zero(nc, nc);
    for (int n = 1; n < nc; ++n) {
        a_cav(n - 1, n) = std::sqrt(static_cast<double>(n));
    }

    Matrix id_qd = Matrix::Identity(2, 2);
    Matrix id_cav = Matrix::Identity(nc, nc);

    QOperator sigma_minus(space, kron(lower_qd, id_cav));
    QOperator a(space, kron(id_qd, a_cav));
    return SystemOperators{
        sigma_minus.adjoint(),
        sigma_minus,
        a,
        a.adjoint(),
        QOperator(space, Matrix::Identity(space.dim(), space.dim())),
    };
}

cplx expectation(const QOperator& op, const DensityMatrix& rho)
{
    check_same_space(op.space(), rho.space());
    // Tr(A B) = sum_ij A_ij B_ji
    return (op.matrix().cwiseProduct(rho.matrix().transpose())).sum();
}

Matrix partial_trace_qd(const DensityMatrix& rho)
{
    const int nc = rho.space().dim_cavity();
    const Matrix& m = rho.matrix();
    return m.topLeftCorner(nc, nc) + m.bottomRightCorner(nc, nc);
}

}  // namespace qdsqueeze

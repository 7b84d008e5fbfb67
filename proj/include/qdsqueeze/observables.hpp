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

#include <vector>

#include "qdsqueeze/operators.hpp"
#include "qdsqueeze/params.hpp"

namespace qdsqueeze {

/// Steady-state quantities reported for one operating point.
struct ObservableSet {
    cplx exp_a;
    double exp_adag_a = 0.0;
    cplx exp_a2;
    cplx exp_sigma_minus;
    double variance_normord = 0.0;  ///< <:dX_theta^2:> at `theta`
    double theta = 0.0;
    std::vector<double> fock_populations;
    Matrix fock_coherences;  ///< reduced cavity density matrix
};

/// Cavity moments needed by the variance.
struct CavityMoments {
    cplx a;
    cplx a2;
    double adag_a = 0.0;
};

CavityMoments cavity_moments(const DensityMatrix& rho);

/// Normally ordered quadrature variance
///   1/2 [<a+a> - |<a>|^2 + Re(e^{-2i theta}(<a^2> - <a>^2))].
/// Negative values mean the theta quadrature is squeezed below vacuum.
double quadrature_variance(const CavityMoments& m, double theta = 0.0);
double quadrature_variance(const DensityMatrix& rho, double theta = 0.0);

/// Same quantity from a reduced cavity density matrix.
double quadrature_variance_cavity(const Matrix& rho_cav, double theta = 0.0);

inline bool is_squeezed(double variance_normord) noexcept { return variance_normord < 0.0; }

/// |<sigma^->|.
double exciton_coherence(const DensityMatrix& rho);

struct FockStatistics {
    std::vector<double> populations;
    Matrix coherences;  ///< (rho_cav)_{nm}, full complex matrix
};

FockStatistics fock_statistics(const DensityMatrix& rho);

/// |<a> + g_R <sigma^-> / (Dcl - i kappa/2)| / |<a>|, or the absolute error
/// when |<a>| < 1e-12. Meaningful for states computed without the phonon
/// incoherent channels.
double cavity_field_relation_check(const DensityMatrix& rho, const SystemParams& sys,
                                   double b_mean);

ObservableSet compute_observables(const DensityMatrix& rho, double theta = 0.0);

}  // namespace qdsqueeze

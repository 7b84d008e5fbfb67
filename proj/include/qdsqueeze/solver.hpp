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

#include "qdsqueeze/liouvillian.hpp"
#include "qdsqueeze/operators.hpp"

namespace qdsqueeze {

struct SteadyStateOptions {
    bool compute_gap = true;
    double gap_threshold = 1e-8;         ///< relative to ||L||_2
    double residual_factor = 1e-10;      ///< residual must be <= factor * ||L||_2
    double hermitization_limit = 1e-8;   ///< max |rho - rho^dagger| / 2 before symmetrizing
    StateTolerance tolerance;
};

struct SteadyStateResult {
    DensityMatrix rho;
    double residual = 0.0;        ///< ||L vec(rho)||_2, 1/ps
    double generator_norm = 0.0;  ///< ||L||_2, 1/ps
    /// Second-smallest singular value of L over ||L||_2; 0 if not computed.
    double gap = 0.0;
    double hermitization_correction = 0.0;
    int n_fock_used = 0;
};

/// Unique steady state of `L`: one row of L vec(rho) = 0 is replaced by
/// Tr rho = 1 and the dense system is solved by LU.
SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& options = {});

struct EvolveOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double trace_tolerance = 1e-8;
};

struct TrajectoryPoint {
    double t_ps;
    Matrix rho;
};

/// Adaptive Dormand-Prince 5(4) integration of d rho/dt = L rho from 0 to
/// t_final. Records every accepted step; the last point is at t_final.
std::vector<TrajectoryPoint> evolve(const Liouvillian& L, const DensityMatrix& rho0,
                                    double t_final_ps, double dt_hint_ps,
                                    const EvolveOptions& options = {});

struct TruncationOptions {
    int n_step = 2;
    int n_max = 20;
    double photon_tolerance = 1e-6;    ///< on <a+a>
    double variance_tolerance = 1e-7;  ///< on <:dX^2:>
    double theta = 0.0;
    AssembleOptions assemble;
    SteadyStateOptions steady;
};

/// Solves at N = sys.n_fock, N + 2, ... until <a+a> and <:dX^2:> agree
/// between consecutive truncations; returns the result at the smaller N of
/// the agreeing pair. Throws NumericalError past n_max.
SteadyStateResult converge_truncation(const SystemParams& sys, const BathKernel& kernel,
                                      const TruncationOptions& options = {});

SteadyStateResult converge_truncation(const SystemParams& sys, const PhononEnv& env,
                                      const TruncationOptions& options = {});

}  // namespace qdsqueeze

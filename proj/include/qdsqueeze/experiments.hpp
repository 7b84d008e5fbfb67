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

#include <optional>
#include <string>
#include <vector>

#include "qdsqueeze/observables.hpp"
#include "qdsqueeze/params.hpp"
#include "qdsqueeze/phonon_bath.hpp"
#include "qdsqueeze/solver.hpp"
#include "qdsqueeze/table.hpp"

namespace qdsqueeze {

enum class SweepAxis {
    DeltaClOverScale,  ///< Dcl / sqrt(Omega_R^2 + Dxl^2)
    DeltaXl,           ///< Dxl in ueV
    Temperature,       ///< T in K
    DetuningForRates,  ///< used as both D_lx and D_cx (ueV)
};

/// CSV column name for the axis ("delta_cl_over_scale", "T_K", ...).
const char* axis_column(SweepAxis axis);
SweepAxis axis_from_column(const std::string& column);

struct SweepSpec {
    SweepAxis axis = SweepAxis::DeltaClOverScale;
    std::vector<double> points;
    SystemParams system;
    PhononEnv phonons;
    /// Columns to record; empty means every column the run produces.
    std::vector<std::string> recorded;
    double theta = 0.0;
    bool auto_truncation = true;
    int threads = 1;  ///< 0 = hardware concurrency

    /// Points must be non-empty and strictly monotone.
    void validate() const;
};

struct SweepRow {
    double axis_value = 0.0;
    std::vector<double> values;
    int n_fock_used = 0;
    double residual = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
    SweepSpec spec;
    std::string label;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;

    std::vector<double> axis_values() const;
    std::vector<double> column(const std::string& name) const;
    /// axis column, recorded columns, n_fock_used, residual.
    Table to_table() const;
};

/// Inverse of SweepResult::to_table for the tabular part; `base` supplies
/// the fixed parameters, which CSV does not carry.
SweepResult sweep_from_table(const Table& table, SweepSpec base = {});

std::vector<double> linspace(double lo, double hi, int n);

/// Columns produced by each sweep kind.
const std::vector<std::string>& rate_columns();
const std::vector<std::string>& variance_columns();
const std::vector<std::string>& temperature_columns();

/// Four phonon rates vs detuning at spec.phonons.temperature_K.
SweepResult run_rates_sweep(const SweepSpec& spec);

/// Variance (phonons on and off), cavity moments and |<sigma^->| along a
/// DeltaClOverScale or DeltaXl axis.
SweepResult run_variance_sweep(const SweepSpec& spec);

/// Variance and |<sigma^->| against bath temperature at a fixed operating
/// point. Use InputMode::Renormalized to hold Omega_R and g_R fixed.
SweepResult run_temperature_sweep(const SweepSpec& spec);

/// First crossing of `column` from negative to non-negative, located by
/// linear interpolation in the axis value.
std::optional<double> zero_crossing(const SweepResult& result, const std::string& column);

struct ContourSpec {
    std::vector<double> delta_xl_ueV;
    std::vector<double> delta_cl_ueV;
    SystemParams system;
    PhononEnv phonons;
    bool auto_truncation = true;
    int threads = 1;
};

struct ContourResult {
    std::vector<double> delta_xl_ueV;
    std::vector<double> delta_cl_ueV;
    std::vector<std::vector<double>> coherence;  ///< [xl index][cl index]
    std::size_t argmax_xl = 0;
    std::size_t argmax_cl = 0;

    /// Long form: delta_xl_ueV, delta_cl_ueV, exciton_coherence.
    Table to_table() const;
};

/// |<sigma^->| over a (Dxl, Dcl) grid.
ContourResult run_coherence_contour(const ContourSpec& spec);

struct FockReport {
    ObservableSet observables;
    int n_fock_used = 0;
    double residual = 0.0;
    double b_mean = 1.0;

    /// n, population
    Table populations_table() const;
    /// n, m, re, im, abs over the reduced cavity density matrix
    Table coherence_table() const;
};

FockReport run_fock_report(const SystemParams& sys, const PhononEnv& env,
                           bool auto_truncation = true, double theta = 0.0);

/// Steady state at one point: converged in N when `auto_truncation`,
/// otherwise at sys.n_fock.
SteadyStateResult solve_point(const SystemParams& sys, const BathKernel& kernel,
                              bool auto_truncation, const AssembleOptions& options = {},
                              double theta = 0.0);

}  // namespace qdsqueeze

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

#include "qdsqueeze/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/core.h>

namespace qdsqueeze {

namespace {

// Evaluates fn(i) for i in [0, n) on `threads` workers; results keep input order.
template <typename Fn>
auto parallel_map(std::size_t n, int threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

struct Evaluated {
    std::vector<double> values;  // full column set of the run kind
    int n_fock_used = 0;
    double residual = 0.0;
};

SweepResult collect(const SweepSpec& spec, const std::string& label,
                    const std::vector<std::string>& all_columns, std::vector<Evaluated> evaluated)
{
    std::vector<std::string> columns = spec.recorded.empty() ? all_columns : spec.recorded;
    std::vector<std::size_t> picks;
    for (const auto& name : columns) {
        auto it = std::find(all_columns.begin(), all_columns.end(), name);
        if (it == all_columns.end()) {
            throw std::invalid_argument(fmt::format("unknown observable '{}'", name));
        }
        picks.push_back(static_cast<std::size_t>(it - all_columns.begin()));
    }
    SweepResult result{spec, label, columns, {}};
    for (std::size_t i = 0; i < evaluated.size(); ++i) {
        SweepRow row;
        row.axis_value = spec.points[i];
        for (std::size_t p : picks) {
            row.values.push_back(evaluated[i].values[p]);
        }
        row.n_fock_used = evaluated[i].n_fock_used;
        row.residual = evaluated[i].residual;
        result.rows.push_back(std::move(row));
    }
    return result;
}

void check_recorded(const SweepSpec& spec, const std::vector<std::string>& all_columns)
{
    for (const auto& name : spec.recorded) {
        if (std::find(all_columns.begin(), all_columns.end(), name) == all_columns.end()) {
            throw std::invalid_argument(fmt::format("unknown observable '{}'", name));
        }
    }
}

double detuning_scale(const SystemParams& sys, double b_mean)
{
    double omega_r = renormalized_omega(sys, b_mean);
    return std::sqrt(omega_r * omega_r + sys.delta_xl_ueV * sys.delta_xl_ueV);
}

}  // namespace

const char* axis_column(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::DeltaClOverScale: return "delta_cl_over_scale";
    case SweepAxis::DeltaXl: return "delta_xl_ueV";
    case SweepAxis::Temperature: return "T_K";
    case SweepAxis::DetuningForRates: return "detuning_ueV";
    }
    return "";
}

SweepAxis axis_from_column(const std::string& column)
{
    for (SweepAxis a : {SweepAxis::DeltaClOverScale, SweepAxis::DeltaXl, SweepAxis::Temperature,
                        SweepAxis::DetuningForRates}) {
        if (column == axis_column(a)) {
            return a;
        }
    }
    throw std::invalid_argument(fmt::format("unknown sweep axis column '{}'", column));
}

void SweepSpec::validate() const
{
    if (points.empty()) {
        throw std::invalid_argument("sweep: no points");
    }
    if (points.size() > 1) {
        bool increasing = points[1] > points[0];
        for (std::size_t i = 1; i < points.size(); ++i) {
            bool ok = increasing ? points[i] > points[i - 1] : points[i] < points[i - 1];
            if (!ok) {
                throw std::invalid_argument("sweep: points must be strictly monotone");
            }
        }
    }
    system.validate();
    phonons.validate();
}

std::vector<double> SweepResult::axis_values() const
{
    std::vector<double> out;
    for (const auto& r : rows) {
        out.push_back(r.axis_value);
    }
    return out;
}

std::vector<double> SweepResult::column(const std::string& name) const
{
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range(fmt::format("sweep has no column '{}'", name));
    }
    auto idx = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    for (const auto& r : rows) {
        out.push_back(r.values[idx]);
    }
    return out;
}

Table SweepResult::to_table() const
{
    Table t;
    t.columns.push_back(axis_column(spec.axis));
    t.columns.insert(t.columns.end(), columns.begin(), columns.end());
    t.columns.push_back("n_fock_used");
    t.columns.push_back("residual");
    for (const auto& r : rows) {
        std::vector<double> row{r.axis_value};
        row.insert(row.end(), r.values.begin(), r.values.end());
        row.push_back(static_cast<double>(r.n_fock_used));
        row.push_back(r.residual);
        t.rows.push_back(std::move(row));
    }
    return t;
}

SweepResult sweep_from_table(const Table& table, SweepSpec base)
{
    if (table.columns.size() < 3 || table.columns[table.columns.size() - 2] != "n_fock_used" ||
        table.columns.back() != "residual") {
        throw std::invalid_argument("table is not a sweep result");
    }
    base.axis = axis_from_column(table.columns.front());
    SweepResult r;
    r.columns.assign(table.columns.begin() + 1, table.columns.end() - 2);
    base.points.clear();
    for (const auto& row : table.rows) {
        SweepRow s;
        s.axis_value = row.front();
        s.values.assign(row.begin() + 1, row.end() - 2);
        s.n_fock_used = static_cast<int>(row[row.size() - 2]);
        s.residual = row.back();
        base.points.push_back(s.axis_value);
        r.rows.push_back(std::move(s));
    }
    base.recorded = r.columns;
    r.spec = std::move(base);
    return r;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 1) {
        throw std::invalid_argument("linspace: n must be >= 1");
    }
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    out.back() = hi;
    return out;
}

const std::vector<std::string>& rate_columns()
{
    static const std::vector<std::string> cols = {
        "gamma_sigma_plus_ueV", "gamma_sigma_minus_ueV", "gamma_sigma_plus_a_ueV",
        "gamma_adag_sigma_minus_ueV"};
    return cols;
}

const std::vector<std::string>& variance_columns()
{
    static const std::vector<std::string> cols = {
        "delta_cl_ueV",     "variance_normord", "variance_normord_no_phonons",
        "adag_a",           "a_adag_product",   "re_a2_minus_a_sq",
        "exciton_coherence", "exciton_coherence_no_phonons"};
    return cols;
}

const std::vector<std::string>& temperature_columns()
{
    static const std::vector<std::string> cols = {"variance_normord", "exciton_coherence",
                                                  "adag_a", "b_mean"};
    return cols;
}

SteadyStateResult solve_point(const SystemParams& sys, const BathKernel& kernel,
                              bool auto_truncation, const AssembleOptions& options, double theta)
{
    if (auto_truncation) {
        TruncationOptions t;
        t.assemble = options;
        t.theta = theta;
        return converge_truncation(sys, kernel, t);
    }
    return steady_state(assemble(sys, kernel, options));
}

SweepResult run_rates_sweep(const SweepSpec& spec)
{
    spec.validate();
    if (spec.axis != SweepAxis::DetuningForRates) {
        throw std::invalid_argument("rates sweep needs the DetuningForRates axis");
    }
    check_recorded(spec, rate_columns());
    BathKernel kernel(spec.phonons);
    auto evaluated = parallel_map(spec.points.size(), spec.threads, [&](std::size_t i) {
        SystemParams p = spec.system;
        // D_lx = D_cx = x  <=>  Dxl = -x, Dcl = 0
        p.delta_xl_ueV = -spec.points[i];
        p.delta_cl_ueV = 0.0;
        PhononRates r = compute_rates(p, kernel);
        return Evaluated{{r.gamma_sigma_plus, r.gamma_sigma_minus, r.gamma_sigma_plus_a,
                          r.gamma_adag_sigma_minus},
                         0,
                         0.0};
    });
    return collect(spec, fmt::format("T{:g}K", spec.phonons.temperature_K), rate_columns(),
                   std::move(evaluated));
}

SweepResult run_variance_sweep(const SweepSpec& spec)
{
    spec.validate();
    if (spec.axis != SweepAxis::DeltaClOverScale && spec.axis != SweepAxis::DeltaXl) {
        throw std::invalid_argument("variance sweep needs a detuning axis");
    }
    check_recorded(spec, variance_columns());
    BathKernel on(spec.phonons);
    PhononEnv no_phonons = spec.phonons;
    no_phonons.enabled = false;
    BathKernel off(no_phonons);

    auto evaluated = parallel_map(spec.points.size(), spec.threads, [&](std::size_t i) {
        SystemParams p = spec.system;
        if (spec.axis == SweepAxis::DeltaClOverScale) {
            p.delta_cl_ueV = spec.points[i] * detuning_scale(p, on.b_mean());
        } else {
            p.delta_xl_ueV = spec.points[i];
        }
        // Renormalized input holds Omega_R, g_R across both runs; bare input
        // keeps the bare values.
        SteadyStateResult with = solve_point(p, on, spec.auto_truncation, {}, spec.theta);
        SteadyStateResult without = solve_point(p, off, spec.auto_truncation, {}, spec.theta);
        CavityMoments m = cavity_moments(with.rho);
        return Evaluated{{p.delta_cl_ueV, quadrature_variance(m, spec.theta),
                          quadrature_variance(without.rho, spec.theta), m.adag_a, std::norm(m.a),
                          (m.a2 - m.a * m.a).real(), exciton_coherence(with.rho),
                          exciton_coherence(without.rho)},
                         with.n_fock_used,
                         with.residual};
    });
    return collect(spec, "sweep", variance_columns(), std::move(evaluated));
}

SweepResult run_temperature_sweep(const SweepSpec& spec)
{
    spec.validate();
    if (spec.axis != SweepAxis::Temperature) {
        throw std::invalid_argument("temperature sweep needs the Temperature axis");
    }
    check_recorded(spec, temperature_columns());
    auto evaluated = parallel_map(spec.points.size(), spec.threads, [&](std::size_t i) {
        PhononEnv env = spec.phonons;
        env.temperature_K = spec.points[i];
        BathKernel kernel(env);
        SteadyStateResult s = solve_point(spec.system, kernel, spec.auto_truncation, {}, spec.theta);
        CavityMoments m = cavity_moments(s.rho);
        return Evaluated{{quadrature_variance(m, spec.theta), exciton_coherence(s.rho), m.adag_a,
                          kernel.b_mean()},
                         s.n_fock_used,
                         s.residual};
    });
    return collect(spec, "sweep", temperature_columns(), std::move(evaluated));
}

std::optional<double> zero_crossing(const SweepResult& result, const std::string& column)
{
    std::vector<double> y = result.column(column);
    std::vector<double> x = result.axis_values();
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i - 1] < 0.0 && y[i] >= 0.0) {
            double t = -y[i - 1] / (y[i] - y[i - 1]);
            return x[i - 1] + t * (x[i] - x[i - 1]);
        }
    }
    return std::nullopt;
}

Table ContourResult::to_table() const
{
    Table t{{"delta_xl_ueV", "delta_cl_ueV", "exciton_coherence"}, {}};
    for (std::size_t i = 0; i < delta_xl_ueV.size(); ++i) {
        for (std::size_t j = 0; j < delta_cl_ueV.size(); ++j) {
            t.rows.push_back({delta_xl_ueV[i], delta_cl_ueV[j], coherence[i][j]});
        }
    }
    return t;
}

ContourResult run_coherence_contour(const ContourSpec& spec)
{
    if (spec.delta_xl_ueV.empty() || spec.delta_cl_ueV.empty()) {
        throw std::invalid_argument("contour: empty grid");
    }
    spec.system.validate();
    BathKernel kernel(spec.phonons);
    const std::size_t nx = spec.delta_xl_ueV.size();
    const std::size_t nc = spec.delta_cl_ueV.size();
    auto values = parallel_map(nx * nc, spec.threads, [&](std::size_t k) {
        SystemParams p = spec.system;
        p.delta_xl_ueV = spec.delta_xl_ueV[k / nc];
        p.delta_cl_ueV = spec.delta_cl_ueV[k % nc];
        return exciton_coherence(solve_point(p, kernel, spec.auto_truncation).rho);
    });
    ContourResult r{spec.delta_xl_ueV, spec.delta_cl_ueV, {}, 0, 0};
    r.coherence.assign(nx, std::vector<double>(nc));
    double best = -1.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        r.coherence[k / nc][k % nc] = values[k];
        if (values[k] > best) {
            best = values[k];
            r.argmax_xl = k / nc;
            r.argmax_cl = k % nc;
        }
    }
    return r;
}

Table FockReport::populations_table() const
{
    Table t{{"n", "population"}, {}};
    for (std::size_t n = 0; n < observables.fock_populations.size(); ++n) {
        t.rows.push_back({static_cast<double>(n), observables.fock_populations[n]});
    }
    return t;
}

Table FockReport::coherence_table() const
{
    Table t{{"n", "m", "re", "im", "abs"}, {}};
    const Matrix& c = observables.fock_coherences;
    for (Eigen::Index n = 0; n < c.rows(); ++n) {
        for (Eigen::Index m = 0; m < c.cols(); ++m) {
            t.rows.push_back({static_cast<double>(n), static_cast<double>(m), c(n, m).real(),
                              c(n, m).imag(), std::abs(c(n, m))});
        }
    }
    return t;
}

FockReport run_fock_report(const SystemParams& sys, const PhononEnv& env, bool auto_truncation,
                           double theta)
{
    BathKernel kernel(env);
    SteadyStateResult s = solve_point(sys, kernel, auto_truncation, {}, theta);
    return FockReport{compute_observables(s.rho, theta), s.n_fock_used, s.residual,
                      kernel.b_mean()};
}

}  // namespace qdsqueeze

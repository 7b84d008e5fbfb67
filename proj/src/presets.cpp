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

#include "qdsqueeze/presets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "qdsqueeze/experiments.hpp"
#include "qdsqueeze/phonon_bath.hpp"
#include "qdsqueeze/svg.hpp"

namespace qdsqueeze {

namespace {

constexpr double kOmegaR = 50.0;
constexpr double kGR = 75.0;
constexpr double kKappa = 45.0;
constexpr double kXlFactor = -1.5;
constexpr double kClOverScale = -0.3;

SystemParams operating_point()
{
    SystemParams s;
    s.omega_ueV = kOmegaR;
    s.g_c_ueV = kGR;
    s.kappa_ueV = kKappa;
    s.delta_xl_ueV = kXlFactor * kOmegaR;
    s.delta_cl_ueV = kClOverScale * std::hypot(kOmegaR, s.delta_xl_ueV);
    s.input_mode = InputMode::Renormalized;
    return s;
}

PhononEnv bath_at(double temperature_K)
{
    PhononEnv env;
    env.temperature_K = temperature_K;
    return env;
}

PanelSpec line(std::string name, std::string x, std::vector<std::string> ys, std::string title,
               std::string x_label, std::string y_label, bool zero_line = false,
               std::vector<std::string> tables = {})
{
    PanelSpec p;
    p.name = std::move(name);
    p.kind = ChartKind::Line;
    p.tables = std::move(tables);
    p.x_column = std::move(x);
    p.y_columns = std::move(ys);
    p.title = std::move(title);
    p.x_label = std::move(x_label);
    p.y_label = std::move(y_label);
    p.zero_line = zero_line;
    return p;
}

PanelSpec bars(std::string name, std::string table, std::string value, std::string title,
               std::string y_label, int limit)
{
    PanelSpec p;
    p.name = std::move(name);
    p.kind = ChartKind::Bar;
    p.tables = {std::move(table)};
    p.y_columns = {std::move(value)};
    p.title = std::move(title);
    p.x_label = "Fock state";
    p.y_label = std::move(y_label);
    p.bar_limit = limit;
    return p;
}

Preset rates_preset(std::string name, PanelSpec panel)
{
    Preset p;
    p.name = std::move(name);
    p.kind = RecipeKind::Rates;
    p.description = "phonon-induced rates against detuning";
    p.system = operating_point();
    p.phonons = bath_at(4.0);
    p.temperatures_K = {4.0, 10.0};
    p.axis_min = -2000.0;
    p.axis_max = 2000.0;
    p.points = 401;
    p.panels = {std::move(panel)};
    return p;
}

Preset variance_preset(std::string name, std::vector<double> factors, std::vector<PanelSpec> panels)
{
    Preset p;
    p.name = std::move(name);
    p.kind = RecipeKind::Variance;
    p.description = "quadrature variance against cavity-laser detuning";
    p.system = operating_point();
    p.phonons = bath_at(4.0);
    p.delta_xl_factors = std::move(factors);
    p.axis_min = -1.2;
    p.axis_max = 0.2;
    p.points = 121;
    p.panels = std::move(panels);
    return p;
}

Preset fock_preset(std::string name, double temperature_K)
{
    Preset p;
    p.name = std::move(name);
    p.kind = RecipeKind::Fock;
    p.description = fmt::format("cavity Fock statistics at {:g} K", temperature_K);
    p.system = operating_point();
    p.phonons = bath_at(temperature_K);
    std::string at = fmt::format(" (T = {:g} K)", temperature_K);
    p.panels = {bars("populations", "populations", "population", "Fock populations" + at,
                     "P_n", 4),
                bars("density", "coherence", "abs", "Cavity density matrix" + at,
                     "|rho_nm|", 2)};
    return p;
}

std::vector<Preset> build_presets()
{
    const std::string rate = "Rate (μeV)";
    const std::string scaled = "Δ_cl / sqrt(Ω_R² + Δ_xl²)";
    std::vector<Preset> out;

    out.push_back(rates_preset(
        "fig2a", line("a", "detuning_ueV", {"gamma_sigma_plus_ueV", "gamma_sigma_minus_ueV"},
                      "Exciton-laser rates", "Laser-exciton detuning (μeV)", rate)));
    out.push_back(rates_preset(
        "fig2b", line("b", "detuning_ueV", {"gamma_sigma_plus_a_ueV", "gamma_adag_sigma_minus_ueV"},
                      "Exciton-cavity rates", "Cavity-exciton detuning (μeV)", rate)));

    Preset contour;
    contour.name = "fig3a";
    contour.kind = RecipeKind::Contour;
    contour.description = "exciton coherence over the detuning plane";
    contour.system = operating_point();
    contour.phonons = bath_at(4.0);
    contour.xl_min_factor = -2.5;
    contour.xl_max_factor = -0.25;
    contour.cl_min_factor = -2.5;
    contour.cl_max_factor = 0.0;
    contour.contour_points = 61;
    PanelSpec heat;
    heat.name = "a";
    heat.kind = ChartKind::Heatmap;
    heat.tables = {"contour"};
    heat.x_column = "delta_cl_ueV";
    heat.y_columns = {"delta_xl_ueV", "exciton_coherence"};
    heat.title = "|<σ⁻>|";
    heat.x_label = "Δ_cl (μeV)";
    heat.y_label = "Δ_xl (μeV)";
    contour.panels = {heat};
    out.push_back(contour);

    out.push_back(variance_preset(
        "fig3b", {kXlFactor},
        {line("b", "delta_cl_over_scale", {"variance_normord", "variance_normord_no_phonons"},
              "Normally ordered variance", scaled, "<:ΔX²:>", true),
         line("c", "delta_cl_over_scale", {"adag_a", "a_adag_product"}, "Photon number terms",
              scaled, "Expectation"),
         line("d", "delta_cl_over_scale", {"re_a2_minus_a_sq"}, "Re(<a²> - <a>²)", scaled,
              "Re(<a²> - <a>²)", true)}));

    out.push_back(variance_preset(
        "fig4", {-1.0, -1.5, -2.0},
        {line("a", "delta_cl_over_scale", {"variance_normord"}, "Variance for three Δ_xl", scaled,
              "<:ΔX²:>", true),
         line("b", "delta_cl_over_scale", {"exciton_coherence"}, "Exciton coherence", scaled,
              "|<σ⁻>|")}));

    out.push_back(fock_preset("fig5", 4.0));

    Preset temp;
    temp.name = "fig7";
    temp.kind = RecipeKind::Temperature;
    temp.description = "variance and coherence against bath temperature";
    temp.system = operating_point();
    temp.phonons = bath_at(4.0);
    temp.axis_min = 0.0;
    temp.axis_max = 20.0;
    temp.points = 121;
    temp.panels = {line("a", "T_K", {"variance_normord"}, "Variance against temperature",
                        "T (K)", "<:ΔX²:>", true),
                   line("b", "T_K", {"exciton_coherence"}, "Exciton coherence against temperature",
                        "T (K)", "|<σ⁻>|")};
    out.push_back(temp);

    out.push_back(fock_preset("fig8", 9.0));
    return out;
}

std::string number_tag(double v)
{
    std::string s = fmt::format("{:g}", std::abs(v));
    std::replace(s.begin(), s.end(), '.', 'p');
    return (v < 0 ? "m" : "") + s;
}

double omega_r(const Recipe& r)
{
    const auto& p = r.preset;
    double b = p.system.input_mode == InputMode::Renormalized ? 1.0 : mean_displacement(p.phonons);
    return renormalized_omega(p.system, b);
}

SweepSpec base_spec(const Recipe& r, SweepAxis axis, double lo, double hi)
{
    SweepSpec s;
    s.axis = axis;
    s.points = linspace(lo, hi, r.preset.points);
    s.system = r.preset.system;
    s.phonons = r.preset.phonons;
    s.theta = r.theta;
    s.auto_truncation = r.auto_truncation;
    s.threads = r.threads;
    return s;
}

nlohmann::json run_rates(const Recipe& r, std::map<std::string, Table>& tables)
{
    nlohmann::json summary = nlohmann::json::object();
    for (std::size_t i = 0; i < r.preset.temperatures_K.size(); ++i) {
        SweepSpec s = base_spec(r, SweepAxis::DetuningForRates, r.preset.axis_min, r.preset.axis_max);
        s.phonons.temperature_K = r.preset.temperatures_K[i];
        SweepResult res = run_rates_sweep(s);
        const auto& label = r.series_tables[i].label;
        nlohmann::json peaks;
        for (const auto& c : rate_columns()) {
            auto col = res.column(c);
            peaks[c] = *std::max_element(col.begin(), col.end());
        }
        summary[label] = {{"T_K", s.phonons.temperature_K}, {"peak_rates_ueV", peaks}};
        tables[label] = res.to_table();
    }
    return summary;
}

nlohmann::json run_variance(const Recipe& r, std::map<std::string, Table>& tables)
{
    nlohmann::json summary = nlohmann::json::object();
    double om = omega_r(r);
    for (std::size_t i = 0; i < r.preset.delta_xl_factors.size(); ++i) {
        SweepSpec s = base_spec(r, SweepAxis::DeltaClOverScale, r.preset.axis_min, r.preset.axis_max);
        s.system.delta_xl_ueV = r.preset.delta_xl_factors[i] * om;
        SweepResult res = run_variance_sweep(s);
        auto var = res.column("variance_normord");
        auto off = res.column("variance_normord_no_phonons");
        auto coh = res.column("exciton_coherence");
        auto x = res.axis_values();
        auto imin = static_cast<std::size_t>(std::min_element(var.begin(), var.end()) - var.begin());
        auto ioff = static_cast<std::size_t>(std::min_element(off.begin(), off.end()) - off.begin());
        auto icoh = static_cast<std::size_t>(std::max_element(coh.begin(), coh.end()) - coh.begin());
        const auto& label = r.series_tables[i].label;
        summary[label] = {{"delta_xl_ueV", s.system.delta_xl_ueV},
                          {"variance_min", var[imin]},
                          {"variance_min_at", x[imin]},
                          {"variance_no_phonons_min", off[ioff]},
                          {"variance_no_phonons_min_at", x[ioff]},
                          {"coherence_max", coh[icoh]},
                          {"coherence_max_at", x[icoh]}};
        tables[label] = res.to_table();
    }
    return summary;
}

nlohmann::json run_contour(const Recipe& r, std::map<std::string, Table>& tables)
{
    const auto& p = r.preset;
    double om = omega_r(r);
    ContourSpec spec;
    spec.delta_xl_ueV = linspace(p.xl_min_factor * om, p.xl_max_factor * om, p.contour_points);
    spec.delta_cl_ueV = linspace(p.cl_min_factor * om, p.cl_max_factor * om, p.contour_points);
    spec.system = p.system;
    spec.phonons = p.phonons;
    spec.auto_truncation = r.auto_truncation;
    spec.threads = r.threads;
    ContourResult res = run_coherence_contour(spec);
    tables["contour"] = res.to_table();
    return {{"argmax_delta_xl_ueV", res.delta_xl_ueV[res.argmax_xl]},
            {"argmax_delta_cl_ueV", res.delta_cl_ueV[res.argmax_cl]},
            {"coherence_max", res.coherence[res.argmax_xl][res.argmax_cl]}};
}

nlohmann::json run_temperature(const Recipe& r, std::map<std::string, Table>& tables)
{
    SweepSpec s = base_spec(r, SweepAxis::Temperature, r.preset.axis_min, r.preset.axis_max);
    SweepResult res = run_temperature_sweep(s);
    tables["sweep"] = res.to_table();
    auto crossing = zero_crossing(res, "variance_normord");
    nlohmann::json out = {{"variance_zero_crossing_K", nullptr}};
    if (crossing) {
        out["variance_zero_crossing_K"] = *crossing;
    }
    return out;
}

nlohmann::json run_fock(const Recipe& r, std::map<std::string, Table>& tables)
{
    FockReport rep = run_fock_report(r.preset.system, r.preset.phonons, r.auto_truncation, r.theta);
    tables["populations"] = rep.populations_table();
    tables["coherence"] = rep.coherence_table();
    const auto& o = rep.observables;
    return {{"T_K", r.preset.phonons.temperature_K},
            {"b_mean", rep.b_mean},
            {"n_fock_used", rep.n_fock_used},
            {"residual", rep.residual},
            {"populations", o.fock_populations},
            {"variance_normord", o.variance_normord},
            {"exciton_coherence", std::abs(o.exp_sigma_minus)}};
}

std::string series_name(const Recipe& r, const std::string& label, const std::string& column,
                        std::size_t table_count)
{
    if (table_count <= 1) {
        return column;
    }
    for (const auto& t : r.series_tables) {
        if (t.label == label) {
            return column + " " + t.legend;
        }
    }
    return column + " " + label;
}

const Table& table_for(const std::map<std::string, Table>& tables, const std::string& label)
{
    auto it = tables.find(label);
    if (it == tables.end()) {
        throw std::invalid_argument(fmt::format("missing table '{}'", label));
    }
    return it->second;
}

std::string render_panel(const Recipe& r, const PanelSpec& panel,
                         const std::map<std::string, Table>& tables)
{
    std::vector<std::string> labels = panel.tables;
    if (labels.empty()) {
        for (const auto& t : r.series_tables) {
            labels.push_back(t.label);
        }
    }
    switch (panel.kind) {
    case ChartKind::Line: {
        svg::LineChart chart{panel.title, panel.x_label, panel.y_label, {}, panel.zero_line};
        for (const auto& label : labels) {
            const Table& t = table_for(tables, label);
            for (const auto& y : panel.y_columns) {
                chart.series.push_back({series_name(r, label, y, labels.size()),
                                        t.column(panel.x_column), t.column(y)});
            }
        }
        return svg::render(chart);
    }
    case ChartKind::Heatmap: {
        const Table& t = table_for(tables, labels.front());
        auto xs_all = t.column(panel.x_column);
        auto ys_all = t.column(panel.y_columns.at(0));
        auto vs = t.column(panel.y_columns.at(1));
        svg::Heatmap chart{panel.title, panel.x_label, panel.y_label, {}, {}, {}, std::nullopt};
        for (double x : xs_all) {
            if (std::find(chart.xs.begin(), chart.xs.end(), x) == chart.xs.end()) {
                chart.xs.push_back(x);
            }
        }
        for (double y : ys_all) {
            if (std::find(chart.ys.begin(), chart.ys.end(), y) == chart.ys.end()) {
                chart.ys.push_back(y);
            }
        }
        if (chart.xs.size() * chart.ys.size() != vs.size()) {
            throw std::invalid_argument("heatmap table is not a full grid");
        }
        chart.values.assign(chart.ys.size(), std::vector<double>(chart.xs.size()));
        std::size_t best = 0;
        for (std::size_t k = 0; k < vs.size(); ++k) {
            auto i = static_cast<std::size_t>(
                std::find(chart.ys.begin(), chart.ys.end(), ys_all[k]) - chart.ys.begin());
            auto j = static_cast<std::size_t>(
                std::find(chart.xs.begin(), chart.xs.end(), xs_all[k]) - chart.xs.begin());
            chart.values[i][j] = vs[k];
            if (vs[k] > vs[best]) {
                best = k;
            }
        }
        chart.marker = std::make_pair(xs_all[best], ys_all[best]);
        return svg::render(chart);
    }
    case ChartKind::Bar: {
        const Table& t = table_for(tables, labels.front());
        svg::BarChart chart{panel.title, panel.x_label, panel.y_label, {}, {}};
        auto values = t.column(panel.y_columns.at(0));
        auto n = t.column("n");
        bool pairs = std::find(t.columns.begin(), t.columns.end(), "m") != t.columns.end();
        std::vector<double> m = pairs ? t.column("m") : std::vector<double>(n.size(), 0.0);
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (panel.bar_limit >= 0 && (n[k] > panel.bar_limit || m[k] > panel.bar_limit)) {
                continue;
            }
            chart.labels.push_back(pairs ? fmt::format("{:g}{:g}", n[k], m[k])
                                         : fmt::format("{:g}", n[k]));
            chart.values.push_back(values[k]);
        }
        return svg::render(chart);
    }
    }
    throw std::logic_error("unhandled chart kind");
}

}  // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset& find_preset(const std::string& name)
{
    for (const auto& p : presets()) {
        if (p.name == name) {
            return p;
        }
    }
    std::string known;
    for (const auto& p : presets()) {
        known += (known.empty() ? "" : ", ") + p.name;
    }
    throw ConfigError("preset", fmt::format("unknown preset '{}' (known: {})", name, known));
}

const char* recipe_kind_name(RecipeKind kind)
{
    switch (kind) {
    case RecipeKind::Rates: return "rates";
    case RecipeKind::Variance: return "sweep";
    case RecipeKind::Contour: return "contour";
    case RecipeKind::Temperature: return "temp-sweep";
    case RecipeKind::Fock: return "fock";
    }
    return "";
}

Recipe resolve_recipe(const Preset& preset, const std::optional<Config>& config)
{
    Recipe r;
    r.preset = preset;
    if (config) {
        const RunDirectives& run = config->run;
        Preset& p = r.preset;
        p.system = config->system;
        p.phonons = config->phonons;
        if (run.points) {
            p.points = *run.points;
        }
        if (run.contour_points) {
            p.contour_points = *run.contour_points;
        }
        if (run.axis_min) {
            p.axis_min = *run.axis_min;
        }
        if (run.axis_max) {
            p.axis_max = *run.axis_max;
        }
        if (p.axis_min >= p.axis_max && p.kind != RecipeKind::Contour && p.kind != RecipeKind::Fock) {
            throw ConfigError("run.axis_max", "must exceed run.axis_min");
        }
        if (!run.temperatures_K.empty()) {
            p.temperatures_K = run.temperatures_K;
        }
        if (!run.delta_xl_factors.empty()) {
            p.delta_xl_factors = run.delta_xl_factors;
        }
        r.theta = run.theta_rad;
        r.auto_truncation = run.auto_truncation;
        r.threads = run.threads;
    }
    if (r.preset.kind == RecipeKind::Rates) {
        for (double t : r.preset.temperatures_K) {
            r.series_tables.push_back(
                {"rates_T" + number_tag(t) + "K", fmt::format("(T = {:g} K)", t)});
        }
    } else if (r.preset.kind == RecipeKind::Variance) {
        for (double f : r.preset.delta_xl_factors) {
            r.series_tables.push_back(
                {"sweep_xl_" + number_tag(f), fmt::format("(Δ_xl = {:g} Ω_R)", f)});
        }
    } else if (r.preset.kind == RecipeKind::Temperature) {
        r.series_tables.push_back({"sweep", ""});
    } else if (r.preset.kind == RecipeKind::Contour) {
        r.series_tables.push_back({"contour", ""});
    }
    return r;
}

std::vector<std::string> table_labels(const Recipe& recipe)
{
    if (recipe.preset.kind == RecipeKind::Fock) {
        return {"populations", "coherence"};
    }
    std::vector<std::string> out;
    for (const auto& t : recipe.series_tables) {
        out.push_back(t.label);
    }
    return out;
}

RecipeOutput run_recipe(const Recipe& recipe)
{
    RecipeOutput out;
    nlohmann::json results;
    switch (recipe.preset.kind) {
    case RecipeKind::Rates: results = run_rates(recipe, out.tables); break;
    case RecipeKind::Variance: results = run_variance(recipe, out.tables); break;
    case RecipeKind::Contour: results = run_contour(recipe, out.tables); break;
    case RecipeKind::Temperature: results = run_temperature(recipe, out.tables); break;
    case RecipeKind::Fock: results = run_fock(recipe, out.tables); break;
    }
    const auto& s = recipe.preset.system;
    out.summary = {{"preset", recipe.preset.name},
                   {"kind", recipe_kind_name(recipe.preset.kind)},
                   {"system",
                    {{"omega_ueV", s.omega_ueV},
                     {"g_c_ueV", s.g_c_ueV},
                     {"delta_xl_ueV", s.delta_xl_ueV},
                     {"delta_cl_ueV", s.delta_cl_ueV},
                     {"gamma_ueV", s.gamma_ueV},
                     {"gamma_prime_ueV", s.gamma_prime_ueV},
                     {"kappa_ueV", s.kappa_ueV},
                     {"n_fock", s.n_fock},
                     {"input_mode",
                      s.input_mode == InputMode::Bare ? "bare" : "renormalized"}}},
                   {"phonons",
                    {{"alpha_p_ps2", recipe.preset.phonons.alpha_p_ps2},
                     {"omega_b_ueV", recipe.preset.phonons.omega_b_ueV},
                     {"T_K", recipe.preset.phonons.temperature_K},
                     {"enabled", recipe.preset.phonons.enabled}}},
                   {"results", results}};
    return out;
}

std::vector<std::pair<std::string, std::string>> render_panels(
    const Recipe& recipe, const std::map<std::string, Table>& tables)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& panel : recipe.preset.panels) {
        out.emplace_back(panel.name, render_panel(recipe, panel, tables));
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::vector<std::filesystem::path> write_outputs(const Recipe& recipe, const RecipeOutput& output,
                                                 const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const std::string& name = recipe.preset.name;
    for (const auto& label : table_labels(recipe)) {
        auto path = dir / (name + "_" + label + ".csv");
        write_text_file(path, to_csv(table_for(output.tables, label)));
        written.push_back(path);
    }
    for (const auto& [panel, text] : render_panels(recipe, output.tables)) {
        auto path = dir / (name + "_" + panel + ".svg");
        write_text_file(path, text);
        written.push_back(path);
    }
    auto path = dir / (name + "_summary.json");
    write_text_file(path, output.summary.dump(2) + "\n");
    written.push_back(path);
    return written;
}

std::map<std::string, Table> read_tables(const Recipe& recipe, const std::filesystem::path& dir)
{
    std::map<std::string, Table> tables;
    for (const auto& label : table_labels(recipe)) {
        tables[label] =
            parse_csv(read_text_file(dir / (recipe.preset.name + "_" + label + ".csv")));
    }
    return tables;
}

}  // namespace qdsqueeze

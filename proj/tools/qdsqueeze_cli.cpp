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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/experiments.hpp"
#include "qdsqueeze/operators.hpp"
#include "qdsqueeze/phonon_bath.hpp"
#include "qdsqueeze/presets.hpp"

namespace fs = std::filesystem;
using namespace qdsqueeze;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Invocation {
    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
};

std::optional<Config> load(const Invocation& inv)
{
    if (inv.config_path.empty()) {
        return std::nullopt;
    }
    return load_config(inv.config_path);
}

std::string preset_name(const Invocation& inv, const std::optional<Config>& cfg)
{
    if (!inv.preset.empty()) {
        return inv.preset;
    }
    if (cfg && !cfg->run.preset.empty()) {
        return cfg->run.preset;
    }
    return {};
}

Recipe recipe_for(const std::string& command, const Invocation& inv, bool any_kind)
{
    auto cfg = load(inv);
    std::string name = preset_name(inv, cfg);
    if (name.empty()) {
        throw ConfigError("preset", "a preset is required (--preset or run.preset)");
    }
    const Preset& preset = find_preset(name);
    if (!any_kind && command != recipe_kind_name(preset.kind)) {
        throw ConfigError("preset", fmt::format("preset '{}' belongs to '{}', not '{}'", name,
                                                recipe_kind_name(preset.kind), command));
    }
    return resolve_recipe(preset, cfg);
}

void report(const std::vector<fs::path>& written)
{
    for (const auto& p : written) {
        std::cout << p.string() << '\n';
    }
}

int run_figure(const std::string& command, const Invocation& inv)
{
    Recipe recipe = recipe_for(command, inv, false);
    RecipeOutput output = run_recipe(recipe);
    report(write_outputs(recipe, output, inv.out_dir));
    std::cout << output.summary["results"].dump(2) << '\n';
    return 0;
}

int run_plot(const Invocation& inv)
{
    Recipe recipe = recipe_for("plot", inv, true);
    auto tables = read_tables(recipe, inv.out_dir);
    std::vector<fs::path> written;
    for (const auto& [panel, text] : render_panels(recipe, tables)) {
        auto path = fs::path(inv.out_dir) / (recipe.preset.name + "_" + panel + ".svg");
        write_text_file(path, text);
        written.push_back(path);
    }
    report(written);
    return 0;
}

int run_steady(const Invocation& inv)
{
    auto cfg = load(inv);
    std::string name = preset_name(inv, cfg);
    SystemParams sys;
    PhononEnv env;
    bool auto_truncation = true;
    double theta = 0.0;
    if (cfg) {
        sys = cfg->system;
        env = cfg->phonons;
        auto_truncation = cfg->run.auto_truncation;
        theta = cfg->run.theta_rad;
    } else if (!name.empty()) {
        const Preset& p = find_preset(name);
        sys = p.system;
        env = p.phonons;
    } else {
        throw ConfigError("", "steady needs --config or --preset");
    }
    if (!name.empty()) {
        find_preset(name);
    }
    std::string stem = name.empty() ? "steady" : name;

    BathKernel kernel(env);
    SteadyStateResult s = solve_point(sys, kernel, auto_truncation, {}, theta);
    ObservableSet o = compute_observables(s.rho, theta);
    Table t{{"delta_xl_ueV", "delta_cl_ueV", "T_K", "b_mean", "adag_a", "re_a", "im_a", "re_a2",
             "im_a2", "re_sigma_minus", "im_sigma_minus", "exciton_coherence", "variance_normord",
             "n_fock_used", "residual", "gap"},
            {{sys.delta_xl_ueV, sys.delta_cl_ueV, env.temperature_K, kernel.b_mean(), o.exp_adag_a,
              o.exp_a.real(), o.exp_a.imag(), o.exp_a2.real(), o.exp_a2.imag(),
              o.exp_sigma_minus.real(), o.exp_sigma_minus.imag(), std::abs(o.exp_sigma_minus),
              o.variance_normord, static_cast<double>(s.n_fock_used), s.residual, s.gap}}};
    FockReport rep{o, s.n_fock_used, s.residual, kernel.b_mean()};

    fs::create_directories(inv.out_dir);
    std::vector<fs::path> written = {fs::path(inv.out_dir) / (stem + "_steady.csv"),
                                     fs::path(inv.out_dir) / (stem + "_steady_coherence.csv")};
    write_text_file(written[0], to_csv(t));
    write_text_file(written[1], to_csv(rep.coherence_table()));
    report(written);
    std::cout << fmt::format("<a+a> = {:.6g}  |<sigma->| = {:.6g}  <:dX^2:> = {:.6g}  N = {}\n",
                             o.exp_adag_a, std::abs(o.exp_sigma_minus), o.variance_normord,
                             s.n_fock_used);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Squeezing of a driven quantum-dot cavity field with phonon coupling"};
    app.require_subcommand(1);

    Invocation inv;
    std::string chosen;
    for (const char* name : {"rates", "steady", "sweep", "contour", "temp-sweep", "fock", "plot"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", inv.config_path, "JSON configuration file")
            ->check(CLI::ExistingFile);
        sub->add_option("--preset", inv.preset, "fig2a|fig2b|fig3a|fig3b|fig4|fig5|fig7|fig8");
        sub->add_option("--out", inv.out_dir, "output directory")->capture_default_str();
        sub->callback([&chosen, name] { chosen = name; });
    }
    app.get_subcommand("rates")->description("phonon-induced rates against detuning");
    app.get_subcommand("steady")->description("steady state at one operating point");
    app.get_subcommand("sweep")->description("variance against cavity-laser detuning");
    app.get_subcommand("contour")->description("exciton coherence over the detuning plane");
    app.get_subcommand("temp-sweep")->description("variance and coherence against temperature");
    app.get_subcommand("fock")->description("cavity Fock populations and coherences");
    app.get_subcommand("plot")->description("re-render SVG panels from existing CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (chosen == "steady") {
            return run_steady(inv);
        }
        if (chosen == "plot") {
            return run_plot(inv);
        }
        return run_figure(chosen, inv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const InvalidState& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

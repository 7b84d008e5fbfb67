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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "qdsqueeze/errors.hpp"
#include "qdsqueeze/presets.hpp"

using namespace qdsqueeze;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("qdsqueeze_test_" + name);
    fs::remove_all(p);
    return p;
}

Recipe small(const std::string& name, const std::string& run)
{
    std::string text = R"({"system": {"omega_ueV": 50, "g_c_ueV": 75, "delta_xl_ueV": -75,
        "delta_cl_ueV": -27.04, "kappa_ueV": 45, "input_mode": "renormalized"},
        "run": )" + run + "}";
    return resolve_recipe(find_preset(name), parse_config(text));
}

}  // namespace

TEST_CASE("every preset is present with its recipe kind")
{
    const std::vector<std::pair<std::string, std::string>> expected = {
        {"fig2a", "rates"}, {"fig2b", "rates"},      {"fig3a", "contour"}, {"fig3b", "sweep"},
        {"fig4", "sweep"},  {"fig5", "fock"},        {"fig7", "temp-sweep"}, {"fig8", "fock"}};
    CHECK(presets().size() == expected.size());
    for (const auto& [name, kind] : expected) {
        const Preset& p = find_preset(name);
        CHECK(p.name == name);
        CHECK(std::string(recipe_kind_name(p.kind)) == kind);
        CHECK_FALSE(p.panels.empty());
    }
    CHECK_THROWS_AS(find_preset("fig6"), ConfigError);
}

TEST_CASE("preset operating point")
{
    const Preset& p = find_preset("fig3b");
    CHECK(p.system.omega_ueV == 50.0);
    CHECK(p.system.g_c_ueV == 75.0);
    CHECK(p.system.kappa_ueV == 45.0);
    CHECK(p.phonons.temperature_K == 4.0);
    CHECK(find_preset("fig8").phonons.temperature_K > find_preset("fig5").phonons.temperature_K);
}

TEST_CASE("labels and overrides")
{
    Recipe r = resolve_recipe(find_preset("fig4"), std::nullopt);
    CHECK(table_labels(r) == std::vector<std::string>{"sweep_xl_m1", "sweep_xl_m1p5", "sweep_xl_m2"});
    CHECK(table_labels(resolve_recipe(find_preset("fig2a"), std::nullopt)) ==
          std::vector<std::string>{"rates_T4K", "rates_T10K"});
    CHECK(table_labels(resolve_recipe(find_preset("fig5"), std::nullopt)) ==
          std::vector<std::string>{"populations", "coherence"});

    Recipe o = small("fig4", R"({"points": 7, "axis_min": -0.5, "axis_max": 0.1,
                                 "delta_xl_factors": [-1.5], "threads": 2})");
    CHECK(o.preset.points == 7);
    CHECK(o.preset.axis_min == -0.5);
    CHECK(o.threads == 2);
    CHECK(table_labels(o) == std::vector<std::string>{"sweep_xl_m1p5"});
    CHECK_THROWS_AS(small("fig4", R"({"axis_min": 1, "axis_max": 0})"), ConfigError);
}

TEST_CASE("run, write and re-read a small sweep")
{
    Recipe r = small("fig3b", R"({"points": 4, "axis_min": -0.4, "axis_max": -0.1})");
    RecipeOutput out = run_recipe(r);
    REQUIRE(out.tables.count("sweep_xl_m1p5") == 1);
    CHECK(out.tables.at("sweep_xl_m1p5").rows.size() == 4);
    CHECK(out.summary.contains("results"));

    fs::path dir = scratch("fig3b");
    auto written = write_outputs(r, out, dir);
    std::set<std::string> names;
    for (const auto& p : written) {
        CHECK(fs::exists(p));
        names.insert(p.filename().string());
    }
    CHECK(names.count("fig3b_sweep_xl_m1p5.csv") == 1);
    CHECK(names.count("fig3b_summary.json") == 1);
    for (const auto& panel : r.preset.panels) {
        CHECK(names.count("fig3b_" + panel.name + ".svg") == 1);
    }
    auto back = read_tables(r, dir);
    CHECK(back == out.tables);

    auto first = render_panels(r, out.tables);
    auto second = render_panels(r, back);
    CHECK(first == second);
    fs::remove_all(dir);
}

TEST_CASE("fock recipe output")
{
    Recipe r = resolve_recipe(find_preset("fig5"), std::nullopt);
    RecipeOutput out = run_recipe(r);
    const Table& pops = out.tables.at("populations");
    double total = 0.0;
    for (double p : pops.column("population")) {
        total += p;
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(render_panels(r, out.tables).size() == r.preset.panels.size());
}

TEST_CASE("reading missing output fails")
{
    Recipe r = resolve_recipe(find_preset("fig7"), std::nullopt);
    CHECK_THROWS(read_tables(r, scratch("missing")));
}

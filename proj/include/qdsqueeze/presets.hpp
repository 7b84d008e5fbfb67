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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdsqueeze/params.hpp"
#include "qdsqueeze/table.hpp"

namespace qdsqueeze {

enum class RecipeKind { Rates, Variance, Contour, Temperature, Fock };

enum class ChartKind { Line, Heatmap, Bar };

/// One SVG panel, written as <preset>_<name>.svg.
struct PanelSpec {
    std::string name;
    ChartKind kind = ChartKind::Line;
    /// Table labels to draw from; empty means every series table of the recipe.
    std::vector<std::string> tables;
    std::string x_column;
    /// Line: one series per (table, column). Heatmap: {row column, value column}.
    /// Bar: {value column}.
    std::vector<std::string> y_columns;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool zero_line = false;
    int bar_limit = -1;  ///< Bar: keep rows with n, m <= bar_limit (-1 keeps all)
};

/// Declarative figure recipe. Detuning-like ranges are stored in units of
/// Omega_R except the variance axis, which is Dcl / sqrt(Omega_R^2 + Dxl^2).
struct Preset {
    std::string name;
    RecipeKind kind = RecipeKind::Variance;
    std::string description;
    SystemParams system;
    PhononEnv phonons;
    std::vector<double> temperatures_K;
    std::vector<double> delta_xl_factors;
    double axis_min = 0.0;
    double axis_max = 0.0;
    int points = 121;
    double xl_min_factor = 0.0;
    double xl_max_factor = 0.0;
    double cl_min_factor = 0.0;
    double cl_max_factor = 0.0;
    int contour_points = 61;
    std::vector<PanelSpec> panels;
};

const std::vector<Preset>& presets();

/// Throws ConfigError("preset", ...) for unknown names.
const Preset& find_preset(const std::string& name);

const char* recipe_kind_name(RecipeKind kind);

struct RecipeTable {
    std::string label;   ///< file stem suffix: <preset>_<label>.csv
    std::string legend;  ///< series name in charts
};

/// A preset with any config overrides applied.
struct Recipe {
    Preset preset;
    double theta = 0.0;
    bool auto_truncation = true;
    int threads = 1;
    std::vector<RecipeTable> series_tables;
};

/// Applies `config` on top of `preset`: system and phonons replace the
/// preset's operating point, run directives replace axes and resolution.
Recipe resolve_recipe(const Preset& preset, const std::optional<Config>& config);

struct RecipeOutput {
    std::map<std::string, Table> tables;
    nlohmann::json summary;
};

RecipeOutput run_recipe(const Recipe& recipe);

/// Every table label the recipe writes, in write order.
std::vector<std::string> table_labels(const Recipe& recipe);

/// (panel name, svg text) for each panel of the recipe.
std::vector<std::pair<std::string, std::string>> render_panels(
    const Recipe& recipe, const std::map<std::string, Table>& tables);

/// Writes CSVs, SVGs and <preset>_summary.json into `dir`; returns the paths.
std::vector<std::filesystem::path> write_outputs(const Recipe& recipe, const RecipeOutput& output,
                                                 const std::filesystem::path& dir);

/// Reads the recipe's CSVs back from `dir`.
std::map<std::string, Table> read_tables(const Recipe& recipe, const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qdsqueeze

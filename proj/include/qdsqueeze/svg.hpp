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
#include <utility>
#include <vector>

namespace qdsqueeze::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool zero_line = false;  ///< dashed y = 0 reference
};

/// values[row][col] with row along `ys` and col along `xs`.
struct Heatmap {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::vector<double>> values;
    std::optional<std::pair<double, double>> marker;  ///< (x, y) crosshair
};

struct BarChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> labels;
    std::vector<double> values;
};

// All renderers produce a fixed 640x440 viewBox, use an 8-colour palette and
// format numbers with fixed precision, so identical input gives identical
// bytes. Empty data throws std::invalid_argument.
std::string render(const LineChart& chart);
std::string render(const Heatmap& chart);
std::string render(const BarChart& chart);

}  // namespace qdsqueeze::svg

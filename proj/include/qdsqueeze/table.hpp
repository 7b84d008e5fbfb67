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

#include <string>
#include <string_view>
#include <vector>

namespace qdsqueeze {

/// Numeric table with named columns; the unit of CSV exchange.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of `name`; throws std::out_of_range if absent.
    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;

    friend bool operator==(const Table&, const Table&) = default;
};

/// Header line plus one line per row, LF endings, 17 significant digits so
/// parse_csv(to_csv(t)) == t bit for bit.
std::string to_csv(const Table& table);

/// Throws std::runtime_error on ragged rows or non-numeric cells.
Table parse_csv(std::string_view text);

}  // namespace qdsqueeze

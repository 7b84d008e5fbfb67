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

#include "qdsqueeze/table.hpp"

#include <charconv>
#include <stdexcept>

#include <fmt/core.h>
#include <fmt/format.h>

namespace qdsqueeze {

namespace {

std::vector<std::string_view> split_line(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_number(std::string_view cell, std::size_t line_no)
{
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw std::runtime_error(
            fmt::format("csv line {}: '{}' is not a number", line_no, std::string(cell)));
    }
    return value;
}

}  // namespace

std::size_t Table::column_index(const std::string& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw std::out_of_range(fmt::format("table has no column '{}'", name));
}

std::vector<double> Table::column(const std::string& name) const
{
    std::size_t idx = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.at(idx));
    }
    return out;
}

std::string to_csv(const Table& table)
{
    fmt::memory_buffer out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        fmt::format_to(std::back_inserter(out), "{}{}", i ? "," : "", table.columns[i]);
    }
    out.push_back('\n');
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("to_csv: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            fmt::format_to(std::back_inserter(out), "{}{:.17g}", i ? "," : "", row[i]);
        }
        out.push_back('\n');
    }
    return fmt::to_string(out);
}

Table parse_csv(std::string_view text)
{
    Table table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (table.columns.empty()) {
            for (auto c : cells) {
                table.columns.emplace_back(c);
            }
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw std::runtime_error(fmt::format("csv line {}: expected {} cells, got {}", line_no,
                                                 table.columns.size(), cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto c : cells) {
            row.push_back(parse_number(c, line_no));
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) {
        throw std::runtime_error("csv: missing header");
    }
    return table;
}

}  // namespace qdsqueeze

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

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qdsqueeze/table.hpp"

using namespace qdsqueeze;

TEST_CASE("csv round trip is exact")
{
    Table t{{"x_ueV", "y"},
            {{0.1, 1.0 / 3.0},
             {-0.0, std::numeric_limits<double>::denorm_min()},
             {1e300, -std::numeric_limits<double>::infinity()},
             {std::nextafter(1.0, 2.0), -123456789.123456789}}};
    std::string text = to_csv(t);
    Table back = parse_csv(text);
    CHECK(back == t);
    CHECK(std::signbit(back.rows[1][0]));
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');
    CHECK(text.substr(0, text.find('\n')) == "x_ueV,y");
}

TEST_CASE("seventeen significant digits")
{
    Table t{{"v"}, {{0.1}}};
    CHECK(to_csv(t) == "v\n0.10000000000000001\n");
}

TEST_CASE("nan survives as nan")
{
    Table t{{"v"}, {{std::numeric_limits<double>::quiet_NaN()}}};
    CHECK(std::isnan(parse_csv(to_csv(t)).rows[0][0]));
}

TEST_CASE("crlf input is accepted")
{
    Table t = parse_csv("a,b\r\n1,2\r\n");
    CHECK(t.columns == std::vector<std::string>{"a", "b"});
    CHECK(t.rows[0][1] == 2.0);
}

TEST_CASE("malformed input is rejected")
{
    CHECK_THROWS_AS(parse_csv(""), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("a\n1.0abc\n"), std::runtime_error);
    Table ragged{{"a", "b"}, {{1.0}}};
    CHECK_THROWS_AS(to_csv(ragged), std::invalid_argument);
}

TEST_CASE("column lookup")
{
    Table t{{"a", "b"}, {{1, 2}, {3, 4}}};
    CHECK(t.column("b") == std::vector<double>{2, 4});
    CHECK_THROWS_AS(t.column("c"), std::out_of_range);
}

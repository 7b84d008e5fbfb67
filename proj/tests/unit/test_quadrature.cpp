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

#include "qdsqueeze/quadrature.hpp"

using qdsqueeze::gauss_legendre;

TEST_CASE("polynomials up to degree 2n-1 are integrated exactly")
{
    for (int n : {1, 2, 5, 16, 64}) {
        auto rule = gauss_legendre(n, -0.5, 2.0);
        for (int k = 0; k <= 2 * n - 1 && k <= 40; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            }
            double exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
            CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("nodes are ordered inside the interval and weights sum to its length")
{
    auto rule = gauss_legendre(2000, 0.0, 12.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(rule.nodes[i] > 0.0);
        CHECK(rule.nodes[i] < 12.0);
        CHECK(rule.weights[i] > 0.0);
        if (i > 0) {
            CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        }
        total += rule.weights[i];
    }
    CHECK(total == doctest::Approx(12.0).epsilon(1e-13));
}

TEST_CASE("smooth oscillatory integrand")
{
    auto rule = gauss_legendre(200, 0.0, 10.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * std::cos(3.0 * rule.nodes[i]) * std::exp(-rule.nodes[i]);
    }
    // int_0^10 cos(3x) e^{-x} dx
    double exact = (1.0 - std::exp(-10.0) * (std::cos(30.0) - 3.0 * std::sin(30.0))) / 10.0;
    CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("invalid rules are rejected")
{
    CHECK_THROWS(gauss_legendre(0, 0.0, 1.0));
}

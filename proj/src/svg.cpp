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

#include "qdsqueeze/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace qdsqueeze::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 610.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 370.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo;
    double hi;

    double map(double v, double out_lo, double out_hi) const
    {
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

Range padded_range(double lo, double hi)
{
    if (!(hi > lo)) {
        double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

std::vector<double> ticks(const Range& r)
{
    double span = r.hi - r.lo;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * span; t += step) {
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    }
    return out;
}

std::string tick_label(double v)
{
    return fmt::format("{:.4g}", v);
}

class Canvas {
public:
    explicit Canvas(const std::string& title)
    {
        fmt::format_to(out(),
                       "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                       "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.0f} {:.0f}\" "
                       "width=\"{:.0f}\" height=\"{:.0f}\" font-family=\"sans-serif\" "
                       "font-size=\"12\">\n"
                       "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
                       "<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" "
                       "font-size=\"15\">{}</text>\n",
                       kWidth, kHeight, kWidth, kHeight, 0.5 * (kLeft + kRight), escape(title));
    }

    std::back_insert_iterator<std::string> out() { return std::back_inserter(buf_); }

    void axes(const Range& xr, const Range& yr, const std::string& x_label,
              const std::string& y_label, bool numeric_x = true)
    {
        fmt::format_to(out(),
                       "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
                       "fill=\"none\" stroke=\"black\"/>\n",
                       kLeft, kTop, kRight - kLeft, kBottom - kTop);
        if (numeric_x) {
            for (double t : ticks(xr)) {
                double px = xr.map(t, kLeft, kRight);
                fmt::format_to(out(),
                               "<line x1=\"{0:.2f}\" y1=\"{1:.1f}\" x2=\"{0:.2f}\" y2=\"{2:.1f}\" "
                               "stroke=\"black\"/>\n"
                               "<text x=\"{0:.2f}\" y=\"{3:.1f}\" "
                               "text-anchor=\"middle\">{4}</text>\n",
                               px, kBottom, kBottom + 5.0, kBottom + 18.0, tick_label(t));
            }
        }
        for (double t : ticks(yr)) {
            double py = yr.map(t, kBottom, kTop);
            fmt::format_to(out(),
                           "<line x1=\"{0:.1f}\" y1=\"{1:.2f}\" x2=\"{2:.1f}\" y2=\"{1:.2f}\" "
                           "stroke=\"black\"/>\n"
                           "<text x=\"{3:.1f}\" y=\"{4:.2f}\" "
                           "text-anchor=\"end\">{5}</text>\n",
                           kLeft - 5.0, py, kLeft, kLeft - 8.0, py + 4.0, tick_label(t));
        }
        fmt::format_to(out(),
                       "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n"
                       "<text x=\"18\" y=\"{:.1f}\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 18 {:.1f})\">{}</text>\n",
                       0.5 * (kLeft + kRight), kHeight - 22.0, escape(x_label),
                       0.5 * (kTop + kBottom), 0.5 * (kTop + kBottom), escape(y_label));
    }

    std::string finish()
    {
        buf_ += "</svg>\n";
        return std::move(buf_);
    }

private:
    std::string buf_;
};

}  // namespace

std::string render(const LineChart& chart)
{
    double xlo = std::numeric_limits<double>::infinity();
    double xhi = -xlo;
    double ylo = xlo;
    double yhi = -xlo;
    std::size_t total = 0;
    for (const Series& s : chart.series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("line chart: x and y lengths differ");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
        total += s.x.size();
    }
    if (total == 0) {
        throw std::invalid_argument("line chart: no data");
    }
    if (chart.zero_line) {
        ylo = std::min(ylo, 0.0);
        yhi = std::max(yhi, 0.0);
    }
    Range xr = padded_range(xlo, xhi);
    Range yr = padded_range(ylo, yhi);
    double ypad = 0.05 * (yr.hi - yr.lo);
    yr = {yr.lo - ypad, yr.hi + ypad};

    Canvas c(chart.title);
    c.axes(xr, yr, chart.x_label, chart.y_label);
    if (chart.zero_line) {
        double py = yr.map(0.0, kBottom, kTop);
        fmt::format_to(c.out(),
                       "<line x1=\"{:.1f}\" y1=\"{:.2f}\" x2=\"{:.1f}\" y2=\"{:.2f}\" "
                       "stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n",
                       kLeft, py, kRight, py);
    }
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const Series& s = chart.series[k];
        const char* color = kPalette[k % kPalette.size()];
        if (s.x.size() == 1) {
            fmt::format_to(c.out(), "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n",
                           xr.map(s.x[0], kLeft, kRight), yr.map(s.y[0], kBottom, kTop), color);
        } else if (!s.x.empty()) {
            fmt::format_to(c.out(), "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"",
                           color);
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                fmt::format_to(c.out(), "{}{:.2f},{:.2f}", i ? " " : "",
                               xr.map(s.x[i], kLeft, kRight), yr.map(s.y[i], kBottom, kTop));
            }
            fmt::format_to(c.out(), "\"/>\n");
        }
        double ly = kTop + 16.0 + 16.0 * static_cast<double>(k);
        fmt::format_to(c.out(),
                       "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
                       "stroke=\"{3}\" stroke-width=\"2\"/>\n"
                       "<text x=\"{4:.1f}\" y=\"{5:.1f}\">{6}</text>\n",
                       kRight - 170.0, ly, kRight - 150.0, color, kRight - 145.0, ly + 4.0,
                       escape(s.name));
    }
    return c.finish();
}

std::string render(const Heatmap& chart)
{
    const std::size_t nx = chart.xs.size();
    const std::size_t ny = chart.ys.size();
    if (nx == 0 || ny == 0) {
        throw std::invalid_argument("heatmap: no data");
    }
    if (chart.values.size() != ny) {
        throw std::invalid_argument("heatmap: value rows do not match ys");
    }
    double vlo = std::numeric_limits<double>::infinity();
    double vhi = -vlo;
    for (const auto& row : chart.values) {
        if (row.size() != nx) {
            throw std::invalid_argument("heatmap: value columns do not match xs");
        }
        for (double v : row) {
            vlo = std::min(vlo, v);
            vhi = std::max(vhi, v);
        }
    }
    auto edges = [](const std::vector<double>& c, std::size_t i) {
        double lo = i == 0 ? c[0] - (c.size() > 1 ? 0.5 * (c[1] - c[0]) : 0.5)
                           : 0.5 * (c[i - 1] + c[i]);
        double hi = i + 1 == c.size() ? c[i] + (c.size() > 1 ? 0.5 * (c[i] - c[i - 1]) : 0.5)
                                      : 0.5 * (c[i] + c[i + 1]);
        return std::pair{lo, hi};
    };
    Range xr{edges(chart.xs, 0).first, edges(chart.xs, nx - 1).second};
    Range yr{edges(chart.ys, 0).first, edges(chart.ys, ny - 1).second};
    Range vr = padded_range(vlo, vhi);

    Canvas c(chart.title);
    for (std::size_t j = 0; j < ny; ++j) {
        auto [y0, y1] = edges(chart.ys, j);
        double py0 = yr.map(y1, kBottom, kTop);
        double py1 = yr.map(y0, kBottom, kTop);
        for (std::size_t i = 0; i < nx; ++i) {
            auto [x0, x1] = edges(chart.xs, i);
            double px0 = xr.map(x0, kLeft, kRight);
            double px1 = xr.map(x1, kLeft, kRight);
            double t = std::clamp((chart.values[j][i] - vr.lo) / (vr.hi - vr.lo), 0.0, 1.0);
            // white -> dark blue
            int r = static_cast<int>(std::lround(255.0 * (1.0 - 0.9 * t)));
            int g = static_cast<int>(std::lround(255.0 * (1.0 - 0.75 * t)));
            int b = static_cast<int>(std::lround(255.0 * (1.0 - 0.45 * t)));
            fmt::format_to(c.out(),
                           "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                           "fill=\"#{:02x}{:02x}{:02x}\"/>\n",
                           px0, py0, px1 - px0 + 0.02, py1 - py0 + 0.02, r, g, b);
        }
    }
    c.axes(xr, yr, chart.x_label, chart.y_label);
    if (chart.marker) {
        double px = xr.map(chart.marker->first, kLeft, kRight);
        double py = yr.map(chart.marker->second, kBottom, kTop);
        fmt::format_to(c.out(),
                       "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"none\" "
                       "stroke=\"{}\" stroke-width=\"2\"/>\n",
                       px, py, kPalette[1]);
    }
    fmt::format_to(c.out(),
                   "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">range {} .. {}</text>\n",
                   kRight, kTop - 6.0, tick_label(vlo), tick_label(vhi));
    return c.finish();
}

std::string render(const BarChart& chart)
{
    const std::size_t n = chart.values.size();
    if (n == 0) {
        throw std::invalid_argument("bar chart: no data");
    }
    if (chart.labels.size() != n) {
        throw std::invalid_argument("bar chart: labels do not match values");
    }
    double vlo = std::min(0.0, *std::min_element(chart.values.begin(), chart.values.end()));
    double vhi = std::max(0.0, *std::max_element(chart.values.begin(), chart.values.end()));
    Range yr = padded_range(vlo, vhi);
    yr.hi += 0.05 * (yr.hi - yr.lo);
    Range xr{0.0, static_cast<double>(n)};

    Canvas c(chart.title);
    c.axes(xr, yr, chart.x_label, chart.y_label, false);
    double slot = (kRight - kLeft) / static_cast<double>(n);
    double base = yr.map(0.0, kBottom, kTop);
    for (std::size_t i = 0; i < n; ++i) {
        double top = yr.map(chart.values[i], kBottom, kTop);
        double x = kLeft + slot * (static_cast<double>(i) + 0.15);
        fmt::format_to(c.out(),
                       "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                       "fill=\"{}\"/>\n"
                       "<text x=\"{:.2f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                       x, std::min(top, base), 0.7 * slot, std::abs(base - top), kPalette[0],
                       kLeft + slot * (static_cast<double>(i) + 0.5), kBottom + 18.0,
                       escape(chart.labels[i]));
    }
    return c.finish();
}

}  // namespace qdsqueeze::svg

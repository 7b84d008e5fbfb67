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

#include "qdsqueeze/params.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace qdsqueeze {

namespace {

using nlohmann::json;

void require(bool ok, const char* field, const std::string& what)
{
    if (!ok) {
        throw ConfigError(field, what);
    }
}

void require_finite(double v, const char* field)
{
    require(std::isfinite(v), field, "must be finite");
}

void require_non_negative(double v, const char* field)
{
    require_finite(v, field);
    require(v >= 0.0, field, fmt::format("must be >= 0 (got {})", v));
}

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed)
{
    for (const auto& [key, value] : obj.items()) {
        if (allowed.count(key) == 0) {
            std::string path = section.empty() ? key : section + "." + key;
            throw ConfigError(path, "unknown key");
        }
    }
}

template <typename T>
void read_optional(const json& obj, const std::string& section, const char* key, T& out)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    try {
        out = it->template get<T>();
    } catch (const json::exception&) {
        throw ConfigError(section + "." + key,
                          fmt::format("wrong type ({})", it->type_name()));
    }
}

template <typename T>
void read_present(const json& obj, const std::string& section, const char* key,
                  std::optional<T>& out)
{
    if (obj.contains(key)) {
        T v{};
        read_optional(obj, section, key, v);
        out = v;
    }
}

template <typename T>
void read_required(const json& obj, const std::string& section, const char* key, T& out)
{
    if (!obj.contains(key)) {
        throw ConfigError(section + "." + key, "missing required key");
    }
    read_optional(obj, section, key, out);
}

const json& section_object(const json& root, const char* name)
{
    static const json empty = json::object();
    auto it = root.find(name);
    if (it == root.end()) {
        return empty;
    }
    if (!it->is_object()) {
        throw ConfigError(name, "must be an object");
    }
    return *it;
}

std::string describe_parse_error(const std::string& text, std::size_t byte,
                                 const std::string& what)
{
    // nlohmann reports a 1-based byte offset of the failing token.
    std::size_t offset = byte > 0 ? byte - 1 : 0;
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    std::size_t line_end = text.find('\n', line_start);
    std::string line_text = text.substr(line_start, line_end == std::string::npos
                                                        ? std::string::npos
                                                        : line_end - line_start);
    return fmt::format("parse error at line {}, column {}: {}\n  | {}", line,
                       offset - line_start + 1, what, line_text);
}

}  // namespace

void SystemParams::validate() const
{
    require_non_negative(omega_ueV, "system.omega_ueV");
    require_non_negative(g_c_ueV, "system.g_c_ueV");
    require_finite(delta_xl_ueV, "system.delta_xl_ueV");
    require_finite(delta_cl_ueV, "system.delta_cl_ueV");
    require_non_negative(gamma_ueV, "system.gamma_ueV");
    require_non_negative(gamma_prime_ueV, "system.gamma_prime_ueV");
    require_non_negative(kappa_ueV, "system.kappa_ueV");
    require(n_fock >= 2, "system.n_fock", fmt::format("must be >= 2 (got {})", n_fock));
}

void PhononEnv::validate() const
{
    require_non_negative(alpha_p_ps2, "phonons.alpha_p_ps2");
    require_finite(omega_b_ueV, "phonons.omega_b_ueV");
    require(omega_b_ueV > 0.0, "phonons.omega_b_ueV",
            fmt::format("must be > 0 (got {})", omega_b_ueV));
    require_non_negative(temperature_K, "phonons.T_K");
}

void RunDirectives::validate() const
{
    if (points) {
        require(*points >= 1, "run.points", "must be >= 1");
    }
    if (contour_points) {
        require(*contour_points >= 2, "run.contour_points", "must be >= 2");
    }
    if (axis_min) {
        require_finite(*axis_min, "run.axis_min");
    }
    if (axis_max) {
        require_finite(*axis_max, "run.axis_max");
    }
    if (axis_min && axis_max) {
        require(*axis_min < *axis_max, "run.axis_max", "must exceed run.axis_min");
    }
    for (double t : temperatures_K) {
        require_non_negative(t, "run.temperatures_K");
    }
    for (double f : delta_xl_factors) {
        require_finite(f, "run.delta_xl_factors");
    }
    require_finite(theta_rad, "run.theta_rad");
    require(threads >= 0, "run.threads", "must be >= 0");
}

Config parse_config(const std::string& json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", describe_parse_error(json_text, e.byte, e.what()));
    }
    if (!root.is_object()) {
        throw ConfigError("", "top level must be a JSON object");
    }
    reject_unknown_keys(root, "", {"system", "phonons", "run"});
    if (!root.contains("system")) {
        throw ConfigError("system", "missing required section");
    }

    Config cfg;

    const json& sys = section_object(root, "system");
    reject_unknown_keys(sys, "system",
                        {"omega_ueV", "g_c_ueV", "delta_xl_ueV", "delta_cl_ueV", "gamma_ueV",
                         "gamma_prime_ueV", "kappa_ueV", "n_fock", "input_mode"});
    read_required(sys, "system", "omega_ueV", cfg.system.omega_ueV);
    read_required(sys, "system", "g_c_ueV", cfg.system.g_c_ueV);
    read_required(sys, "system", "delta_xl_ueV", cfg.system.delta_xl_ueV);
    read_required(sys, "system", "delta_cl_ueV", cfg.system.delta_cl_ueV);
    read_required(sys, "system", "kappa_ueV", cfg.system.kappa_ueV);
    read_optional(sys, "system", "gamma_ueV", cfg.system.gamma_ueV);
    read_optional(sys, "system", "gamma_prime_ueV", cfg.system.gamma_prime_ueV);
    read_optional(sys, "system", "n_fock", cfg.system.n_fock);
    std::string mode = "bare";
    read_optional(sys, "system", "input_mode", mode);
    if (mode == "bare") {
        cfg.system.input_mode = InputMode::Bare;
    } else if (mode == "renormalized") {
        cfg.system.input_mode = InputMode::Renormalized;
    } else {
        throw ConfigError("system.input_mode",
                          fmt::format("expected \"bare\" or \"renormalized\", got \"{}\"", mode));
    }

    const json& ph = section_object(root, "phonons");
    reject_unknown_keys(ph, "phonons", {"alpha_p_ps2", "omega_b_ueV", "T_K", "enabled"});
    read_optional(ph, "phonons", "alpha_p_ps2", cfg.phonons.alpha_p_ps2);
    read_optional(ph, "phonons", "omega_b_ueV", cfg.phonons.omega_b_ueV);
    read_optional(ph, "phonons", "T_K", cfg.phonons.temperature_K);
    read_optional(ph, "phonons", "enabled", cfg.phonons.enabled);

    const json& run = section_object(root, "run");
    reject_unknown_keys(run, "run",
                        {"preset", "points", "contour_points", "axis_min", "axis_max",
                         "temperatures_K", "delta_xl_factors", "theta_rad", "auto_truncation",
                         "threads"});
    read_optional(run, "run", "preset", cfg.run.preset);
    read_present(run, "run", "points", cfg.run.points);
    read_present(run, "run", "contour_points", cfg.run.contour_points);
    read_present(run, "run", "axis_min", cfg.run.axis_min);
    read_present(run, "run", "axis_max", cfg.run.axis_max);
    read_optional(run, "run", "temperatures_K", cfg.run.temperatures_K);
    read_optional(run, "run", "delta_xl_factors", cfg.run.delta_xl_factors);
    read_optional(run, "run", "theta_rad", cfg.run.theta_rad);
    read_optional(run, "run", "auto_truncation", cfg.run.auto_truncation);
    read_optional(run, "run", "threads", cfg.run.threads);

    cfg.system.validate();
    cfg.phonons.validate();
    cfg.run.validate();
    return cfg;
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", fmt::format("cannot open config file '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

SystemParams to_bare(const SystemParams& sys, double b_mean)
{
    SystemParams out = sys;
    if (sys.input_mode == InputMode::Renormalized) {
        if (!(b_mean > 0.0)) {
            throw std::invalid_argument("to_bare: <B> must be positive");
        }
        out.omega_ueV = sys.omega_ueV / b_mean;
        out.g_c_ueV = sys.g_c_ueV / b_mean;
        out.input_mode = InputMode::Bare;
    }
    return out;
}

double renormalized_omega(const SystemParams& sys, double b_mean)
{
    return sys.input_mode == InputMode::Renormalized ? sys.omega_ueV : b_mean * sys.omega_ueV;
}

double renormalized_g(const SystemParams& sys, double b_mean)
{
    return sys.input_mode == InputMode::Renormalized ? sys.g_c_ueV : b_mean * sys.g_c_ueV;
}

}  // namespace qdsqueeze

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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdsqueeze {

/// Raised for malformed or out-of-range configuration. `field()` names the
/// offending key as a dotted path ("system.gamma_ueV"), or is empty for
/// syntax errors.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class InputMode {
    Bare,          ///< omega and g_c are the bare values
    Renormalized,  ///< omega and g_c are Omega_R and g_R at the configured T
};

/// Drive, coupling, detuning and decay parameters. All energies in ueV.
struct SystemParams {
    double omega_ueV = 0.0;        ///< Rabi frequency
    double g_c_ueV = 0.0;          ///< QD-cavity coupling
    double delta_xl_ueV = 0.0;     ///< exciton - laser
    double delta_cl_ueV = 0.0;     ///< cavity - laser
    double gamma_ueV = 2.0;        ///< radiative decay
    double gamma_prime_ueV = 0.5;  ///< pure dephasing
    double kappa_ueV = 0.0;        ///< cavity decay
    int n_fock = 5;                ///< photons 0..n_fock
    InputMode input_mode = InputMode::Bare;

    /// Throws ConfigError naming the first field outside its range.
    void validate() const;
};

/// Acoustic-phonon bath. alpha_p is the effective coupling used directly in
/// j(w) = alpha_p w^3 exp(-w^2 / 2 w_b^2); the default 0.06 ps^2 gives
/// <B>(4 K) = 0.91.
struct PhononEnv {
    double alpha_p_ps2 = 0.06;
    double omega_b_ueV = 1000.0;
    double temperature_K = 4.0;
    bool enabled = true;

    void validate() const;
};

/// Experiment directives from the "run" section. Unset optionals fall back
/// to the preset defaults.
struct RunDirectives {
    std::string preset;
    std::optional<int> points;
    std::optional<int> contour_points;
    std::optional<double> axis_min;
    std::optional<double> axis_max;
    std::vector<double> temperatures_K;
    std::vector<double> delta_xl_factors;
    double theta_rad = 0.0;
    bool auto_truncation = true;
    int threads = 1;

    void validate() const;
};

struct Config {
    SystemParams system;
    PhononEnv phonons;
    RunDirectives run;
};

/// Parses and validates a JSON configuration document. The schema is closed:
/// unknown keys are rejected.
Config parse_config(const std::string& json_text);

/// Reads `path` and forwards to parse_config.
Config load_config(const std::filesystem::path& path);

/// Returns a Bare-mode copy of `sys`. In Renormalized mode omega and g_c are
/// divided by `b_mean`; Bare-mode input is returned unchanged.
SystemParams to_bare(const SystemParams& sys, double b_mean);

/// Omega_R = <B> * Omega for the given parameters, honoring the input mode.
double renormalized_omega(const SystemParams& sys, double b_mean);
/// g_R = <B> * g_c for the given parameters, honoring the input mode.
double renormalized_g(const SystemParams& sys, double b_mean);

}  // namespace qdsqueeze

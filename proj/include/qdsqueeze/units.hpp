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

// Internal unit system: energies in ueV, times in ps, angular frequencies in
// rad/ps, temperatures in K.

namespace qdsqueeze::units {

/// Reduced Planck constant in ueV*ps.
inline constexpr double kHbar = 658.2119569;
/// Boltzmann constant in ueV/K.
inline constexpr double kBoltzmann = 86.17333262;

constexpr double energy_to_angular_frequency(double energy_ueV) noexcept
{
    return energy_ueV / kHbar;
}

constexpr double angular_frequency_to_energy(double omega_rad_ps) noexcept
{
    return omega_rad_ps * kHbar;
}

/// Thermal energy k_B T in ueV.
constexpr double thermal_energy(double temperature_K) noexcept
{
    return kBoltzmann * temperature_K;
}

}  // namespace qdsqueeze::units

# Copyright 2026 The qdsqueeze Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Steady-state quadrature squeezing of a driven quantum-dot cavity with phonon coupling."""

from ._core import (
    ConfigError,
    InputMode,
    NumericalError,
    PhononEnv,
    PhononRates,
    SystemParams,
    compute_rates,
    mean_displacement,
    phonon_phase,
    presets,
    quadrature_variance,
    rates_sweep,
    run_preset,
    steady_state,
    variance_sweep,
)

__all__ = [
    "ConfigError",
    "InputMode",
    "NumericalError",
    "PhononEnv",
    "PhononRates",
    "SystemParams",
    "compute_rates",
    "mean_displacement",
    "phonon_phase",
    "presets",
    "quadrature_variance",
    "rates_sweep",
    "run_preset",
    "steady_state",
    "variance_sweep",
]

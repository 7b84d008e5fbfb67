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

import math

import numpy as np
import pytest

import qdsqueeze as qd


def operating_point():
    s = qd.SystemParams()
    s.omega_ueV = 50.0
    s.g_c_ueV = 75.0
    s.kappa_ueV = 45.0
    s.delta_xl_ueV = -75.0
    s.delta_cl_ueV = -27.04
    s.input_mode = qd.InputMode.RENORMALIZED
    return s


def test_mean_displacement():
    env = qd.PhononEnv()
    assert env.temperature_K == 4.0
    assert qd.mean_displacement(env) == pytest.approx(0.912, abs=2e-3)
    env.temperature_K = 0.0
    wb = env.omega_b_ueV / 658.2119569
    assert qd.mean_displacement(env) == pytest.approx(math.exp(-0.5 * env.alpha_p_ps2 * wb**2), rel=1e-9)


def test_rates_detailed_balance():
    s = operating_point()
    s.delta_cl_ueV = 0.0
    r = qd.compute_rates(s, qd.PhononEnv())
    assert r.gamma_sigma_plus > 0.0
    kT = 86.17333262 * 4.0
    assert r.gamma_sigma_plus / r.gamma_sigma_minus == pytest.approx(math.exp(r.delta_lx / kT), rel=1e-6)


def test_steady_state():
    res = qd.steady_state(operating_point(), qd.PhononEnv())
    rho = res["rho"]
    assert rho.dtype == np.complex128
    assert np.allclose(rho, rho.conj().T, atol=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    pops = res["fock_populations"]
    assert pops[0] == pytest.approx(0.79, abs=0.03)
    assert res["variance_normord"] < 0.0
    assert qd.quadrature_variance(res["cavity_rho"]) == pytest.approx(res["variance_normord"], rel=1e-12)


def test_variance_sweep_columns():
    table = qd.variance_sweep(operating_point(), qd.PhononEnv(), [-0.4, -0.3, -0.2])
    assert list(table)[0] == "delta_cl_over_scale"
    assert len(table["variance_normord"]) == 3
    assert min(table["variance_normord_no_phonons"]) < min(table["variance_normord"])


def test_rates_sweep():
    table = qd.rates_sweep(qd.PhononEnv(), [-100.0, 0.0, 100.0])
    assert table["gamma_sigma_plus_ueV"][1] == pytest.approx(table["gamma_sigma_minus_ueV"][1])


def test_presets_and_errors(tmp_path):
    assert qd.presets() == ["fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5", "fig7", "fig8"]
    out = qd.run_preset("fig5", out_dir=tmp_path)
    assert sum(out["tables"]["populations"]["population"]) == pytest.approx(1.0)
    assert (tmp_path / "fig5_populations.svg").exists()
    with pytest.raises(qd.ConfigError):
        qd.run_preset("fig9")
    bad = operating_point()
    bad.kappa_ueV = -1.0
    with pytest.raises(qd.ConfigError):
        bad.validate()

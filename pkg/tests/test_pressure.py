# -*- coding: utf-8 -*-
#
# randexp: thermodynamic formalism for random exponential maps
#
# Copyright © 2026 The randexp developers
#
# randexp is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# randexp is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with randexp.  If not, see <https://www.gnu.org/licenses/>.

import math
import pytest

import numpy as np

from randexp.exc import ConfigError, DomainError, InconclusiveError, AccuracyError
from randexp.driver import DriverConfig, sample_sequence
from randexp.measure import FiberMeasure, seed_measure, phi_family, cesaro_mean
from randexp.transfer import TransferParams
from randexp.pressure import (
    MAX_LEAK, PressureEstimate, PressureCurve, GridSpec, batch_means_stderr,
    pressure_birkhoff, pressure_operator_grid, pressure_curve, bowen_solve,
    lyapunov_integrand_mean, lyapunov_along, lyapunov_estimate,
)


@pytest.fixture
def constant():
    return DriverConfig('constant', 1.0, 1.0)

def estimate(t, value, stderr=0.01):
    return PressureEstimate(t, value, stderr, 10, 'birkhoff_lambda')

def linear_pressure(root, stderr=0.001):
    def fake(tp, cfg, n, burn, atoms, seq):
        return PressureEstimate(tp.t, root - tp.t, stderr, n, 'birkhoff_lambda')
    return fake


def test_batch_means_stderr():
    assert batch_means_stderr(np.ones(40)) == 0
    assert batch_means_stderr([1.0]) == 0
    assert batch_means_stderr(np.arange(40.0), batches=4) > 0

def test_estimate_validation():
    with pytest.raises(DomainError):
        PressureEstimate(1.5, 0.1, 0.01, 10, 'guess')

    with pytest.raises(DomainError):
        PressureEstimate(1.5, 0.1, -1, 10, 'birkhoff_lambda')

def test_curve_shape():
    curve = PressureCurve([estimate(1.2, 1.0), estimate(1.4, 0.5), estimate(1.6, 0.1)])

    diff, noise = curve.differences()

    assert diff == pytest.approx([-0.5, -0.4])
    assert noise == pytest.approx([0.01 * math.sqrt(2)] * 2)
    assert curve.is_decreasing()
    assert curve.is_convex()
    assert list(curve.ts) == [1.2, 1.4, 1.6]

def test_curve_not_decreasing():
    curve = PressureCurve([estimate(1.2, 1.0), estimate(1.4, 1.1)])

    assert not curve.is_decreasing()
    assert len(curve.second_differences()[0]) == 0

def test_pressure_birkhoff(constant, small_numerics):
    result = pressure_birkhoff(TransferParams(2.0), constant, 6, burn=2, atoms=10)

    assert math.isfinite(result.value)
    assert result.stderr >= 0
    assert result.n_steps == 6
    assert result.method == 'birkhoff_lambda'
    assert 0 < result.lambda_min <= result.lambda_max
    assert result.lambda_min * (1 - 1e-12) <= math.exp(result.value) <= result.lambda_max * (1 + 1e-12)

def test_pressure_birkhoff_burn(constant):
    with pytest.raises(ConfigError) as exc:
        pressure_birkhoff(TransferParams(2.0), constant, 4, burn=4)

    assert exc.value.key == 'burn'

def test_pressure_curve(constant, small_numerics):
    curve = pressure_curve(TransferParams(1.5), constant, [1.5, 2.0], 4, burn=1, atoms=10)

    assert len(curve) == 2
    assert list(curve.ts) == [1.5, 2.0]
    assert all(x.n_steps == 4 for x in curve)

@pytest.mark.parametrize('ts', ([2.0, 1.5], [0.9, 1.5], []))
def test_pressure_curve_validation(constant, ts):
    with pytest.raises(ConfigError):
        pressure_curve(TransferParams(1.5), constant, ts, 4)

def test_operator_grid(constant):
    result = pressure_operator_grid(TransferParams(3.0), constant, GridSpec(3.0, 8), 6, burn=1)

    assert math.isfinite(result.value)
    assert result.method == 'operator_grid'
    assert result.n_steps == 5
    assert 0 <= result.leak <= MAX_LEAK

def test_operator_grid_validation(constant):
    with pytest.raises(ConfigError):
        GridSpec(3.0, 1)

    with pytest.raises(ConfigError):
        pressure_operator_grid(TransferParams(2.0), constant, GridSpec(3.0, 4), 4, M1=5.0)

def test_bowen_finds_root(constant, monkeypatch):
    monkeypatch.setattr('randexp.pressure.pressure_birkhoff', linear_pressure(1.5))

    result = bowen_solve(TransferParams(1.5), constant, 0.01, n=8)

    assert result.h == pytest.approx(1.5, abs=0.01)
    assert result.bracket[1] - result.bracket[0] < 0.01
    assert result.bracket[0] < 1.5 < result.bracket[1]

    by_t = {x.t: x for x in result.evaluations}
    lo, hi = by_t[result.bracket[0]], by_t[result.bracket[1]]
    assert lo.value - 2 * lo.stderr > 0
    assert hi.value + 2 * hi.stderr < 0
    assert len(result.evaluations) > 2
    assert result.as_dict()['seed'] == 0

def test_bowen_noise_is_inconclusive(constant, monkeypatch):
    monkeypatch.setattr('randexp.pressure.pressure_birkhoff', linear_pressure(1.5, stderr=1.0))

    with pytest.raises(InconclusiveError) as exc:
        bowen_solve(TransferParams(1.5), constant, 0.01, n=8)

    assert len(exc.value.evaluations) == 2

def test_bowen_midpoint_within_noise(constant, monkeypatch):
    monkeypatch.setattr('randexp.pressure.pressure_birkhoff', linear_pressure(1.5, stderr=0.01))

    # The fifth midpoint, t = 1.4953, sits 0.0047 from the root
    with pytest.raises(InconclusiveError) as exc:
        bowen_solve(TransferParams(1.5), constant, 0.001, n=8)

    assert len(exc.value.evaluations) == 7

def test_bowen_root_above_bracket(constant, monkeypatch):
    monkeypatch.setattr('randexp.pressure.pressure_birkhoff', linear_pressure(3.0))

    with pytest.raises(InconclusiveError):
        bowen_solve(TransferParams(1.5), constant, 0.01, n=8)

def test_lyapunov_integrand_mean():
    measure = FiberMeasure([0.0, 2.0], [0.0, 1.0], [0.5, 0.5])

    assert lyapunov_integrand_mean(math.e, measure) == pytest.approx(2.0)

def test_lyapunov_along_averages_fibers():
    family = [
        FiberMeasure([0.0], [1.0], [1.0], fiber_index=0),
        FiberMeasure([2.0], [1.0], [1.0], fiber_index=1),
    ]
    etas = [math.e, math.e]

    # ∫ log|F'| dν_m = 1 + Re z_m, averaged over both fibers
    assert lyapunov_along(etas, family, 0, 1, 1) == pytest.approx(2.0)

    with pytest.raises(DomainError):
        lyapunov_along(etas, family, 0, 1, 2)

def test_lyapunov_estimate(constant, small_numerics):
    tp = TransferParams(1.5)
    seq = sample_sequence(constant, 5)
    family, _ = phi_family(tp, seq, seed_measure(20, seq, 5), 5, seed=constant.seed)
    # n = 4 averages fibers 1..3 with two Cesàro terms each
    expected = float(np.mean([
        lyapunov_integrand_mean(1.0, cesaro_mean(seq, family, m, 2)) for m in (1, 2, 3)
    ]))

    if expected > 0:
        assert lyapunov_estimate(tp, constant, 4, burn=1, atoms=20) == pytest.approx(expected)
    else:
        with pytest.raises(AccuracyError):
            lyapunov_estimate(tp, constant, 4, burn=1, atoms=20)

def test_pressure_curve_shape_of_real_estimates(constant, small_numerics):
    curve = pressure_curve(TransferParams(1.5), constant, [1.1, 1.55, 2.0], 16,
        burn=4, atoms=200)
    low, _, high = curve

    assert curve.is_decreasing()
    assert curve.is_convex()
    assert high.value <= 2 * high.stderr
    assert low.value > high.value

def test_bowen_on_real_estimates(constant, small_numerics):
    # Midpoints 1.525 and 1.2875 lie well away from the root near 1.44
    result = bowen_solve(TransferParams(1.5), constant, 0.25, n=16, burn=4, atoms=200)

    assert 1 < result.h < 2
    assert result.bracket == pytest.approx((1.2875, 1.525))

    by_t = {x.t: x for x in result.evaluations}
    lo, hi = by_t[result.bracket[0]], by_t[result.bracket[1]]
    assert lo.value - 2 * lo.stderr > 0
    assert hi.value + 2 * hi.stderr < 0

def test_birkhoff_agrees_with_operator_grid(constant, small_numerics):
    tp = TransferParams(2.0)

    birkhoff = pressure_birkhoff(tp, constant, 8, burn=2, atoms=200)
    grid = pressure_operator_grid(tp, constant, GridSpec(10.0, 64), 8, burn=2)

    assert birkhoff.value == pytest.approx(grid.value, abs=0.05)

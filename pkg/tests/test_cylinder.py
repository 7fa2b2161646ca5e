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

from randexp.exc import DomainError, RangeError
from randexp.cylinder import (
    TWO_PI, CylPoint, PlanePoint, RegionSpec, PlaneMeasure, normalize_im,
    min_modulus, min_modulus_array, cylinder_distance, classify, classify_array,
    exp_to_cstar, log_to_cyl, project, semiconjugacy_residual,
    plane_conformality_residual, pushforward_scale, pushforward_exp,
    rho_derivative_modulus, exp_conjugate_map,
)


def test_normalize_im():
    assert normalize_im(-math.pi / 2) == pytest.approx(3 * math.pi / 2)
    assert normalize_im(TWO_PI) == 0.0
    assert normalize_im(-1e-20) == 0.0

    values = normalize_im(np.array([-1.0, 7.0, 0.5]))
    assert np.all((values >= 0) & (values < TWO_PI))

def test_cyl_point_normalizes():
    z = CylPoint(1, -math.pi)

    assert z.im == pytest.approx(math.pi)
    assert CylPoint(0, TWO_PI) == CylPoint(0, 0)

def test_cyl_point_rejects_non_finite():
    with pytest.raises(DomainError):
        CylPoint(float('inf'), 0)

    with pytest.raises(DomainError):
        PlanePoint(0, float('nan'))

def test_min_modulus_uses_nearest_lift():
    z = CylPoint(4, TWO_PI - 3)

    assert min_modulus(z) == pytest.approx(5)
    assert abs(z) == pytest.approx(5)
    assert min_modulus_array(np.array([4.0]), np.array([TWO_PI - 3]))[0] == pytest.approx(5)

def test_cylinder_distance_wraps():
    a = CylPoint(0, 0.1)
    b = CylPoint(0, TWO_PI - 0.1)

    assert cylinder_distance(a, b) == pytest.approx(0.2)

def test_regions_partition():
    spec_plus = RegionSpec(2, 'Y_M_plus')
    spec_minus = RegionSpec(2, 'Y_M_minus')
    spec_q = RegionSpec(2, 'Q_M')

    for re in (-3, -2, 0, 2, 3):
        z = CylPoint(re, 1)
        hits = [classify(z, x) for x in (spec_plus, spec_minus, spec_q)]
        assert sum(hits) == 1

    assert classify(CylPoint(2, 0), spec_q)
    assert list(classify_array([-3, 0, 3], RegionSpec(2, 'Y_M'))) == [True, False, True]

def test_region_spec_validation():
    with pytest.raises(DomainError):
        RegionSpec(0, 'Q_M')

    with pytest.raises(DomainError):
        RegionSpec(1, 'Z_M')

def test_exp_log_inverse():
    z = CylPoint(0.3, 2.5)
    w = log_to_cyl(exp_to_cstar(z))

    assert w.re == pytest.approx(z.re)
    assert w.im == pytest.approx(z.im)

def test_log_of_zero():
    with pytest.raises(DomainError):
        log_to_cyl(PlanePoint(0, 0))

def test_exp_overflow():
    with pytest.raises(RangeError):
        exp_to_cstar(CylPoint(800, 0))

def test_project():
    z = project(PlanePoint(1, 7))

    assert z.re == 1
    assert z.im == pytest.approx(7 - TWO_PI)

@pytest.mark.parametrize('eta', [0.5, 1.0, 2.5])
def test_semiconjugacy(eta):
    for z in (CylPoint(0, 0), CylPoint(-1, 2), CylPoint(0.5, 5)):
        assert semiconjugacy_residual(eta, z) < 1e-12

def test_pushforward_scale():
    measure = PlaneMeasure([1.0], [2.0], [1.0])
    scaled = pushforward_scale(measure, 3.0)

    assert scaled.points[0] == 3 + 6j
    assert scaled.total == 1.0

def test_plane_conformality_single_atom():
    # ν = δ_w, ν_next = λ|f'(w)|^t δ_f(w) in the |dz|/|z| metric
    eta, t, w = 1.0, 2.0, 0.5 + 0.5j
    image = eta * np.exp(w)
    rho = eta * abs(np.exp(w)) * abs(w) / abs(image)

    nu = PlaneMeasure([w.real], [w.imag], [1.0])
    nu_next = PlaneMeasure([image.real], [image.imag], [rho ** t])
    balls = [(w, 0.1)]

    assert plane_conformality_residual('exponential', eta, nu, nu_next, 1.0, t, balls) < 1e-12

def test_plane_conformality_survives_scaling():
    # z ↦ ηz carries w ↦ exp(ηw) to u ↦ ηe^u and is an isometry of |dz|/|z|
    eta, t, w = 0.8, 1.5, 1.25 + 0.3j
    image = np.exp(eta * w)
    rho = eta * abs(w)

    nu = PlaneMeasure([w.real], [w.imag], [1.0])
    nu_next = PlaneMeasure([image.real], [image.imag], [rho ** t])

    assert plane_conformality_residual('exp_conjugate', eta, nu, nu_next, 1.0, t,
        [(w, 0.1)]) < 1e-12

    scaled = pushforward_scale(nu, eta)
    scaled_next = pushforward_scale(nu_next, eta)

    assert scaled_next.total == nu_next.total
    assert plane_conformality_residual('exponential', eta, scaled, scaled_next, 1.0, t,
        [(eta * w, 0.1 * eta)]) < 1e-12

def test_plane_conformality_rejects_large_ball():
    nu = PlaneMeasure([0.5], [0.5], [1.0])

    with pytest.raises(DomainError):
        plane_conformality_residual('exponential', 1.0, nu, nu, 1.0, 2.0, [(0.5 + 0.5j, 4)])

def test_rho_derivative_modulus():
    # z ↦ z² has derivative 2 in the |dz|/|z| metric everywhere
    at = PlanePoint(0.3, 0.4)
    value = complex(at) ** 2

    assert rho_derivative_modulus(PlanePoint.from_complex(value), 2 * abs(at), at) == pytest.approx(2)

    with pytest.raises(DomainError):
        rho_derivative_modulus(PlanePoint(0, 0), 1.0, at)

def test_pushforward_exp():
    from randexp.measure import FiberMeasure

    measure = FiberMeasure([0.0, 1.0], [math.pi, 0.0], [0.25, 0.75])
    plane = pushforward_exp(measure)

    assert plane.total == 1.0
    assert np.allclose(sorted(plane.x), [-1.0, math.e])

    with pytest.raises(RangeError):
        pushforward_exp(FiberMeasure([800.0], [0.0], [1.0]))

def test_exp_conjugate_map():
    z = CylPoint(0.2, 1.0)
    w = exp_conjugate_map(1.5, exp_to_cstar(z))

    assert abs(complex(w) - np.exp(1.5 * np.exp(complex(0.2, 1.0)))) < 1e-12

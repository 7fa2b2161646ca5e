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

"""
Geometry of the cylinder Q = C / 2πiZ and the maps tying it to C* and C.

A point of Q is stored by its lift with imaginary part in [0, 2π). The
exponential identifies Q with the punctured plane, where the dynamics become
w ↦ exp(ηw), and the similarity H_η(z) = z/η conjugates that map with the
original family z ↦ ηe^z on C.
"""

import math
import cmath
import logging
import collections

import numpy as np

from .exc import DomainError, RangeError
from .config import Config

TWO_PI = 2 * math.pi

REGION_KINDS = ('Q_M', 'Y_M', 'Y_M_plus', 'Y_M_minus')

logger = logging.getLogger(__name__)


def normalize_im(im):
    """
    Reduce imaginary parts into [0, 2π). Works on floats and numpy arrays.
    """

    result = np.mod(im, TWO_PI)

    # np.mod(-1e-20, 2π) rounds up to exactly 2π
    result = np.where(result >= TWO_PI, 0.0, result)

    if np.ndim(result) == 0:
        return float(result)
    return result


class CylPoint(collections.namedtuple('CylPoint', 're im')):
    __slots__ = ()

    def __new__(cls, re, im):
        re, im = float(re), float(im)

        if not (math.isfinite(re) and math.isfinite(im)):
            raise DomainError("Non-finite cylinder point ({}, {})".format(re, im))

        return super().__new__(cls, re, normalize_im(im))

    @property
    def lift(self):
        return complex(self.re, self.im)

    def __abs__(self):
        return min_modulus(self)


class PlanePoint(collections.namedtuple('PlanePoint', 'x y')):
    __slots__ = ()

    def __new__(cls, x, y):
        x, y = float(x), float(y)

        if not (math.isfinite(x) and math.isfinite(y)):
            raise DomainError("Non-finite plane point ({}, {})".format(x, y))

        return super().__new__(cls, x, y)

    @classmethod
    def from_complex(cls, value):
        return cls(value.real, value.imag)

    def __complex__(self):
        return complex(self.x, self.y)

    def __abs__(self):
        return math.hypot(self.x, self.y)


class RegionSpec(collections.namedtuple('RegionSpec', 'M kind')):
    __slots__ = ()

    def __new__(cls, M, kind):
        if not M > 0:
            raise DomainError("Region bound M must be positive, got {}".format(M))
        if kind not in REGION_KINDS:
            raise DomainError("Unknown region kind {!r}; expected one of {}".format(
                kind, ', '.join(REGION_KINDS),
            ))

        return super().__new__(cls, float(M), kind)


class PlaneMeasure(object):
    """
    Atomic measure on C or C*.
    """

    def __init__(self, x, y, weights):
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        self.weights = np.asarray(weights, dtype=float)

    def __len__(self):
        return len(self.weights)

    def __repr__(self):
        return '<PlaneMeasure {} atoms, mass {:.6g}>'.format(len(self), self.total)

    @property
    def total(self):
        return float(np.sum(self.weights))

    @property
    def points(self):
        return self.x + 1j * self.y


def project(p):
    if not (math.isfinite(p.x) and math.isfinite(p.y)):
        raise DomainError("Cannot project non-finite point {}".format(p))

    return CylPoint(p.x, p.y)


def min_modulus(z):
    # Only the lifts with imaginary parts im and im - 2π can be closest
    return math.hypot(z.re, min(z.im, TWO_PI - z.im))


def min_modulus_array(re, im):
    im = normalize_im(im)
    return np.hypot(re, np.minimum(im, TWO_PI - im))


def cylinder_distance(a, b):
    dy = abs(a.im - b.im)
    return math.hypot(a.re - b.re, min(dy, TWO_PI - dy))


def cylinder_distance_array(re1, im1, re2, im2):
    dy = np.abs(normalize_im(im1) - normalize_im(im2))
    return np.hypot(re1 - re2, np.minimum(dy, TWO_PI - dy))


def classify(z, spec):
    """
    Region membership. Y_M_minus is {Re z < -M} so that Y_M is the disjoint
    union of Y_M_plus and Y_M_minus.
    """

    if spec.kind == 'Q_M':
        return abs(z.re) <= spec.M
    if spec.kind == 'Y_M':
        return abs(z.re) > spec.M
    if spec.kind == 'Y_M_plus':
        return z.re > spec.M
    return z.re < -spec.M


def classify_array(re, spec):
    re = np.asarray(re)

    return {
        'Q_M': lambda: np.abs(re) <= spec.M,
        'Y_M': lambda: np.abs(re) > spec.M,
        'Y_M_plus': lambda: re > spec.M,
        'Y_M_minus': lambda: re < -spec.M,
    }[spec.kind]()


def exp_to_cstar(z):
    if z.re > Config().overflow_re:
        raise RangeError(
            "exp overflow: Re z = {} exceeds {}".format(z.re, Config().overflow_re),
            z,
        )

    r = math.exp(z.re)

    return PlanePoint(r * math.cos(z.im), r * math.sin(z.im))


def log_to_cyl(p):
    if p.x == 0 and p.y == 0:
        raise DomainError("log is undefined at 0")

    w = cmath.log(complex(p))

    return CylPoint(w.real, w.imag)


def rho_derivative_modulus(g_value, g_deriv_modulus, at):
    """
    Derivative modulus of a map g measured in the metric |dz|/|z|.
    """

    value_modulus = abs(g_value)
    at_modulus = abs(at)

    if value_modulus == 0 or at_modulus == 0:
        raise DomainError("The |dz|/|z| metric is singular at 0")

    return g_deriv_modulus * at_modulus / value_modulus


def exp_conjugate_map(eta, w):
    """
    The map w ↦ exp(ηw) on C*, conjugate to F_η through exp.
    """

    value = complex(w) * eta

    if value.real > Config().overflow_re:
        raise RangeError("exp overflow at {}".format(w), w)

    return PlanePoint.from_complex(cmath.exp(value))


def semiconjugacy_residual(eta, z):
    """
    Relative defect of exp ∘ F_η = F̃_η ∘ exp at z.
    """

    from .dynamics import apply_map

    lhs = complex(exp_to_cstar(apply_map(eta, z)))
    rhs = complex(exp_conjugate_map(eta, exp_to_cstar(z)))

    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def pushforward_exp(measure):
    """
    Image of a cylinder measure under exp: Q → C*. Weights are untouched.
    """

    over = measure.re > Config().overflow_re

    if np.any(over):
        idx = int(np.flatnonzero(over)[0])
        raise RangeError(
            "Atom {} at Re = {} overflows exp".format(idx, measure.re[idx]),
            CylPoint(measure.re[idx], measure.im[idx]),
        )

    r = np.exp(measure.re)

    return PlaneMeasure(r * np.cos(measure.im), r * np.sin(measure.im), measure.weights.copy())


def pushforward_scale(measure, eta):
    """
    Pull a plane measure back through H_η(z) = z/η, i.e. move atoms z ↦ ηz.
    """

    return PlaneMeasure(measure.x * eta, measure.y * eta, measure.weights.copy())


##

PLANE_MAPS = ('exp_conjugate', 'exponential')


def _plane_preimages(kind, eta, u, k):
    logu = np.log(u)

    if kind == 'exp_conjugate':
        return (logu + 2j * math.pi * k) / eta
    return logu - math.log(eta) + 2j * math.pi * k


def _plane_image(kind, eta, w):
    if kind == 'exp_conjugate':
        return np.exp(eta * w)
    return eta * np.exp(w)


def _plane_deriv_modulus(kind, eta, w):
    if kind == 'exp_conjugate':
        return eta * np.abs(np.exp(eta * w))
    return eta * np.abs(np.exp(w))


def plane_conformality_residual(kind, eta, nu, nu_next, lam, t, balls, floor=1e-300):
    """
    Conformality defect of plane measures for w ↦ exp(ηw) ("exp_conjugate")
    or z ↦ ηe^z ("exponential"), derivatives taken in the |dz|/|z| metric.

    ``balls`` is a sequence of (center: complex, radius) pairs on which the map
    is injective.
    """

    if kind not in PLANE_MAPS:
        raise DomainError("Unknown plane map {!r}".format(kind))

    limit = math.pi / eta if kind == 'exp_conjugate' else math.pi
    worst = 0.0

    next_points = nu_next.points
    points = nu.points

    for center, radius in balls:
        if not radius < limit:
            raise DomainError("Ball of radius {} around {} is not an "
                "injectivity domain (radius must be < {})".format(radius, center, limit))

        # Branches whose preimages can reach the ball
        if kind == 'exp_conjugate':
            span = abs(eta * center) + eta * radius
        else:
            span = abs(center.imag) + radius
        k_max = int(span / (2 * math.pi)) + 2
        ks = np.arange(-k_max, k_max + 1)

        hit = np.zeros(len(next_points), dtype=bool)
        nonzero = next_points != 0
        pre = _plane_preimages(kind, eta, next_points[nonzero, None], ks[None, :])
        hit[nonzero] = np.any(np.abs(pre - center) < radius, axis=1)
        lhs = float(np.sum(nu_next.weights[hit]))

        inside = np.abs(points - center) < radius
        w = points[inside]
        rho = np.array([
            rho_derivative_modulus(
                PlanePoint.from_complex(complex(_plane_image(kind, eta, x))),
                float(_plane_deriv_modulus(kind, eta, x)),
                PlanePoint.from_complex(complex(x)),
            )
            for x in w
        ])
        rhs = lam * float(np.sum(nu.weights[inside] * rho ** t))

        if lhs == 0 and rhs == 0:
            continue

        worst = max(worst, abs(lhs - rhs) / max(lhs, floor))

    return worst

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
import cmath
import logging
import collections

import numpy as np

from .exc import DomainError, RangeError
from .config import Config
from .cylinder import CylPoint, TWO_PI, normalize_im

logger = logging.getLogger(__name__)

INV_E = math.exp(-1)


class MapParam(collections.namedtuple('MapParam', 'eta A B')):
    __slots__ = ()

    def __new__(cls, eta, A=None, B=None):
        A = eta if A is None else A
        B = eta if B is None else B

        if not A > INV_E:
            raise DomainError("A ({}) must exceed 1/e".format(A))
        if not A <= eta <= B:
            raise DomainError("eta ({}) outside [{}, {}]".format(eta, A, B))

        return super().__new__(cls, float(eta), float(A), float(B))


def _eta(p):
    return getattr(p, 'eta', p)


class OrbitRecord(object):
    def __init__(self, points, log_deriv, etas, escaped_at=None):
        self.points = points
        self.log_deriv = log_deriv
        self.etas = etas
        self.escaped_at = escaped_at

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return '<OrbitRecord {} points{}>'.format(
            len(self),
            '' if self.escaped_at is None else ', escaped at {}'.format(self.escaped_at),
        )

    @property
    def re(self):
        return np.array([x.re for x in self.points])

    @property
    def im(self):
        return np.array([x.im for x in self.points])

    def image_lift(self, n):
        """
        The plane value f^n(z) whose projection is points[n], n ≥ 1.
        """

        z = self.points[n - 1]
        return self.etas[n - 1] * cmath.exp(complex(z.re, z.im))


def apply_map(p, z):
    if z.re > Config().overflow_re:
        raise RangeError("Cannot apply F at Re z = {}".format(z.re), z)

    r = _eta(p) * math.exp(z.re)

    return CylPoint(r * math.cos(z.im), r * math.sin(z.im))


def step_log_derivative(p, z):
    """
    log |F'_η(z)| = log |f_η(z)| = log η + Re z.
    """

    return math.log(_eta(p)) + z.re


def drift_margin(p, z):
    return _eta(p) * math.exp(z.re) * math.cos(z.im) - z.re


def orbit(etas, z0, n):
    if len(etas) < n:
        raise DomainError("Need {} parameters, got {}".format(n, len(etas)))

    overflow = Config().overflow_re
    points = [z0]
    log_deriv = [0.0]
    escaped_at = None

    for k in range(n):
        z = points[-1]

        if z.re > overflow:
            escaped_at = k
            logger.debug("Orbit of %s escaped at step %d", z0, k)
            break

        log_deriv.append(log_deriv[-1] + step_log_derivative(etas[k], z))
        points.append(apply_map(etas[k], z))
    else:
        if points[-1].re > overflow:
            escaped_at = n

    return OrbitRecord(points, np.array(log_deriv), [float(x) for x in etas[:n]], escaped_at)


def orbit_of_zero(etas, n):
    return orbit(etas, CylPoint(0, 0), n)


def orbit_arrays(etas, re, im, n, overflow=None):
    """
    Vectorized forward iteration of many points along the same parameters.

    Returns the final (re, im), cumulative log derivatives and the index at
    which each point escaped (-1 if it never did). Escaped points are frozen.
    """

    if overflow is None:
        overflow = Config().overflow_re

    re = np.array(re, dtype=float, copy=True)
    im = normalize_im(np.array(im, dtype=float, copy=True))
    log_deriv = np.zeros_like(re)
    escaped = np.full(re.shape, -1, dtype=int)

    for k in range(n):
        alive = escaped < 0
        escaped[alive & (re > overflow)] = k
        alive = escaped < 0

        if not np.any(alive):
            break

        eta = float(etas[k])
        log_deriv[alive] += math.log(eta) + re[alive]
        r = eta * np.exp(re[alive])
        y = r * np.sin(im[alive])
        re[alive] = r * np.cos(im[alive])
        im[alive] = normalize_im(y)

    escaped[(escaped < 0) & (re > overflow)] = n

    return re, im, log_deriv, escaped


def preimages(p, z, k_lo, k_hi):
    """
    The preimages w_k = Log((z + 2kπi)/η), k_lo ≤ k ≤ k_hi, each paired with
    |F'(w_k)| = |z + 2kπi|. A k for which z + 2kπi = 0 is skipped.
    """

    eta = _eta(p)
    result = []

    for k in range(k_lo, k_hi + 1):
        value = complex(z.re, z.im + TWO_PI * k)

        if value == 0:
            logger.warning("Skipping singular branch k=%d at %s", k, z)
            continue

        w = cmath.log(value / eta)
        result.append((k, CylPoint(w.real, w.imag), abs(value)))

    return result


def im_expansion_check(etas, z0, n, slack=1e-12):
    """
    Check |(f^n)'(z0)| ≥ |Im f^n(z0)| on the computed orbit.
    """

    if n < 1:
        raise DomainError("The expansion inequality needs n >= 1")

    record = orbit(etas, z0, n)

    if record.escaped_at is not None and record.escaped_at < n:
        raise DomainError("Orbit of {} escaped at step {} before {}".format(
            z0, record.escaped_at, n,
        ))

    lhs = record.log_deriv[n]
    rhs = abs(record.image_lift(n).imag)

    if rhs == 0:
        return True

    # Compared in logs, the derivative may exceed the float range
    return lhs >= math.log(rhs) - slack


def drift_lower_bound(p, delta):
    """
    The uniform drift c(A, δ) = 1 + ln(A(1-δ)) = min_x (A(1-δ)e^x - x):
    Re f_η(z) - Re z ≥ c whenever cos(Im z) > 1 - δ and η ≥ A.
    """

    A = getattr(p, 'A', p)

    if not 0 <= delta < 1:
        raise DomainError("delta ({}) must lie in [0, 1)".format(delta))
    if A * (1 - delta) * math.e < 1 - 1e-12:
        raise DomainError("(1 - delta) = {} is below 1/(Ae) = {}".format(
            1 - delta, 1 / (A * math.e),
        ))

    return 1 + math.log(A * (1 - delta))

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
Radial-point statistics, the typical-point dichotomy scan and the expansion
raster.

Everything here is measured against the singular orbits F^k_{θ^{n-k}ω}(0),
the forward images of 0 started k fibers back, which SingularOrbitTable
caches once per parameter sequence.
"""

import math
import logging
import collections

import numpy as np

from .exc import DomainError
from .config import Config
from .cylinder import (
    TWO_PI, CylPoint, min_modulus, min_modulus_array,
    cylinder_distance_array,
)
from .dynamics import orbit, orbit_arrays
from .progress import Progress
from .profiling import profile

MAX_PIXELS = 8192 * 8192

logger = logging.getLogger(__name__)


class SingularOrbitTable(object):
    """
    Row n holds F^k_{θ^{n-k}ω}(0) for k = 0..n. Row n is row n - 1 pushed
    through F_{η_{n-1}} with a fresh 0 prepended. Entries beyond the
    overflow threshold are frozen and flagged.
    """

    def __init__(self, etas, n_max):
        if len(etas) < n_max:
            raise DomainError("Need {} parameters, got {}".format(n_max, len(etas)))

        overflow = Config().overflow_re

        re = np.zeros(1)
        im = np.zeros(1)
        escaped = np.zeros(1, dtype=bool)

        self.rows = [(re, im, escaped)]

        for n in range(1, n_max + 1):
            eta = float(etas[n - 1])
            escaped = escaped | (re > overflow)
            alive = ~escaped

            r = eta * np.exp(np.where(alive, re, 0.0))
            new_re = np.where(alive, r * np.cos(im), re)
            new_im = np.where(alive, np.mod(r * np.sin(im), TWO_PI), im)

            re = np.concatenate([[0.0], new_re])
            im = np.concatenate([[0.0], new_im])
            escaped = np.concatenate([[False], escaped | (new_re > overflow)])

            self.rows.append((re, im, escaped))

        logger.debug("Built singular orbit table up to n=%d", n_max)

    def __len__(self):
        return len(self.rows)

    @property
    def n_max(self):
        return len(self.rows) - 1

    def row(self, n):
        return self.rows[n]

    def point(self, n, k):
        re, im, _ = self.rows[n]
        return CylPoint(re[k], im[k])


class RadialStats(collections.namedtuple(
    'RadialStats', 'z N n density counted truncated',
)):
    __slots__ = ()

    def as_dict(self):
        return {
            're': self.z.re,
            'im': self.z.im,
            'N': self.N,
            'n': self.n,
            'density': self.density,
            'counted': self.counted,
            'truncated': self.truncated,
        }


def in_sufficient_set(point, row, N):
    """
    F^n(z) = point lies in the cap |w| ≤ N and no singular orbit of row n
    enters B(point, 2/N).
    """

    if min_modulus(point) > N:
        return False

    re, im, escaped = row
    distance = cylinder_distance_array(re, im, point.re, point.im)

    return not np.any((distance < 2 / N) & ~escaped)


def radial_density(seq, z, N, n, table=None):
    if N <= 0:
        raise DomainError("N must be positive")
    if n == 0:
        return RadialStats(z, N, 0, 0.0, 0, False)

    if table is None or table.n_max < n:
        table = SingularOrbitTable(seq, n)

    record = orbit(seq, z, n)
    last = len(record.points) - 1
    truncated = record.escaped_at is not None and record.escaped_at < n

    if truncated:
        logger.debug("Orbit of %s escaped at %d; counting up to there", z, record.escaped_at)
        last = record.escaped_at - 1

    counted = sum(
        1 for j in range(1, last + 1)
        if in_sufficient_set(record.points[j], table.row(j), N)
    )

    return RadialStats(z, N, n, counted / n, counted, truncated)


class ScanGrid(collections.namedtuple('ScanGrid', 'M nx ny')):
    """
    Cell centres of an nx × ny grid on Q_M = [-M, M] × [0, 2π).
    """

    __slots__ = ()

    def __new__(cls, M, nx, ny=None):
        ny = nx if ny is None else ny

        if not M > 0 or nx < 1 or ny < 1:
            raise DomainError("Invalid scan grid M={} {}x{}".format(M, nx, ny))

        return super().__new__(cls, float(M), int(nx), int(ny))

    def points(self):
        re = -self.M + 2 * self.M * (np.arange(self.nx) + 0.5) / self.nx
        im = TWO_PI * (np.arange(self.ny) + 0.5) / self.ny
        grid_re, grid_im = np.meshgrid(re, im)

        return grid_re.ravel(), grid_im.ravel()


class ScanReport(object):
    def __init__(self, grid, n, delta, fraction_satisfying, growth, max_witness,
                 satisfied, witness, vacuous=False):
        self.grid = grid
        self.n = n
        self.delta = delta
        self.fraction_satisfying = fraction_satisfying
        self.growth = growth
        self.max_witness = max_witness
        self.satisfied = satisfied
        self.witness = witness
        self.vacuous = vacuous

    def __repr__(self):
        return '<ScanReport n={} delta={} fraction={:.4f}>'.format(
            self.n, self.delta, self.fraction_satisfying,
        )

    def as_dict(self):
        return {
            'grid': self.grid._asdict(),
            'n': self.n,
            'delta': self.delta,
            'fraction_satisfying': self.fraction_satisfying,
            'k_n_growth': self.growth,
            'max_witness': self.max_witness,
            'vacuous': self.vacuous,
        }

    def rows(self):
        re, im = self.grid.points()

        for x, y, ok, k in zip(re, im, self.satisfied, self.witness):
            yield x, y, bool(ok), int(k)


def dichotomy(table, n, re, im, delta, escaped):
    """
    For points F^n(z) = (re, im): whether some k ≤ n has
    |F^n(z) - F^k_{θ^{n-k}ω}(0)| < δ, or |F^n(z)| ≥ 1/δ. Returns the mask and
    the largest witnessing k (-1 where only the second alternative holds).
    """

    row_re, row_im, row_escaped = table.row(n)

    far = escaped | (min_modulus_array(re, im) >= 1 / delta)
    witness = np.full(len(re), -1, dtype=int)

    for k in range(n, -1, -1):
        if row_escaped[k]:
            continue

        close = cylinder_distance_array(re, im, row_re[k], row_im[k]) < delta
        witness[(witness < 0) & close] = k

    return far | (witness >= 0), witness


def growth_schedule(n):
    return sorted(set(x for x in (n // 4, n // 2, n) if x >= 1))


def typical_scan(cfg, grid, n, delta, seq=None):
    from .driver import sample_sequence

    if not 0 < delta < 1:
        raise DomainError("delta ({}) must lie in (0, 1)".format(delta))
    if n < 0:
        raise DomainError("n must be non-negative")

    if seq is None:
        seq = sample_sequence(cfg, n)

    table = SingularOrbitTable(seq, n)
    re, im = grid.points()
    escaped = np.zeros(len(re), dtype=bool)

    if n == 0:
        satisfied, witness = dichotomy(table, 0, re, im, delta, escaped)

        return ScanReport(grid, 0, delta, float(np.mean(satisfied)), False, 0,
            satisfied, witness, vacuous=True)

    max_witness = []
    done = 0

    with profile('radial', 'typical_scan'), \
            Progress(len(growth_schedule(n)), "Scanning dichotomy") as p:
        for target in growth_schedule(n):
            re, im, _, escaped_at = orbit_arrays(seq[done:target], re, im, target - done)
            escaped = escaped | (escaped_at >= 0)
            done = target

            satisfied, witness = dichotomy(table, target, re, im, delta, escaped)
            max_witness.append(int(witness.max()))
            p.step(msg="n={}".format(target))

            logger.debug("Dichotomy at n=%d: %.4f satisfied, max witness %d",
                target, np.mean(satisfied), max_witness[-1])

    growth = all(b >= a for a, b in zip(max_witness, max_witness[1:])) \
        and max_witness[-1] > max_witness[0]

    return ScanReport(grid, n, delta, float(np.mean(satisfied)), growth,
        max_witness[-1], satisfied, witness)


class AccumulationSummary(collections.namedtuple(
    'AccumulationSummary', 'tail_distance escaped tail_length',
)):
    __slots__ = ()


def accumulation_stats(record, tail_fraction):
    if len(record.etas) < 10:
        raise DomainError("Need an orbit of at least 10 steps, got {}".format(
            len(record.etas)))
    if not 0 < tail_fraction <= 1:
        raise DomainError("tail_fraction must lie in (0, 1]")

    points = record.points
    overflow = Config().overflow_re
    length = max(1, int(math.ceil(tail_fraction * len(points))))
    tail = [x for x in points[-length:] if x.re <= overflow]

    distance = max((min(x.im, TWO_PI - x.im) for x in tail), default=0.0)

    return AccumulationSummary(distance, record.escaped_at is not None, length)


class Window(collections.namedtuple(
    'Window', 're_min re_max im_min im_max width height',
)):
    __slots__ = ()

    def __new__(cls, re_min, re_max, im_min, im_max, width, height):
        if not (re_min < re_max and im_min < im_max):
            raise DomainError("Empty raster window")
        if width < 1 or height < 1 or width * height > MAX_PIXELS:
            raise DomainError("Raster resolution {}x{} outside 1..8192²".format(
                width, height))

        return super().__new__(cls, float(re_min), float(re_max),
            float(im_min), float(im_max), int(width), int(height))

    def pixels(self):
        """
        Pixel centres; row 0 is the top of the image (largest Im).
        """

        re = self.re_min + (self.re_max - self.re_min) * (np.arange(self.width) + 0.5) / self.width
        im = self.im_max - (self.im_max - self.im_min) * (np.arange(self.height) + 0.5) / self.height

        return np.meshgrid(re, im)


class Raster(object):
    def __init__(self, indices, window, n_max):
        self.indices = indices
        self.window = window
        self.n_max = n_max

    def gray(self):
        if self.n_max == 0:
            return np.zeros(self.indices.shape, dtype=np.uint8)

        return (255 * self.indices // self.n_max).astype(np.uint8)

    def to_pgm(self):
        header = 'P5\n{} {}\n255\n'.format(self.window.width, self.window.height)

        return header.encode('ascii') + self.gray().tobytes()


def expansion_raster(seq, window, n_max, deriv_threshold):
    """
    Per pixel, the first n with |(F^n)'(z)| ≥ deriv_threshold or Re F^n(z)
    beyond the overflow threshold; n_max when neither happens.
    """

    if not deriv_threshold > 0:
        raise DomainError("deriv_threshold must be positive")
    if len(seq) < n_max:
        raise DomainError("Need {} parameters, got {}".format(n_max, len(seq)))

    overflow = Config().overflow_re
    log_threshold = math.log(deriv_threshold)

    re, im = (x.ravel() for x in window.pixels())
    im = np.mod(im, TWO_PI)
    log_deriv = np.zeros_like(re)
    index = np.full(len(re), n_max, dtype=int)
    pending = np.ones(len(re), dtype=bool)

    with profile('radial', 'expansion_raster'):
        for n in range(n_max + 1):
            hit = pending & ((log_deriv >= log_threshold) | (re > overflow))
            index[hit] = n
            pending &= ~hit

            if n == n_max or not np.any(pending):
                break

            eta = float(seq[n])
            log_deriv[pending] += math.log(eta) + re[pending]
            r = eta * np.exp(re[pending])
            y = r * np.sin(im[pending])
            re[pending] = r * np.cos(im[pending])
            im[pending] = np.mod(y, TWO_PI)

    return Raster(index.reshape(window.height, window.width), window, n_max)

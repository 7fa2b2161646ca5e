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
The transfer operator

    ℒ_{t,η} g(z) = Σ_k g(w_k) |F'_η(w_k)|^{-t},   F_η(w_k) = z,

and its adjoint acting on atomic measures.

For the preimage w_k of z we have |F'_η(w_k)| = |z + 2kπi|, so with
z = x + iy every weight is ((x² + (y + 2πk)²))^{-t/2}. Branches with
|k| ≤ K are summed one by one. Beyond K, writing b = x/2π and
q = k ± y/2π, the weight expands as

    (2π)^{-t} Σ_j C(-t/2, j) b^{2j} q^{-t-2j}

so every tail is a series of Hurwitz zeta values ζ(t + 2j, K + 1 ± y/2π).
Once K > 2·sqrt(max(1, t/2))·|b| the terms shrink at least fourfold and
alternate in sign, so the first omitted term bounds the remainder.
"""

import math
import logging
import collections

import numpy as np
from scipy import special

from .exc import ConfigError, DomainError, TruncationError, AccuracyError
from .config import Config
from .cylinder import TWO_PI, CylPoint, min_modulus, normalize_im

CONVENTIONS = ('image_modulus', 'etal_factor')

# Enough for a ratio of 1/4 between consecutive terms to reach any double.
MAX_SERIES_TERMS = 64

logger = logging.getLogger(__name__)


def koebe_constant(s):
    """
    Distortion constant K_s of univalent maps on B(z, r) restricted to
    B(z, sr), 0 < s < 1.
    """

    if not 0 < s < 1:
        raise DomainError("Koebe scale s ({}) must lie in (0, 1)".format(s))

    return max((1 + s) / (1 - s) ** 3, (1 + s) ** 3 / (1 - s))


KOEBE_K = koebe_constant(0.5)


class TransferParams(collections.namedtuple(
    'TransferParams', 't tail_tol k_max_cap convention',
)):
    __slots__ = ()

    def __new__(cls, t, tail_tol=None, k_max_cap=None, convention='image_modulus'):
        if tail_tol is None:
            tail_tol = Config().tail_tol
        if k_max_cap is None:
            k_max_cap = Config().k_max_cap

        if not t > 1:
            raise ConfigError("t ({}) must be strictly greater than 1".format(t), 't')
        if not tail_tol > 0:
            raise ConfigError("tail_tol ({}) must be positive".format(tail_tol), 'tail_tol')
        if convention not in CONVENTIONS:
            raise ConfigError("Unknown convention {!r}; expected one of {}".format(
                convention, ', '.join(CONVENTIONS)), 'convention')

        return super().__new__(cls, float(t), float(tail_tol), int(k_max_cap), convention)

    def scale(self, eta):
        """
        Factor every weight carries under the chosen convention.
        """

        if self.convention == 'etal_factor':
            return eta ** self.t
        return 1.0

    def with_t(self, t):
        return TransferParams(t, self.tail_tol, self.k_max_cap, self.convention)


class ConstantsTable(object):
    """
    The constants that enter the P-space conditions for one value of t.
    """

    def __init__(self, t, d, D, r0=None, M0=None):
        config = Config()

        self.t = t
        self.K = KOEBE_K
        self.r0 = config.r0 if r0 is None else r0
        self.M0 = config.M0 if M0 is None else M0
        self.d = d
        self.D = D
        self.lambda_bounds = None

        if not 0 < self.r0 < 1 / (2 * self.K):
            raise ConfigError("r0 ({}) must lie in (0, 1/(2K))".format(self.r0), 'r0')
        if not 0 < d <= D < math.inf:
            raise DomainError("Sandwich constants must satisfy 0 < d <= D < inf, "
                "got d={} D={}".format(d, D))

    def __repr__(self):
        return '<ConstantsTable t={} d={:.6g} D={:.6g}>'.format(self.t, self.d, self.D)

    @staticmethod
    def K_t(s):
        return koebe_constant(s)

    @property
    def c(self):
        return self.d / 2

    @property
    def C_M0(self):
        return self.M0 ** (self.t - 1) / self.c

    @property
    def c_M0(self):
        return 2 * self.D * self.C_M0

    def record_lambdas(self, lambdas):
        lambdas = np.asarray(lambdas, dtype=float)

        if len(lambdas) == 0:
            return
        if not np.all(np.isfinite(lambdas)) or np.any(lambdas <= 0):
            raise AccuracyError("Recorded lambdas must be finite and positive",
                float(np.min(lambdas)), 0.0)

        lo, hi = float(lambdas.min()), float(lambdas.max())

        if self.lambda_bounds is not None:
            lo = min(lo, self.lambda_bounds[0])
            hi = max(hi, self.lambda_bounds[1])

        self.lambda_bounds = (lo, hi)

    def as_dict(self):
        return {
            't': self.t,
            'K': self.K,
            'r0': self.r0,
            'M0': self.M0,
            'd': self.d,
            'D': self.D,
            'c': self.c,
            'C_M0': self.C_M0,
            'c_M0': self.c_M0,
            'lambda_bounds': self.lambda_bounds,
        }


def integral_tail_bound(t, y, K):
    """
    Bound on Σ_{|k|>K} |x + i(y + 2πk)|^{-t} by comparison with ∫_K^∞,
    valid for 0 ≤ y < 2π ≤ 2πK.
    """

    if K < 1:
        raise DomainError("K must be at least 1")

    return ((TWO_PI * K) ** (1 - t) + (TWO_PI * K - y) ** (1 - t)) / (TWO_PI * (t - 1))


def required_branches(t, re):
    """
    Smallest K for which the tail series converges geometrically.
    """

    b = np.max(np.abs(re)) / TWO_PI if np.size(re) else 0.0

    return max(Config().branch_direct, int(math.ceil(2 * math.sqrt(max(1.0, t / 2)) * b)) + 1)


def _zeta_series(t, b, q, tol):
    """
    Σ_{k≥0} ((k + q)² + b²)^{-t/2} for arrays b, q (broadcast), together with
    a bound on the remainder of the truncated series.
    """

    b2 = np.square(b)
    total = np.zeros(np.broadcast(b2, q).shape)
    a = -t / 2
    # Generalized binomial coefficient C(a, j), finite for integer a
    coeff = 1.0

    for j in range(MAX_SERIES_TERMS):
        if j > 0:
            coeff *= (a - j + 1) / j

        term = coeff * b2 ** j * special.zeta(t + 2 * j, q)

        if j > 0 and np.all(np.abs(term) <= tol * np.abs(total)):
            return total, np.abs(term)

        total = total + term

    raise TruncationError("Tail series did not converge in {} terms".format(
        MAX_SERIES_TERMS), float(np.max(np.abs(term))))


def _direct_weights(t, re, im, ks):
    """
    |z + 2kπi|^{-t} for every atom (rows) and branch (columns); the weight
    of a zero modulus is 0.
    """

    y = im[:, None] + TWO_PI * ks[None, :]
    modulus = np.hypot(re[:, None], y)
    singular = modulus == 0

    if np.any(singular):
        for row in np.flatnonzero(np.any(singular, axis=1)):
            logger.warning("Skipping singular branch k=%d at (%s, %s)",
                ks[np.argmax(singular[row])], re[row], im[row])

    with np.errstate(divide='ignore'):
        weights = np.where(singular, 0.0, modulus ** -t)

    return weights, modulus, y


def _tails(t, re, im, K, tol, starts=None):
    """
    Right (k > K) and left (k < -K) tail sums without the (2π)^{-t} factor.
    With ``starts`` the sums begin at each offset, giving one column each.
    """

    b = (re / TWO_PI)[:, None]
    shift = (im / TWO_PI)[:, None]

    if starts is None:
        starts = np.array([K + 1])

    starts = np.asarray(starts, dtype=float)[None, :]

    right, right_rem = _zeta_series(t, b, starts + shift, tol)
    left, left_rem = _zeta_series(t, b, starts - shift, tol)

    return right, left, right_rem + left_rem


def transfer_ones(tp, p, re, im):
    """
    Vectorized ℒ_{t,η}1 at many points; returns (values, tail_bounds, K).
    """

    eta = getattr(p, 'eta', p)
    re = np.atleast_1d(np.asarray(re, dtype=float))
    im = normalize_im(np.atleast_1d(np.asarray(im, dtype=float)))

    K = required_branches(tp.t, re)

    if K > tp.k_max_cap:
        raise TruncationError("Need {} branches for Re z up to {}, cap is {}".format(
            K, np.max(np.abs(re)), tp.k_max_cap,
        ), integral_tail_bound(tp.t, float(np.max(im)), tp.k_max_cap), k_used=tp.k_max_cap)

    ks = np.arange(-K, K + 1)
    weights, _, _ = _direct_weights(tp.t, re, im, ks)
    direct = weights.sum(axis=1)

    right, left, remainder = _tails(tp.t, re, im, K, tp.tail_tol)
    norm = TWO_PI ** -tp.t
    values = direct + norm * (right[:, 0] + left[:, 0])
    bounds = norm * remainder[:, 0]

    scale = tp.scale(eta)

    return values * scale, bounds * scale, K


def transfer_one(tp, p, z):
    """
    ℒ_{t,η}1(z) with every branch accounted for: the |k| ≤ k_used terms are
    summed directly and the rest through the zeta series. ``tail_bound``
    bounds the error of the whole evaluation.
    """

    if z.re == 0 and z.im == 0:
        logger.warning("Evaluating the transfer operator at 0; the k=0 term is skipped")

    values, bounds, K = transfer_ones(tp, p, [z.re], [z.im])
    value, bound = float(values[0]), float(bounds[0])

    if not bound <= tp.tail_tol * value:
        raise TruncationError("Tail bound {} exceeds {} of {}".format(
            bound, tp.tail_tol, value), bound, tp.tail_tol * value, K)

    return value, bound, K


class BranchExpansion(object):
    """
    Atoms w_k produced by pulling atoms (z_j, m_j) back through F_η.

    Branches |k| ≤ K are emitted individually. Beyond K, the branches of
    each side are grouped into doubling blocks [k1, 2k1 - 1], each emitted
    as a single atom at k ≈ sqrt(k1·k2) carrying the exact block mass. The
    remaining tail goes into one far atom per side. ``lumped`` marks these
    grouped atoms.
    """

    def __init__(self, re, im, weights, source, branch, lumped, remainder, pruned):
        self.re = re
        self.im = im
        self.weights = weights
        self.source = source
        self.branch = branch
        self.lumped = lumped
        self.remainder = remainder
        self.pruned = pruned

    def __len__(self):
        return len(self.weights)

    def __repr__(self):
        return '<BranchExpansion {} atoms, mass {:.6g}>'.format(len(self), self.mass)

    @property
    def mass(self):
        return float(np.sum(self.weights))

    @property
    def lumped_mass(self):
        return float(np.sum(self.weights[self.lumped]))

    @property
    def error_budget(self):
        return self.remainder + self.pruned


def _preimage_coordinates(eta, re, ks, y):
    modulus = np.hypot(re[:, None], y)

    with np.errstate(divide='ignore'):
        w_re = np.log(modulus) - math.log(eta)

    w_im = normalize_im(np.arctan2(y, np.broadcast_to(re[:, None], y.shape)))

    return w_re, w_im


def expand_branches(tp, p, re, im, masses=None, prune=None):
    eta = getattr(p, 'eta', p)
    config = Config()

    re = np.atleast_1d(np.asarray(re, dtype=float))
    im = normalize_im(np.atleast_1d(np.asarray(im, dtype=float)))
    masses = np.ones_like(re) if masses is None else np.asarray(masses, dtype=float)

    K = required_branches(tp.t, re)

    if K > tp.k_max_cap:
        raise TruncationError("Need {} branches, cap is {}".format(K, tp.k_max_cap),
            integral_tail_bound(tp.t, float(np.max(im)), tp.k_max_cap), k_used=tp.k_max_cap)

    n_atoms = len(re)
    scale = tp.scale(eta)

    # Individual branches
    ks = np.arange(-K, K + 1)
    direct, _, y = _direct_weights(tp.t, re, im, ks)
    d_re, d_im = _preimage_coordinates(eta, re, ks, np.where(direct > 0, y, 1.0))

    # Doubling blocks [K + 1, 2K + 1], [2K + 2, 4K + 3], ...
    starts = (K + 1) * 2 ** np.arange(config.branch_doublings + 1, dtype=float)
    right, left, remainder = _tails(tp.t, re, im, K, tp.tail_tol, starts)
    norm = TWO_PI ** -tp.t

    block_right = norm * np.concatenate([right[:, :-1] - right[:, 1:], right[:, -1:]], axis=1)
    block_left = norm * np.concatenate([left[:, :-1] - left[:, 1:], left[:, -1:]], axis=1)

    reps = np.sqrt(starts[:-1] * (2 * starts[:-1] - 1))
    reps = np.append(reps, 2 * starts[-1])

    b_re_r, b_im_r = _preimage_coordinates(eta, re, reps, im[:, None] + TWO_PI * reps[None, :])
    b_re_l, b_im_l = _preimage_coordinates(eta, re, -reps, im[:, None] - TWO_PI * reps[None, :])

    w_re = np.concatenate([d_re, b_re_l, b_re_r], axis=1)
    w_im = np.concatenate([d_im, b_im_l, b_im_r], axis=1)
    weights = np.concatenate([direct, block_left, block_right], axis=1)
    weights = np.maximum(weights, 0.0) * masses[:, None] * scale
    branch = np.concatenate([ks, -reps, reps])
    lumped = np.concatenate([
        np.zeros(len(ks), dtype=bool),
        np.ones(2 * len(reps), dtype=bool),
    ])

    series_error = float(np.sum(masses * norm * remainder[:, 0])) * scale

    # Flatten in (atom, branch) order
    source = np.repeat(np.arange(n_atoms), weights.shape[1])
    branch = np.tile(branch, n_atoms)
    lumped = np.tile(lumped, n_atoms)
    w_re, w_im, weights = w_re.ravel(), w_im.ravel(), weights.ravel()

    total = float(np.sum(weights))
    if prune is None:
        prune = config.prune_fraction
    keep = weights > prune * total
    pruned = float(np.sum(weights[~keep]))

    logger.debug("Expanded %d atoms into %d branches (K=%d), pruned mass %.3g, "
        "series error %.3g", n_atoms, int(keep.sum()), K, pruned, series_error)

    return BranchExpansion(
        w_re[keep], w_im[keep], weights[keep], source[keep], branch[keep],
        lumped[keep], series_error, pruned,
    )


def transfer_apply(tp, p, g, z, sup_norm=None):
    """
    ℒ_{t,η}g(z) for a vectorized function g(re, im). Far branches are
    evaluated at their block representatives; with ``sup_norm`` given, the
    result is checked to stay within sup_norm·ℒ1(z).
    """

    expansion = expand_branches(tp, p, [z.re], [z.im], prune=0.0)
    values = np.asarray(g(expansion.re, expansion.im), dtype=float)
    result = float(np.sum(values * expansion.weights))

    if sup_norm is not None:
        limit = sup_norm * (expansion.mass + expansion.error_budget)
        if abs(result) > limit * (1 + 1e-12):
            raise DomainError("|g| exceeds the supplied sup norm {}".format(sup_norm))

    return result


def adjoint_push(tp, p, nu_next):
    """
    Unnormalized ℒ*ν_next as (re, im, weights, expansion) and its mass.
    """

    expansion = expand_branches(tp, p, nu_next.re, nu_next.im, nu_next.weights)
    mass = expansion.mass

    if not mass > 0:
        raise AccuracyError("Adjoint push produced no mass", mass, 0.0)

    limit = Config().max_error_fraction * mass

    if expansion.error_budget > limit:
        raise AccuracyError("Error budget {:.3g} exceeds {:.3g} of mass {:.6g}".format(
            expansion.error_budget, Config().max_error_fraction, mass,
        ), expansion.error_budget, limit)

    return expansion, mass


def sandwich_grid(radii, n_angles, offset=0.0):
    """
    Points of modulus close to each radius, spread over n_angles directions.
    The imaginary part is capped at π so that the cylinder modulus tracks
    the radius. ``offset`` (in units of the angular step) shifts every angle,
    offset=0.5 interleaves two grids.
    """

    angles = TWO_PI * (np.arange(n_angles) + offset) / n_angles
    points = []

    for r in radii:
        for phi in angles:
            y = max(-math.pi, min(math.pi, r * math.sin(phi)))
            points.append(CylPoint(r * math.cos(phi), y))

    return points


def empirical_sandwich(tp, grid):
    """
    (d, D): the extreme values of ℒ1(z)·|z|^{t-1} over the grid.
    """

    grid = list(grid)

    if not grid:
        raise DomainError("Empty sandwich grid")

    modulus = np.array([min_modulus(z) for z in grid])

    if np.any(modulus == 0):
        raise DomainError("Sandwich grid must exclude z = 0")

    values, _, _ = transfer_ones(
        tp, 1.0, [z.re for z in grid], [z.im for z in grid],
    )
    products = values * modulus ** (tp.t - 1)

    return float(products.min()), float(products.max())

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
Expected pressure 𝔈P(t) = ∫ log λ_{t,ω} dm(ω) and the Bowen root h with
𝔈P(h) = 0.

All estimators for one driver share a single sampled parameter sequence
(common random numbers), which makes the empirical pressure monotone in t
along that realization so plain bisection applies.
"""

import math
import logging
import collections

import numpy as np
from joblib import Parallel, delayed
from scipy.interpolate import RegularGridInterpolator

from .exc import ConfigError, DomainError, AccuracyError, InconclusiveError
from .config import Config
from .driver import sample_sequence
from .cylinder import TWO_PI, cylinder_distance_array
from .transfer import expand_branches
from .measure import seed_measure, phi_iterate, phi_family, cesaro_mean
from .radial import SingularOrbitTable
from .progress import Progress
from .profiling import profile

METHODS = ('birkhoff_lambda', 'operator_grid')

# Largest share of ℒ1 allowed to come from preimages outside the grid
MAX_LEAK = 0.1

logger = logging.getLogger(__name__)


class PressureEstimate(collections.namedtuple(
    'PressureEstimate', 't value stderr n_steps method lambda_min lambda_max leak',
)):
    __slots__ = ()

    def __new__(cls, t, value, stderr, n_steps, method, lambda_min=None,
                lambda_max=None, leak=None):
        if method not in METHODS:
            raise DomainError("Unknown pressure method {!r}".format(method))
        if not stderr >= 0 or n_steps < 1:
            raise DomainError("Invalid pressure estimate stderr={} n={}".format(
                stderr, n_steps))

        return super().__new__(cls, t, value, stderr, n_steps, method,
            lambda_min, lambda_max, leak)

    def as_dict(self):
        return self._asdict()


class PressureCurve(object):
    def __init__(self, estimates):
        self.estimates = list(estimates)

    def __iter__(self):
        return iter(self.estimates)

    def __len__(self):
        return len(self.estimates)

    @property
    def ts(self):
        return np.array([x.t for x in self.estimates])

    @property
    def values(self):
        return np.array([x.value for x in self.estimates])

    @property
    def stderrs(self):
        return np.array([x.stderr for x in self.estimates])

    def differences(self):
        """
        Adjacent differences with a combined noise bar each.
        """

        values, errors = self.values, self.stderrs

        return np.diff(values), np.hypot(errors[1:], errors[:-1])

    def second_differences(self):
        values, errors = self.values, self.stderrs

        if len(values) < 3:
            return np.zeros(0), np.zeros(0)

        second = values[2:] - 2 * values[1:-1] + values[:-2]
        noise = np.sqrt(errors[2:] ** 2 + 4 * errors[1:-1] ** 2 + errors[:-2] ** 2)

        return second, noise

    def is_decreasing(self, sigmas=2):
        diff, noise = self.differences()
        return bool(np.all(diff < -sigmas * noise))

    def is_convex(self, sigmas=2):
        second, noise = self.second_differences()
        return bool(np.all(second >= -sigmas * noise))


class BowenResult(object):
    """
    ``bracket`` ends where 𝔈P is resolved positive (low end) and negative
    (high end) beyond two standard errors.
    """

    def __init__(self, h, bracket, evaluations, seed):
        self.h = h
        self.bracket = bracket
        self.evaluations = evaluations
        self.seed = seed

    def __repr__(self):
        return '<BowenResult h={:.6f} bracket={}>'.format(self.h, self.bracket)

    def as_dict(self):
        return {
            'h': self.h,
            'bracket': list(self.bracket),
            'evaluations': [x.as_dict() for x in self.evaluations],
            'seed': self.seed,
        }


def batch_means_stderr(values, batches=None):
    values = np.asarray(values, dtype=float)
    batches = min(Config().batches if batches is None else batches, len(values))

    if batches < 2:
        logger.warning("Too few samples (%d) for a batch-means error", len(values))
        return 0.0

    means = np.array([x.mean() for x in np.array_split(values, batches)])

    return float(means.std(ddof=1) / math.sqrt(batches))


def pressure_birkhoff(tp, cfg, n, burn=None, atoms=1000, seq=None):
    """
    Mean of log λ_{t,θ^jω} over the last n of n + burn pull-back steps.
    """

    burn = n // 4 if burn is None else burn

    if not n > burn >= 0:
        raise ConfigError("Need n > burn >= 0, got n={} burn={}".format(n, burn), 'burn')

    total = n + burn
    if seq is None:
        seq = sample_sequence(cfg, total)

    with profile('pressure', 'pressure_birkhoff'):
        nu0 = seed_measure(atoms, seq, total)
        _, lambdas = phi_iterate(tp, seq, nu0, total, seed=cfg.seed)

    lambdas = np.asarray(lambdas[-n:])
    logs = np.log(lambdas)

    estimate = PressureEstimate(
        tp.t,
        float(logs.mean()),
        batch_means_stderr(logs),
        n,
        'birkhoff_lambda',
        float(lambdas.min()),
        float(lambdas.max()),
    )

    logger.debug("Birkhoff pressure at t=%s: %.6g ± %.2g", tp.t, estimate.value, estimate.stderr)

    return estimate


class GridSpec(collections.namedtuple('GridSpec', 'M nx ny')):
    __slots__ = ()

    def __new__(cls, M, nx, ny=None):
        ny = nx if ny is None else ny

        if not M > 0 or nx < 2 or ny < 2:
            raise ConfigError("Invalid operator grid M={} {}x{}".format(M, nx, ny), 'resolution')

        return super().__new__(cls, float(M), int(nx), int(ny))

    def axes(self):
        return np.linspace(-self.M, self.M, self.nx), TWO_PI * np.arange(self.ny) / self.ny


def _periodic_interpolator(re_axis, im_axis, values):
    # Repeat the Im = 0 column at 2π so that interpolation wraps around
    im_ext = np.append(im_axis, TWO_PI)
    values_ext = np.concatenate([values, values[:, :1]], axis=1)

    return RegularGridInterpolator((re_axis, im_ext), values_ext, method='linear')


def _admissible(table, fiber, re, im, M1, r0):
    mask = np.abs(re) <= M1
    row_re, row_im, escaped = table.row(fiber)

    for x, y in zip(row_re[~escaped], row_im[~escaped]):
        mask &= cylinder_distance_array(re, im, x, y) >= r0

    return mask


def pressure_operator_grid(tp, cfg, grid, n, burn=None, M1=None, seq=None):
    """
    Iterate g ↦ ℒ_{t,η_j} g from g ≡ 1 on a grid over Q_M, renormalizing by
    the sup over E (Q_{M1} minus the singular balls); the estimate is the
    mean log normalizer after burn-in.
    """

    config = Config()
    M1 = min(config.M0, grid.M) if M1 is None else M1
    burn = n // 4 if burn is None else burn

    if n < 1:
        raise ConfigError("n must be at least 1", 'n')
    if grid.M < M1:
        raise ConfigError("Grid bound M={} must cover Q_{}".format(grid.M, M1), 'M')

    if seq is None:
        seq = sample_sequence(cfg, n)

    re_axis, im_axis = grid.axes()
    grid_re, grid_im = (x.ravel() for x in np.meshgrid(re_axis, im_axis, indexing='ij'))
    table = SingularOrbitTable(seq, n)

    # Branch structure depends only on η, not on g
    expansions = {}
    g = np.ones((grid.nx, grid.ny))
    log_norms = []
    leak = 0.0

    with profile('pressure', 'pressure_operator_grid'), \
            Progress(n, "Iterating transfer operator") as progress:
        for j in range(n):
            eta = float(seq[j])

            if eta not in expansions:
                expansions[eta] = expand_branches(tp, eta, grid_re, grid_im, prune=0.0)
            expansion = expansions[eta]

            outside = np.abs(expansion.re) > grid.M
            per_point = np.bincount(expansion.source, weights=expansion.weights,
                minlength=len(grid_re))
            leaked = np.bincount(expansion.source, weights=expansion.weights * outside,
                minlength=len(grid_re))
            leak = max(leak, float(np.max(leaked / per_point)))

            if leak > MAX_LEAK:
                raise AccuracyError("Mass leak {:.3g} from outside Q_{} exceeds {}".format(
                    leak, grid.M, MAX_LEAK), leak, MAX_LEAK)

            interpolator = _periodic_interpolator(re_axis, im_axis, g)
            at = np.column_stack([
                np.clip(expansion.re, -grid.M, grid.M),
                np.mod(expansion.im, TWO_PI),
            ])
            image = np.bincount(
                expansion.source,
                weights=expansion.weights * interpolator(at),
                minlength=len(grid_re),
            )

            admissible = _admissible(table, j + 1, grid_re, grid_im, M1, config.r0)
            if not np.any(admissible):
                raise ConfigError("No grid point lies in E; refine the grid", 'resolution')

            norm = float(np.max(image[admissible]))
            log_norms.append(math.log(norm))
            g = (image / norm).reshape(grid.nx, grid.ny)

            progress.step(msg="step {}".format(j))

    logs = np.array(log_norms[burn:])

    return PressureEstimate(
        tp.t,
        float(logs.mean()),
        batch_means_stderr(logs),
        len(logs),
        'operator_grid',
        leak=leak,
    )


def _birkhoff_job(settings, tp, cfg, n, burn, atoms, seq):
    # Worker processes start from the class defaults
    config = Config()
    config.enforce_constraints = False
    for k, v in settings.items():
        setattr(config, k, v)
    config.enforce_constraints = True

    return pressure_birkhoff(tp, cfg, n, burn, atoms, seq)


def pressure_curve(tp_base, cfg, ts, n, burn=None, atoms=1000, jobs=1):
    ts = [float(x) for x in ts]

    if not ts or any(x <= 1 for x in ts):
        raise ConfigError("All t values must exceed 1", 't')
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ConfigError("t values must be strictly increasing", 't')

    burn = n // 4 if burn is None else burn
    seq = sample_sequence(cfg, n + burn)

    if jobs == 1:
        estimates = []
        with Progress(len(ts), "Pressure curve") as progress:
            for t in ts:
                estimates.append(pressure_birkhoff(tp_base.with_t(t), cfg, n, burn, atoms, seq))
                progress.step(msg="t={}".format(t))
    else:
        settings = dict(Config()._singleton)
        estimates = Parallel(n_jobs=jobs)(
            delayed(_birkhoff_job)(settings, tp_base.with_t(t), cfg, n, burn, atoms, seq)
            for t in ts
        )

    return PressureCurve(estimates)


def bowen_solve(tp_base, cfg, tol, t_lo=1.05, t_hi=2.0, n=400, burn=None,
                atoms=1000):
    """
    Bisection for the zero of 𝔈P on [t_lo, t_hi] with common random numbers.

    Both ends of the bracket stay resolved in sign beyond two standard
    errors; a midpoint inside the noise ends the search with
    InconclusiveError.
    """

    burn = n // 4 if burn is None else burn
    seq = sample_sequence(cfg, n + burn)
    evaluations = []

    def evaluate(t):
        estimate = pressure_birkhoff(tp_base.with_t(t), cfg, n, burn, atoms, seq)
        evaluations.append(estimate)
        logger.debug("Bowen: P(%.6f) = %.6g ± %.2g", t, estimate.value, estimate.stderr)
        return estimate

    def positive(x):
        return x.value - 2 * x.stderr > 0

    def negative(x):
        return x.value + 2 * x.stderr < 0

    lo = evaluate(t_lo)
    if not positive(lo):
        t_lo = 1 + (t_lo - 1) / 2
        logger.info("P(%s) not resolved above 0; widening bracket to %s", lo.t, t_lo)
        lo = evaluate(t_lo)
        if not positive(lo):
            raise InconclusiveError("Pressure at t={} is not resolved above 0".format(t_lo),
                evaluations)

    hi = evaluate(t_hi)
    if hi.value - 2 * hi.stderr > 0:
        raise InconclusiveError("Pressure at t={} is resolved above 0".format(t_hi),
            evaluations)

    steps = max(0, int(math.ceil(math.log2((t_hi - t_lo) / tol))))

    with Progress(steps, "Bisecting for the Bowen root") as progress:
        while hi.t - lo.t >= tol:
            mid = evaluate((lo.t + hi.t) / 2)

            if positive(mid):
                lo = mid
            elif negative(mid):
                hi = mid
            else:
                raise InconclusiveError("P({}) = {} ± {} is within the noise; bracket "
                    "[{}, {}] not narrowed below {}".format(mid.t, mid.value, mid.stderr,
                    lo.t, hi.t, tol), evaluations)

            progress.step(msg="[{:.4f}, {:.4f}]".format(lo.t, hi.t))

    if not negative(hi):
        raise InconclusiveError("Pressure at t={} is not resolved below 0".format(hi.t),
            evaluations)

    h = (lo.t + hi.t) / 2

    if not 1 < h < 2:
        raise InconclusiveError("Root {} outside (1, 2)".format(h), evaluations)

    return BowenResult(h, (lo.t, hi.t), evaluations, cfg.seed)


def lyapunov_integrand_mean(eta, measure):
    """
    ∫ log|F'_η| dμ = log η + ∫ Re z dμ.
    """

    return math.log(eta) + float(np.sum(measure.weights * measure.re)) / measure.total


LYAPUNOV_TERMS = 32


def lyapunov_along(seq, family, first, last, terms):
    """
    Mean over fibers m = first..last of ∫ log|F'_{η_m}| dμ_m, where μ_m is
    the Cesàro mean of ``terms`` pushed-forward members of ``family``.
    """

    if first < terms - 1 or last < first or last >= len(family):
        raise DomainError("Cannot average fibers {}..{} with {} Cesàro terms over "
            "{} measures".format(first, last, terms, len(family)))

    values = [
        lyapunov_integrand_mean(float(seq[m]), cesaro_mean(seq, family, m, terms))
        for m in range(first, last + 1)
    ]

    return float(np.mean(values))


def lyapunov_estimate(tp, cfg, n, burn=None, atoms=1000, terms=None):
    """
    The Lyapunov exponent of the Cesàro invariant measures, averaged along
    fibers terms - 1 .. n - 1 of the orbit.
    """

    if n < 1:
        raise DomainError("n must be at least 1")

    burn = n // 4 if burn is None else burn
    terms = max(1, min(n // 2, LYAPUNOV_TERMS)) if terms is None else terms
    total = n + max(burn, 1)
    seq = sample_sequence(cfg, total)

    with profile('pressure', 'lyapunov_estimate'):
        family, _ = phi_family(tp, seq, seed_measure(atoms, seq, total), total, seed=cfg.seed)
        value = lyapunov_along(seq, family, terms - 1, n - 1, terms)

    logger.debug("Lyapunov exponent over fibers %d..%d (%d terms): %.6g",
        terms - 1, n - 1, terms, value)

    if not (math.isfinite(value) and value > 0):
        raise AccuracyError("Lyapunov exponent {} is not finite and positive".format(value),
            value, 0.0)

    return value

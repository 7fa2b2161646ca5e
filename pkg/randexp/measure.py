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
Particle representation of the random measures ν_ω and their normalized
pull-back Φ(ν)_ω = ℒ*_{t,ω}ν_{θω} / ℒ*_{t,ω}ν_{θω}(1).

A FiberMeasure is an immutable set of weighted atoms on Q attached to a
position along a sampled parameter sequence. Iteration runs from the far
end of the sequence back to fiber 0.
"""

import csv
import math
import logging
import collections

import numpy as np
from scipy.stats import qmc

from .exc import ConfigError, DomainError, AccuracyError
from .config import Config
from .driver import make_rng
from .cylinder import (
    TWO_PI, CylPoint, RegionSpec, classify_array, min_modulus, normalize_im,
    cylinder_distance_array,
)
from .dynamics import orbit_of_zero, orbit_arrays
from .transfer import adjoint_push
from .radial import SingularOrbitTable
from .progress import Progress
from .profiling import profile

CSV_COLUMNS = ('re', 'im', 'weight')

# Largest log ratio reported by p_space_check before it is flagged saturated
SATURATION = 700.0

logger = logging.getLogger(__name__)


class FiberMeasure(object):
    def __init__(self, re, im, weights, fiber_index=0, normalized=True):
        re = np.asarray(re, dtype=float)
        im = normalize_im(np.asarray(im, dtype=float))
        weights = np.asarray(weights, dtype=float)

        if not (re.shape == im.shape == weights.shape) or re.ndim != 1:
            raise DomainError("Atom coordinates and weights must be 1-d arrays "
                "of equal length")
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise DomainError("Atoms must have finite coordinates")
        if np.any(~(weights > 0)):
            raise DomainError("Atom weights must be positive")
        if normalized and abs(weights.sum() - 1) > 1e-9:
            raise DomainError("Weights sum to {!r}, expected 1".format(weights.sum()))

        # Canonical order so that results do not depend on atom order
        order = np.lexsort((weights, im, re))

        self.re = re[order]
        self.im = im[order]
        self.weights = weights[order]
        self.fiber_index = fiber_index
        self.normalized = normalized

        for x in (self.re, self.im, self.weights):
            x.setflags(write=False)

    def __len__(self):
        return len(self.weights)

    def __repr__(self):
        return '<FiberMeasure fiber={} {} atoms, mass {:.9g}>'.format(
            self.fiber_index, len(self), self.total,
        )

    def __eq__(self, other):
        return isinstance(other, FiberMeasure) and \
            self.fiber_index == other.fiber_index and \
            np.array_equal(self.re, other.re) and \
            np.array_equal(self.im, other.im) and \
            np.array_equal(self.weights, other.weights)

    @classmethod
    def from_atoms(cls, atoms, fiber_index=0, normalized=True):
        atoms = list(atoms)

        return cls(
            [z.re for z, _ in atoms],
            [z.im for z, _ in atoms],
            [w for _, w in atoms],
            fiber_index,
            normalized,
        )

    @property
    def atoms(self):
        return [
            (CylPoint(x, y), float(w))
            for x, y, w in zip(self.re, self.im, self.weights)
        ]

    @property
    def total(self):
        return float(np.sum(self.weights))

    def normalize(self):
        return FiberMeasure(self.re, self.im, self.weights / self.total, self.fiber_index)

    def region_mass(self, spec):
        return float(np.sum(self.weights[classify_array(self.re, spec)]))

    def ball_mass(self, center, radius):
        distance = cylinder_distance_array(self.re, self.im, center.re, center.im)
        return float(np.sum(self.weights[distance < radius]))


class PhiStepResult(collections.namedtuple(
    'PhiStepResult', 'measure lam error_budget resampled pulled_back',
)):
    """
    ``measure`` is what the next step starts from; ``pulled_back`` is the
    normalized pull-back before resampling, the one that satisfies the
    conformality identity against ν_next up to rounding.
    """

    __slots__ = ()


class InvariantEstimate(collections.namedtuple(
    'InvariantEstimate', 'cesaro invariance_residual fiber',
)):
    __slots__ = ()


##


def singular_balls(etas, fiber, r0):
    """
    Centres of the balls B(F^j_{θ^{-j}ω}(0), r0), j = 0..fiber, seen from
    ``fiber``; escaped orbits are left out.
    """

    re, im, escaped = SingularOrbitTable(etas, fiber).row(fiber)

    return re[~escaped], im[~escaped]


def seed_measure(n_atoms, seq=None, fiber=0, M0=None, r0=None):
    """
    Equal-weight quasi-uniform atoms on Q_{M0} with the singular balls
    removed, attached to ``fiber`` of ``seq``.
    """

    config = Config()
    M0 = config.M0 if M0 is None else M0
    r0 = config.r0 if r0 is None else r0

    if n_atoms < 1:
        raise ConfigError("n_atoms must be at least 1", 'atoms')

    if seq is None:
        centres = (np.zeros(1), np.zeros(1))
    else:
        centres = singular_balls(seq, fiber, r0)

    logger.debug("Seeding %d atoms on Q_%s avoiding %d balls", n_atoms, M0,
        len(centres[0]))

    sampler = qmc.Halton(d=2, scramble=False)
    accepted_re, accepted_im = [], []
    found = 0
    drawn = 0

    while found < n_atoms:
        batch = max(2 * (n_atoms - found), 64)
        sample = sampler.random(batch)
        drawn += batch

        re = -M0 + 2 * M0 * sample[:, 0]
        im = TWO_PI * sample[:, 1]

        keep = np.ones(batch, dtype=bool)
        for x, y in zip(*centres):
            keep &= cylinder_distance_array(re, im, x, y) >= r0

        accepted_re.append(re[keep])
        accepted_im.append(im[keep])
        found += int(keep.sum())

        if found == 0 and drawn >= 100 * n_atoms + 1000:
            raise ConfigError("Q_{} is empty once the singular balls of radius "
                "{} are removed".format(M0, r0), 'r0')

    re = np.concatenate(accepted_re)[:n_atoms]
    im = np.concatenate(accepted_im)[:n_atoms]

    return FiberMeasure(re, im, np.full(n_atoms, 1 / n_atoms), fiber)


def systematic_resample(measure, n, rng):
    """
    Draw n equally spaced positions through the cumulative weights; atoms
    picked more than once are merged. The total mass is kept.
    """

    total = measure.total
    positions = (rng.uniform(0, 1 / n) + np.arange(n) / n) * total
    cumulative = np.cumsum(measure.weights)
    idx = np.minimum(np.searchsorted(cumulative, positions), len(measure) - 1)

    unique, counts = np.unique(idx, return_counts=True)

    if len(unique) < n / 2:
        logger.warning("Resampling fiber %d kept only %d distinct atoms of %d",
            measure.fiber_index, len(unique), n)

    return FiberMeasure(
        measure.re[unique],
        measure.im[unique],
        counts * (total / n),
        measure.fiber_index,
        measure.normalized,
    )


def phi_step(tp, p, nu_next, atom_cap=None, seed=0):
    atom_cap = Config().atom_cap if atom_cap is None else atom_cap

    with profile('measure', 'phi_step'):
        expansion, lam = adjoint_push(tp, p, nu_next)

    fiber = nu_next.fiber_index - 1
    result = FiberMeasure(
        expansion.re,
        expansion.im,
        expansion.weights / lam,
        fiber,
        normalized=False,
    )

    # Renormalize away the rounding of the division above
    pulled_back = FiberMeasure(result.re, result.im, result.weights / result.total, fiber)
    result = pulled_back

    resampled = len(result) > atom_cap
    if resampled:
        result = systematic_resample(result, atom_cap, make_rng(seed, 'resample', fiber))

    logger.debug("Fiber %d: lambda=%.12g atoms=%d budget=%.3g", fiber, lam,
        len(result), expansion.error_budget / lam)

    return PhiStepResult(result, lam, expansion.error_budget / lam, resampled, pulled_back)


def iter_phi(tp, seq, nu0, n, atom_cap=None, seed=0):
    """
    Yield one PhiStepResult per fiber n - 1, n - 2, ..., 0, pulling ν0 (at
    fiber n) back along seq.
    """

    if len(seq) < n:
        raise DomainError("Need {} parameters, got {}".format(n, len(seq)))

    measure = nu0
    if measure.fiber_index != n:
        measure = FiberMeasure(nu0.re, nu0.im, nu0.weights, n)

    lambdas = []

    with Progress(n, "Pulling back measures") as progress:
        for fiber in range(n - 1, -1, -1):
            try:
                step = phi_step(tp, seq[fiber], measure, atom_cap, seed)
            except AccuracyError as exc:
                exc.fiber = fiber
                exc.partial = list(lambdas)
                raise

            lambdas.append(step.lam)
            measure = step.measure
            progress.step(msg="fiber {}".format(fiber))

            yield step


def phi_iterate(tp, seq, nu0, n, atom_cap=None, seed=0):
    """
    Returns ν at fiber 0 and the λ values in the order they were computed
    (fiber n - 1 first, fiber 0 last).
    """

    final = nu0
    lambdas = []

    for step in iter_phi(tp, seq, nu0, n, atom_cap, seed):
        final = step.measure
        lambdas.append(step.lam)

    return final, lambdas


def phi_family(tp, seq, nu0, n, atom_cap=None, seed=0):
    """
    As phi_iterate but returns the whole family [ν_0, ..., ν_n].
    """

    family = [nu0]
    lambdas = []

    for step in iter_phi(tp, seq, nu0, n, atom_cap, seed):
        family.append(step.measure)
        lambdas.append(step.lam)

    return family[::-1], lambdas


##


def _branch_reaching(eta, re, im, center, radius):
    """
    Mask of atoms y whose preimage under F_η in the ball B(center, radius)
    exists, i.e. y ∈ F_η(B).
    """

    reach = eta * math.exp(center.re + radius)
    span = int(reach / TWO_PI) + 2

    if span > 10 ** 5:
        raise DomainError("Test ball at Re={} maps onto too many branches".format(center.re))

    ks = np.arange(-span, span + 1)
    y = im[:, None] + TWO_PI * ks[None, :]
    modulus = np.hypot(re[:, None], y)

    with np.errstate(divide='ignore'):
        w_re = np.log(modulus) - math.log(eta)

    w_im = np.arctan2(y, np.broadcast_to(re[:, None], y.shape))
    distance = cylinder_distance_array(w_re, w_im, center.re, center.im)

    return np.any((distance < radius) & (modulus > 0), axis=1)


def conformality_residual(tp, p, nu, nu_next, lam, test_sets, floor=1e-300):
    """
    Largest relative defect of ν_next(F(A)) = λ ∫_A |F'|^t dν over the test
    balls A = (centre, radius); with the etal_factor convention the
    derivative is measured relative to η.
    """

    eta = getattr(p, 'eta', p)
    worst = 0.0

    for center, radius in test_sets:
        if not 0 < radius < math.pi:
            raise DomainError("Ball of radius {} around {} is not an injectivity "
                "domain of F (radius must be < π)".format(radius, center))

        lhs = float(np.sum(nu_next.weights[
            _branch_reaching(eta, nu_next.re, nu_next.im, center, radius)
        ]))

        inside = cylinder_distance_array(nu.re, nu.im, center.re, center.im) < radius
        derivative = eta * np.exp(nu.re[inside])
        if tp.convention == 'etal_factor':
            derivative = derivative / eta

        rhs = lam * float(np.sum(nu.weights[inside] * derivative ** tp.t))

        if lhs == 0 and rhs == 0:
            continue

        worst = max(worst, abs(lhs - rhs) / max(lhs, floor))

    return worst


def ball_sets(centres, radius):
    return [(CylPoint(x, y), radius) for x, y in centres]


##


class PSpaceReport(object):
    def __init__(self, cond_2_1, q_mass_min, cond_3_1, W_n, radii, entries,
                 constants, saturated, sandwich_side='outer'):
        self.cond_2_1 = cond_2_1
        self.q_mass_min = q_mass_min
        self.cond_3_1 = cond_3_1
        self.W_n = W_n
        self.radii = radii
        self.entries = entries
        self.constants = constants
        self.saturated = saturated
        self.sandwich_side = sandwich_side

    def __repr__(self):
        return '<PSpaceReport cond_2_1={} cond_3_1={:.3g} W_n={}>'.format(
            self.cond_2_1, self.cond_3_1, self.W_n,
        )

    def as_dict(self):
        return {
            'cond_2_1': self.cond_2_1,
            'q_mass_min': self.q_mass_min,
            'cond_3_1': self.cond_3_1,
            'W_n': {str(k): v for k, v in sorted(self.W_n.items())},
            'radii': self.radii,
            'entries': self.entries,
            'constants': self.constants.as_dict(),
            'saturated': self.saturated,
            'sandwich_side': self.sandwich_side,
        }


def _log_modulus(points, idx):
    value = min_modulus(points[idx])
    return math.log(value) if value > 0 else -math.inf


def p_space_check(tp, constants, family, seq, n_max, M_grid):
    """
    Numerical audit of the P-space conditions along ``family`` (ν_j at
    fiber j). Ratios are observed/allowed; at most 1 means satisfied.
    Inverse-branch sets are replaced by their outer Koebe ball.
    """

    t = tp.t
    M0 = constants.M0
    q_masses = [nu.region_mass(RegionSpec(M0, 'Q_M')) for nu in family]

    cond_3_1 = 0.0
    for nu in family:
        for M in M_grid:
            allowed = constants.c_M0 * math.exp((M / 2) * (1 - t))
            cond_3_1 = max(cond_3_1, nu.region_mass(RegionSpec(M, 'Y_M_plus')) / allowed)

    depth = min(len(seq), len(family) + n_max)
    record = orbit_of_zero(seq, depth)
    points = record.points
    usable = len(points) - 1
    if record.escaped_at is not None:
        usable = min(usable, record.escaped_at - 1)
        logger.warning("Orbit of 0 escaped at %d; P-space audit limited to it",
            record.escaped_at)

    log_KC = math.log(constants.K * constants.C_M0)
    log_b_const = math.log(constants.K * constants.r0 / TWO_PI) + \
        math.log(constants.c_M0) + math.log(constants.C_M0)

    W_n = {}
    entries = []
    saturated = False

    for n in range(1, n_max + 1):
        worst = None

        for j, nu in enumerate(family):
            if j + n + 1 > usable:
                break

            log_a = n * log_KC - t * sum(_log_modulus(points, j + i) for i in range(1, n + 1))
            size = min_modulus(points[j + n + 1])
            log_b = log_b_const + (1 - t) * math.log(size) - (t - 1) / 4 * size \
                if size > 0 else math.inf

            log_radius = math.log(constants.K * constants.r0) - \
                (record.log_deriv[j + n] - record.log_deriv[j])
            mass = nu.ball_mass(points[j], math.exp(log_radius)) if log_radius > -700 else 0.0

            if mass == 0 or math.isinf(log_a) or math.isinf(log_b):
                ratio = 0.0
            else:
                log_ratio = math.log(mass) - log_a - log_b
                if log_ratio > SATURATION:
                    saturated = True
                    logger.warning("P-space ratio saturated at j=%d n=%d", j, n)
                ratio = math.exp(min(log_ratio, SATURATION))

            entries.append({
                'j': j,
                'n': n,
                'log_a': log_a,
                'log_b': log_b,
                'mass': mass,
                'ratio': ratio,
            })
            worst = ratio if worst is None else max(worst, ratio)

        if worst is not None:
            W_n[n] = worst

    radii = []
    log_product = 0.0
    for n in range(1, min(n_max, usable) + 1):
        log_product += _log_modulus(points, n)
        radii.append(0.25 * constants.r0 * math.exp(-log_product))

    return PSpaceReport(
        cond_2_1=min(q_masses) >= 0.5,
        q_mass_min=min(q_masses),
        cond_3_1=cond_3_1,
        W_n=W_n,
        radii=radii,
        entries=entries,
        constants=constants,
        saturated=saturated,
    )


##


def push_forward(measure, etas):
    """
    F^k_* of a measure, k = len(etas); atoms beyond the overflow threshold
    are frozen where they escaped.
    """

    re, im, _, _ = orbit_arrays(etas, measure.re, measure.im, len(etas))

    return re, im, measure.weights


def cesaro_mean(seq, family, m, n):
    """
    μ_m = (1/n) Σ_{k<n} F^k_* ν_{m-k}.
    """

    if m - n + 1 < 0 or m >= len(family):
        raise DomainError("Cesàro mean at fiber {} over {} terms needs fibers "
            "{}..{}".format(m, n, m - n + 1, m))

    parts = [push_forward(family[m - k], seq[m - k:m]) for k in range(n)]

    re = np.concatenate([x[0] for x in parts])
    im = np.concatenate([x[1] for x in parts])
    weights = np.concatenate([x[2] for x in parts]) / n

    return FiberMeasure(re, im, weights / weights.sum(), m)


def partition_masses(re, im, weights, M1, depth):
    """
    Masses of the 2^depth × 2^depth dyadic cells of Q_{M1} followed by the
    two cells Re > M1 and Re < -M1.
    """

    cells = 2 ** depth
    inside = np.abs(re) <= M1

    grid, _, _ = np.histogram2d(
        re[inside], im[inside],
        bins=cells,
        range=[[-M1, M1], [0, TWO_PI]],
        weights=weights[inside],
    )

    return np.concatenate([
        grid.ravel(),
        [np.sum(weights[re > M1]), np.sum(weights[re < -M1])],
    ])


def cesaro_invariant(tp, seq, family, n, fiber=None, M1=None, depth=4):
    """
    The Cesàro substitute μ for the invariant measure at ``fiber`` (default
    n - 1) and the L1 distance between F_*μ_fiber and μ_{fiber+1} on a
    dyadic partition of Q_{M1}.
    """

    M1 = Config().M0 if M1 is None else M1
    m = n - 1 if fiber is None else fiber

    if n < 1:
        raise DomainError("Need at least one Cesàro term")
    if m + 1 >= len(family) or m + 1 > len(seq):
        raise DomainError("Need fibers up to {} for the invariance residual".format(m + 1))

    with profile('measure', 'cesaro_invariant'):
        mu = cesaro_mean(seq, family, m, n)
        mu_next = cesaro_mean(seq, family, m + 1, n)

        pushed = partition_masses(*push_forward(mu, seq[m:m + 1]), M1, depth)
        target = partition_masses(mu_next.re, mu_next.im, mu_next.weights, M1, depth)

    residual = float(np.sum(np.abs(pushed - target)))

    logger.debug("Cesàro mean over %d terms at fiber %d (t=%s): residual %.4g",
        n, m, tp.t, residual)

    return InvariantEstimate(mu, residual, m)


##


def measure_to_csv(measure, fileobj):
    writer = csv.writer(fileobj, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)

    for x, y, w in zip(measure.re, measure.im, measure.weights):
        writer.writerow((repr(float(x)), repr(float(y)), repr(float(w))))


def measure_from_csv(fileobj, fiber_index=0):
    reader = csv.reader(fileobj)
    header = next(reader, None)

    if tuple(header or ()) != CSV_COLUMNS:
        raise DomainError("Expected CSV columns {}, got {}".format(
            ','.join(CSV_COLUMNS), header))

    rows = [tuple(float(x) for x in row) for row in reader if row]

    if not rows:
        raise DomainError("Measure CSV has no atoms")

    re, im, weights = (np.array(x) for x in zip(*rows))

    return FiberMeasure(re, im, weights, fiber_index)

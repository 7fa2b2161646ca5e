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
Parameter sequences η(ω), η(θω), η(θ²ω), ... for the random system.

Every sequence is a pure function of its DriverConfig: the same seed yields
the same ω-orbit, which lets estimators at different t share one realization.
"""

import zlib
import math
import logging

import numpy as np

from .exc import ConfigError, BoundsError
from .dynamics import INV_E

DRIVER_KINDS = ('constant', 'iid_uniform', 'markov', 'rotation')

logger = logging.getLogger(__name__)


def make_rng(seed, *names):
    """
    A numpy Generator on a Philox (counter-based) stream identified by
    ``seed`` and a path of names, e.g. make_rng(7, 'driver', 'iid_uniform').
    """

    key = tuple(zlib.crc32(str(x).encode('utf-8')) for x in names)

    return np.random.Generator(np.random.Philox(
        np.random.SeedSequence(int(seed) & (2 ** 64 - 1), spawn_key=key),
    ))


class DriverConfig(object):
    def __init__(self, kind, A, B, seed=0, transition=None, values=None,
                 alpha=None, phase=0.0):
        self.kind = kind
        self.A = float(A)
        self.B = float(B)
        self.seed = int(seed)
        self.transition = None if transition is None else np.array(transition, dtype=float)
        self.values = None if values is None else np.array(values, dtype=float)
        self.alpha = None if alpha is None else float(alpha)
        self.phase = float(phase)

        self.check()

    def __repr__(self):
        return '<DriverConfig {} [{}, {}] seed={}>'.format(
            self.kind, self.A, self.B, self.seed,
        )

    def __eq__(self, other):
        return isinstance(other, DriverConfig) and self.as_dict() == other.as_dict()

    def check(self):
        if self.kind not in DRIVER_KINDS:
            raise ConfigError("Unknown driver {!r}; expected one of {}".format(
                self.kind, ', '.join(DRIVER_KINDS)), 'driver')

        if not self.A > INV_E:
            raise ConfigError("A ({}) must exceed 1/e".format(self.A), 'A')
        if not self.A <= self.B:
            raise ConfigError("A ({}) cannot exceed B ({})".format(self.A, self.B), 'B')

        if self.kind == 'markov':
            self._check_markov()

        if self.kind == 'rotation':
            if self.alpha is None or not 0 < self.alpha < 1:
                raise ConfigError("rotation needs alpha in (0, 1), got "
                    "{}".format(self.alpha), 'alpha')

    def _check_markov(self):
        if self.transition is None or self.values is None:
            raise ConfigError("markov driver needs a transition matrix and "
                "state values", 'transition')

        n = len(self.values)

        if self.transition.shape != (n, n):
            raise ConfigError("transition matrix shape {} does not match {} "
                "states".format(self.transition.shape, n), 'transition')
        if np.any(self.transition < 0):
            raise ConfigError("transition probabilities must be non-negative",
                'transition')
        if np.any(np.abs(self.transition.sum(axis=1) - 1) > 1e-12):
            raise ConfigError("transition rows must sum to 1", 'transition')
        if np.any(self.values < self.A) or np.any(self.values > self.B):
            raise ConfigError("markov values must lie in [A, B]", 'values')

    def as_dict(self):
        result = {
            'driver': self.kind,
            'A': self.A,
            'B': self.B,
            'seed': self.seed,
        }

        if self.kind == 'markov':
            result['transition'] = self.transition.tolist()
            result['values'] = self.values.tolist()
        if self.kind == 'rotation':
            result['alpha'] = self.alpha
            result['phase'] = self.phase

        return result

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                data['driver'],
                data['A'],
                data['B'],
                seed=data.get('seed', 0),
                transition=data.get('transition'),
                values=data.get('values'),
                alpha=data.get('alpha'),
                phase=data.get('phase', 0.0),
            )
        except KeyError as exc:
            raise ConfigError("Missing driver key {}".format(exc.args[0]), exc.args[0])


class ParamSequence(object):
    def __init__(self, etas, config, start=0):
        self.etas = np.asarray(etas, dtype=float)
        self.etas.setflags(write=False)
        self.config = config
        self.start = start

        if len(self.etas) and (self.etas.min() < config.A or self.etas.max() > config.B):
            raise AssertionError("Driver emitted values outside [{}, {}]".format(
                config.A, config.B,
            ))

    def __len__(self):
        return len(self.etas)

    def __getitem__(self, idx):
        return self.etas[idx]

    def __iter__(self):
        return iter(self.etas)

    def __repr__(self):
        return '<ParamSequence {} values from {} at {}>'.format(
            len(self), self.config, self.start,
        )


def sample_sequence(cfg, n, start=0):
    if n < 0 or start < 0:
        raise ConfigError("Sequence length and start must be non-negative", 'n')

    cfg.check()
    total = start + n

    if cfg.kind == 'constant':
        etas = np.full(total, cfg.A)
    elif cfg.kind == 'iid_uniform':
        rng = make_rng(cfg.seed, 'driver', 'iid_uniform')
        etas = rng.uniform(cfg.A, cfg.B, size=total)
    elif cfg.kind == 'rotation':
        j = np.arange(total, dtype=float)
        etas = cfg.A + (cfg.B - cfg.A) * np.mod(cfg.phase + j * cfg.alpha, 1.0)
    else:
        etas = _markov_chain(cfg, total)

    return ParamSequence(etas[start:], cfg, start)


def _markov_chain(cfg, total):
    rng = make_rng(cfg.seed, 'driver', 'markov')
    n_states = len(cfg.values)
    cumulative = np.cumsum(cfg.transition, axis=1)
    uniforms = rng.random(total)

    states = np.empty(total, dtype=int)
    state = int(rng.integers(n_states))

    for i in range(total):
        states[i] = state
        state = min(int(np.searchsorted(cumulative[state], uniforms[i], side='right')), n_states - 1)

    return cfg.values[states]


def shift(seq, k):
    if k < 0 or k > len(seq):
        raise BoundsError("Cannot shift a sequence of {} values by {}".format(len(seq), k))

    return ParamSequence(seq.etas[k:], seq.config, seq.start + k)


def golden_alpha():
    return (math.sqrt(5) - 1) / 2

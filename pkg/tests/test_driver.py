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

import pytest

import numpy as np
import scipy.linalg

from randexp.exc import ConfigError, BoundsError
from randexp.driver import (
    DriverConfig, make_rng, sample_sequence, shift, golden_alpha,
)


def test_constant():
    seq = sample_sequence(DriverConfig('constant', 1.2, 1.2), 5)

    assert len(seq) == 5
    assert list(seq) == [1.2] * 5

def test_iid_uniform_is_reproducible():
    cfg = DriverConfig('iid_uniform', 1.0, 2.0, seed=7)

    a = sample_sequence(cfg, 100)
    b = sample_sequence(cfg, 100)

    assert np.array_equal(a.etas, b.etas)
    assert np.all((a.etas >= 1.0) & (a.etas <= 2.0))
    assert len(set(a.etas)) > 90

def test_iid_uniform_depends_on_seed():
    a = sample_sequence(DriverConfig('iid_uniform', 1.0, 2.0, seed=1), 10)
    b = sample_sequence(DriverConfig('iid_uniform', 1.0, 2.0, seed=2), 10)

    assert not np.array_equal(a.etas, b.etas)

def test_start_offsets_the_same_realization():
    cfg = DriverConfig('iid_uniform', 1.0, 2.0, seed=3)

    full = sample_sequence(cfg, 20)
    tail = sample_sequence(cfg, 15, start=5)

    assert np.array_equal(full.etas[5:], tail.etas)
    assert tail.start == 5

def test_rotation():
    alpha = golden_alpha()
    seq = sample_sequence(DriverConfig('rotation', 1.0, 3.0, alpha=alpha, phase=0.25), 4)

    for j, eta in enumerate(seq):
        assert eta == pytest.approx(1.0 + 2.0 * ((0.25 + j * alpha) % 1))

def test_markov_visits_only_its_states():
    cfg = DriverConfig(
        'markov', 1.0, 2.0, seed=5,
        transition=[[0.9, 0.1], [0.5, 0.5]],
        values=[1.0, 2.0],
    )
    seq = sample_sequence(cfg, 200)

    assert set(seq.etas) == {1.0, 2.0}

def test_markov_absorbing_state():
    cfg = DriverConfig(
        'markov', 1.0, 2.0,
        transition=[[0.0, 1.0], [0.0, 1.0]],
        values=[1.0, 2.0],
    )
    seq = sample_sequence(cfg, 10)

    assert np.all(seq.etas[1:] == 2.0)

def test_markov_stationary_frequencies():
    transition = np.array([[0.9, 0.1], [0.3, 0.7]])
    cfg = DriverConfig('markov', 1.0, 2.0, seed=3, transition=transition.tolist(),
        values=[1.0, 2.0])
    seq = sample_sequence(cfg, 20000)

    vals, vecs = scipy.linalg.eig(transition, left=True, right=False)
    stationary = np.real(vecs[:, np.argmin(np.abs(vals - 1))])
    stationary /= stationary.sum()

    assert np.mean(seq.etas == 2.0) == pytest.approx(stationary[1], abs=0.02)

@pytest.mark.parametrize('kwargs,key', (
    ({'kind': 'brownian', 'A': 1, 'B': 2}, 'driver'),
    ({'kind': 'constant', 'A': 0.3, 'B': 2}, 'A'),
    ({'kind': 'constant', 'A': 2, 'B': 1}, 'B'),
    ({'kind': 'rotation', 'A': 1, 'B': 2}, 'alpha'),
    ({'kind': 'markov', 'A': 1, 'B': 2}, 'transition'),
    ({'kind': 'markov', 'A': 1, 'B': 2, 'transition': [[0.5, 0.6], [0, 1]], 'values': [1, 2]}, 'transition'),
    ({'kind': 'markov', 'A': 1, 'B': 2, 'transition': [[1, 0], [0, 1]], 'values': [1, 3]}, 'values'),
))
def test_invalid_driver(kwargs, key):
    with pytest.raises(ConfigError) as exc:
        DriverConfig(**kwargs)

    assert exc.value.key == key

def test_as_dict_from_dict():
    cfg = DriverConfig('rotation', 1.0, 2.0, seed=4, alpha=0.3, phase=0.1)

    assert DriverConfig.from_dict(cfg.as_dict()) == cfg

def test_from_dict_missing_key():
    with pytest.raises(ConfigError) as exc:
        DriverConfig.from_dict({'driver': 'constant', 'A': 1.0})

    assert exc.value.key == 'B'

def test_shift():
    seq = sample_sequence(DriverConfig('iid_uniform', 1.0, 2.0), 10)
    shifted = shift(seq, 3)

    assert shifted[0] == seq[3]
    assert len(shifted) == 7
    assert shifted.start == 3

    with pytest.raises(BoundsError):
        shift(seq, 11)

def test_sequence_is_read_only():
    seq = sample_sequence(DriverConfig('constant', 1.0, 1.0), 3)

    with pytest.raises(ValueError):
        seq.etas[0] = 2.0

def test_named_streams_differ():
    a = make_rng(1, 'driver').random(4)
    b = make_rng(1, 'resample').random(4)

    assert not np.array_equal(a, b)
    assert np.array_equal(a, make_rng(1, 'driver').random(4))

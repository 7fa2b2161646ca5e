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
import logging
import collections

from .exc import ConfigError

logger = logging.getLogger(__name__)


class Config(object):
    # Largest real part we exponentiate; exp(700) is still a finite double.
    overflow_re = 700.0
    tail_tol = 1e-10
    k_max_cap = 10 ** 6
    # Preimage branches enumerated one by one on each side of k = 0; further
    # branches are merged into geometric blocks.
    branch_direct = 16
    branch_doublings = 48
    prune_fraction = 1e-14
    max_error_fraction = 1e-6
    atom_cap = 20000
    M0 = 10.0
    r0 = 0.02
    batches = 8
    enforce_constraints = True

    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton

    def __setattr__(self, k, v):
        super(Config, self).__setattr__(k, v)

        if k != '__dict__' and self.enforce_constraints:
            self.check_constraints()

    def reset(self):
        self._singleton.clear()

    def as_dict(self):
        return {
            k: getattr(self, k)
            for k in dir(Config)
            if not k.startswith('_') and not callable(getattr(Config, k))
        }

    def check_constraints(self):
        # Imported here as transfer.py itself reads Config()
        from .transfer import KOEBE_K

        if not 0 < self.r0 < 1 / (2 * KOEBE_K):
            raise ConfigError("r0 ({0.r0}) must lie in (0, 1/(2K)) with "
                "K={1}".format(self, KOEBE_K), 'r0')

        if self.tail_tol <= 0:
            raise ConfigError("tail_tol ({0.tail_tol}) must be "
                "positive".format(self), 'tail_tol')

        if self.branch_direct < 1 or self.branch_doublings < 1:
            raise ConfigError("branch_direct ({0.branch_direct}) and "
                "branch_doublings ({0.branch_doublings}) must be at least "
                "1".format(self), 'branch_direct')

        if self.k_max_cap < self.branch_direct:
            raise ConfigError("k_max_cap ({0.k_max_cap}) cannot be smaller "
                "than branch_direct ({0.branch_direct})".format(self),
                'k_max_cap')

        if self.atom_cap < 1 or self.M0 <= 0 or self.batches < 2:
            raise ConfigError("atom_cap, M0 must be positive and batches at "
                "least 2", 'atom_cap')


##


def parse_range(value):
    """
    "1.2:2.0:0.1" → [1.2, 1.3, ..., 2.0] (end point included); a plain
    number gives a single value.
    """

    parts = str(value).split(':')

    try:
        numbers = [float(x) for x in parts]
    except ValueError:
        raise ConfigError("Cannot parse {!r} as a number or start:stop:step "
            "range".format(value), 't')

    if len(numbers) == 1:
        return numbers
    if len(numbers) != 3 or numbers[2] <= 0 or numbers[1] < numbers[0]:
        raise ConfigError("Invalid range {!r}".format(value), 't')

    start, stop, step = numbers
    count = int(round((stop - start) / step)) + 1

    return [round(start + i * step, 12) for i in range(count)]


def parse_matrix(value):
    """
    "0.9,0.1;0.2,0.8" → [[0.9, 0.1], [0.2, 0.8]]
    """

    return [parse_list(row) for row in str(value).split(';') if row.strip()]


def parse_list(value):
    return [float(x) for x in str(value).split(',') if x.strip()]


class Key(collections.namedtuple('Key', 'parse default help')):
    __slots__ = ()


REQUIRED = object()

KEYS = collections.OrderedDict((
    # Driver
    ('driver', Key(str, 'constant', "constant, iid_uniform, markov or rotation")),
    ('A', Key(float, REQUIRED, "lower bound of η")),
    ('B', Key(float, REQUIRED, "upper bound of η")),
    ('seed', Key(int, 0, "master seed")),
    ('transition', Key(parse_matrix, None, "markov transition matrix, rows split by ';'")),
    ('values', Key(parse_list, None, "markov state values, comma separated")),
    ('alpha', Key(float, None, "rotation number")),
    ('phase', Key(float, 0.0, "rotation phase")),
    # Transfer operator
    ('t', Key(parse_range, [1.5], "t value or start:stop:step range")),
    ('convention', Key(str, 'image_modulus', "image_modulus or etal_factor")),
    ('tail_tol', Key(float, None, "relative tail tolerance")),
    ('k_max_cap', Key(int, None, "largest branch index")),
    # Estimators
    ('n', Key(int, 400, "steps / iterations")),
    ('burn', Key(int, None, "burn-in steps (default n/4)")),
    ('atoms', Key(int, 1000, "atoms in seed measures")),
    ('method', Key(str, 'birkhoff_lambda', "birkhoff_lambda or operator_grid")),
    ('resolution', Key(int, 64, "grid points per axis")),
    ('M', Key(float, 10.0, "half-width of the grid on Q_M")),
    ('tol', Key(float, 0.02, "bracket width for the Bowen root")),
    ('t_lo', Key(float, 1.05, "lower end of the Bowen bracket")),
    ('t_hi', Key(float, 2.0, "upper end of the Bowen bracket")),
    ('jobs', Key(int, 1, "parallel t evaluations")),
    # Radial scans and rasters
    ('delta', Key(float, 0.1, "dichotomy radius")),
    ('n_max', Key(int, 40, "iterations per raster pixel")),
    ('threshold', Key(float, 1e6, "derivative threshold of the raster")),
    ('re_min', Key(float, -2.0, "raster window")),
    ('re_max', Key(float, 2.0, "raster window")),
    ('im_min', Key(float, 0.0, "raster window")),
    ('im_max', Key(float, 2 * math.pi, "raster window")),
    ('width', Key(int, 256, "raster width in pixels")),
    ('height', Key(int, 256, "raster height in pixels")),
    # Measure diagnostics
    ('input', Key(str, None, "seed measure CSV (re,im,weight) instead of Q_M0 atoms")),
    ('w_max', Key(int, 5, "largest n audited by the W_n condition")),
    ('balls', Key(int, 20, "test balls for the conformality residual")),
    ('ball_radius', Key(float, 0.2, "radius of the test balls")),
    # Numerics shared through Config
    ('M0', Key(float, None, "bound of the seed region Q_M0")),
    ('r0', Key(float, None, "singular ball radius")),
    ('atom_cap', Key(int, None, "atoms kept after resampling")),
    ('prune_fraction', Key(float, None, "relative weight below which atoms are dropped")),
    ('max_error_fraction', Key(float, None, "allowed error budget per step")),
    ('batches', Key(int, None, "batches for batch-means errors")),
))

SHARED = ('tail_tol', 'k_max_cap', 'M0', 'r0', 'atom_cap', 'prune_fraction',
    'max_error_fraction', 'batches')


class RunConfig(object):
    """
    Resolved run settings: defaults, then a flat ``key = value`` file, then
    command-line flags.
    """

    def __init__(self, values):
        self.values = values

    def __getitem__(self, key):
        return self.values[key]

    def __getattr__(self, key):
        try:
            return self.__dict__['values'][key]
        except KeyError:
            raise AttributeError(key)

    @staticmethod
    def parse_value(key, raw):
        if key not in KEYS:
            raise ConfigError("Unknown configuration key {!r}".format(key), key)

        try:
            return KEYS[key].parse(raw)
        except ConfigError:
            raise
        except (TypeError, ValueError):
            raise ConfigError("Invalid value {!r} for {}".format(raw, key), key)

    @classmethod
    def read_file(cls, fileobj):
        result = {}

        for lineno, line in enumerate(fileobj, 1):
            line = line.split('#', 1)[0].strip()

            if not line:
                continue
            if '=' not in line:
                raise ConfigError("Line {}: expected key = value, got {!r}".format(
                    lineno, line), None)

            key, raw = (x.strip() for x in line.split('=', 1))
            result[key] = cls.parse_value(key, raw)

        return result

    @classmethod
    def resolve(cls, path=None, overrides=None):
        values = {k: v.default for k, v in KEYS.items()}

        if path is not None:
            logger.debug("Reading configuration from %s", path)
            try:
                with open(path) as f:
                    values.update(cls.read_file(f))
            except OSError as exc:
                raise ConfigError("Cannot read {}: {}".format(path, exc.strerror), 'config')

        for k, v in (overrides or {}).items():
            if v is None:
                continue
            values[k] = cls.parse_value(k, v) if isinstance(v, str) else v

        for k, v in values.items():
            if v is REQUIRED:
                raise ConfigError("Missing required setting {}".format(k), k)

        return cls(values)

    def apply(self):
        """
        Push the shared numerical settings into Config().
        """

        config = Config()

        for key in SHARED:
            if self.values[key] is not None:
                setattr(config, key, self.values[key])

    def driver_config(self):
        from .driver import DriverConfig

        return DriverConfig.from_dict({
            k: self.values[k]
            for k in ('driver', 'A', 'B', 'seed', 'transition', 'values', 'alpha', 'phase')
        })

    def transfer_params(self, t=None):
        from .transfer import TransferParams

        return TransferParams(
            self.values['t'][0] if t is None else t,
            self.values['tail_tol'],
            self.values['k_max_cap'],
            self.values['convention'],
        )

    def as_dict(self):
        return {k: v for k, v in sorted(self.values.items())}

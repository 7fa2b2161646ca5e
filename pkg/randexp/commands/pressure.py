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

import logging

from ..exc import ConfigError
from ..driver import sample_sequence
from ..pressure import (
    PressureCurve, GridSpec, pressure_curve, pressure_operator_grid,
)
from ..progress import Progress
from ..presenters.formats import Artifacts

from .utils import Command, TRANSFER_KEYS

logger = logging.getLogger(__name__)


class PressureCommand(Command):
    name = 'pressure'
    help = "Estimate the expected pressure over a range of t"
    KEYS = TRANSFER_KEYS + ('n', 'burn', 'atoms', 'method', 'resolution', 'M', 'jobs')

    def run(self):
        config = self.config
        cfg = config.driver_config()
        tp = config.transfer_params()

        if config.method == 'birkhoff_lambda':
            curve = pressure_curve(tp, cfg, config.t, config.n, config.burn,
                config.atoms, config.jobs)
        elif config.method == 'operator_grid':
            curve = self.operator_grid(tp, cfg)
        else:
            raise ConfigError("Unknown method {!r}".format(config.method), 'method')

        diff, diff_noise = curve.differences()
        second, second_noise = curve.second_differences()

        result = {
            'estimates': [x.as_dict() for x in curve],
            'differences': diff.tolist(),
            'difference_noise': diff_noise.tolist(),
            'second_differences': second.tolist(),
            'second_difference_noise': second_noise.tolist(),
            'decreasing': curve.is_decreasing(),
            'convex': curve.is_convex(),
        }

        return Artifacts(
            self.name,
            self.metadata(result),
            columns=('t', 'value', 'stderr', 'n'),
            rows=[(x.t, x.value, x.stderr, x.n_steps) for x in curve],
            summary=[
                ('estimates', len(curve)),
                ('decreasing', result['decreasing']),
                ('convex', result['convex']),
            ],
        )

    def operator_grid(self, tp, cfg):
        config = self.config
        grid = GridSpec(config.M, config.resolution)
        seq = sample_sequence(cfg, config.n)
        estimates = []

        with Progress(len(config.t), "Operator pressure") as progress:
            for t in config.t:
                estimates.append(pressure_operator_grid(
                    tp.with_t(t), cfg, grid, config.n, config.burn, seq=seq,
                ))
                progress.step(msg="t={}".format(t))

        return PressureCurve(estimates)

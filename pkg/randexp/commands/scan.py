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

from ..radial import ScanGrid, typical_scan
from ..presenters.formats import Artifacts

from .utils import Command


class ScanCommand(Command):
    name = 'scan'
    help = "Check the typical-point dichotomy on a grid over Q_M"
    KEYS = ('n', 'delta', 'M', 'resolution')

    def run(self):
        config = self.config
        grid = ScanGrid(config.M, config.resolution)

        report = typical_scan(config.driver_config(), grid, config.n, config.delta)

        return Artifacts(
            self.name,
            self.metadata(report.as_dict()),
            columns=('re', 'im', 'satisfied', 'witness'),
            rows=report.rows(),
            summary=[
                ('fraction_satisfying', report.fraction_satisfying),
                ('k_n_growth', report.growth),
            ],
        )

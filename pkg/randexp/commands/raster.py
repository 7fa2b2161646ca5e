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

import numpy as np

from ..driver import sample_sequence
from ..radial import Window, expansion_raster
from ..presenters.formats import Artifacts

from .utils import Command


class RasterCommand(Command):
    name = 'raster'
    help = "Render the first time each point expands past a threshold as PGM"
    KEYS = ('n_max', 'threshold', 're_min', 're_max', 'im_min', 'im_max',
        'width', 'height')

    def run(self):
        config = self.config

        window = Window(config.re_min, config.re_max, config.im_min,
            config.im_max, config.width, config.height)
        seq = sample_sequence(config.driver_config(), config.n_max)
        raster = expansion_raster(seq, window, config.n_max, config.threshold)

        counts = np.bincount(raster.indices.ravel(), minlength=config.n_max + 1)

        return Artifacts(
            self.name,
            self.metadata({
                'window': window._asdict(),
                'n_max': config.n_max,
                'threshold': config.threshold,
                'index_counts': counts.tolist(),
            }),
            raster=raster,
            summary=[
                ('pixels', int(raster.indices.size)),
                ('distinct indices', int(np.count_nonzero(counts))),
            ],
        )

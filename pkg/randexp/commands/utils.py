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
import scipy

from .. import VERSION
from ..config import Config, SHARED

DRIVER_KEYS = ('driver', 'A', 'B', 'seed', 'transition', 'values', 'alpha', 'phase')
TRANSFER_KEYS = ('t', 'convention', 'tail_tol', 'k_max_cap')


def versions():
    return {
        'randexp': VERSION,
        'numpy': np.__version__,
        'scipy': scipy.__version__,
    }


class Command(object):
    """
    One subcommand: ``KEYS`` lists the settings it accepts as flags and
    ``run`` returns the Artifacts to write.
    """

    name = None
    help = None
    KEYS = ()

    def __init__(self, config):
        self.config = config

    @classmethod
    def keys(cls):
        return DRIVER_KEYS + cls.KEYS + tuple(
            x for x in SHARED if x not in cls.KEYS
        )

    def run(self):
        raise NotImplementedError()

    def metadata(self, result):
        """
        Everything needed to reproduce the run, and nothing time-dependent.
        """

        return {
            'command': self.name,
            'config': self.config.as_dict(),
            'numerics': Config().as_dict(),
            'seed': self.config.seed,
            'versions': versions(),
            'result': result,
        }

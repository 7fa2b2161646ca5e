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

from ..pressure import bowen_solve
from ..presenters.formats import Artifacts

from .utils import Command, TRANSFER_KEYS


class BowenCommand(Command):
    name = 'bowen'
    help = "Solve the Bowen equation for the zero h of the expected pressure"
    KEYS = TRANSFER_KEYS + ('n', 'burn', 'atoms', 'tol', 't_lo', 't_hi')

    def run(self):
        config = self.config

        result = bowen_solve(
            config.transfer_params(),
            config.driver_config(),
            config.tol,
            config.t_lo,
            config.t_hi,
            config.n,
            config.burn,
            config.atoms,
        )

        return Artifacts(
            self.name,
            self.metadata(result.as_dict()),
            summary=[
                ('h', result.h),
                ('bracket', '[{:.6f}, {:.6f}]'.format(*result.bracket)),
                ('evaluations', len(result.evaluations)),
            ],
        )

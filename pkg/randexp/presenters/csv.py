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

import csv

import numpy as np

from .utils import Presenter


class CSVPresenter(Presenter):
    """
    A header row of column names followed by the data rows. Floats are
    written with repr so that they read back exactly.
    """

    def __init__(self, print_func, columns):
        self.columns = columns

        super().__init__(print_func)

    def start(self, rows):
        writer = csv.writer(self.print_func.output, lineterminator='\n')
        writer.writerow(self.columns)

        for row in rows:
            writer.writerow([self.format(x) for x in row])

    @staticmethod
    def format(value):
        if isinstance(value, (bool, np.bool_, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            return repr(float(value))
        return value

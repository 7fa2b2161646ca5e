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

from .utils import Presenter


class TextPresenter(Presenter):
    PREFIX = '  '

    def start(self, document):
        title, lines = document

        self.print_func(title)
        self.print_func('-' * len(title))

        for key, value in lines:
            self.print_func('{}{}: {}'.format(self.PREFIX, key, self.format(value)))

    @staticmethod
    def format(value):
        if isinstance(value, float):
            return '{:.6g}'.format(value)
        return value

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

import json

from .utils import Presenter

SCHEMA_VERSION = 1


def _default(value):
    # numpy scalars and arrays
    if hasattr(value, 'tolist'):
        return value.tolist()

    raise TypeError("{!r} is not JSON serializable".format(value))


class JSONPresenter(Presenter):
    def start(self, document):
        document = dict(document, schema=SCHEMA_VERSION)

        self.print_func(json.dumps(document, indent=2, sort_keys=True, default=_default))

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
import importlib

from ..exc import ConfigError

logger = logging.getLogger(__name__)


class CommandManager(object):
    COMMANDS = (
        'pressure.PressureCommand',
        'bowen.BowenCommand',
        'scan.ScanCommand',
        'raster.RasterCommand',
        'measure.MeasureCommand',
    )

    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton

        if not self._singleton:
            self.reload()

    def reload(self):
        self.classes = []

        for x in self.COMMANDS:
            package, klass_name = x.rsplit('.', 1)
            mod = importlib.import_module('randexp.commands.{}'.format(package))

            self.classes.append(getattr(mod, klass_name))

        logger.debug("Loaded %d command classes", len(self.classes))

    def get(self, name):
        for klass in self.classes:
            if klass.name == name:
                return klass

        raise ConfigError("Unknown command {!r}".format(name), 'command')

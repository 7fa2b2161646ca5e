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

FORMAT = '%(asctime)s %(levelname).1s: %(name)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def verbosity_level(debug=False, verbose=0):
    if debug or verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    return logging.WARNING


def setup_logging(debug=False, verbose=0, log_file=None):
    """
    Route randexp's records to stderr, or to ``log_file`` when given.

    Calling it again replaces the handler it installed before, so repeated
    runs within one process do not duplicate messages.
    """

    level = verbosity_level(debug, verbose)
    logger = logging.getLogger()
    logger.setLevel(level)

    for handler in list(logger.handlers):
        if getattr(handler, '_randexp', False):
            logger.removeHandler(handler)
            handler.close()

    if log_file is None:
        ch = logging.StreamHandler()
    else:
        ch = logging.FileHandler(log_file, encoding='utf-8')
    ch._randexp = True
    ch.setLevel(level)
    ch.setFormatter(logging.Formatter(FORMAT, DATE_FORMAT))
    logger.addHandler(ch)

    return ch

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

from ..profiling import profile

from .csv import CSVPresenter
from .pgm import write_pgm
from .json import JSONPresenter
from .text import TextPresenter
from .utils import make_printer, output_path

logger = logging.getLogger(__name__)


class Artifacts(object):
    """
    Everything one command writes: JSON metadata always, plus optional CSV
    rows, a raster and a short text summary for the terminal.
    """

    def __init__(self, command, metadata, columns=None, rows=None, raster=None,
                 summary=()):
        self.command = command
        self.metadata = metadata
        self.columns = columns
        self.rows = rows
        self.raster = raster
        self.summary = list(summary)


def output_all(artifacts, parsed_args):
    """
    Write all artifacts of a command into --output-dir.
    """

    directory = parsed_args.output_dir

    FORMATS = {
        'json': {
            'klass': JSONPresenter,
            'document': artifacts.metadata,
            'target': output_path(directory, artifacts.command, 'json'),
        },
        'csv': {
            'klass': lambda fn: CSVPresenter(fn, artifacts.columns),
            'document': artifacts.rows,
            'target': None if artifacts.rows is None else
                output_path(directory, artifacts.command, 'csv'),
        },
        'pgm': {
            'fn': lambda path: write_pgm(path, artifacts.raster),
            'target': None if artifacts.raster is None else
                output_path(directory, artifacts.command, 'pgm'),
        },
        'text': {
            'klass': TextPresenter,
            'document': (artifacts.command, artifacts.summary),
            'target': '-' if artifacts.summary else None,
        },
    }

    for name, data in sorted(FORMATS.items()):
        if data['target'] is None:
            continue

        logger.debug("Generating %r output at %r", name, data['target'])

        with profile('output', name):
            if 'fn' in data:
                data['fn'](data['target'])
                continue

            with make_printer(data['target']) as fn:
                data['klass'](fn).start(data['document'])

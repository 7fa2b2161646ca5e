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

import os
import sys
import contextlib


class Presenter(object):
    """
    Writes one document through a print-like function.
    """

    def __init__(self, print_func):
        self.print_func = print_func

    def start(self, document):
        raise NotImplementedError()


@contextlib.contextmanager
def make_printer(path):
    output = sys.stdout

    if path != '-':
        output = open(path, 'w', encoding='utf-8', newline='')

    def fn(*args, **kwargs):
        kwargs['file'] = output
        print(*args, **kwargs)
    fn.output = output

    try:
        yield fn
    finally:
        if path != '-':
            output.close()


def output_path(directory, command, extension):
    return os.path.join(directory, '{}.{}'.format(command, extension))

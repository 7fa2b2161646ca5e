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
import pytest

from randexp.logging import setup_logging, verbosity_level
from randexp.main import main


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield
    for handler in root.handlers:
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


@pytest.mark.parametrize('debug,verbose,expected', (
    (False, 0, logging.WARNING),
    (False, 1, logging.INFO),
    (False, 2, logging.DEBUG),
    (True, 0, logging.DEBUG),
))
def test_verbosity_level(debug, verbose, expected):
    assert verbosity_level(debug, verbose) == expected

def test_setup_logging_replaces_own_handler():
    setup_logging(verbose=1)
    handler = setup_logging(debug=True)

    ours = [x for x in logging.getLogger().handlers if getattr(x, '_randexp', False)]

    assert ours == [handler]
    assert logging.getLogger().level == logging.DEBUG

def test_setup_logging_to_file(tmpdir):
    path = str(tmpdir.join('run.log'))
    setup_logging(verbose=1, log_file=path)

    logging.getLogger('randexp.pressure').info("P(%s) = %s", 1.5, -0.1)
    logging.getLogger('randexp.pressure').debug("hidden")

    with open(path) as f:
        content = f.read()

    assert 'I: randexp.pressure: P(1.5) = -0.1' in content
    assert 'hidden' not in content

def test_log_file_flag(tmpdir):
    path = str(tmpdir.join('run.log'))

    with pytest.raises(SystemExit):
        main(['--debug', '--log-file', path, '--output-dir', str(tmpdir), 'pressure'])

    with open(path) as f:
        assert 'Starting randexp' in f.read()

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

"""
Progress reporting for long-running estimators.

Library code opens a Progress(total, msg) around its loop and steps it;
ProgressManager fans every update out to the registered observers.
"""

import os
import sys
import json
import logging

logger = logging.getLogger(__name__)


class ProgressManager(object):
    _singleton = {}

    def __init__(self):
        self.__dict__ = self._singleton

        if not self._singleton:
            self.reset()

    def reset(self):
        self.total = 0
        self.current = 0
        self.observers = []

    def setup(self, parsed_args):
        # A bar only when asked for or when writing to a terminal
        if parsed_args.progress or \
                (parsed_args.progress is None and sys.stderr.isatty()):
            try:
                self.register(ProgressBar())
            except ImportError:
                if parsed_args.progress:
                    raise
                logger.debug("progressbar is not installed; no progress bar")

        if parsed_args.status_fd:
            self.register(StatusFD(os.fdopen(parsed_args.status_fd, 'w')))

    def register(self, observer):
        logger.debug("Registering %s as a progress observer", observer)

        self.observers.append(observer)

    def notify(self, msg):
        for x in self.observers:
            x.notify(self.current, self.total, msg)

    def step(self, delta, msg):
        self.current = min(self.total, self.current + delta)
        self.notify(msg)

    def new_total(self, delta, msg):
        self.total += delta
        self.notify(msg)

    def finish(self):
        for x in self.observers:
            x.finish()


class Progress(object):
    """
    A share of the global total, e.g. the steps of one phi_iterate call.
    Leaving the context completes whatever steps remain.
    """

    def __init__(self, total, msg=""):
        self.current = 0
        self.total = total
        self.msg = msg

        ProgressManager().new_total(total, msg)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        self.step(self.total - self.current)

    def step(self, delta=1, msg=None):
        delta = min(self.total - self.current, delta)

        if delta <= 0:
            return

        self.current += delta
        ProgressManager().step(delta, self.msg if msg is None else msg)


class ProgressBar(object):
    def __init__(self):
        import progressbar

        self.msg = ""

        class Message(progressbar.Widget):
            def update(self, pbar, _observer=self):
                return _observer.msg[-30:].rjust(30)

        class EveryUpdate(progressbar.ProgressBar):
            def _need_update(self):
                return True

        self.bar = EveryUpdate(fd=sys.stderr, widgets=(
            ' ',
            progressbar.Bar(),
            ' ',
            progressbar.Percentage(),
            ' ',
            Message(),
            ' ',
            progressbar.ETA(),
        ))
        self.bar.start()

    def notify(self, current, total, msg):
        self.msg = msg

        self.bar.maxval = max(total, 1)
        self.bar.currval = current
        self.bar.update()

    def finish(self):
        self.bar.finish()


class StatusFD(object):
    """
    One JSON object per update: {"msg": ..., "current": ..., "total": ...}.
    """

    def __init__(self, fileobj):
        self.fileobj = fileobj

    def notify(self, current, total, msg):
        print(json.dumps({
            'msg': msg,
            'current': current,
            'total': total,
        }, sort_keys=True), file=self.fileobj, flush=True)

    def finish(self):
        self.fileobj.flush()

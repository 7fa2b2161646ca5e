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


class RandexpError(Exception):
    pass

class DomainError(RandexpError, ValueError):
    pass

class RangeError(RandexpError, OverflowError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value

class ConfigError(RandexpError):
    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key

class BoundsError(RandexpError, IndexError):
    pass

class AccuracyError(RandexpError):
    def __init__(self, message, achieved=None, limit=None):
        super().__init__(message)
        self.achieved = achieved
        self.limit = limit

class TruncationError(AccuracyError):
    def __init__(self, message, achieved=None, limit=None, k_used=None):
        super().__init__(message, achieved, limit)
        self.k_used = k_used

class InconclusiveError(AccuracyError):
    def __init__(self, message, evaluations=()):
        super().__init__(message)
        self.evaluations = list(evaluations)

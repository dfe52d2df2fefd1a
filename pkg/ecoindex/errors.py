# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls.errors import DataError


class RoundBeforeFounding(DataError):
    """A date precedes the founding date of its startup."""


class SpeedAtCreation(DataError):
    """Fundraising speed was requested at the founding day, where it is undefined."""


class EmptySample(DataError):
    """An aggregate was requested over no observations at all."""


class ConfigError(ValueError):
    pass


class MissingPpp(ConfigError):
    pass


class UnitMismatch(ConfigError):
    pass


class UsageError(ValueError):
    pass

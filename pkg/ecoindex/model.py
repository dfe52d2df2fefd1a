# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import fnmatch
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from datetime import date
from decimal import Decimal
from enum import StrEnum
from typing import NamedTuple, Self

from .errors import ConfigError, RoundBeforeFounding

DAYS_PER_YEAR = 365.25


class FundingStage(StrEnum):
    SEED = "Seed"
    SERIES_A = "SeriesA"
    SERIES_B = "SeriesB"
    SERIES_C = "SeriesC"
    SERIES_D = "SeriesD"
    SERIES_E = "SeriesE"
    OTHER = "Other"

    @classmethod
    def parse(cls, x: str) -> Self:
        """Parses a canonical stage name, ignoring case and whitespace.

        >>> FundingStage.parse("Series A")
        <FundingStage.SERIES_A: 'SeriesA'>
        >>> FundingStage.parse("seed")
        <FundingStage.SEED: 'Seed'>
        """
        key = "".join(x.split()).casefold()
        for stage in cls:
            if stage.value.casefold() == key:
                return stage
        raise ValueError(f"unknown funding stage: {x!r}")


class Indicator(StrEnum):
    SPEED = "Speed"
    ACCELERATION = "Acceleration"
    NTH_YEAR_SPEED = "NthYearSpeed"
    STAGE_DISTRIBUTION = "StageDistribution"


class Unit(StrEnum):
    USD_PER_YEAR = "USD/year"
    USD_MILLION_PER_YEAR2 = "USD million/year^2"
    ENGINEER_YEARS_PER_YEAR = "engineer-years/year"
    MILLION_ENGINEER_YEARS_PER_YEAR2 = "million engineer-years/year^2"
    PERCENT = "percent"
    SHARE = "share"

    @property
    def slug(self) -> str:
        """Column-friendly form of the unit.

        >>> Unit.USD_MILLION_PER_YEAR2.slug
        'usd_million_per_year2'
        """
        words = self.value.lower().replace("^", "").replace("/", " per ")
        return re.sub(r"[^a-z0-9]+", "_", words).strip("_")


@dataclass(frozen=True)
class Startup:
    id: str
    name: str
    founded: date
    ecosystem: str


@dataclass(frozen=True)
class FundingRound:
    startup_id: str
    announced: date
    amount_usd: Decimal | None
    stage: FundingStage

    @property
    def has_known_amount(self) -> bool:
        return self.amount_usd is not None


@dataclass(frozen=True)
class SpeedObservation:
    startup_id: str
    t_days: int
    cumulative_usd: Decimal
    speed_usd_per_day: Decimal

    def __post_init__(self) -> None:
        if self.t_days < 1:
            raise ValueError(f"speed observation at day {self.t_days} (must be at least 1)")


class Point(NamedTuple):
    index: int
    value: float
    sample_count: int
    label: str = ""


@dataclass(frozen=True)
class IndicatorSeries:
    ecosystem: str
    indicator: Indicator
    unit: Unit
    points: tuple[Point, ...] = ()
    variant: str = ""

    def __post_init__(self) -> None:
        for prev, curr in zip(self.points, self.points[1:]):
            if curr.index <= prev.index:
                raise ValueError(f"series point indices not increasing: {prev} -> {curr}")
        for pt in self.points:
            if pt.sample_count < 1:
                raise ValueError(f"series point without samples: {pt}")

    def values(self) -> list[float]:
        return [pt.value for pt in self.points]

    def point_at(self, index: int) -> Point | None:
        return next((pt for pt in self.points if pt.index == index), None)


class LocationMatcher:
    """Case-insensitive glob patterns over the location fields of a startup."""

    def __init__(
        self,
        cities: Iterable[str] = (),
        regions: Iterable[str] = (),
        countries: Iterable[str] = (),
    ) -> None:
        self.cities = self._compile_all(cities)
        self.regions = self._compile_all(regions)
        self.countries = self._compile_all(countries)

    def __bool__(self) -> bool:
        return bool(self.cities or self.regions or self.countries)

    def __repr__(self) -> str:
        return (
            f"LocationMatcher(cities={[i.pattern for i in self.cities]!r}, "
            f"regions={[i.pattern for i in self.regions]!r}, "
            f"countries={[i.pattern for i in self.countries]!r})"
        )

    def matches(self, city: str = "", region: str = "", country: str = "") -> bool:
        return (
            _any_fullmatch(self.cities, city)
            or _any_fullmatch(self.regions, region)
            or _any_fullmatch(self.countries, country)
        )

    @staticmethod
    def _compile_all(patterns: Iterable[str]) -> tuple[re.Pattern[str], ...]:
        return tuple(re.compile(fnmatch.translate(p.strip()), re.I) for p in patterns if p.strip())


@dataclass(frozen=True)
class EcosystemConfig:
    name: str
    match_rules: LocationMatcher = field(default_factory=LocationMatcher, compare=False)
    ppp_divisor_usd: Decimal = Decimal(1)

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigError("ecosystem without a name")
        if not self.ppp_divisor_usd.is_finite() or self.ppp_divisor_usd <= 0:
            raise ConfigError(
                f"ecosystem {self.name!r}: ppp_divisor_usd must be positive, "
                f"got {self.ppp_divisor_usd}"
            )


def elapsed_days(startup: Startup, at: date) -> int:
    """Returns the number of whole days between the founding of the startup and `at`.

    >>> s = Startup("s1", "Acme", date(2010, 1, 1), "Berlin")
    >>> elapsed_days(s, date(2010, 7, 20))
    200
    """
    days = (at - startup.founded).days
    if days < 0:
        raise RoundBeforeFounding(
            f"{at.isoformat()} is before {startup.id!r} was founded ({startup.founded.isoformat()})"
        )
    return days


def to_usd_per_year(speed_usd_per_day: Decimal | float) -> float:
    """Annualizes a per-day speed.

    >>> to_usd_per_year(1000)
    365250.0
    """
    return float(speed_usd_per_day) * DAYS_PER_YEAR


def matching_ecosystems(
    configs: Sequence[EcosystemConfig],
    city: str = "",
    region: str = "",
    country: str = "",
) -> list[str]:
    """Returns names of all ecosystems accepting the location, in configuration order."""
    return [c.name for c in configs if c.match_rules.matches(city, region, country)]


def _any_fullmatch(patterns: Sequence[re.Pattern[str]], value: str) -> bool:
    value = value.strip()
    return bool(value) and any(p.fullmatch(value) for p in patterns)

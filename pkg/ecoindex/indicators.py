# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from decimal import Decimal
from enum import StrEnum
from typing import NamedTuple, Self

import numpy as np

from .errors import EmptySample, SpeedAtCreation
from .ingestion import Dataset, filter_founded
from .model import (
    DAYS_PER_YEAR,
    FundingRound,
    Indicator,
    IndicatorSeries,
    Point,
    SpeedObservation,
    Startup,
    Unit,
    elapsed_days,
    to_usd_per_year,
)

logger = logging.getLogger("Indicators")

BIN_MONTHS = 6

# Half of a 365.25-day year, 182.625 days, kept as an exact fraction
BIN_DAYS_NUMERATOR = 1461
BIN_DAYS_DENOMINATOR = 8

NTH_YEAR_DAYS = 365

MILLION = 1_000_000

# USD/day^2 -> USD million/year^2
ACCELERATION_SCALE = DAYS_PER_YEAR * DAYS_PER_YEAR / MILLION


class DayZeroPolicy(StrEnum):
    CLAMP = "clamp"
    DROP = "drop"


class AccelerationMode(StrEnum):
    ABSOLUTE = "absolute"
    PERCENT = "percent"


@dataclass(frozen=True, order=True)
class Bin:
    index: int

    @property
    def start_months(self) -> int:
        return BIN_MONTHS * self.index

    @property
    def end_months(self) -> int:
        return BIN_MONTHS * (self.index + 1)

    @property
    def label(self) -> str:
        """Half-open month interval covered by the bin.

        >>> Bin(1).label
        '6-12 months'
        """
        return f"{self.start_months}-{self.end_months} months"

    @staticmethod
    def count_for(max_years: float) -> int:
        """Number of bins needed to cover `max_years` years after founding.

        >>> Bin.count_for(5)
        10
        >>> Bin.count_for(2.2)
        5
        """
        return math.ceil(max_years * 12 / BIN_MONTHS)


@dataclass(frozen=True)
class Cohort:
    from_year: int
    to_year: int

    def __post_init__(self) -> None:
        if self.from_year > self.to_year:
            raise ValueError(f"invalid cohort: {self.from_year} > {self.to_year}")

    @property
    def midpoint(self) -> float:
        return (self.from_year + self.to_year) / 2

    @property
    def label(self) -> str:
        return f"{self.from_year}-{self.to_year}"

    def contains(self, year: int) -> bool:
        return self.from_year <= year <= self.to_year

    def precedes(self, other: "Cohort") -> bool:
        return self.to_year < other.from_year

    @classmethod
    def parse(cls, x: str) -> Self:
        """Parses a cohort given as "Y1-Y2" or a single year.

        >>> Cohort.parse("2010-2012")
        Cohort(from_year=2010, to_year=2012)
        >>> Cohort.parse("2014").midpoint
        2014.0
        """
        from_year, sep, to_year = x.strip().partition("-")
        return cls(int(from_year), int(to_year) if sep else int(from_year))


@dataclass(frozen=True)
class QuantileSpec:
    q: float = 0.5

    def __post_init__(self) -> None:
        if not 0 < self.q < 1:
            raise ValueError(f"quantile must be in (0, 1), got {self.q}")


class Aggregate(NamedTuple):
    value: float
    sample_count: int


def cumulative_funding(startup: Startup, rounds: Iterable[FundingRound], t_days: int) -> Decimal:
    """Total known amount raised by the startup up to and including day `t_days`."""
    if t_days < 0:
        raise ValueError(f"negative elapsed time: {t_days}")
    return sum(
        (
            r.amount_usd
            for r in rounds
            if r.amount_usd is not None and elapsed_days(startup, r.announced) <= t_days
        ),
        Decimal(0),
    )


def fundraising_speed(startup: Startup, rounds: Iterable[FundingRound], t_days: int) -> Decimal:
    """Average amount raised per day since founding, in USD/day."""
    if t_days == 0:
        raise SpeedAtCreation(f"speed of {startup.id!r} is undefined on its founding day")
    return cumulative_funding(startup, rounds, t_days) / t_days


def funding_timeline(
    startup: Startup,
    rounds: Iterable[FundingRound],
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> list[tuple[int, Decimal]]:
    """Returns (elapsed days, cumulative USD) at every day the startup announced
    a round with a known amount. Rounds announced on the same day are merged.
    Founding-day rounds are either moved to day 1 or skipped (while still counting
    towards later cumulative amounts), depending on `day_zero`.
    """
    raised_on = defaultdict[int, Decimal](Decimal)
    for r in rounds:
        if r.amount_usd is not None:
            raised_on[elapsed_days(startup, r.announced)] += r.amount_usd

    timeline = list[tuple[int, Decimal]]()
    cumulative = Decimal(0)
    for t in sorted(raised_on):
        cumulative += raised_on[t]
        if t == 0:
            if day_zero is DayZeroPolicy.DROP:
                continue
            t = 1

        if timeline and timeline[-1][0] == t:
            timeline[-1] = (t, cumulative)
        else:
            timeline.append((t, cumulative))
    return timeline


def speed_observations(
    dataset: Dataset,
    ecosystem: str,
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> list[SpeedObservation]:
    return [
        SpeedObservation(startup.id, t, cumulative, cumulative / t)
        for startup in dataset.startups_in(ecosystem)
        for t, cumulative in funding_timeline(startup, dataset.rounds_of(startup.id), day_zero)
    ]


def assign_bin(t_days: int) -> Bin:
    """Assigns a startup age to its 6-month bin.

    >>> assign_bin(200)
    Bin(index=1)
    >>> assign_bin(420)
    Bin(index=2)
    """
    if t_days < 0:
        raise ValueError(f"negative elapsed time: {t_days}")
    return Bin(t_days * BIN_DAYS_DENOMINATOR // BIN_DAYS_NUMERATOR)


def quantile(values: Sequence[float | Decimal], spec: QuantileSpec = QuantileSpec()) -> float:
    """Linearly-interpolated quantile, with rank q*(n-1) between order statistics.

    >>> quantile([1, 2, 3, 4])
    2.5
    """
    if not values:
        raise EmptySample("quantile of an empty sample")
    return float(np.quantile(np.array([float(v) for v in values], dtype=np.float64), spec.q))


def ecosystem_speed(
    dataset: Dataset,
    ecosystem: str,
    spec: QuantileSpec = QuantileSpec(),
    max_years: float | None = 5.0,
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
    variant: str = "",
) -> IndicatorSeries:
    samples = defaultdict[int, list[Decimal]](list)
    for observation in speed_observations(dataset, ecosystem, day_zero):
        samples[assign_bin(observation.t_days).index].append(observation.speed_usd_per_day)

    points = [
        Point(index, to_usd_per_year(quantile(values, spec)), len(values), Bin(index).label)
        for index, values in _bins_in_range(samples, max_years)
    ]
    if not points:
        raise EmptySample(f"no speed observations in {ecosystem}")
    return IndicatorSeries(ecosystem, Indicator.SPEED, Unit.USD_PER_YEAR, tuple(points), variant)


def startup_acceleration(
    startup: Startup,
    rounds: Iterable[FundingRound],
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> list[tuple[int, float]]:
    """Change of fundraising speed between consecutive rounds, in USD/day^2,
    reported at the later round of every pair."""
    timeline = funding_timeline(startup, rounds, day_zero)
    if len(timeline) < 2:
        raise EmptySample(f"{startup.id!r} has fewer than 2 rounds with known amounts")

    accelerations = list[tuple[int, float]]()
    for (t1, f1), (t2, f2) in zip(timeline, timeline[1:]):
        accelerations.append((t2, float((f2 / t2 - f1 / t1) / (t2 - t1))))
    return accelerations


def ecosystem_acceleration(
    dataset: Dataset,
    ecosystem: str,
    spec: QuantileSpec = QuantileSpec(),
    max_years: float | None = None,
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> IndicatorSeries:
    samples = defaultdict[int, list[float]](list)
    for startup in dataset.startups_in(ecosystem):
        try:
            accelerations = startup_acceleration(startup, dataset.rounds_of(startup.id), day_zero)
        except EmptySample:
            continue
        for t, a in accelerations:
            samples[assign_bin(t).index].append(a)

    points = [
        Point(index, quantile(values, spec) * ACCELERATION_SCALE, len(values), Bin(index).label)
        for index, values in _bins_in_range(samples, max_years)
    ]
    if not points:
        raise EmptySample(f"no acceleration samples in {ecosystem}")
    return IndicatorSeries(
        ecosystem,
        Indicator.ACCELERATION,
        Unit.USD_MILLION_PER_YEAR2,
        tuple(points),
        "per-startup",
    )


def cohort_speed(
    dataset: Dataset,
    ecosystem: str,
    cohort: Cohort,
    spec: QuantileSpec = QuantileSpec(),
    max_years: float | None = 5.0,
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> IndicatorSeries:
    return ecosystem_speed(
        filter_founded(dataset, cohort.from_year, cohort.to_year),
        ecosystem,
        spec,
        max_years,
        day_zero,
        variant=cohort.label,
    )


def cohort_acceleration(
    dataset: Dataset,
    ecosystem: str,
    early: Cohort,
    late: Cohort,
    spec: QuantileSpec = QuantileSpec(),
    mode: AccelerationMode = AccelerationMode.ABSOLUTE,
    max_years: float | None = 5.0,
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> IndicatorSeries:
    """Difference between the speed curves of two founding cohorts, either per year
    between cohort midpoints (USD million/year^2) or relative to the early cohort (%)."""
    if not early.precedes(late):
        raise ValueError(f"cohort {early.label} must end before cohort {late.label} starts")

    early_speed = cohort_speed(dataset, ecosystem, early, spec, max_years, day_zero)
    late_speed = cohort_speed(dataset, ecosystem, late, spec, max_years, day_zero)
    span = late.midpoint - early.midpoint

    points = list[Point]()
    for e in early_speed.points:
        if (l := late_speed.point_at(e.index)) is None:
            continue

        if mode is AccelerationMode.ABSOLUTE:
            value = (l.value - e.value) / span / MILLION
        elif e.value == 0:
            logger.warning(
                "%s: skipping bin %s in percent mode - speed of cohort %s is zero",
                ecosystem,
                e.label,
                early.label,
            )
            continue
        else:
            value = 100 * (l.value - e.value) / e.value

        points.append(Point(e.index, value, e.sample_count + l.sample_count, e.label))

    unit = Unit.USD_MILLION_PER_YEAR2 if mode is AccelerationMode.ABSOLUTE else Unit.PERCENT
    return IndicatorSeries(
        ecosystem,
        Indicator.ACCELERATION,
        unit,
        tuple(points),
        f"{early.label} vs {late.label}",
    )


def nth_year_speed(
    dataset: Dataset,
    ecosystem: str,
    y: int,
    n: int,
    spec: QuantileSpec = QuantileSpec(),
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> Aggregate:
    """Speed of startups founded in year `y`, measured during the n-th year of their life.
    Each startup contributes its last observation in that year."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    window_start = NTH_YEAR_DAYS * (n - 1)
    window_end = NTH_YEAR_DAYS * n

    speeds = list[Decimal]()
    for startup in dataset.startups_in(ecosystem):
        if startup.founded.year != y:
            continue
        timeline = funding_timeline(startup, dataset.rounds_of(startup.id), day_zero)
        in_window = [(t, f) for t, f in timeline if window_start <= t < window_end]
        if in_window:
            t, f = in_window[-1]
            speeds.append(f / t)

    if not speeds:
        raise EmptySample(f"no year-{n} observations of startups founded in {ecosystem} in {y}")
    return Aggregate(to_usd_per_year(quantile(speeds, spec)), len(speeds))


def nth_year_series(
    dataset: Dataset,
    ecosystem: str,
    n: int,
    years: Iterable[int],
    spec: QuantileSpec = QuantileSpec(),
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP,
) -> IndicatorSeries:
    points = list[Point]()
    for y in sorted(set(years)):
        try:
            value, count = nth_year_speed(dataset, ecosystem, y, n, spec, day_zero)
        except EmptySample:
            continue
        points.append(Point(y, value, count, str(y)))

    if not points:
        raise EmptySample(f"no year-{n} observations in {ecosystem}")
    return IndicatorSeries(
        ecosystem,
        Indicator.NTH_YEAR_SPEED,
        Unit.USD_PER_YEAR,
        tuple(points),
        f"n={n}",
    )


def rank_ecosystems(
    series: Iterable[IndicatorSeries],
    max_bin: int | None = None,
) -> list[tuple[str, float]]:
    """Orders ecosystems by the mean of their values over the bins all of them share,
    fastest first. Only bins below `max_bin` are considered, if given."""
    series = list(series)
    if not series:
        return []

    shared = set.intersection(*({pt.index for pt in s.points} for s in series))
    if max_bin is not None:
        shared = {i for i in shared if i < max_bin}
    if not shared:
        return []

    means = [
        (s.ecosystem, float(np.mean([pt.value for pt in s.points if pt.index in shared])))
        for s in series
    ]
    return sorted(means, key=lambda i: (-i[1], i[0]))


def _bins_in_range[T](
    samples: Mapping[int, list[T]],
    max_years: float | None,
) -> Iterable[tuple[int, list[T]]]:
    limit = Bin.count_for(max_years) if max_years is not None else None
    for index in sorted(samples):
        if limit is None or index < limit:
            yield index, samples[index]

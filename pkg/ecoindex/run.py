# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import math
from argparse import ArgumentTypeError, Namespace
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import Self

from .config import AnalysisConfig
from .errors import UsageError
from .indicators import Cohort, DayZeroPolicy, QuantileSpec
from .ingestion import Dataset, LoadReport
from .normalization import PppTable
from .outputs import Output, OutputFormat
from .util.env import get_path_from_env

CONFIG_ENV = "ECOINDEX_CONFIG"

DEFAULT_COHORTS = (Cohort(2010, 2012), Cohort(2014, 2016))
DEFAULT_N = (1, 2, 3, 4)
DEFAULT_NTH_YEAR_RANGE = (2010, 2018)
DEFAULT_PERIOD = (2010, 2020)


class Command(StrEnum):
    VALIDATE = "validate"
    SPEED = "speed"
    ACCELERATION = "acceleration"
    NTH_YEAR = "nth-year"
    DISTRIBUTION = "distribution"


class AccelerationMethod(StrEnum):
    COHORT = "cohort"
    PER_STARTUP = "per-startup"


@dataclass(frozen=True)
class RunConfig:
    command: Command
    startups: Path
    rounds: Path
    config: Path
    ecosystems: tuple[str, ...] = ()
    from_year: int | None = None
    to_year: int | None = None
    cohorts: tuple[Cohort, Cohort] = DEFAULT_COHORTS
    n: tuple[int, ...] = DEFAULT_N
    quantile: QuantileSpec = QuantileSpec()
    ppp: bool = False
    day_zero: DayZeroPolicy = DayZeroPolicy.CLAMP
    max_years: float = 5.0
    mode: AccelerationMethod = AccelerationMethod.COHORT
    overlay: bool = False
    format: OutputFormat = OutputFormat.CSV
    out: Path | None = None
    strict: bool = False

    def __post_init__(self) -> None:
        if self.from_year is not None and self.to_year is not None:
            if self.from_year > self.to_year:
                raise UsageError(f"--from-year {self.from_year} is after --to-year {self.to_year}")
        if not math.isfinite(self.max_years) or self.max_years <= 0:
            raise UsageError(f"--max-years must be a positive number, got {self.max_years}")
        early, late = self.cohorts
        if not early.precedes(late):
            raise UsageError(f"cohort {early.label} must end before cohort {late.label} starts")

    @classmethod
    def from_args(cls, args: Namespace) -> Self:
        config = args.config or get_path_from_env(CONFIG_ENV)
        return cls(
            command=Command(args.command),
            startups=Path(args.startups),
            rounds=Path(args.rounds),
            config=Path(config),
            ecosystems=tuple(args.ecosystem or ()),
            from_year=args.from_year,
            to_year=args.to_year,
            cohorts=args.cohorts or DEFAULT_COHORTS,
            n=args.n or DEFAULT_N,
            quantile=QuantileSpec(args.quantile),
            ppp=args.ppp,
            day_zero=DayZeroPolicy(args.day_zero),
            max_years=args.max_years,
            mode=AccelerationMethod(args.mode),
            overlay=args.overlay,
            format=OutputFormat(args.format),
            out=Path(args.out) if args.out else None,
            strict=args.strict,
        )

    def check_inputs(self) -> None:
        for path in (self.startups, self.rounds, self.config):
            if not path.is_file():
                raise FileNotFoundError(f"input file does not exist: {path}")

    @property
    def output_path(self) -> Path | None:
        if self.out is not None:
            return self.out
        elif self.command is Command.VALIDATE:
            return None
        return Path(f"{self.command}.{self.format}")

    def year_range(self, default: tuple[int, int]) -> tuple[int, int]:
        return (
            self.from_year if self.from_year is not None else default[0],
            self.to_year if self.to_year is not None else default[1],
        )

    @property
    def founding_filter(self) -> tuple[int, int] | None:
        """Founding-year bounds given on the command line, if any."""
        if self.from_year is None and self.to_year is None:
            return None
        return self.year_range((1, 9999))


@dataclass
class RunState:
    """In-memory state shared by all tasks of a single pipeline run."""

    run: RunConfig
    config: AnalysisConfig | None = None
    dataset: Dataset | None = None
    report: LoadReport | None = None
    outputs: list[Output] = field(default_factory=list[Output])

    def loaded(self) -> tuple[AnalysisConfig, Dataset]:
        if self.config is None or self.dataset is None:
            raise RuntimeError("dataset was not loaded yet")
        return self.config, self.dataset

    @property
    def ppp_table(self) -> PppTable:
        config, _ = self.loaded()
        return PppTable.from_ecosystems(config.ecosystems)


def parse_cohorts(x: str) -> tuple[Cohort, Cohort]:
    """Parses an argument of the form "Y1-Y2,Y3-Y4".

    >>> parse_cohorts("2010-2012,2014-2016")
    (Cohort(from_year=2010, to_year=2012), Cohort(from_year=2014, to_year=2016))
    """
    parts = x.split(",")
    if len(parts) != 2:
        raise ArgumentTypeError(f"expected two cohorts separated by a comma, got {x!r}")
    try:
        return Cohort.parse(parts[0]), Cohort.parse(parts[1])
    except ValueError as e:
        raise ArgumentTypeError(str(e)) from None


def parse_n_range(x: str) -> tuple[int, ...]:
    """Parses an argument of the form "N..M" or "N".

    >>> parse_n_range("1..4")
    (1, 2, 3, 4)
    >>> parse_n_range("2")
    (2,)
    >>> parse_n_range("0..2")
    Traceback (most recent call last):
    ...
    argparse.ArgumentTypeError: n must be at least 1, got 0
    """
    start, sep, end = x.partition("..")
    try:
        first = int(start)
        last = int(end) if sep else first
    except ValueError:
        raise ArgumentTypeError(f"invalid n range: {x!r}") from None

    if first < 1:
        raise ArgumentTypeError(f"n must be at least 1, got {first}")
    if last < first:
        raise ArgumentTypeError(f"empty n range: {x!r}")
    return tuple(range(first, last + 1))


def parse_quantile(x: str) -> float:
    try:
        q = float(x)
    except ValueError:
        raise ArgumentTypeError(f"invalid quantile: {x!r}") from None
    if not 0 < q < 1:
        raise ArgumentTypeError(f"quantile must be in (0, 1), got {x}")
    return q

# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import replace
from decimal import Decimal

from .errors import ConfigError, MissingPpp, UnitMismatch
from .ingestion import Dataset
from .model import EcosystemConfig, IndicatorSeries, Point, Unit

PPP_UNITS: Mapping[Unit, Unit] = {
    Unit.USD_PER_YEAR: Unit.ENGINEER_YEARS_PER_YEAR,
    Unit.USD_MILLION_PER_YEAR2: Unit.MILLION_ENGINEER_YEARS_PER_YEAR2,
}


class PppTable(Mapping[str, Decimal]):
    """Annual cost of a software engineer (USD) in every ecosystem."""

    def __init__(self, divisors: Mapping[str, Decimal]) -> None:
        for ecosystem, divisor in divisors.items():
            if not divisor.is_finite() or divisor <= 0:
                raise ConfigError(f"PPP divisor of {ecosystem!r} must be positive, got {divisor}")
        self.divisors = dict(divisors)

    def __getitem__(self, ecosystem: str) -> Decimal:
        try:
            return self.divisors[ecosystem]
        except KeyError:
            raise MissingPpp(f"no PPP divisor for ecosystem {ecosystem!r}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self.divisors)

    def __len__(self) -> int:
        return len(self.divisors)

    def __repr__(self) -> str:
        return f"PppTable({self.divisors!r})"

    @classmethod
    def from_ecosystems(cls, ecosystems: Iterable[EcosystemConfig]) -> "PppTable":
        return cls({e.name: e.ppp_divisor_usd for e in ecosystems})


def ppp_adjust_amount(amount_usd: Decimal, ecosystem: str, table: PppTable) -> Decimal:
    """Converts dollars into engineer-years of the given ecosystem.

    >>> ppp_adjust_amount(Decimal(100_000), "Berlin", PppTable({"Berlin": Decimal(100_000)}))
    Decimal('1')
    """
    return amount_usd / table[ecosystem]


def ppp_adjust_series(series: IndicatorSeries, table: PppTable) -> IndicatorSeries:
    unit = PPP_UNITS.get(series.unit)
    if unit is None:
        raise UnitMismatch(f"PPP adjustment is not applicable to {series.unit!r} series")

    divisor = float(table[series.ecosystem])
    return replace(
        series,
        unit=unit,
        points=tuple(
            Point(pt.index, pt.value / divisor, pt.sample_count, pt.label) for pt in series.points
        ),
    )


def ppp_adjust_dataset(dataset: Dataset, table: PppTable) -> Dataset:
    """Returns the dataset with every known amount expressed in engineer-years."""
    return dataset.with_amounts(lambda s, amount: ppp_adjust_amount(amount, s.ecosystem, table))

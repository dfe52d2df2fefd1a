# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from collections.abc import Mapping
from dataclasses import dataclass
from decimal import Decimal
from enum import StrEnum
from typing import NamedTuple

from .errors import EmptySample
from .ingestion import Dataset
from .model import FundingStage


class View(StrEnum):
    AMOUNT = "amount"
    COUNT = "count"


class StageShare(NamedTuple):
    amount_share: float
    count_share: float
    amount_usd: Decimal
    count: int

    def share(self, view: View) -> float:
        return self.amount_share if view is View.AMOUNT else self.count_share


@dataclass(frozen=True)
class StageDistribution:
    ecosystem: str
    by_stage: Mapping[FundingStage, StageShare]

    @property
    def total_amount_usd(self) -> Decimal:
        return sum((i.amount_usd for i in self.by_stage.values()), Decimal(0))

    @property
    def total_count(self) -> int:
        return sum(i.count for i in self.by_stage.values())

    def share(self, stage: FundingStage, view: View) -> float:
        entry = self.by_stage.get(stage)
        return entry.share(view) if entry else 0.0


class PyramidRow(NamedTuple):
    view: View
    stage: FundingStage
    left_share: float
    right_share: float


@dataclass(frozen=True)
class Pyramid:
    left: str
    right: str
    rows: tuple[PyramidRow, ...]

    def view(self, view: View) -> list[PyramidRow]:
        return [row for row in self.rows if row.view is view]


def stage_distribution(
    dataset: Dataset,
    ecosystem: str,
    period: tuple[int, int],
) -> StageDistribution:
    """Shares of funding amount and of round count per stage, over rounds announced
    within `period` (inclusive years). Rounds with unknown amounts only count
    towards frequencies."""
    from_year, to_year = period
    if from_year > to_year:
        raise ValueError(f"empty period: {from_year} > {to_year}")

    amounts = {stage: Decimal(0) for stage in FundingStage}
    counts = {stage: 0 for stage in FundingStage}
    for startup in dataset.startups_in(ecosystem):
        for r in dataset.rounds_of(startup.id):
            if from_year <= r.announced.year <= to_year:
                counts[r.stage] += 1
                if r.amount_usd is not None:
                    amounts[r.stage] += r.amount_usd

    total_count = sum(counts.values())
    if total_count == 0:
        raise EmptySample(f"no rounds in {ecosystem} announced in {from_year}-{to_year}")
    total_amount = sum(amounts.values(), Decimal(0))

    return StageDistribution(
        ecosystem,
        {
            stage: StageShare(
                amount_share=float(amounts[stage] / total_amount) if total_amount else 0.0,
                count_share=counts[stage] / total_count,
                amount_usd=amounts[stage],
                count=counts[stage],
            )
            for stage in FundingStage
        },
    )


def pairwise_pyramid(dist_a: StageDistribution, dist_b: StageDistribution) -> Pyramid:
    return Pyramid(
        dist_a.ecosystem,
        dist_b.ecosystem,
        tuple(
            PyramidRow(view, stage, dist_a.share(stage, view), dist_b.share(stage, view))
            for view in View
            for stage in FundingStage
        ),
    )

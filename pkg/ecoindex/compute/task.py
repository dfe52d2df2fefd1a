# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from collections.abc import Callable

from impuls import Task
from impuls.errors import DataError, MultipleDataErrors

from ..errors import EmptySample
from ..ingestion import Dataset, filter_founded
from ..model import IndicatorSeries
from ..normalization import ppp_adjust_series
from ..run import RunState


class ComputeIndicator(Task):
    def __init__(self, state: RunState) -> None:
        super().__init__()
        self.state = state

    def dataset(self, apply_founding_filter: bool = True) -> Dataset:
        _, dataset = self.state.loaded()
        bounds = self.state.run.founding_filter
        if apply_founding_filter and bounds is not None:
            return filter_founded(dataset, *bounds)
        return dataset

    def try_each[T](self, compute: Callable[[str], T]) -> tuple[list[T], list[DataError]]:
        """Runs `compute` for every requested ecosystem, skipping empty ones."""
        config, _ = self.state.loaded()
        results = list[T]()
        errors = list[DataError]()
        for ecosystem in config.select(self.state.run.ecosystems):
            try:
                results.append(compute(ecosystem.name))
            except EmptySample as e:
                self.logger.warning("Skipping %s: %s", ecosystem.name, e)
                errors.append(e)
        return results, errors

    def each_ecosystem[T](self, compute: Callable[[str], T]) -> list[T]:
        results, errors = self.try_each(compute)
        if not results:
            raise MultipleDataErrors(type(self).__name__, errors)
        return results

    def adjust(self, series: IndicatorSeries) -> IndicatorSeries:
        if self.state.run.ppp:
            return ppp_adjust_series(series, self.state.ppp_table)
        return series


def non_empty(series: IndicatorSeries) -> IndicatorSeries:
    if not series.points:
        raise EmptySample(f"{series.ecosystem}: {series.indicator} {series.variant} has no points")
    return series

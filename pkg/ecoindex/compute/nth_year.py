# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls import TaskRuntime
from impuls.errors import DataError, MultipleDataErrors

from ..indicators import nth_year_series
from ..model import IndicatorSeries
from ..outputs import NthYearOutput
from ..run import DEFAULT_NTH_YEAR_RANGE
from .task import ComputeIndicator


class ComputeNthYear(ComputeIndicator):
    def execute(self, r: TaskRuntime) -> None:
        run = self.state.run
        from_year, to_year = run.year_range(DEFAULT_NTH_YEAR_RANGE)
        years = range(from_year, to_year + 1)
        dataset = self.dataset(apply_founding_filter=False)

        series_by_n = dict[int, list[IndicatorSeries]]()
        errors = list[DataError]()
        for n in run.n:
            self.logger.info(
                "Computing year-%d speed of startups founded in %d-%d", n, from_year, to_year
            )
            series, n_errors = self.try_each(
                lambda ecosystem: self.adjust(
                    nth_year_series(dataset, ecosystem, n, years, run.quantile, run.day_zero)
                )
            )
            if series:
                series_by_n[n] = series
            errors.extend(n_errors)

        if not series_by_n:
            raise MultipleDataErrors("ComputeNthYear", errors)
        self.state.outputs.append(NthYearOutput(series_by_n))

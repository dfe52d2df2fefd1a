# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls import TaskRuntime

from ..indicators import BIN_MONTHS, ecosystem_speed, rank_ecosystems
from ..outputs import SeriesOutput
from .task import ComputeIndicator

RANKING_BINS = 4


class ComputeSpeed(ComputeIndicator):
    def execute(self, r: TaskRuntime) -> None:
        run = self.state.run
        dataset = self.dataset()
        series = self.each_ecosystem(
            lambda ecosystem: self.adjust(
                ecosystem_speed(dataset, ecosystem, run.quantile, run.max_years, run.day_zero)
            )
        )

        ranking = rank_ecosystems(series, max_bin=RANKING_BINS)
        if ranking:
            self.logger.info(
                "Ecosystems by speed over the first %d months: %s",
                RANKING_BINS * BIN_MONTHS,
                ", ".join(name for name, _ in ranking),
            )

        self.state.outputs.append(
            SeriesOutput(
                "speed",
                f"Fundraising speed (quantile {run.quantile.q:g})",
                "time since founding",
                series,
            )
        )

# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls import TaskRuntime
from impuls.errors import MultipleDataErrors

from ..distribution import pairwise_pyramid, stage_distribution
from ..errors import EmptySample
from ..outputs import DistributionOutput, PyramidOutput
from ..run import DEFAULT_PERIOD
from .task import ComputeIndicator


class ComputeDistribution(ComputeIndicator):
    """Stage distribution of one or more ecosystems, or a pyramid
    comparing exactly two of them (which may be the same one)."""

    def execute(self, r: TaskRuntime) -> None:
        run = self.state.run
        period = run.year_range(DEFAULT_PERIOD)
        dataset = self.dataset(apply_founding_filter=False)

        if len(run.ecosystems) == 2:
            config, _ = self.state.loaded()
            left, right = (config.get(name).name for name in run.ecosystems)
            try:
                pyramid = pairwise_pyramid(
                    stage_distribution(dataset, left, period),
                    stage_distribution(dataset, right, period),
                )
            except EmptySample as e:
                raise MultipleDataErrors("ComputeDistribution", [e]) from None
            self.state.outputs.append(PyramidOutput(period, pyramid))
        else:
            distributions = self.each_ecosystem(
                lambda ecosystem: stage_distribution(dataset, ecosystem, period)
            )
            for d in distributions:
                self.logger.info(
                    "%s: %d rounds, %s USD raised in %d-%d",
                    d.ecosystem,
                    d.total_count,
                    d.total_amount_usd,
                    *period,
                )
            self.state.outputs.append(DistributionOutput(period, distributions))

# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls import TaskRuntime

from ..indicators import (
    AccelerationMode,
    cohort_acceleration,
    cohort_speed,
    ecosystem_acceleration,
)
from ..model import IndicatorSeries
from ..outputs import SeriesOutput
from ..run import AccelerationMethod
from .task import ComputeIndicator, non_empty


class ComputeAcceleration(ComputeIndicator):
    def execute(self, r: TaskRuntime) -> None:
        if self.state.run.mode is AccelerationMethod.PER_STARTUP:
            self.per_startup()
        else:
            self.by_cohorts()

        if self.state.run.overlay:
            self.cohort_overlay()

    def per_startup(self) -> None:
        run = self.state.run
        dataset = self.dataset()
        series = self.each_ecosystem(
            lambda ecosystem: self.adjust(
                ecosystem_acceleration(
                    dataset, ecosystem, run.quantile, run.max_years, run.day_zero
                )
            )
        )
        self.state.outputs.append(
            SeriesOutput("per-startup", "Acceleration (per startup)", "time since founding", series)
        )

    def by_cohorts(self) -> None:
        run = self.state.run
        early, late = run.cohorts
        dataset = self.dataset(apply_founding_filter=False)

        def compute(ecosystem: str) -> tuple[IndicatorSeries, IndicatorSeries]:
            absolute, percent = (
                cohort_acceleration(
                    dataset,
                    ecosystem,
                    early,
                    late,
                    run.quantile,
                    mode,
                    run.max_years,
                    run.day_zero,
                )
                for mode in AccelerationMode
            )
            # Percent series are unitless, only absolute ones get PPP-adjusted
            return self.adjust(non_empty(absolute)), percent

        pairs = self.each_ecosystem(compute)
        title = f"Acceleration, cohort {early.label} vs {late.label}"
        self.state.outputs.append(
            SeriesOutput("absolute", title, "time since founding", [a for a, _ in pairs])
        )
        self.state.outputs.append(
            SeriesOutput("percent", title, "time since founding", [p for _, p in pairs])
        )

    def cohort_overlay(self) -> None:
        run = self.state.run
        dataset = self.dataset(apply_founding_filter=False)
        per_ecosystem = self.each_ecosystem(
            lambda ecosystem: [
                self.adjust(
                    cohort_speed(
                        dataset, ecosystem, cohort, run.quantile, run.max_years, run.day_zero
                    )
                )
                for cohort in run.cohorts
            ]
        )
        self.state.outputs.append(
            SeriesOutput(
                "cohort-speed",
                "Fundraising speed by founding cohort",
                "time since founding",
                [s for pair in per_ecosystem for s in pair],
                variant_column="cohort",
            )
        )

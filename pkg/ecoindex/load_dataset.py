# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls import Task, TaskRuntime
from impuls.errors import MultipleDataErrors

from .config import load_config
from .ingestion import load_dataset
from .run import RunState


class LoadDataset(Task):
    def __init__(
        self,
        state: RunState,
        startups: str,
        rounds: str,
        config: str,
        strict: bool = False,
    ) -> None:
        super().__init__()
        self.state = state
        self.startups = startups
        self.rounds = rounds
        self.config = config
        self.strict = strict

    def execute(self, r: TaskRuntime) -> None:
        run = self.state.run
        config = load_config(r.resources[self.config].stored_at)
        dataset, report = load_dataset(
            r.resources[self.startups].stored_at,
            r.resources[self.rounds].stored_at,
            config,
            startups_name=str(run.startups),
            rounds_name=str(run.rounds),
        )

        self.logger.info(
            "Loaded %d startups and %d rounds across %d ecosystems",
            len(dataset.startups),
            sum(len(i) for i in dataset.rounds.values()),
            len(dataset.ecosystems),
        )

        if self.strict and report.errors:
            raise MultipleDataErrors(
                "LoadDataset",
                [e.as_data_error() for e in report.errors],
            )

        self.state.config = config
        self.state.dataset = dataset
        self.state.report = report

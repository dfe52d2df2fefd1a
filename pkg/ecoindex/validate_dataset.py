# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import sys

from impuls import Task, TaskRuntime
from impuls.errors import MultipleDataErrors

from .outputs import ValidationOutput
from .run import RunState


class ValidateDataset(Task):
    """Prints record and error counts per input file and per ecosystem."""

    def __init__(self, state: RunState) -> None:
        super().__init__()
        self.state = state

    def execute(self, r: TaskRuntime) -> None:
        config, _ = self.state.loaded()
        report = self.state.report
        assert report is not None

        output = ValidationOutput(report, config.ecosystem_names)
        sys.stdout.write(output.summary())
        sys.stdout.flush()
        self.state.outputs.append(output)

        for error in report.errors:
            self.logger.debug("%s", error)

        if self.state.run.strict and report.errors:
            raise MultipleDataErrors(
                "ValidateDataset",
                [e.as_data_error() for e in report.errors],
            )

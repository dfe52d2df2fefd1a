# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from impuls import Task, TaskRuntime

from .outputs import save
from .run import RunState


class SaveOutputs(Task):
    def __init__(self, state: RunState) -> None:
        super().__init__()
        self.state = state

    def execute(self, r: TaskRuntime) -> None:
        path = self.state.run.output_path
        if path is None:
            return
        if not self.state.outputs:
            self.logger.warning("Nothing to save")
            return

        written = save(self.state.outputs, self.state.run.format, path)
        self.logger.info("Saved %d file(s)", len(written))

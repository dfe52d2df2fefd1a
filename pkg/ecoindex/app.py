# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from argparse import ArgumentParser, Namespace
from dataclasses import replace

from impuls import App, LocalResource, Pipeline, PipelineOptions, Task

from .compute import ComputeAcceleration, ComputeDistribution, ComputeNthYear, ComputeSpeed
from .indicators import DayZeroPolicy
from .load_dataset import LoadDataset
from .outputs import OutputFormat
from .run import (
    AccelerationMethod,
    Command,
    RunConfig,
    RunState,
    parse_cohorts,
    parse_n_range,
    parse_quantile,
)
from .save_outputs import SaveOutputs
from .validate_dataset import ValidateDataset

COMMAND_HELP = {
    Command.VALIDATE: "load the inputs and report record and error counts",
    Command.SPEED: "fundraising speed per ecosystem over 6-month bins",
    Command.ACCELERATION: "fundraising acceleration between cohorts or per startup",
    Command.NTH_YEAR: "speed during the n-th year of life, per founding year",
    Command.DISTRIBUTION: "distribution of funding across stages",
}


class EcoIndex(App):
    def add_arguments(self, parser: ArgumentParser) -> None:
        common = ArgumentParser(add_help=False)
        common.add_argument("--startups", required=True, help="startups file (.csv or .json)")
        common.add_argument("--rounds", required=True, help="funding rounds file (.csv or .json)")
        common.add_argument(
            "--config",
            help="ecosystem configuration (.json or .yaml), defaults to $ECOINDEX_CONFIG",
        )
        common.add_argument(
            "--ecosystem",
            action="append",
            metavar="NAME",
            help="restrict the run to the given ecosystem (repeatable)",
        )
        common.add_argument("--from-year", type=int, help="first year (inclusive)")
        common.add_argument("--to-year", type=int, help="last year (inclusive)")
        common.add_argument(
            "--cohorts",
            type=parse_cohorts,
            metavar="Y1-Y2,Y3-Y4",
            help="early and late founding cohorts (default 2010-2012,2014-2016)",
        )
        common.add_argument(
            "--n",
            type=parse_n_range,
            metavar="N..M",
            help="years of life to measure nth-year speed at (default 1..4)",
        )
        common.add_argument(
            "--quantile",
            type=parse_quantile,
            default=0.5,
            metavar="Q",
            help="quantile taken over startups (default 0.5, the median)",
        )
        common.add_argument(
            "--ppp",
            action="store_true",
            help="express amounts in local software-engineer years",
        )
        common.add_argument(
            "--day-zero",
            choices=[str(i) for i in DayZeroPolicy],
            default=DayZeroPolicy.CLAMP.value,
            help="treatment of rounds announced on the founding day",
        )
        common.add_argument(
            "--max-years",
            type=float,
            default=5.0,
            help="ignore observations made later than that many years after founding",
        )
        common.add_argument(
            "--mode",
            choices=[str(i) for i in AccelerationMethod],
            default=AccelerationMethod.COHORT.value,
            help="acceleration computation method",
        )
        common.add_argument(
            "--overlay",
            action="store_true",
            help="also output speed series of both cohorts (acceleration only)",
        )
        common.add_argument(
            "--format",
            choices=[str(i) for i in OutputFormat],
            default=OutputFormat.CSV.value,
            help="output format",
        )
        common.add_argument("--out", help="output file path (default <command>.<format>)")
        common.add_argument(
            "--strict",
            action="store_true",
            help="fail if any input record is rejected",
        )

        commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
        for command in Command:
            commands.add_parser(command.value, parents=[common], help=COMMAND_HELP[command])

    def prepare(self, args: Namespace, options: PipelineOptions) -> Pipeline:
        run = RunConfig.from_args(args)
        run.check_inputs()
        state = RunState(run)

        startups = f"startups{run.startups.suffix}"
        rounds = f"rounds{run.rounds.suffix}"
        config = f"config{run.config.suffix}"

        return Pipeline(
            # Inputs are local files, which are re-read on every invocation
            options=replace(options, force_run=True),
            resources={
                startups: LocalResource(run.startups),
                rounds: LocalResource(run.rounds),
                config: LocalResource(run.config),
            },
            tasks=[
                LoadDataset(
                    state,
                    startups,
                    rounds,
                    config,
                    strict=run.strict and run.command is not Command.VALIDATE,
                ),
                *self.command_tasks(state),
                SaveOutputs(state),
            ],
        )

    @staticmethod
    def command_tasks(state: RunState) -> list[Task]:
        match state.run.command:
            case Command.VALIDATE:
                return [ValidateDataset(state)]
            case Command.SPEED:
                return [ComputeSpeed(state)]
            case Command.ACCELERATION:
                return [ComputeAcceleration(state)]
            case Command.NTH_YEAR:
                return [ComputeNthYear(state)]
            case Command.DISTRIBUTION:
                return [ComputeDistribution(state)]

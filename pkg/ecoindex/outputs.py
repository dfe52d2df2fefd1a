# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import csv
import logging
from abc import ABC, abstractmethod
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from decimal import Decimal
from enum import StrEnum
from pathlib import Path
from typing import Any

from matplotlib.figure import Figure

from . import charts
from .distribution import Pyramid, StageDistribution
from .ingestion import FileLoad, LoadReport
from .model import FundingStage, IndicatorSeries
from .util import json

logger = logging.getLogger("Outputs")

SIGNIFICANT_DIGITS = 6

Row = list[str]


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


def format_value(x: float | Decimal) -> str:
    """Formats a derived value with 6 significant digits, without an exponent.

    >>> format_value(1826250.0)
    '1826250'
    >>> format_value(2739.7260273972602)
    '2739.73'
    >>> format_value(1.5e-7)
    '0.00000015'
    >>> format_value(-0.0)
    '0'
    """
    if x == 0:
        return "0"
    return format(Decimal(f"{x:.{SIGNIFICANT_DIGITS}g}"), "f")


def rounded(x: float | Decimal) -> float:
    """Value as written into CSV tables, for JSON documents."""
    return float(format_value(x))


class Output(ABC):
    """A single table of results, renderable as CSV, JSON or SVG charts."""

    name: str

    @abstractmethod
    def table(self) -> tuple[Row, list[Row]]: ...

    @abstractmethod
    def document(self) -> dict[str, Any]: ...

    @abstractmethod
    def charts(self) -> list[tuple[str, Figure]]:
        """Returns (name, figure) pairs; an empty name marks the only chart of an output."""
        ...


@dataclass
class SeriesOutput(Output):
    name: str
    title: str
    x_label: str
    series: Sequence[IndicatorSeries]
    variant_column: str | None = None

    def table(self) -> tuple[Row, list[Row]]:
        unit = self.series[0].unit
        header = [
            "ecosystem",
            *([self.variant_column] if self.variant_column else []),
            "bin_index",
            "bin_label",
            f"value_{unit.slug}",
            "sample_count",
        ]
        rows = [
            [
                s.ecosystem,
                *([s.variant] if self.variant_column else []),
                str(pt.index),
                pt.label,
                format_value(pt.value),
                str(pt.sample_count),
            ]
            for s in self.series
            for pt in s.points
        ]
        return header, rows

    def document(self) -> dict[str, Any]:
        return {
            "indicator": str(self.series[0].indicator),
            "unit": str(self.series[0].unit),
            "series": [_series_document(s) for s in self.series],
        }

    def charts(self) -> list[tuple[str, Figure]]:
        if self.variant_column:
            label = lambda s: f"{s.ecosystem} {s.variant}"  # noqa: E731
        else:
            label = lambda s: s.ecosystem  # noqa: E731
        return [("", charts.series_chart(self.series, self.title, self.x_label, label))]


@dataclass
class NthYearOutput(Output):
    series_by_n: Mapping[int, Sequence[IndicatorSeries]]
    name: str = "nth-year"

    def _all(self) -> Iterable[tuple[int, IndicatorSeries]]:
        for n, series in sorted(self.series_by_n.items()):
            for s in series:
                yield n, s

    def table(self) -> tuple[Row, list[Row]]:
        unit = next(s.unit for _, s in self._all())
        header = ["ecosystem", "n", "founding_year", f"value_{unit.slug}", "sample_count"]
        rows = [
            [s.ecosystem, str(n), str(pt.index), format_value(pt.value), str(pt.sample_count)]
            for n, s in self._all()
            for pt in s.points
        ]
        return header, rows

    def document(self) -> dict[str, Any]:
        first = next(s for _, s in self._all())
        return {
            "indicator": str(first.indicator),
            "unit": str(first.unit),
            "series": [{"n": n, **_series_document(s)} for n, s in self._all()],
        }

    def charts(self) -> list[tuple[str, Figure]]:
        ecosystems = list(dict.fromkeys(s.ecosystem for _, s in self._all()))
        return [
            (
                charts.slug(ecosystem),
                charts.series_chart(
                    [s for _, s in self._all() if s.ecosystem == ecosystem],
                    f"Fundraising speed in the n-th year - {ecosystem}",
                    "founding year",
                    label=lambda s: s.variant,
                ),
            )
            for ecosystem in ecosystems
        ]


@dataclass
class DistributionOutput(Output):
    period: tuple[int, int]
    distributions: Sequence[StageDistribution]
    name: str = "distribution"

    def table(self) -> tuple[Row, list[Row]]:
        header = ["ecosystem", "stage", "amount_usd", "amount_share", "count", "count_share"]
        rows = [
            [
                d.ecosystem,
                str(stage),
                _exact(d.by_stage[stage].amount_usd),
                format_value(d.by_stage[stage].amount_share),
                str(d.by_stage[stage].count),
                format_value(d.by_stage[stage].count_share),
            ]
            for d in self.distributions
            for stage in FundingStage
        ]
        return header, rows

    def document(self) -> dict[str, Any]:
        return {
            "indicator": "StageDistribution",
            "unit": "share",
            "period": list(self.period),
            "series": [
                {
                    "ecosystem": d.ecosystem,
                    "total_amount_usd": d.total_amount_usd,
                    "total_count": d.total_count,
                    "points": [
                        {
                            "index": i,
                            "label": str(stage),
                            "amount_usd": d.by_stage[stage].amount_usd,
                            "amount_share": rounded(d.by_stage[stage].amount_share),
                            "count": d.by_stage[stage].count,
                            "count_share": rounded(d.by_stage[stage].count_share),
                        }
                        for i, stage in enumerate(FundingStage)
                    ],
                }
                for d in self.distributions
            ],
        }

    def charts(self) -> list[tuple[str, Figure]]:
        title = f"Funding by stage, {self.period[0]}-{self.period[1]}"
        return [("", charts.stage_chart(self.distributions, title))]


@dataclass
class PyramidOutput(Output):
    period: tuple[int, int]
    pyramid: Pyramid
    name: str = "pyramid"

    def table(self) -> tuple[Row, list[Row]]:
        header = ["view", "stage", self.pyramid.left, self.pyramid.right]
        rows = [
            [
                str(row.view),
                str(row.stage),
                format_value(row.left_share),
                format_value(row.right_share),
            ]
            for row in self.pyramid.rows
        ]
        return header, rows

    def document(self) -> dict[str, Any]:
        return {
            "indicator": "StageDistribution",
            "unit": "share",
            "period": list(self.period),
            "left": self.pyramid.left,
            "right": self.pyramid.right,
            "rows": [
                {
                    "view": str(row.view),
                    "stage": str(row.stage),
                    "left": rounded(row.left_share),
                    "right": rounded(row.right_share),
                }
                for row in self.pyramid.rows
            ],
        }

    def charts(self) -> list[tuple[str, Figure]]:
        title = f"{self.pyramid.left} vs {self.pyramid.right}"
        return [("", charts.pyramid_chart(self.pyramid, title))]


@dataclass
class ValidationOutput(Output):
    report: LoadReport
    ecosystems: Sequence[str]
    name: str = "validation"

    def _files(self) -> list[FileLoad[Any]]:
        return [self.report.startups, self.report.rounds]

    def table(self) -> tuple[Row, list[Row]]:
        header = ["file", "total", "accepted", "excluded", "errors"]
        rows = [
            [f.file, str(f.total), str(len(f.records)), str(f.excluded), str(len(f.errors))]
            for f in self._files()
        ]
        return header, rows

    def document(self) -> dict[str, Any]:
        return {
            "files": [
                {
                    "file": f.file,
                    "total": f.total,
                    "accepted": len(f.records),
                    "excluded": f.excluded,
                    "errors": len(f.errors),
                    "reasons": {str(k): v for k, v in sorted(f.error_counts().items())},
                }
                for f in self._files()
            ],
            "ecosystems": [
                {"ecosystem": e, "startups": startups, "rounds": rounds}
                for e, (startups, rounds) in self.report.per_ecosystem(self.ecosystems).items()
            ],
            "errors": [
                {
                    "file": e.file,
                    "line_or_index": e.line_or_index,
                    "field": e.field,
                    "reason": str(e.reason),
                    "detail": e.detail,
                }
                for e in self.report.errors
            ],
        }

    def charts(self) -> list[tuple[str, Figure]]:
        return []

    def summary(self) -> str:
        lines = list[str]()
        for f in self._files():
            lines.append(
                f"{f.file}: {f.total} records, {len(f.records)} accepted, "
                f"{f.excluded} excluded, {len(f.errors)} errors"
            )
            lines.extend(f"  {k}: {v}" for k, v in sorted(f.error_counts().items()))
        for e, (startups, rounds) in self.report.per_ecosystem(self.ecosystems).items():
            lines.append(f"{e}: {startups} startups, {rounds} rounds")
        return "\n".join(lines) + "\n"


def save(outputs: Sequence[Output], format: OutputFormat, base: Path) -> list[Path]:
    """Writes all outputs in the requested format. A single file goes straight to `base`,
    multiple files are named `<stem>-<name><suffix>` next to it."""
    files = list[tuple[str, Output, Figure | None]]()
    for output in outputs:
        prefix = output.name if len(outputs) > 1 else ""
        if format is OutputFormat.SVG:
            for chart_name, fig in output.charts():
                files.append((_join(prefix, chart_name), output, fig))
        else:
            files.append((prefix, output, None))

    written = list[Path]()
    for name, output, fig in files:
        path = base if len(files) == 1 else base.with_name(f"{base.stem}-{name}{base.suffix}")
        path.parent.mkdir(parents=True, exist_ok=True)
        match format:
            case OutputFormat.CSV:
                write_csv(output, path)
            case OutputFormat.JSON:
                write_json(output, path)
            case OutputFormat.SVG:
                assert fig is not None
                charts.save_svg(fig, path)
        logger.info("Wrote %s", path)
        written.append(path)
    return written


def write_csv(output: Output, path: Path) -> None:
    header, rows = output.table()
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_json(output: Output, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(output.document(), readable=True))
        f.write("\n")


def _series_document(s: IndicatorSeries) -> dict[str, Any]:
    return {
        "ecosystem": s.ecosystem,
        **({"variant": s.variant} if s.variant else {}),
        "points": [
            {
                "index": pt.index,
                "label": pt.label,
                "value": rounded(pt.value),
                "n": pt.sample_count,
            }
            for pt in s.points
        ],
    }


def _exact(x: Decimal) -> str:
    """
    >>> _exact(Decimal("4000000.00"))
    '4000000'
    >>> _exact(Decimal("12.50"))
    '12.5'
    """
    s = format(x, "f")
    return s.rstrip("0").rstrip(".") if "." in s else s


def _join(*parts: str) -> str:
    return "-".join(p for p in parts if p)

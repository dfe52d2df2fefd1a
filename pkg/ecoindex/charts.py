# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import re
from collections.abc import Callable, Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
from matplotlib.ticker import FuncFormatter  # noqa: E402

from .distribution import Pyramid, StageDistribution, View  # noqa: E402
from .model import FundingStage, IndicatorSeries  # noqa: E402

# Keep SVG output stable between runs: fixed ids, no timestamps, text kept as text
matplotlib.rcParams["svg.hashsalt"] = "ecoindex"
matplotlib.rcParams["svg.fonttype"] = "none"

FIGSIZE = (8.0, 5.0)

LEFT_COLOR = "#2a9d4b"
RIGHT_COLOR = "#1fb5c9"


def series_chart(
    series: Sequence[IndicatorSeries],
    title: str,
    x_label: str,
    label: Callable[[IndicatorSeries], str] = lambda s: s.ecosystem,
) -> Figure:
    """Overlays several series as lines, one labelled line per series."""
    fig = Figure(figsize=FIGSIZE)
    ax = fig.subplots()

    for s in series:
        ax.plot(
            [pt.index for pt in s.points],
            s.values(),
            marker="o",
            label=label(s),
            gid=f"series-{slug(label(s))}",
        )

    ticks = sorted({pt.index for s in series for pt in s.points})
    labels = {pt.index: pt.label or str(pt.index) for s in series for pt in s.points}
    ax.set_xticks(ticks, [labels[i] for i in ticks], rotation=45, ha="right", fontsize=8)

    ax.set_title(title)
    ax.set_xlabel(x_label)
    ax.set_ylabel(str(series[0].unit) if series else "")
    ax.grid(True, alpha=0.3)
    ax.axhline(0, color="black", linewidth=0.5)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def pyramid_chart(pyramid: Pyramid, title: str) -> Figure:
    """Back-to-back horizontal bars: amount shares on top, round counts below."""
    fig = Figure(figsize=(8.0, 8.0))
    axes = fig.subplots(2, 1)
    stages = list(FundingStage)
    positions = list(range(len(stages)))

    for ax, view in zip(axes, View):
        rows = {row.stage: row for row in pyramid.view(view)}
        ax.barh(
            positions,
            [-rows[stage].left_share for stage in stages],
            color=LEFT_COLOR,
            label=pyramid.left,
            gid=f"series-{slug(pyramid.left)}-{view}",
        )
        ax.barh(
            positions,
            [rows[stage].right_share for stage in stages],
            color=RIGHT_COLOR,
            label=pyramid.right,
            gid=f"series-{slug(pyramid.right)}-{view}",
        )
        ax.set_yticks(positions, [str(stage) for stage in stages])
        ax.set_xlim(-1.0, 1.0)
        ax.xaxis.set_major_formatter(FuncFormatter(lambda x, _: f"{abs(x):.0%}"))
        ax.axvline(0, color="black", linewidth=0.5)
        ax.set_title(f"{title} - share of {_view_name(view)}")
        ax.legend(loc="lower right", fontsize=8)

    fig.tight_layout()
    return fig


def stage_chart(distributions: Sequence[StageDistribution], title: str) -> Figure:
    """Grouped horizontal bars of stage shares, one group per ecosystem."""
    fig = Figure(figsize=(8.0, 8.0))
    axes = fig.subplots(2, 1)
    stages = list(FundingStage)
    height = 0.8 / max(len(distributions), 1)

    for ax, view in zip(axes, View):
        for i, d in enumerate(distributions):
            ax.barh(
                [p + i * height for p in range(len(stages))],
                [d.share(stage, view) for stage in stages],
                height=height,
                label=d.ecosystem,
                gid=f"series-{slug(d.ecosystem)}-{view}",
            )
        ax.set_yticks(
            [p + 0.4 - height / 2 for p in range(len(stages))],
            [str(stage) for stage in stages],
        )
        ax.set_xlim(0.0, 1.0)
        ax.xaxis.set_major_formatter(FuncFormatter(lambda x, _: f"{x:.0%}"))
        ax.set_title(f"{title} - share of {_view_name(view)}")
        ax.legend(loc="lower right", fontsize=8)

    fig.tight_layout()
    return fig


def save_svg(fig: Figure, path: Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})


def slug(x: str) -> str:
    """
    >>> slug("Silicon Valley")
    'silicon-valley'
    """
    return re.sub(r"[^a-z0-9]+", "-", x.lower()).strip("-")


def _view_name(view: View) -> str:
    return "funding amount" if view is View.AMOUNT else "rounds"

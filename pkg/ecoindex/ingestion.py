# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import csv
import hashlib
import logging
import re
from collections import Counter, defaultdict
from collections.abc import Callable, Collection, Iterable, Mapping, Sequence
from dataclasses import dataclass
from datetime import date
from decimal import Decimal, InvalidOperation
from enum import StrEnum
from operator import attrgetter
from pathlib import Path
from types import MappingProxyType
from typing import Any, Self

import ijson
from impuls.errors import DataError

from .config import AnalysisConfig, StageMap
from .model import EcosystemConfig, FundingRound, Startup, matching_ecosystems
from .util import json

logger = logging.getLogger("Ingestion")

StrPath = str | Path

ISO_DATE = re.compile(r"\d{4}-\d{2}-\d{2}", re.ASCII)


class Format(StrEnum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def from_path(cls, path: StrPath) -> "Format":
        """Guesses the file format from its suffix, defaulting to CSV.

        >>> Format.from_path("rounds.json")
        <Format.JSON: 'json'>
        >>> Format.from_path("rounds.txt")
        <Format.CSV: 'csv'>
        """
        return cls.JSON if Path(path).suffix.lower() == ".json" else cls.CSV


class Reason(StrEnum):
    MISSING_FIELD = "MissingField"
    BAD_DATE = "BadDate"
    BAD_AMOUNT = "BadAmount"
    UNKNOWN_STAGE = "UnknownStage"
    ROUND_BEFORE_FOUNDING = "RoundBeforeFounding"
    ORPHAN_ROUND = "OrphanRound"
    DUPLICATE_ID = "DuplicateId"


@dataclass(frozen=True)
class RawRecordError:
    file: str
    line_or_index: int
    field: str
    reason: Reason
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.file}:{self.line_or_index}: {self.reason} ({self.field})"
        return f"{s}: {self.detail}" if self.detail else s

    def as_data_error(self) -> DataError:
        return DataError(str(self))


@dataclass(frozen=True)
class FileLoad[T]:
    """Outcome of loading a single input file.

    Every input record ends up in exactly one of `records`, `errors`
    or the geography-excluded count.
    """

    file: str
    records: tuple[T, ...]
    errors: tuple[RawRecordError, ...]
    excluded: int = 0
    excluded_ids: frozenset[str] = frozenset()

    @property
    def total(self) -> int:
        return len(self.records) + self.excluded + len(self.errors)

    def error_counts(self) -> Counter[Reason]:
        return Counter(i.reason for i in self.errors)


@dataclass(frozen=True)
class Dataset:
    startups: Mapping[str, Startup]
    rounds: Mapping[str, tuple[FundingRound, ...]]
    provenance: tuple[tuple[str, str], ...] = ()

    @classmethod
    def build(
        cls,
        startups: Iterable[Startup],
        rounds: Iterable[FundingRound] = (),
        provenance: Iterable[tuple[str, str]] = (),
    ) -> Self:
        by_id = dict[str, Startup]()
        for startup in startups:
            if startup.id in by_id:
                raise ValueError(f"duplicate startup id: {startup.id!r}")
            by_id[startup.id] = startup

        grouped = defaultdict[str, list[FundingRound]](list)
        for round in rounds:
            if round.startup_id not in by_id:
                raise ValueError(f"round references unknown startup {round.startup_id!r}")
            grouped[round.startup_id].append(round)

        return cls(
            startups=MappingProxyType(by_id),
            rounds=MappingProxyType(
                {
                    startup_id: tuple(sorted(grouped[startup_id], key=attrgetter("announced")))
                    for startup_id in by_id
                    if startup_id in grouped
                }
            ),
            provenance=tuple(provenance),
        )

    def rounds_of(self, startup_id: str) -> tuple[FundingRound, ...]:
        return self.rounds.get(startup_id, ())

    def all_rounds(self) -> Iterable[FundingRound]:
        for rounds in self.rounds.values():
            yield from rounds

    def startups_in(self, ecosystem: str) -> list[Startup]:
        return [s for s in self.startups.values() if s.ecosystem == ecosystem]

    @property
    def ecosystems(self) -> list[str]:
        return list(dict.fromkeys(s.ecosystem for s in self.startups.values()))

    def with_amounts(
        self,
        transform: Callable[[Startup, Decimal], Decimal],
    ) -> "Dataset":
        """Returns a copy of the dataset with every known amount passed through `transform`."""
        return Dataset.build(
            self.startups.values(),
            (
                FundingRound(
                    r.startup_id,
                    r.announced,
                    transform(self.startups[r.startup_id], r.amount_usd),
                    r.stage,
                )
                if r.amount_usd is not None
                else r
                for r in self.all_rounds()
            ),
            self.provenance,
        )


@dataclass(frozen=True)
class LoadReport:
    startups: FileLoad[Startup]
    rounds: FileLoad[FundingRound]

    @property
    def errors(self) -> list[RawRecordError]:
        return [*self.startups.errors, *self.rounds.errors]

    def per_ecosystem(self, ecosystems: Sequence[str]) -> dict[str, tuple[int, int]]:
        """Returns the number of accepted startups and rounds of every ecosystem."""
        ecosystem_of = {s.id: s.ecosystem for s in self.startups.records}
        startups = Counter(s.ecosystem for s in self.startups.records)
        rounds = Counter(ecosystem_of[r.startup_id] for r in self.rounds.records)
        return {e: (startups[e], rounds[e]) for e in ecosystems}


def load_startups(
    path: StrPath,
    format: Format,
    ecosystems: Sequence[EcosystemConfig],
    name: str | None = None,
) -> FileLoad[Startup]:
    file = name or str(path)
    startups = list[Startup]()
    errors = list[RawRecordError]()
    excluded = set[str]()
    seen = set[str]()

    for line, raw in read_records(path, format, file):
        id = raw.get("id", "")
        if not id:
            errors.append(RawRecordError(file, line, "id", Reason.MISSING_FIELD))
            continue

        founded_str = raw.get("founded", "")
        if not founded_str:
            errors.append(RawRecordError(file, line, "founded", Reason.MISSING_FIELD))
            continue

        founded = parse_date(founded_str)
        if founded is None:
            errors.append(RawRecordError(file, line, "founded", Reason.BAD_DATE, founded_str))
            continue

        if id in seen:
            errors.append(RawRecordError(file, line, "id", Reason.DUPLICATE_ID, id))
            continue
        seen.add(id)

        matches = matching_ecosystems(
            ecosystems,
            raw.get("city", ""),
            raw.get("region", ""),
            raw.get("country", ""),
        )
        if not matches:
            excluded.add(id)
            continue
        elif len(matches) > 1:
            logger.warning(
                "Startup %s matches multiple ecosystems (%s) - assigning to %s",
                id,
                ", ".join(matches),
                matches[0],
            )

        startups.append(Startup(id, raw.get("name", ""), founded, matches[0]))

    result = FileLoad(file, tuple(startups), tuple(errors), len(excluded), frozenset(excluded))
    _log_load(result)
    return result


def load_rounds(
    path: StrPath,
    format: Format,
    startups: Mapping[str, Startup] | Iterable[Startup],
    stage_map: StageMap,
    excluded_ids: Collection[str] = frozenset(),
    name: str | None = None,
) -> FileLoad[FundingRound]:
    file = name or str(path)
    if not isinstance(startups, Mapping):
        startups = {s.id: s for s in startups}
    rounds = list[FundingRound]()
    errors = list[RawRecordError]()
    excluded = 0

    for line, raw in read_records(path, format, file):
        missing = next((f for f in ("startup_id", "announced", "stage") if not raw.get(f)), None)
        if missing:
            errors.append(RawRecordError(file, line, missing, Reason.MISSING_FIELD))
            continue

        startup_id = raw["startup_id"]
        announced = parse_date(raw["announced"])
        if announced is None:
            errors.append(
                RawRecordError(file, line, "announced", Reason.BAD_DATE, raw["announced"])
            )
            continue

        try:
            amount = parse_amount(raw.get("amount_usd", ""))
        except ValueError:
            errors.append(
                RawRecordError(file, line, "amount_usd", Reason.BAD_AMOUNT, raw["amount_usd"])
            )
            continue

        stage = stage_map.resolve(raw["stage"])
        if stage is None:
            errors.append(RawRecordError(file, line, "stage", Reason.UNKNOWN_STAGE, raw["stage"]))
            continue

        startup = startups.get(startup_id)
        if startup is None:
            if startup_id in excluded_ids:
                excluded += 1
            else:
                errors.append(
                    RawRecordError(file, line, "startup_id", Reason.ORPHAN_ROUND, startup_id)
                )
            continue

        if announced < startup.founded:
            errors.append(
                RawRecordError(
                    file,
                    line,
                    "announced",
                    Reason.ROUND_BEFORE_FOUNDING,
                    f"{announced.isoformat()} < {startup.founded.isoformat()}",
                )
            )
            continue

        rounds.append(FundingRound(startup_id, announced, amount, stage))

    result = FileLoad(file, tuple(rounds), tuple(errors), excluded)
    _log_load(result)
    return result


def filter_founded(dataset: Dataset, from_year: int, to_year: int) -> Dataset:
    if from_year > to_year:
        raise ValueError(f"empty founding-year range: {from_year} > {to_year}")
    startups = [s for s in dataset.startups.values() if from_year <= s.founded.year <= to_year]
    return Dataset.build(
        startups,
        (r for s in startups for r in dataset.rounds_of(s.id)),
        dataset.provenance,
    )


def load_dataset(
    startups_path: StrPath,
    rounds_path: StrPath,
    config: AnalysisConfig,
    startups_name: str | None = None,
    rounds_name: str | None = None,
) -> tuple[Dataset, LoadReport]:
    startups = load_startups(
        startups_path,
        Format.from_path(startups_name or startups_path),
        config.ecosystems,
        startups_name,
    )
    rounds = load_rounds(
        rounds_path,
        Format.from_path(rounds_name or rounds_path),
        startups.records,
        config.stage_map,
        startups.excluded_ids,
        rounds_name,
    )
    dataset = Dataset.build(
        startups.records,
        rounds.records,
        provenance=[
            (startups.file, file_digest(startups_path)),
            (rounds.file, file_digest(rounds_path)),
        ],
    )
    return dataset, LoadReport(startups, rounds)


def read_records(
    path: StrPath,
    format: Format,
    name: str | None = None,
) -> Iterable[tuple[int, dict[str, str]]]:
    """Yields (line or index, fields) pairs. Undecodable or truncated files raise DataError."""
    name = name or str(path)
    try:
        yield from _read_records(path, format)
    except UnicodeDecodeError as e:
        raise DataError(f"{name}: not a valid UTF-8 file ({e.reason} at byte {e.start})") from None
    except (csv.Error, ijson.JSONError) as e:
        raise DataError(f"{name}: malformed {format.value.upper()}: {e}") from None


def _read_records(path: StrPath, format: Format) -> Iterable[tuple[int, dict[str, str]]]:
    match format:
        case Format.CSV:
            with open(path, "r", encoding="utf-8", newline="") as f:
                reader = csv.DictReader(f)
                for row in reader:
                    yield reader.line_num, {k: _text(v) for k, v in row.items() if k is not None}

        case Format.JSON:
            with open(path, "rb") as f:
                for i, item in enumerate(json.list_iter(f, "item")):
                    if isinstance(item, Mapping):
                        yield i, {str(k): _text(v) for k, v in item.items()}  # type: ignore
                    else:
                        yield i, {}


def parse_date(x: str) -> date | None:
    """Parses an ISO calendar date, returning None for invalid values.

    >>> parse_date("2010-07-20").isoformat()
    '2010-07-20'
    >>> parse_date("13/45/20") is None
    True
    >>> parse_date("20100720") is None
    True
    """
    x = x.strip()
    if not ISO_DATE.fullmatch(x):
        return None
    try:
        return date.fromisoformat(x)
    except ValueError:
        return None


def parse_amount(x: str) -> Decimal | None:
    """Parses a non-negative dollar amount. Empty strings mean an unknown amount.

    >>> parse_amount("1500000.50")
    Decimal('1500000.50')
    >>> parse_amount("") is None
    True
    >>> parse_amount("-5")
    Traceback (most recent call last):
    ...
    ValueError: invalid amount: '-5'
    """
    x = x.strip()
    if not x:
        return None
    try:
        amount = Decimal(x)
    except InvalidOperation:
        raise ValueError(f"invalid amount: {x!r}") from None
    if not amount.is_finite() or amount < 0:
        raise ValueError(f"invalid amount: {x!r}")
    return amount


def file_digest(path: StrPath) -> str:
    with open(path, "rb") as f:
        return hashlib.file_digest(f, "sha256").hexdigest()


def _text(x: Any) -> str:
    return "" if x is None else str(x).strip()


def _log_load[T](result: FileLoad[T]) -> None:
    logger.debug(
        "%s: %d records, %d accepted, %d excluded, %d errors",
        result.file,
        result.total,
        len(result.records),
        result.excluded,
        len(result.errors),
    )
    if result.errors:
        logger.warning(
            "%s: rejected %d / %d records (%s)",
            result.file,
            len(result.errors),
            result.total,
            ", ".join(f"{k}: {v}" for k, v in sorted(result.error_counts().items())),
        )

# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any, NotRequired, TypedDict, cast

import yaml

from .errors import ConfigError
from .model import EcosystemConfig, FundingStage, LocationMatcher

FALLBACK_LABEL = "*"

DEFAULT_STAGE_MAP: Mapping[str, FundingStage] = {
    "seed": FundingStage.SEED,
    "angel": FundingStage.SEED,
    "pre-seed": FundingStage.SEED,
    "pre seed": FundingStage.SEED,
    "series a": FundingStage.SERIES_A,
    "series b": FundingStage.SERIES_B,
    "series c": FundingStage.SERIES_C,
    "series d": FundingStage.SERIES_D,
    "series e": FundingStage.SERIES_E,
    FALLBACK_LABEL: FundingStage.OTHER,
}


class MatchConfig(TypedDict):
    cities: NotRequired[list[str]]
    regions: NotRequired[list[str]]
    countries: NotRequired[list[str]]


class EcosystemConfigData(TypedDict):
    name: str
    match: MatchConfig
    ppp_divisor_usd: NotRequired[str | int | float]


class ConfigData(TypedDict):
    ecosystems: list[EcosystemConfigData]
    stage_map: NotRequired[dict[str, str]]


class StageMap:
    """Case-insensitive mapping from raw round labels to canonical funding stages.

    >>> m = StageMap.default()
    >>> m.resolve("Series_B")
    <FundingStage.SERIES_B: 'SeriesB'>
    >>> m.resolve("convertible note")
    <FundingStage.OTHER: 'Other'>
    >>> StageMap({"seed": FundingStage.SEED}).resolve("grant") is None
    True
    """

    def __init__(self, mapping: Mapping[str, FundingStage]) -> None:
        self.fallback = mapping.get(FALLBACK_LABEL)
        self.labels = {
            normalize_label(label): stage
            for label, stage in mapping.items()
            if label != FALLBACK_LABEL
        }

    def __repr__(self) -> str:
        return f"StageMap({self.labels!r}, fallback={self.fallback!r})"

    def resolve(self, raw_label: str) -> FundingStage | None:
        return self.labels.get(normalize_label(raw_label), self.fallback)

    @classmethod
    def default(cls) -> "StageMap":
        return cls(DEFAULT_STAGE_MAP)

    @classmethod
    def from_config(cls, data: Mapping[str, str]) -> "StageMap":
        if not isinstance(data, Mapping):  # type: ignore
            raise ConfigError("stage_map must be an object")
        mapping = dict[str, FundingStage]()
        for label, stage in data.items():
            if not isinstance(stage, str):  # type: ignore
                raise ConfigError(f"stage_map entry {label!r}: stage must be a string")
            try:
                mapping[str(label)] = FundingStage.parse(stage)
            except ValueError as e:
                raise ConfigError(f"stage_map entry {label!r}: {e}") from None
        return cls(mapping)


@dataclass(frozen=True)
class AnalysisConfig:
    ecosystems: tuple[EcosystemConfig, ...]
    stage_map: StageMap = field(default_factory=StageMap.default, compare=False)

    def __post_init__(self) -> None:
        seen = set[str]()
        for ecosystem in self.ecosystems:
            if ecosystem.name in seen:
                raise ConfigError(f"duplicate ecosystem name: {ecosystem.name!r}")
            seen.add(ecosystem.name)

    @property
    def ecosystem_names(self) -> list[str]:
        return [e.name for e in self.ecosystems]

    def get(self, name: str) -> EcosystemConfig:
        for ecosystem in self.ecosystems:
            if ecosystem.name == name:
                return ecosystem
        raise ConfigError(f"unknown ecosystem: {name!r}")

    def select(self, names: Iterable[str] = ()) -> list[EcosystemConfig]:
        """Returns the requested ecosystems (all when `names` is empty), in configuration order."""
        wanted = set(names)
        for name in wanted:
            self.get(name)
        return [e for e in self.ecosystems if not wanted or e.name in wanted]


def normalize_label(label: str) -> str:
    return " ".join(label.replace("_", " ").split()).casefold()


def load_config(path: str | Path) -> AnalysisConfig:
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"{path}: {e}") from None
    return parse_config(data)


def parse_config(data: Any) -> AnalysisConfig:
    if not isinstance(data, Mapping) or "ecosystems" not in data:
        raise ConfigError("configuration must be an object with an 'ecosystems' key")
    cfg = cast(ConfigData, data)
    if not isinstance(cfg["ecosystems"], list):  # type: ignore
        raise ConfigError("'ecosystems' must be a list")

    ecosystems = tuple(parse_ecosystem(i) for i in cfg["ecosystems"])
    if not ecosystems:
        raise ConfigError("configuration defines no ecosystems")

    if "stage_map" in cfg:
        stage_map = StageMap.from_config(cfg["stage_map"])
    else:
        stage_map = StageMap.default()

    return AnalysisConfig(ecosystems, stage_map)


def parse_ecosystem(data: EcosystemConfigData) -> EcosystemConfig:
    if not isinstance(data, Mapping):  # type: ignore
        raise ConfigError(f"ecosystem must be an object, got {data!r}")
    name = str(data.get("name", "")).strip()
    match = data.get("match", {})
    if not isinstance(match, Mapping):  # type: ignore
        raise ConfigError(f"ecosystem {name!r}: match must be an object")
    unused_keys = set(match.keys()) - {"cities", "regions", "countries"}
    if unused_keys:
        raise ConfigError(
            f"ecosystem {name!r}: unknown match keys: {', '.join(sorted(unused_keys))}"
        )

    matcher = LocationMatcher(
        cities=_string_list(match.get("cities", []), name),
        regions=_string_list(match.get("regions", []), name),
        countries=_string_list(match.get("countries", []), name),
    )
    if not matcher:
        raise ConfigError(f"ecosystem {name!r} has no match rules")

    try:
        divisor = Decimal(str(data.get("ppp_divisor_usd", 1)))
    except InvalidOperation:
        raise ConfigError(
            f"ecosystem {name!r}: invalid ppp_divisor_usd {data.get('ppp_divisor_usd')!r}"
        ) from None

    return EcosystemConfig(name, matcher, divisor)


def _string_list(x: Sequence[str] | str, ecosystem: str) -> list[str]:
    if isinstance(x, str):
        return [x]
    if not isinstance(x, Sequence):  # type: ignore
        raise ConfigError(f"ecosystem {ecosystem!r}: match rules must be lists of strings")
    return [str(i) for i in x]

# SPDX-FileCopyrightText: 2026 EcoIndex contributors
# SPDX-License-Identifier: MIT

import json
from pathlib import Path
from typing import Any

import pytest

from ecoindex.config import AnalysisConfig, load_config
from ecoindex.ingestion import Dataset, LoadReport, load_dataset

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def manifest() -> dict[str, Any]:
    with (FIXTURES / "manifest.json").open(encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def fixture_config() -> AnalysisConfig:
    return load_config(FIXTURES / "config.json")


@pytest.fixture(scope="session")
def fixture_load(fixture_config: AnalysisConfig) -> tuple[Dataset, LoadReport]:
    return load_dataset(
        FIXTURES / "startups.csv",
        FIXTURES / "rounds.csv",
        fixture_config,
        startups_name="startups.csv",
        rounds_name="rounds.csv",
    )


@pytest.fixture(scope="session")
def fixture_dataset(fixture_load: tuple[Dataset, LoadReport]) -> Dataset:
    return fixture_load[0]

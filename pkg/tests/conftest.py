from __future__ import annotations

import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture()
def basic_snapshot_doc() -> dict:
    return json.loads((FIXTURES / "snapshot-basic.json").read_text())


@pytest.fixture()
def zero_snapshot_doc() -> dict:
    return json.loads((FIXTURES / "snapshot-zero.json").read_text())


@pytest.fixture()
def inventory_doc() -> dict:
    return json.loads((FIXTURES / "inventory-12.json").read_text())

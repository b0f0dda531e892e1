from pathlib import Path

import pytest

from qirk.config import QirkConfig
from qirk.embed import TrigramHashProvider
from qirk.index import build_index
from qirk.pipeline import AskEngine
from qirk.store import ingest_dump

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "data" / "fixture.jsonl"


@pytest.fixture(scope="session")
def fixture_store():
    store, report = ingest_dump(FIXTURE_PATH)
    assert not report.rejected, report.rejected
    return store


@pytest.fixture(scope="session")
def fixture_index(fixture_store):
    return build_index(fixture_store, TrigramHashProvider())


@pytest.fixture(scope="session")
def engine(fixture_store, fixture_index):
    return AskEngine(fixture_store, fixture_index, QirkConfig())

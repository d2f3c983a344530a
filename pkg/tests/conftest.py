import json
from pathlib import Path

import pytest

from tilt.model.parse import parse

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_PATH = DATA_DIR / "golden.json"


@pytest.fixture(scope="session")
def golden_bytes() -> bytes:
    return GOLDEN_PATH.read_bytes()


@pytest.fixture()
def golden_tree(golden_bytes):
    return json.loads(golden_bytes)


@pytest.fixture()
def golden_doc(golden_bytes):
    return parse(golden_bytes)

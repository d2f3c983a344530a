import contextlib
import copy
import json
import socket
import subprocess
import sys
import time
from pathlib import Path

import httpx
import pytest

GOLDEN_PATH = Path(__file__).resolve().parents[2] / "tests" / "data" / "golden.json"
_GOLDEN_TREE = json.loads(GOLDEN_PATH.read_bytes())


@contextlib.contextmanager
def serve_hub(data_dir):
    """Run a real hub subprocess on a free loopback port."""
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    proc = subprocess.Popen(
        [sys.executable, "-c", "from tilt.cli import main; main()",
         "serve", "--addr", f"127.0.0.1:{port}", "--data", str(data_dir)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    base = f"http://127.0.0.1:{port}"
    try:
        deadline = time.monotonic() + 20
        while True:
            if proc.poll() is not None:
                raise RuntimeError("hub exited during startup")
            try:
                if httpx.get(f"{base}/health", timeout=1.0).status_code == 200:
                    break
            except httpx.HTTPError:
                pass
            if time.monotonic() > deadline:
                raise RuntimeError("hub did not come up in time")
            time.sleep(0.1)
        yield base
    finally:
        proc.terminate()
        proc.wait(timeout=10)


@pytest.fixture(scope="module")
def hub_url(tmp_path_factory):
    """One hub shared across a module; tests must use their own document ids."""
    with serve_hub(tmp_path_factory.mktemp("hub")) as base:
        yield base


@pytest.fixture()
def fresh_hub_url(tmp_path):
    """A hub with empty storage, for first-write and corpus-count tests."""
    with serve_hub(tmp_path / "hub") as base:
        yield base


@pytest.fixture()
def golden_tree():
    return copy.deepcopy(_GOLDEN_TREE)

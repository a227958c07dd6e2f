import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture
def corpus():
    return pathlib.Path(os.environ.get("LAMBDALAB_CORPUS_DIR", ROOT / "corpus"))


@pytest.fixture
def cli_binary():
    path = os.environ.get("LAMBDA_LAB_BIN")
    if not path or not os.path.exists(path):
        pytest.skip("lambda-lab binary not available")
    return path

from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

project_root = Path(__file__).resolve().parents[1]
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from lincut.core import BooleanNetwork  # noqa: E402
from lincut.netio import parse_bnet  # noqa: E402

N_SWAP = "x1, x2\nx2, x1\n"
N_FIVE = "x1, x3\nx2, x4 & x5\nx3, x1\nx4, x1\nx5, x2\n"
N_ID = "x1, x1\n"
N_NEG = "x1, !x1\nx2, x1\n"


@pytest.fixture(autouse=True)
def clean_lincut_env(monkeypatch):
    for name in list(os.environ):
        if name.startswith("LINCUT_"):
            monkeypatch.delenv(name, raising=False)
    yield


@pytest.fixture
def swap() -> BooleanNetwork:
    return parse_bnet(N_SWAP)


@pytest.fixture
def five() -> BooleanNetwork:
    return parse_bnet(N_FIVE)


@pytest.fixture
def identity() -> BooleanNetwork:
    return parse_bnet(N_ID)


@pytest.fixture
def negation() -> BooleanNetwork:
    return parse_bnet(N_NEG)


@pytest.fixture
def write_rules(tmp_path):
    def _write(text: str, name: str = "net.bnet") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write

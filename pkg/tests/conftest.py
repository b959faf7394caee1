from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kmquat import UniversalAlgebra, realize  # noqa: E402

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
A1_AFFINE = [[2, -2], [-2, 2]]
B2 = [[2, -1], [-2, 2]]
TEST_GCMS = [A1, A2, A1_AFFINE, B2]


@pytest.fixture(scope="session")
def algebras():
    cache = {}

    def get(a):
        key = tuple(map(tuple, a))
        if key not in cache:
            cache[key] = UniversalAlgebra(realize(a))
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)

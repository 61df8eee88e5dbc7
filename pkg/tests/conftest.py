from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from posettop import Poset, builtin

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BUILTINS = ("chain3", "circle4", "sphere6", "max5")


@st.composite
def posets(draw, min_size=1, max_size=6):
    """Random posets given by upper-triangular relation flags on ids 0..n-1."""
    n = draw(st.integers(min_size, max_size))
    flags = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = [(i, j) for (i, j), f in zip(((i, j) for i in range(n) for j in range(i + 1, n)), flags) if f]
    return Poset.from_indices([f"x{i}" for i in range(n)], pairs)


@pytest.fixture(params=BUILTINS)
def named(request):
    return request.param, builtin(request.param)


@pytest.fixture
def circle():
    return builtin("circle4")


@pytest.fixture
def sphere():
    return builtin("sphere6")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])

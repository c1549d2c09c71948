import sys

import numpy as np
import pytest

from qlogic.catalog import powerset_lattice
from qlogic.lattice import FiniteLattice


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def chain(*names):
    return FiniteLattice.from_order_relation(names, list(zip(names, names[1:])))


def boolean(n):
    return powerset_lattice([f"a{i}" for i in range(n)])


def hexagon():
    """Benzene ring O6: 0 < a < b < 1 and 0 < b' < a' < 1."""
    return FiniteLattice.from_order_relation(
        ["0", "a", "b", "b'", "a'", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")],
        [("a", "a'"), ("b", "b'")],
    )


def diamond():
    return FiniteLattice.from_order_relation(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.VERDICTS):
        terminalreporter.write_line(line)

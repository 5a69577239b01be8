import os
import sys
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lconf import ModuleBasis, NovikovDialgebra, Poly, Table, Tensor

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


def random_scalar_table(rng: random.Random, n: int, density: float = 0.3, values=(-1, 1, 2)) -> Table:
    entries = {}
    for i in range(n):
        for j in range(n):
            lst = [(k, Poly.const(rng.choice(values))) for k in range(n) if rng.random() < density]
            if lst:
                entries[(i, j)] = lst
    return Table(entries)


def random_dialgebra(rng: random.Random, n: int, density: float = 0.3) -> NovikovDialgebra:
    basis = ModuleBasis("N", tuple(f"e{i}" for i in range(n)))
    return NovikovDialgebra(basis, random_scalar_table(rng, n, density), random_scalar_table(rng, n, density))


def random_r(rng: random.Random, n: int, symmetric: bool, density: float = 0.5) -> Tensor:
    terms = {}
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            if rng.random() < density:
                c = Poly.const(Fraction(rng.choice((-2, -1, 1, 3))))
                terms[(i, j)] = c
                if symmetric:
                    terms[(j, i)] = c
    return Tensor(2, terms)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as hs

from copyposet import structure as st
from copyposet.poset import FinitePoset

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@hs.composite
def structures(draw, min_size=1, max_size=5):
    n = draw(hs.integers(min_size, max_size))
    cells = [(u, v) for u in range(n) for v in range(n)]
    chosen = draw(hs.lists(hs.booleans(), min_size=len(cells), max_size=len(cells)))
    return st.structure(n, [c for c, keep in zip(cells, chosen) if keep])


@hs.composite
def posets(draw, min_size=0, max_size=6):
    n = draw(hs.integers(min_size, max_size))
    order = draw(hs.permutations(range(n)))
    arcs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if draw(hs.booleans())]
    return FinitePoset.generated(n, arcs)


@pytest.fixture
def rng():
    return random.Random(0)


ACCEPTANCE_LINES = []


def record_acceptance(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

import math
import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from stratkit import ssd
from stratkit.poset import Poset

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SLOW = bool(os.environ.get("STRATKIT_SLOW"))


def all_posets(n):
    """Every partial order on labels a0..a{n-1} (labelled, not up to isomorphism)."""
    labels = [f"a{i}" for i in range(n)]
    pairs = [(x, y) for x in labels for y in labels if x != y]
    seen = set()
    for mask in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        if any((y, x) in rel for x, y in rel):
            continue
        if any((x, z) not in rel for x, y in rel for y2, z in rel if y == y2 and x != z):
            continue
        p = Poset(labels, rel)
        if p not in seen:
            seen.add(p)
            yield p


def small_posets(limit):
    for n in range(1, limit + 1):
        yield from all_posets(n)


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    labels = [f"p{i}" for i in range(n)]
    rels = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    order = draw(st.permutations(labels))
    return Poset(order, rels)


@pytest.fixture(scope="session")
def manifest():
    return ssd.manifest()


@pytest.fixture(scope="session")
def examples(manifest):
    return {name: ssd.parse_ssd(name) for name in manifest}


# one barycentric subdivision multiplies top simplices by (dim+1)!
SUBDIVIDE_LIMIT = 12000


def select(manifest, max_simplices=None, subdividable=False, max_facets=None):
    out = []
    for name, row in sorted(manifest.items()):
        if row["heavy"]:
            continue
        if max_simplices is not None and row["simplices"] > max_simplices:
            continue
        if max_facets is not None and row["facets"] > max_facets:
            continue
        if subdividable and row["facets"] * math.factorial(row["dim"] + 1) > SUBDIVIDE_LIMIT:
            continue
        out.append(name)
    return out


# acceptance criteria report: one line per criterion at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

import itertools

import pytest

from liftgroups.catalog import default_universe
from liftgroups.groups import FiniteGroup


@pytest.fixture(scope="session")
def u8():
    return default_universe(8)


@pytest.fixture(scope="session")
def u16():
    return default_universe(16)


def brute_homs(a: FiniteGroup, x: FiniteGroup) -> set[tuple[int, ...]]:
    """Every hom a -> x as a full element map, by checking all generator assignments.

    Independent of the package's search: each candidate is extended along words
    and then tested against the whole multiplication table.
    """
    out = set()
    words = {a.identity: ()}
    frontier = [a.identity]
    while frontier:
        nxt = []
        for e in frontier:
            for i, s in enumerate(a.generators):
                f = a.mul[e][s]
                if f not in words:
                    words[f] = words[e] + (i,)
                    nxt.append(f)
        frontier = nxt
    for imgs in itertools.product(range(x.order), repeat=len(a.generators)):
        phi = [0] * a.order
        for e, w in words.items():
            v = x.identity
            for i in w:
                v = x.mul[v][imgs[i]]
            phi[e] = v
        if all(phi[a.mul[p][q]] == x.mul[phi[p]][phi[q]] for p in range(a.order) for q in range(a.order)):
            out.add(tuple(phi))
    return out


def brute_lifts(f, g) -> bool:
    """f ⋔ g by listing every square and every diagonal (finite groups only)."""
    A, B, X, Y = f.source, f.target, g.source, g.target
    i_all, j_all, h_all = brute_homs(A, X), brute_homs(B, Y), brute_homs(B, X)
    fm, gm = f.elem_map, g.elem_map
    for i in i_all:
        for j in j_all:
            if any(gm[i[a]] != j[fm[a]] for a in range(A.order)):
                continue
            if not any(all(h[fm[a]] == i[a] for a in range(A.order)) and
                       all(gm[h[b]] == j[b] for b in range(B.order)) for h in h_all):
                return False
    return True


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])

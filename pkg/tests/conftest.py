"""Shared corpus builders and brute-force oracles."""

from __future__ import annotations

import pytest

from posetlab.extensions import enumerate_extensions
from posetlab.posets import MarkedTriple, Poset
from posetlab.search import enumerate_posets, random_instance


def corpus(count: int, n_lo: int, n_hi: int, seed: int):
    """Deterministic random (poset, chain-triple) sample."""
    out = []
    idx = 0
    while len(out) < count:
        p, z = random_instance(seed, idx, n_lo, n_hi)
        idx += 1
        if z is not None:
            out.append((p, z))
    return out


def chain_triples(p: Poset):
    """All ordered triples z1 < z2 < z3 of one poset."""
    return [
        MarkedTriple(a, b, c)
        for a in range(p.n)
        for b in range(p.n)
        for c in range(p.n)
        if p.less(a, b) and p.less(b, c)
    ]


def oracle_f_entries(p: Poset, z: MarkedTriple) -> dict[tuple[int, int], int]:
    """F(k, l) by plain enumeration; independent of the DP route."""
    out: dict[tuple[int, int], int] = {}
    for w in enumerate_extensions(p):
        pos = {e: i + 1 for i, e in enumerate(w)}
        k, l = pos[z.z2] - pos[z.z1], pos[z.z3] - pos[z.z2]
        if k >= 1 and l >= 1:
            out[(k, l)] = out.get((k, l), 0) + 1
    return out


def oracle_n_counts(p: Poset, a: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in enumerate_extensions(p):
        pos = w.index(a) + 1
        out[pos] = out.get(pos, 0) + 1
    return out


@pytest.fixture(scope="session")
def small_poset_classes():
    """One representative per isomorphism class for every n <= 5."""
    return {n: enumerate_posets(n) for n in range(1, 6)}


@pytest.fixture(scope="session")
def medium_corpus():
    """60 random marked posets with 4 <= n <= 7 for module-level tests."""
    return corpus(60, 4, 7, seed=20240)


@pytest.fixture(scope="session")
def wide_corpus():
    """40 random marked posets with 6 <= n <= 8."""
    return corpus(40, 6, 8, seed=777)

"""Slice volumes: exact polynomial, Monte Carlo agreement, exact recovery."""

from __future__ import annotations

from fractions import Fraction

import pytest

from posetlab.errors import BadParams, DegenerateSlice
from posetlab.extensions import FTable, f_table
from posetlab.families import family_cpc2_witness
from posetlab.geometry import (
    interpolation_nodes,
    recover_f_from_volume,
    volume_formula,
    volume_mc,
)
from posetlab.posets import MarkedTriple, chain, normalize, antichain
from posetlab.search import random_instance


def test_formula_on_three_chain():
    F = f_table(chain(3), MarkedTriple(0, 1, 2))
    s = t = Fraction(1, 3)
    # single cell (1,1): value (1 - s - t)^{n-2} / (n-2)! = 1/3
    assert volume_formula(F, s, t) == Fraction(1, 3)


def test_formula_linearity_in_counts():
    inst = family_cpc2_witness(1, 2)
    F = f_table(inst.poset, inst.z)
    s, t = Fraction(1, 5), Fraction(1, 4)
    doubled = FTable(F.n, F.z, {kl: 3 * v for kl, v in F.entries.items()})
    assert volume_formula(doubled, s, t) == 3 * volume_formula(F, s, t)


def test_formula_on_antichain_based_poset():
    p, z = normalize(antichain(4), MarkedTriple(0, 1, 2))
    F = f_table(p, z)
    v = volume_formula(F, Fraction(1, 4), Fraction(1, 4))
    assert v > 0 and v.denominator % 2 == 0


def test_mc_agrees_with_formula_small_grid():
    fixtures = [
        (chain(4), MarkedTriple(0, 1, 2)),
        normalize(antichain(4), MarkedTriple(0, 1, 2)),
        (family_cpc2_witness(1, 2).poset, family_cpc2_witness(1, 2).z),
    ]
    points = [(Fraction(1, 5), Fraction(1, 5)), (Fraction(1, 3), Fraction(1, 4))]
    bad = 0
    for i, (p, z) in enumerate(fixtures):
        F = f_table(p, z)
        for j, (s, t) in enumerate(points):
            exact = volume_formula(F, s, t)
            est = volume_mc(p, z, s, t, samples=120_000, seed=1000 + 10 * i + j)
            if not est.within(exact, sigmas=3.0):
                bad += 1
    assert bad <= 1  # statistical: allow one 3-sigma excursion on 6 cells


def test_mc_rejects_bad_parameters():
    p, z = chain(4), MarkedTriple(0, 1, 2)
    with pytest.raises(BadParams):
        volume_mc(p, z, Fraction(1, 2), Fraction(1, 2), 1000, 1)
    with pytest.raises(BadParams):
        volume_mc(p, z, Fraction(0), Fraction(1, 4), 1000, 1)


def test_mc_degenerate_slice():
    with pytest.raises(DegenerateSlice):
        volume_mc(chain(3), MarkedTriple(1, 0, 2), Fraction(1, 5), Fraction(1, 5), 1000, 1)


def test_interpolation_node_count():
    for n in range(3, 8):
        nodes = interpolation_nodes(n)
        assert len(nodes) == n * (n - 1) // 2
        assert all(0 < s and 0 < t and s + t < 1 for s, t in nodes)


def test_recovery_is_exact(medium_corpus):
    for p, z in medium_corpus[:6]:
        F = f_table(p, z)
        recovered = recover_f_from_volume(lambda s, t: volume_formula(F, s, t), p.n)
        for cell, value in recovered.items():
            assert value == F.get(*cell), (cell, value)
        for cell, v in F.entries.items():
            if v:
                assert recovered[cell] == v


def test_recovery_on_random_instances():
    for idx in (1, 5, 9):
        p, z = random_instance(314, idx, 4, 6)
        if z is None:
            continue
        F = f_table(p, z)
        rec = recover_f_from_volume(lambda s, t: volume_formula(F, s, t), p.n)
        assert {c: int(v) for c, v in rec.items() if v} == F.entries

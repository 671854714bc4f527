"""Order-polytope slice volumes as a statistical cross-check of F-tables.

The order polytope of P is the set of monotone vectors in the unit cube.
Fixing the two coordinate gaps v(z2) - v(z1) = s and v(z3) - v(z2) = t
slices it to an (n-2)-dimensional polytope whose volume, measured in the
coordinate chart that drops v(z2) and v(z3), is the polynomial

    V(s, t) = sum_{k,l} F(k,l) s^{k-1}/(k-1)! * t^{l-1}/(l-1)!
                          * (1-s-t)^{n-k-l}/(n-k-l)!

Three independent routes at work here: the exact rational evaluation of
V, hit-or-miss Monte Carlo over the same chart, and exact polynomial
interpolation that recovers every F(k,l) back from evaluations of V.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, sqrt

import numpy as np

from .errors import BadParams, CycleDetected, DegenerateSlice
from .extensions import FTable, f_table
from .posets import MarkedTriple, Poset


def volume_formula(F: FTable, s: Fraction, t: Fraction) -> Fraction:
    """Exact rational value of the slice-volume polynomial at (s, t)."""
    s, t, u = Fraction(s), Fraction(t), 1 - Fraction(s) - Fraction(t)
    total = Fraction(0)
    n = F.n
    for (k, l), v in F.entries.items():
        if v == 0 or k + l > n:
            continue
        total += (
            v
            * s ** (k - 1) / factorial(k - 1)
            * t ** (l - 1) / factorial(l - 1)
            * u ** (n - k - l) / factorial(n - k - l)
        )
    return total


def _slice_system(p: Poset, z: MarkedTriple, s: Fraction, t: Fraction):
    """Affine constraint system over the chart coordinates.

    Chart: all coordinates except v(z2), v(z3); those are replaced by
    v(z1) + s and v(z1) + s + t.  Returns (columns, constraints) where each
    constraint (i, j, c) means  x_i - x_j + c <= 0  (index None = absent).
    """
    z1, z2, z3 = z.as_tuple()
    cols = [x for x in range(p.n) if x not in (z2, z3)]
    col_of = {x: i for i, x in enumerate(cols)}
    sf, tf = float(s), float(t)

    def term(x):
        # (column index or None, constant offset)
        if x == z2:
            return col_of[z1], sf
        if x == z3:
            return col_of[z1], sf + tf
        return col_of[x], 0.0

    constraints = []
    for a in range(p.n):
        for b in range(p.n):
            if a != b and p.less(a, b):
                ia, ca = term(a)
                ib, cb = term(b)
                if ia == ib:
                    if ca - cb > 0:
                        constraints.append((None, None, 1.0))  # infeasible
                    continue
                constraints.append((ia, ib, ca - cb))
    # z2, z3 must stay inside the cube; lower bounds are implied by s,t > 0.
    constraints.append((col_of[z1], None, sf + tf - 1.0))
    return cols, constraints


@dataclass
class McEstimate:
    mean: float
    stderr: float
    hits: int
    samples: int

    def within(self, exact: Fraction, sigmas: float = 3.0) -> bool:
        return abs(self.mean - float(exact)) <= sigmas * self.stderr


def volume_mc(
    p: Poset,
    z: MarkedTriple,
    s: Fraction,
    t: Fraction,
    samples: int,
    seed: int,
    batch: int = 1 << 17,
) -> McEstimate:
    """Hit-or-miss Monte Carlo estimate of the slice volume.

    Samples the chart cube uniformly and counts points satisfying every
    order constraint; the bounding box has unit volume, so the hit rate
    estimates the volume directly.  Raises DegenerateSlice when no
    extension respects the marked order at all.
    """
    s, t = Fraction(s), Fraction(t)
    if not (0 < s and 0 < t and s + t < 1):
        raise BadParams("need 0 < s, 0 < t, s + t < 1")
    try:
        empty = f_table(*_normalized(p, z)).total() == 0
    except CycleDetected:
        empty = True  # marks cannot be put in increasing order at all
    if empty:
        raise DegenerateSlice("no monotone vector realizes the two gaps")
    cols, constraints = _slice_system(p, z, s, t)
    dim = len(cols)
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        pts = rng.random((m, dim))
        ok = np.ones(m, dtype=bool)
        for ia, ib, c in constraints:
            if ia is None and ib is None:
                ok[:] = False
                break
            left = pts[:, ia] if ia is not None else 0.0
            right = pts[:, ib] if ib is not None else 0.0
            np.logical_and(ok, left - right + c <= 0.0, out=ok)
        hits += int(ok.sum())
        done += m
    mean = hits / samples
    stderr = sqrt(max(mean * (1.0 - mean), 0.0) / samples)
    return McEstimate(mean, stderr, hits, samples)


def _normalized(p: Poset, z: MarkedTriple):
    from .posets import normalize

    return normalize(p, z)


def interpolation_nodes(n: int) -> list[tuple[Fraction, Fraction]]:
    """Shifted principal lattice: (n-1)n/2 interior rational nodes,
    unisolvent for polynomials of total degree n-2."""
    m = n - 2
    den = m + 3
    return [
        (Fraction(a + 1, den), Fraction(b + 1, den))
        for a in range(m + 1)
        for b in range(m - a + 1)
    ]


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals; raises on singularity."""
    size = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("interpolation system is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def recover_f_from_volume(volume_at, n: int) -> dict[tuple[int, int], Fraction]:
    """Recover every F(k, l) exactly from evaluations of the slice volume.

    ``volume_at(s, t)`` must return exact rationals.  The coefficients in
    the simplex basis s^{k-1} t^{l-1} (1-s-t)^{n-k-l} scaled by the inverse
    factorials are solved from the shifted-lattice evaluations.
    """
    cells = [(k, l) for k in range(1, n) for l in range(1, n - k + 1) if n - k - l >= 0]
    nodes = interpolation_nodes(n)
    assert len(nodes) == len(cells)
    matrix = []
    for s, t in nodes:
        u = 1 - s - t
        row = [
            s ** (k - 1) / factorial(k - 1)
            * t ** (l - 1) / factorial(l - 1)
            * u ** (n - k - l) / factorial(n - k - l)
            for (k, l) in cells
        ]
        matrix.append(row)
    values = [Fraction(volume_at(s, t)) for s, t in nodes]
    coeffs = _solve_exact(matrix, values)
    return {cell: c for cell, c in zip(cells, coeffs)}

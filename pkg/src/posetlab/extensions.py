"""Linear-extension enumeration and exact gap statistics.

A linear extension of P is a word x_1...x_n (each element once) with no
x_j < x_i for j > i.  For a marked triple z1 < z2 < z3 the central object
is the table

    F(k, l) = #{ extensions : pos(z2) - pos(z1) = k, pos(z3) - pos(z2) = l },

computed exactly by dynamic programming over the lattice of down-sets
(order ideals).  Two independent engines are provided:

* ``f_table``       -- gap-phase DP, positions never materialized; fast.
* ``positional_gap_counts`` -- records absolute insertion positions of the
  marked elements; slower but works for un-normalized triples (signed gaps)
  and any number of marks.  Used as a second route in tests and for the
  signed-table reduction.

Counts are exact big integers throughout; no floating point.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import BadChain, TooLarge
from .posets import SCHEMA, MarkedTriple, Poset, is_normalized

ENUMERATION_MAX = 14
DEFAULT_STATE_BUDGET = 1 << 26


def enumerate_extensions(p: Poset):
    """Yield every linear extension exactly once, words in lexicographic order."""
    if p.n > ENUMERATION_MAX:
        raise TooLarge(f"enumeration guarded at n <= {ENUMERATION_MAX}")
    n, down = p.n, p.down
    word: list[int] = []
    used = 0

    def rec():
        nonlocal used
        if len(word) == n:
            yield tuple(word)
            return
        for x in range(n):
            bx = 1 << x
            if used & bx or down[x] & ~used:
                continue
            used |= bx
            word.append(x)
            yield from rec()
            word.pop()
            used &= ~bx

    yield from rec()


def is_extension(p: Poset, word) -> bool:
    if sorted(word) != list(range(p.n)):
        return False
    seen = 0
    for x in word:
        if p.down[x] & ~seen:
            return False
        seen |= 1 << x
    return True


def count_extensions(p: Poset) -> int:
    """e(P): number of maximal chains in the down-set lattice."""
    n, down = p.n, p.down
    full = (1 << n) - 1
    cur = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = defaultdict(int)
        for ideal, c in cur.items():
            for x in range(n):
                bx = 1 << x
                if ideal & bx or down[x] & ~ideal:
                    continue
                nxt[ideal | bx] += c
        cur = dict(nxt)
    return cur.get(full, 0)


@dataclass
class FTable:
    """Exact nonnegative-integer map (k, l) -> F(k, l) for one marked poset.

    Immutable by contract once built.  Entries absent from the map are zero;
    nonzero entries satisfy k, l >= 1 and k + l <= n - 1.
    """

    n: int
    z: MarkedTriple
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def get(self, k: int, l: int) -> int:
        return self.entries.get((k, l), 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def support(self) -> set[tuple[int, int]]:
        return {kl for kl, v in self.entries.items() if v > 0}

    def grid(self, margin: int = 2):
        """All (k, l) with 1 <= k, l and k + l <= n - 1 + margin."""
        for k in range(1, self.n + margin):
            for l in range(1, self.n + margin - k):
                yield (k, l)

    def to_json_obj(self) -> dict:
        cells = [[k, l, str(v)] for (k, l), v in sorted(self.entries.items()) if v]
        return {"schema": SCHEMA, "n": self.n, "z": list(self.z.as_tuple()), "F": cells}

    @staticmethod
    def from_json_obj(obj: dict) -> "FTable":
        entries = {(int(k), int(l)): int(v) for k, l, v in obj["F"]}
        z = MarkedTriple(*map(int, obj["z"]))
        return FTable(int(obj["n"]), z, entries)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def f_table(p: Poset, z: MarkedTriple, state_budget: int = DEFAULT_STATE_BUDGET) -> FTable:
    """Exact F(k, l) via down-set DP with gap-phase keys.

    Requires a normalized triple (z1 < z2 < z3), so the marks always enter
    any extension in order; the key only needs the current phase and the
    two gap counters.  Raises TooLarge past ``state_budget`` live states.
    """
    if not is_normalized(p, z):
        raise BadChain("f_table requires z1 < z2 < z3; call normalize() first")
    n, down = p.n, p.down
    z1, z2, z3 = z.as_tuple()
    full = (1 << n) - 1
    # state: ideal -> {(phase, g1, g2): count}; phase = #marks inserted,
    # g1/g2 accumulate the two gaps while in phase 1/2.
    cur: dict[int, dict[tuple[int, int, int], int]] = {0: {(0, 0, 0): 1}}
    for _ in range(n):
        nxt: dict[int, dict[tuple[int, int, int], int]] = {}
        states = 0
        for ideal, keys in cur.items():
            for x in range(n):
                bx = 1 << x
                if ideal & bx or down[x] & ~ideal:
                    continue
                bucket = nxt.setdefault(ideal | bx, {})
                for (ph, g1, g2), c in keys.items():
                    if x == z1:
                        nk = (1, g1, g2)
                    elif x == z2:
                        nk = (2, g1 + 1, g2)
                    elif x == z3:
                        nk = (3, g1, g2 + 1)
                    elif ph == 1:
                        nk = (1, g1 + 1, g2)
                    elif ph == 2:
                        nk = (2, g1, g2 + 1)
                    else:
                        nk = (ph, g1, g2)
                    bucket[nk] = bucket.get(nk, 0) + c
                states += len(bucket)
        if states > state_budget:
            raise TooLarge(f"f_table state count {states} exceeds budget {state_budget}")
        cur = nxt
    entries: dict[tuple[int, int], int] = {}
    for (ph, g1, g2), c in cur.get(full, {}).items():
        assert ph == 3
        entries[(g1, g2)] = entries.get((g1, g2), 0) + c
    return FTable(n, z, entries)


def positional_gap_counts(
    p: Poset, marks: tuple[int, ...], state_budget: int = DEFAULT_STATE_BUDGET
) -> dict[tuple[int, ...], int]:
    """Counts of extensions by the absolute positions (1-based) of ``marks``.

    No order assumption on the marks; the DP key records, for the marks
    already inside the ideal, their insertion positions.
    """
    n, down = p.n, p.down
    full = (1 << n) - 1
    mark_index = {m: i for i, m in enumerate(marks)}
    cur: dict[int, dict[tuple[int, ...], int]] = {0: {(0,) * len(marks): 1}}
    for step in range(1, n + 1):
        nxt: dict[int, dict[tuple[int, ...], int]] = {}
        states = 0
        for ideal, keys in cur.items():
            for x in range(n):
                bx = 1 << x
                if ideal & bx or down[x] & ~ideal:
                    continue
                bucket = nxt.setdefault(ideal | bx, {})
                mi = mark_index.get(x)
                for key, c in keys.items():
                    if mi is None:
                        nk = key
                    else:
                        nk = key[:mi] + (step,) + key[mi + 1 :]
                    bucket[nk] = bucket.get(nk, 0) + c
                states += len(bucket)
        if states > state_budget:
            raise TooLarge(f"positional DP state count {states} exceeds budget")
        cur = nxt
    return dict(cur.get(full, {}))


def f_table_signed(p: Poset, z: MarkedTriple) -> dict[tuple[int, int], int]:
    """Signed gap table F'(a, b) with a = pos(z2) - pos(z1), b = pos(z3) - pos(z2).

    The triple need not be chain-ordered, so a and b may be negative.
    """
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (p1, p2, p3), c in positional_gap_counts(p, z.as_tuple()).items():
        out[(p2 - p1, p3 - p2)] += c
    return dict(out)


def pair_gap_table(p: Poset, x: int, y: int) -> dict[int, int]:
    """Counts of extensions by the signed gap pos(y) - pos(x)."""
    out: dict[int, int] = defaultdict(int)
    for (px, py), c in positional_gap_counts(p, (x, y)).items():
        out[py - px] += c
    return dict(out)


@dataclass
class NVector:
    """Counts N_k of extensions placing one marked element at position k."""

    n: int
    a: int
    counts: dict[int, int] = field(default_factory=dict)

    def get(self, k: int) -> int:
        return self.counts.get(k, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "a": self.a,
            "N": [[k, str(v)] for k, v in sorted(self.counts.items()) if v],
        }


def n_vector(p: Poset, a: int) -> NVector:
    counts: dict[int, int] = defaultdict(int)
    for (pos,), c in positional_gap_counts(p, (a,)).items():
        counts[pos] += c
    return NVector(p.n, a, dict(counts))


def gap_classes(p: Poset, z: MarkedTriple) -> dict[tuple[int, int], list[tuple[int, ...]]]:
    """Extensions bucketed by their (k, l) gap pair; brute-force oracle."""
    out: dict[tuple[int, int], list[tuple[int, ...]]] = defaultdict(list)
    for w in enumerate_extensions(p):
        pos = {e: i + 1 for i, e in enumerate(w)}
        k, l = pos[z.z2] - pos[z.z1], pos[z.z3] - pos[z.z2]
        if k >= 1 and l >= 1:
            out[(k, l)].append(w)
    return dict(out)

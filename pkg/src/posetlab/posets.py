"""Finite strict partial orders with a marked triple.

Elements are dense integer ids 0..n-1.  The strict order is stored as one
bitmask per element (``up[x]`` = set of elements strictly above x), always
transitively closed and irreflexive.  All types are immutable after
construction and safe to share across threads.

Order-theoretic parameters follow the usual conventions:

* ``b(x)``  = |{y : y <= x}|   (lower ideal, x included)
* ``b*(x)`` = |{y : y >= x}|   (upper ideal)
* ``b(x,y)`` = |{z : x <= z <= y}|  (interval; 0 unless x <= y)
* ``u(x,y)``  = |{z : z || y, z <= x}|  for incomparable x, y
* ``u*(x,y)`` = |{z : z || y, z >= x}|
* ``t(x)``  = max_y u(x,y), ``t*(x)`` = max_y u*(x,y), both 1 when x is
  comparable to everything.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .errors import BadParams, CycleDetected, IndexOutOfRange

MAX_ELEMENTS = 64        # down-sets must fit one machine word
CANONICAL_EXACT_MAX = 9  # exact min-bitstring canonical form up to here

SCHEMA = "posetlab/1"


def _closure(n: int, up: list[int]) -> list[int]:
    """Transitive closure of bitmask rows; raises on cycles."""
    up = list(up)
    for m in range(n):
        bm = 1 << m
        for a in range(n):
            if up[a] & bm:
                up[a] |= up[m]
    for a in range(n):
        if up[a] >> a & 1:
            raise CycleDetected(f"element {a} lies on a cycle")
    return up


@dataclass(frozen=True)
class Poset:
    """Immutable strict partial order on 0..n-1.

    ``up[x]`` is the bitmask of elements strictly above x; it is checked to
    be irreflexive and transitively closed on construction.
    """

    n: int
    up: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ELEMENTS:
            raise IndexOutOfRange(f"n={self.n} outside 1..{MAX_ELEMENTS}")
        full = (1 << self.n) - 1
        for x, mask in enumerate(self.up):
            if mask & ~full:
                raise IndexOutOfRange(f"relation row {x} mentions elements >= n")
            if mask >> x & 1:
                raise CycleDetected(f"relation is reflexive at {x}")
        for x in range(self.n):
            m = self.up[x]
            y_bits = m
            while y_bits:
                y = (y_bits & -y_bits).bit_length() - 1
                y_bits &= y_bits - 1
                if self.up[y] & ~m:
                    raise CycleDetected(f"relation not transitively closed at ({x},{y})")

    # -- basic queries ----------------------------------------------------

    def less(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y)

    def incomparable(self, x: int, y: int) -> bool:
        return x != y and not self.less(x, y) and not self.less(y, x)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """down[x] = bitmask of elements strictly below x."""
        down = [0] * self.n
        for a in range(self.n):
            bits = self.up[a]
            while bits:
                b = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                down[b] |= 1 << a
        return tuple(down)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction as a sorted tuple of (lower, upper) pairs."""
        out = []
        for x in range(self.n):
            bits = self.up[x]
            while bits:
                y = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                if not self.up[x] & self.down[y]:
                    out.append((x, y))
        return tuple(sorted(out))

    def relation_pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in range(self.n) if self.less(x, y)]

    # -- constructions ----------------------------------------------------

    def dual(self) -> "Poset":
        """Same ground set, relation reversed."""
        return Poset(self.n, self.down)

    def with_relations(self, pairs) -> "Poset":
        """New poset with extra strict relations added and re-closed."""
        up = list(self.up)
        for a, b in pairs:
            _check_index(self.n, a)
            _check_index(self.n, b)
            if a == b:
                raise CycleDetected(f"self-relation at {a}")
            up[a] |= 1 << b
        return Poset(self.n, tuple(_closure(self.n, up)))

    # -- canonical form ---------------------------------------------------

    def canonical_key(self):
        """Isomorphism-invariant key: exact min adjacency bitstring for
        n <= CANONICAL_EXACT_MAX, an invariant hash above that."""
        pairs = self.relation_pairs()
        if self.n <= CANONICAL_EXACT_MAX:
            best = None
            for perm in itertools.permutations(range(self.n)):
                code = 0
                for a, b in pairs:
                    code |= 1 << (perm[a] * self.n + perm[b])
                if best is None or code < best:
                    best = code
            return (self.n, best)
        profile = sorted(
            (bin(self.down[x]).count("1"), bin(self.up[x]).count("1")) for x in range(self.n)
        )
        return (self.n, "hash", hash((self.n, tuple(profile), len(pairs))))

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"schema": SCHEMA, "n": self.n, "covers": [list(c) for c in self.covers]}

    @staticmethod
    def from_json_obj(obj: dict) -> "Poset":
        return build(int(obj["n"]), [tuple(c) for c in obj.get("covers", [])])

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def _check_index(n: int, x: int) -> None:
    if not 0 <= x < n:
        raise IndexOutOfRange(f"element {x} outside 0..{n - 1}")


def build(n: int, cover_pairs) -> Poset:
    """Poset from (lower, upper) pairs; pairs need not be reduced.

    Raises CycleDetected on cyclic input, IndexOutOfRange on bad ids.
    """
    if not 1 <= n <= MAX_ELEMENTS:
        raise IndexOutOfRange(f"n={n} outside 1..{MAX_ELEMENTS}")
    up = [0] * n
    for a, b in cover_pairs:
        _check_index(n, a)
        _check_index(n, b)
        if a == b:
            raise CycleDetected(f"self-relation at {a}")
        up[a] |= 1 << b
    return Poset(n, tuple(_closure(n, up)))


def chain(n: int) -> Poset:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return build(n, [])


def load_poset(obj_or_text) -> tuple[Poset, "MarkedTriple | None", int | None]:
    """Parse poset JSON; returns (poset, marked triple or None, marked element or None).

    Accepts non-reduced cover lists and extra keys.
    """
    obj = json.loads(obj_or_text) if isinstance(obj_or_text, str) else obj_or_text
    p = Poset.from_json_obj(obj)
    z = obj.get("z")
    triple = MarkedTriple(*map(int, z)) if z is not None else None
    a = obj.get("a")
    return p, triple, (int(a) if a is not None else None)


# -- marked triple ---------------------------------------------------------


@dataclass(frozen=True)
class MarkedTriple:
    z1: int
    z2: int
    z3: int

    def __post_init__(self) -> None:
        if len({self.z1, self.z2, self.z3}) != 3:
            raise BadParams("marked elements must be distinct")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.z1, self.z2, self.z3)

    def reversed(self) -> "MarkedTriple":
        return MarkedTriple(self.z3, self.z2, self.z1)

    def swapped12(self) -> "MarkedTriple":
        return MarkedTriple(self.z2, self.z1, self.z3)


def is_normalized(p: Poset, z: MarkedTriple) -> bool:
    return p.less(z.z1, z.z2) and p.less(z.z2, z.z3)


def normalize(p: Poset, z: MarkedTriple) -> tuple[Poset, MarkedTriple]:
    """Add z1 < z2 < z3 to the poset when absent and re-close.

    Raises CycleDetected when the requested order conflicts with existing
    relations.
    """
    for a in z.as_tuple():
        _check_index(p.n, a)
    extra = []
    if not p.less(z.z1, z.z2):
        extra.append((z.z1, z.z2))
    if not p.less(z.z2, z.z3):
        extra.append((z.z2, z.z3))
    return (p.with_relations(extra), z) if extra else (p, z)


# -- parameters ------------------------------------------------------------


@dataclass(frozen=True)
class PosetParams:
    """All per-element / per-pair order parameters of one poset."""

    n: int
    b: tuple[int, ...]
    b_star: tuple[int, ...]
    t: tuple[int, ...]
    t_star: tuple[int, ...]
    b_interval: tuple[tuple[int, ...], ...]
    width: int
    height: int

    def interval(self, x: int, y: int) -> int:
        return self.b_interval[x][y]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _max_matching(n: int, adj: list[int]) -> int:
    """Maximum bipartite matching, left/right both 0..n-1, adj as bitmasks."""
    match_r = [-1] * n

    def augment(v: int, seen: list[bool]) -> bool:
        bits = adj[v]
        while bits:
            u = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            if seen[u]:
                continue
            seen[u] = True
            if match_r[u] < 0 or augment(match_r[u], seen):
                match_r[u] = v
                return True
        return False

    size = 0
    for v in range(n):
        if augment(v, [False] * n):
            size += 1
    return size


def width(p: Poset) -> int:
    """Maximum antichain size, via minimum chain cover (Dilworth)."""
    return p.n - _max_matching(p.n, list(p.up))


def width_bruteforce(p: Poset) -> int:
    """Maximum antichain by scanning all subsets; oracle for small n."""
    if p.n > 20:
        raise BadParams("brute-force width restricted to n <= 20")
    comparable = [p.up[x] | p.down[x] for x in range(p.n)]
    best = 1
    for mask in range(1, 1 << p.n):
        bits, ok = mask, True
        while bits:
            x = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            if comparable[x] & mask:
                ok = False
                break
        if ok:
            best = max(best, _popcount(mask))
    return best


def height(p: Poset) -> int:
    """Number of elements in a longest chain."""
    depth = [0] * p.n
    order = sorted(range(p.n), key=lambda x: _popcount(p.down[x]))
    for x in order:
        bits = p.down[x]
        d = 0
        while bits:
            y = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            d = max(d, depth[y])
        depth[x] = d + 1
    return max(depth)


def params(p: Poset) -> PosetParams:
    """Compute b, b*, t, t*, all interval sizes, width and height."""
    n = p.n
    b = tuple(_popcount(p.down[x]) + 1 for x in range(n))
    b_star = tuple(_popcount(p.up[x]) + 1 for x in range(n))
    full = (1 << n) - 1
    incomp = [full & ~(p.up[x] | p.down[x] | (1 << x)) for x in range(n)]
    t, t_star = [], []
    for x in range(n):
        dx = p.down[x] | (1 << x)
        ux = p.up[x] | (1 << x)
        best_t = best_ts = 1
        bits = incomp[x]
        while bits:
            y = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            best_t = max(best_t, _popcount(incomp[y] & dx))
            best_ts = max(best_ts, _popcount(incomp[y] & ux))
        t.append(best_t)
        t_star.append(best_ts)
    b_interval = tuple(
        tuple(_popcount((p.up[x] | (1 << x)) & (p.down[y] | (1 << y))) for y in range(n))
        for x in range(n)
    )
    return PosetParams(n, b, b_star, tuple(t), tuple(t_star), b_interval, width(p), height(p))


# -- thin / flat -----------------------------------------------------------


def is_thin(p: Poset, z: MarkedTriple, t: int, prm: PosetParams | None = None) -> bool:
    """Every element outside the marked set has n - b(u) - b*(u) <= t - 1."""
    prm = prm or params(p)
    marked = set(z.as_tuple())
    return all(
        p.n - prm.b[u] - prm.b_star[u] <= t - 1 for u in range(p.n) if u not in marked
    )


def is_flat(p: Poset, z: MarkedTriple, t: int, prm: PosetParams | None = None) -> bool:
    """Every marked element has b(u) + b*(u) <= t + 1."""
    prm = prm or params(p)
    return all(prm.b[u] + prm.b_star[u] <= t + 1 for u in z.as_tuple())


def thin_threshold(p: Poset, z: MarkedTriple, prm: PosetParams | None = None) -> int:
    """Smallest t for which the poset is t-thin w.r.t. the marked set."""
    prm = prm or params(p)
    marked = set(z.as_tuple())
    worst = max(
        (p.n - prm.b[u] - prm.b_star[u] for u in range(p.n) if u not in marked),
        default=0,
    )
    return max(1, worst + 1)


def flat_threshold(p: Poset, z: MarkedTriple, prm: PosetParams | None = None) -> int:
    """Smallest t for which the poset is t-flat w.r.t. the marked set."""
    prm = prm or params(p)
    return max(1, max(prm.b[u] + prm.b_star[u] for u in z.as_tuple()) - 1)


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)

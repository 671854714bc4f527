"""Word-rewriting injections between gap classes, certified at runtime.

The adjacent-transposition operator on extension words

    tau_i : ... x_i x_{i+1} ...  ->  ... x_{i+1} x_i ...   if x_i || x_{i+1}
            unchanged                                       if x_i <  x_{i+1}

preserves extension-hood.  Composing such moves gives four explicit
injections, each certifying a ratio bound as an exact counting inequality:

* ``stanley``   N_k  ->  N_{k-1} x [1, t(a)]          (one marked element)
* ``transfer``  F(k+1,l+1) -> I x F(k,l+2)            (shift one unit of
                gap from the first to the second)
* ``shrink``    F(k+1,l)   -> I x F(k,l)
* ``grow``      F(k+1,l)   -> I x F(k+2,l)

Each I is a disjoint union of per-case integer boxes whose total size is
the bound being certified.  Case dispatch order is semantic: the images of
later cases are only disjoint from earlier ones because earlier cases were
ruled out first.  All moves are executed swap by swap with incomparability
checked at every step, and certification re-verifies class membership,
payload ranges, and global injectivity on the full domain.

The ``transfer`` intervals use min(b(z1,z2) - 1, t*(z1)) for the case-2
box edge.  The edge cannot be tightened to b(z1,z2) - 2: the case-2 pivot
may sit directly after z1, and a 6-element poset realizing payload
b(z1,z2) - 1 lives in the test suite.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field

from .errors import CaseExhaustion, HypothesesNotMet, IndexOutOfRange, NoPivot
from .extensions import FTable, f_table, gap_classes, n_vector
from .posets import SCHEMA, MarkedTriple, Poset, PosetParams, params

HASH_THRESHOLD = 100_000

Word = tuple[int, ...]


def tau(p: Poset, word, i: int) -> Word:
    """Apply tau_i (1-based i in 1..n-1) to an extension word."""
    if not 1 <= i <= len(word) - 1:
        raise IndexOutOfRange(f"tau index {i} outside 1..{len(word) - 1}")
    a, b = word[i - 1], word[i]
    if p.less(a, b):
        return tuple(word)
    if p.less(b, a):
        raise ValueError("word is not a linear extension")
    w = list(word)
    w[i - 1], w[i] = b, a
    return tuple(w)


def _move_right_past(p: Poset, word, src: int, target: int) -> Word:
    """Swap word[src] rightward until it has just passed ``target``.

    Every swap must be between incomparable elements (guaranteed by the
    case analyses; violation raises CaseExhaustion)."""
    w = list(word)
    pos = src
    while True:
        if pos + 1 >= len(w):
            raise CaseExhaustion("ran off the word while moving right")
        passed = w[pos + 1]
        if not p.incomparable(w[pos], passed):
            raise CaseExhaustion(f"blocked swap ({w[pos]},{passed})")
        w[pos], w[pos + 1] = passed, w[pos]
        pos += 1
        if passed == target:
            return tuple(w)


def _move_left_before(p: Poset, word, src: int, target: int) -> Word:
    """Swap word[src] leftward until it sits just before ``target``."""
    w = list(word)
    pos = src
    while True:
        if pos == 0:
            raise CaseExhaustion("ran off the word while moving left")
        passed = w[pos - 1]
        if not p.incomparable(w[pos], passed):
            raise CaseExhaustion(f"blocked swap ({passed},{w[pos]})")
        w[pos - 1], w[pos] = w[pos], passed
        pos -= 1
        if passed == target:
            return tuple(w)


def _zpos(word, z: MarkedTriple, k: int, l: int, dk: int, dl: int) -> int:
    """0-based index i of z1, validating gaps (k+dk, l+dl)."""
    pos = {e: idx for idx, e in enumerate(word)}
    i = pos[z.z1]
    if pos[z.z2] - i != k + dk or pos[z.z3] - pos[z.z2] != l + dl:
        raise HypothesesNotMet(f"word has gaps {pos[z.z2]-i},{pos[z.z3]-pos[z.z2]}, "
                               f"expected {k+dk},{l+dl}")
    return i


# -- single-element map -------------------------------------------------------


def phi_stanley(p: Poset, a: int, word, prm: PosetParams | None = None) -> tuple[Word, int]:
    """Map a word with ``a`` at position k to (word with ``a`` at k-1, r).

    The pivot is the last element before ``a`` not below it; r = k - i is
    its distance to ``a`` and satisfies 1 <= r <= t(a).
    """
    prm = prm or params(p)
    kpos = word.index(a)  # 0-based; 1-based position is kpos+1
    pivots = [i for i in range(kpos) if not p.less(word[i], a)]
    if not pivots:
        raise NoPivot("every element before the mark lies below it")
    i = max(pivots)
    r = kpos - i
    if not 1 <= r <= prm.t[a]:
        raise CaseExhaustion(f"stanley payload {r} outside [1, t(a)={prm.t[a]}]")
    return _move_right_past(p, word, i, a), r


def phi_stanley_inverse(p: Poset, a: int, word, r: int) -> Word | None:
    """Reconstruct the preimage: move the element right after ``a`` back by r
    positions, provided it is incomparable to everything it passes."""
    kpos = word.index(a)
    if kpos + 1 >= len(word):
        return None
    e = word[kpos + 1]
    for j in range(kpos - r + 1, kpos + 1):
        if j < 0 or not p.incomparable(word[j], e):
            return None
    w = list(word)
    w.pop(kpos + 1)
    w.insert(kpos + 1 - r, e)
    return tuple(w)


# -- gap-pair maps ------------------------------------------------------------


def transfer_intervals(prm: PosetParams, z: MarkedTriple, k: int, l: int):
    """Case boxes for F(k+1,l+1) -> I x F(k,l+2)."""
    z1, z2, z3 = z.as_tuple()
    edge = min(prm.interval(z1, z2) - 1, prm.t_star[z1])
    return [
        ("1", (min(prm.t[z2], k),)),
        ("2.1", (edge, prm.t_star[z3])),
        ("2.2", (edge, prm.t[z2])),
    ]


def psi_transfer(p: Poset, z: MarkedTriple, k: int, l: int, word,
                 prm: PosetParams | None = None) -> tuple[str, tuple[int, ...], Word]:
    """One unit of gap moves from the first gap to the second:
    domain word in F(k+1,l+1), image in F(k,l+2)."""
    prm = prm or params(p)
    z1, z2, z3 = z.as_tuple()
    i = _zpos(word, z, k, l, 1, 1)
    first = range(i + 1, i + k + 1)
    # Case 1: last element of the first block not below z2 hops past z2.
    pivots = [j for j in first if not p.less(word[j], z2)]
    if pivots:
        j = max(pivots)
        return "1", (i + k + 1 - j,), _move_right_past(p, word, j, z2)
    # Case 2: first element of the first block incomparable to z1 hops
    # before z1, widening the second gap; a second move restores the first.
    pivots = [j for j in first if p.incomparable(word[j], z1)]
    if not pivots:
        raise NoPivot("no case-2 pivot; F(k,l+2) must vanish")
    j = min(pivots)
    c1 = j - i
    w1 = _move_left_before(p, word, j, z1)
    # 2.1: some element after z3 is not above it; pull it before z3.
    tail = [r for r in range(i + k + l + 3, p.n) if not p.less(z3, w1[r])]
    if tail:
        r = min(tail)
        return "2.1", (c1, r - (i + k + l + 2)), _move_left_before(p, w1, r, z3)
    # 2.2: last element before z1 not below z2 hops past z2.
    heads = [s for s in range(i) if not p.less(w1[s], z2)]
    if not heads:
        raise CaseExhaustion("case 2.2 pivot missing; F(k,l+2) must vanish")
    s = max(heads)
    return "2.2", (c1, i - s), _move_right_past(p, w1, s, z2)


def shrink_intervals(prm: PosetParams, z: MarkedTriple, k: int, l: int):
    """Case boxes for F(k+1,l) -> I x F(k,l)."""
    z1, z2, z3 = z.as_tuple()
    edge = min(prm.interval(z1, z2) - 1, prm.t[z2])
    return [
        ("1", (min(k, prm.t_star[z1]),)),
        ("2", (min(k, prm.t[z3] - 1),)),
        ("3.1", (edge, min(l - 1, prm.t[z3]))),
        ("3.2", (edge, min(l - 1, prm.t_star[z1] - 1))),
    ]


def psi_shrink(p: Poset, z: MarkedTriple, k: int, l: int, word,
               prm: PosetParams | None = None) -> tuple[str, tuple[int, ...], Word]:
    """First gap shrinks by one: domain word in F(k+1,l), image in F(k,l)."""
    prm = prm or params(p)
    z1, z2, z3 = z.as_tuple()
    i = _zpos(word, z, k, l, 1, 0)
    first = range(i + 1, i + k + 1)
    mid = range(i + k + 2, i + k + l + 1)
    # Case 1: first element of the first block incomparable to z1 hops before it.
    pivots = [j for j in first if p.incomparable(word[j], z1)]
    if pivots:
        j = min(pivots)
        return "1", (j - i,), _move_left_before(p, word, j, z1)
    # Case 2: the middle block sits wholly inside the interval (z1, z3);
    # the last first-block element incomparable to z3 hops past z3.
    if all(p.less(z1, word[r]) and p.less(word[r], z3) for r in mid):
        pivots = [j for j in first if p.incomparable(word[j], z3)]
        if not pivots:
            raise NoPivot("no case-2 pivot; F(k,l) must vanish")
        j = max(pivots)
        return "2", (i + k + 1 - j,), _move_right_past(p, word, j, z3)
    # Case 3: move the last first-block element incomparable to z2 past z2,
    # then repair the second gap with a middle-block move.
    pivots = [j for j in first if p.incomparable(word[j], z2)]
    if not pivots:
        raise NoPivot("no case-3 pivot; F(k,l) must vanish")
    j = max(pivots)
    s = i + k + 1 - j
    w1 = _move_right_past(p, word, j, z2)  # gaps now (k, l+1), middles unshifted
    back = [r for r in mid if p.incomparable(w1[r], z3)]
    if back:
        r = max(back)
        return "3.1", (s, i + k + l + 1 - r), _move_right_past(p, w1, r, z3)
    fwd = [r for r in mid if p.incomparable(w1[r], z1)]
    if not fwd:
        raise CaseExhaustion("case 3 without a middle pivot")
    r = min(fwd)
    return "3.2", (s, r - i - k - 1), _move_left_before(p, w1, r, z1)


def grow_intervals(prm: PosetParams, z: MarkedTriple, k: int, l: int):
    """Case boxes for F(k+1,l) -> I x F(k+2,l)."""
    z1, z2, z3 = z.as_tuple()
    return [
        ("1", (prm.t[z1],)),
        ("2.1", (prm.t_star[z2] - 1,)),
        ("2.2", (min(l - 1, prm.t_star[z2]), prm.t_star[z3])),
    ]


def psi_grow(p: Poset, z: MarkedTriple, k: int, l: int, word,
             prm: PosetParams | None = None) -> tuple[str, tuple[int, ...], Word]:
    """First gap grows by one: domain word in F(k+1,l), image in F(k+2,l)."""
    prm = prm or params(p)
    z1, z2, z3 = z.as_tuple()
    i = _zpos(word, z, k, l, 1, 0)
    # Case 1: last element before z1 incomparable to it hops just past z1.
    pivots = [j for j in range(i) if p.incomparable(word[j], z1)]
    if pivots:
        j = max(pivots)
        return "1", (i - j,), _move_right_past(p, word, j, z1)
    # Case 2: first element after z2 incomparable to z2 hops before z2.
    pivots = [j for j in range(i + k + 2, p.n) if p.incomparable(word[j], z2)]
    if not pivots:
        raise NoPivot("no case-2 pivot; F(k+2,l) must vanish")
    j = min(pivots)
    if j >= i + k + l + 2:
        return "2.1", (j - i - k - l - 1,), _move_left_before(p, word, j, z2)
    c1 = j - i - k - 1
    w1 = _move_left_before(p, word, j, z2)  # gaps now (k+2, l-1)
    tail = [r for r in range(i + k + l + 2, p.n) if p.incomparable(w1[r], z3)]
    if not tail:
        raise CaseExhaustion("case 2.2 without a tail pivot")
    r = min(tail)
    return "2.2", (c1, r - i - k - l - 1), _move_left_before(p, w1, r, z3)


MAPS = {
    "transfer": (psi_transfer, transfer_intervals, (1, 1), (0, 2)),
    "shrink": (psi_shrink, shrink_intervals, (1, 0), (0, 0)),
    "grow": (psi_grow, grow_intervals, (1, 0), (2, 0)),
}


def interval_total(boxes) -> int:
    total = 0
    for _, dims in boxes:
        size = 1
        for d in dims:
            size *= max(d, 0)
        total += size
    return total


def encode_payload(boxes, tag: str, payload: tuple[int, ...]) -> int:
    """Index of (tag, payload) inside the disjoint union of boxes, 1-based.

    Raises CaseExhaustion when the payload leaves its declared box."""
    offset = 0
    for name, dims in boxes:
        size = 1
        for d in dims:
            size *= max(d, 0)
        if name == tag:
            if len(payload) != len(dims) or any(
                not 1 <= v <= d for v, d in zip(payload, dims)
            ):
                raise CaseExhaustion(f"payload {payload} outside box {name}={dims}")
            idx = 0
            for v, d in zip(payload, dims):
                idx = idx * d + (v - 1)
            return offset + idx + 1
        offset += size
    raise CaseExhaustion(f"unknown case tag {tag}")


# -- certification ------------------------------------------------------------


@dataclass
class InjectionCertificate:
    """Outcome of running one injection over its entire domain."""

    name: str
    k: int | None
    l: int | None
    domain_size: int
    image_size: int
    interval_total: int
    codomain_cells: int
    collisions: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    hashed: bool = False

    @property
    def codomain_bound(self) -> int:
        return self.interval_total * self.codomain_cells

    @property
    def ok(self) -> bool:
        return (
            not self.collisions
            and not self.errors
            and self.image_size == self.domain_size
            and self.domain_size <= self.codomain_bound
        )

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "type": "injection",
            "map": self.name,
            "k": self.k,
            "l": self.l,
            "domain_size": str(self.domain_size),
            "image_size": str(self.image_size),
            "interval_total": str(self.interval_total),
            "codomain_cells": str(self.codomain_cells),
            "codomain_bound": str(self.codomain_bound),
            "collisions": self.collisions[:16],
            "errors": self.errors[:16],
            "hashed": self.hashed,
            "ok": self.ok,
        }


def _collision_tracker(domain_size: int):
    """Full map below HASH_THRESHOLD, hash multiset above."""
    if domain_size <= HASH_THRESHOLD:
        seen: dict = {}

        def add(key, source):
            if key in seen:
                return (seen[key], source)
            seen[key] = source
            return None

        return add, False

    counts: Counter = Counter()

    def add_hashed(key, source):
        digest = hashlib.sha256(repr(key).encode()).digest()
        counts[digest] += 1
        if counts[digest] > 1:
            return ("<hashed>", source)
        return None

    return add_hashed, True


def certify_map(
    p: Poset,
    z: MarkedTriple,
    k: int,
    l: int,
    name: str,
    classes: dict | None = None,
    prm: PosetParams | None = None,
    F: FTable | None = None,
) -> InjectionCertificate:
    """Run one gap-pair injection over all of its domain and certify it.

    Raises HypothesesNotMet when the target class is empty (bounds without
    their hypotheses are not claims).
    """
    fn, intervals_fn, dom_shift, img_shift = MAPS[name]
    prm = prm or params(p)
    classes = classes if classes is not None else gap_classes(p, z)
    F = F or f_table(p, z)
    target = (k + img_shift[0], l + img_shift[1])
    if F.get(*target) <= 0:
        raise HypothesesNotMet(f"{name}: target class F{target} is empty")
    domain = classes.get((k + dom_shift[0], l + dom_shift[1]), [])
    boxes = intervals_fn(prm, z, k, l)
    cert = InjectionCertificate(
        name, k, l, len(domain), 0, interval_total(boxes), F.get(*target)
    )
    add, cert.hashed = _collision_tracker(len(domain))
    image = 0
    target_set = set(map(tuple, classes.get(target, [])))
    for word in domain:
        try:
            tag, payload, out = fn(p, z, k, l, word, prm)
            idx = encode_payload(boxes, tag, payload)
        except Exception as exc:  # certification must report, not crash
            cert.errors.append({"word": list(word), "error": str(exc)})
            continue
        if out not in target_set:
            cert.errors.append({"word": list(word), "error": f"image not in F{target}"})
            continue
        clash = add((idx, out), list(word))
        if clash is not None:
            cert.collisions.append({"first": clash[0], "second": clash[1]})
        else:
            image += 1
    cert.image_size = image
    return cert


def certify_stanley(
    p: Poset,
    a: int,
    kpos: int,
    classes: dict[int, list[Word]] | None = None,
    prm: PosetParams | None = None,
) -> InjectionCertificate:
    """Certify the single-element map on N_kpos, including its round trip."""
    from .extensions import enumerate_extensions

    prm = prm or params(p)
    if classes is None:
        classes = {}
        for w in enumerate_extensions(p):
            classes.setdefault(w.index(a) + 1, []).append(w)
    nv = {pos: len(ws) for pos, ws in classes.items()}
    if nv.get(kpos - 1, 0) <= 0:
        raise HypothesesNotMet("stanley: N_{k-1} is empty")
    domain = classes.get(kpos, [])
    boxes = [("1", (prm.t[a],))]
    cert = InjectionCertificate(
        "stanley", kpos, None, len(domain), 0, prm.t[a], nv.get(kpos - 1, 0)
    )
    add, cert.hashed = _collision_tracker(len(domain))
    target_set = set(classes.get(kpos - 1, []))
    image = 0
    for word in domain:
        try:
            out, r = phi_stanley(p, a, word, prm)
            idx = encode_payload(boxes, "1", (r,))
        except Exception as exc:
            cert.errors.append({"word": list(word), "error": str(exc)})
            continue
        if out not in target_set:
            cert.errors.append({"word": list(word), "error": "image not in N_{k-1}"})
            continue
        if phi_stanley_inverse(p, a, out, r) != word:
            cert.errors.append({"word": list(word), "error": "round trip failed"})
            continue
        clash = add((idx, out), list(word))
        if clash is not None:
            cert.collisions.append({"first": clash[0], "second": clash[1]})
        else:
            image += 1
    cert.image_size = image
    return cert


def verify_injections(p: Poset, z: MarkedTriple, maps=("stanley", "transfer", "shrink", "grow")):
    """Certificates for every applicable (k, l) (or position) of each map."""
    prm = params(p)
    classes = gap_classes(p, z)
    F = f_table(p, z)
    out: list[InjectionCertificate] = []
    for name in maps:
        if name == "stanley":
            nv = n_vector(p, z.z2)
            pos_classes: dict[int, list[Word]] = {}
            from .extensions import enumerate_extensions

            for w in enumerate_extensions(p):
                pos_classes.setdefault(w.index(z.z2) + 1, []).append(w)
            for kpos in sorted(nv.counts):
                if nv.get(kpos - 1) > 0:
                    out.append(certify_stanley(p, z.z2, kpos, pos_classes, prm))
            continue
        fn, intervals_fn, dom_shift, img_shift = MAPS[name]
        seen_kl = set()
        for (kk, ll) in classes:
            k, l = kk - dom_shift[0], ll - dom_shift[1]
            if k < 1 or l < 1 or (k, l) in seen_kl:
                continue
            seen_kl.add((k, l))
            if F.get(k + img_shift[0], l + img_shift[1]) > 0:
                out.append(certify_map(p, z, k, l, name, classes, prm, F))
    return out

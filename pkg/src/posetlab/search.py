"""Randomized and exhaustive search for inequality violations.

The random model: draw a linear order uniformly, keep each order-compatible
pair with probability p drawn per instance from {0.1, ..., 0.5}, close
transitively, and pick the marked triple uniformly among chains
z1 < z2 < z3.  Instances are seeded independently by index, so shards are
reproducible and order-independent.

Violations of the generalized product comparison (``gcpc``) are located
through the signed-gap reduction: a ``cpc2`` violation at (k, l) yields,
after swapping the roles of z1 and z2, a signed table F' with
F'(a, b) = F(-a, a+b), and the four cells at a = -k-1, b = k+l+1 violate
F'(a,b) F'(a+1,b+1) <= F'(a+1,b) F'(a,b+1).  Certificates embed the poset
and re-verify from scratch on reload.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import TooLarge
from .extensions import f_table, f_table_signed
from .inequalities import FAILS, HOLDS, VACUOUS, check_cpc, check_cpc1, check_cpc2
from .posets import SCHEMA, MarkedTriple, Poset, build, params

SEARCH_TARGETS = ("cpc", "cpc1", "cpc2", "gcpc")
_CHECKERS = {"cpc": check_cpc, "cpc1": check_cpc1, "cpc2": check_cpc2}

POSET_CLASS_COUNTS = {1: 1, 2: 2, 3: 5, 4: 16, 5: 63, 6: 318}
ENUMERATION_MAX_N = 6


@dataclass(frozen=True)
class SearchJob:
    target: str
    n_max: int
    seed: int
    budget: int
    n_min: int = 3
    width_max: int | None = None
    out: str | None = None

    def __post_init__(self):
        if self.target not in SEARCH_TARGETS:
            raise ValueError(f"target must be one of {SEARCH_TARGETS}")


@dataclass
class Certificate:
    ineq: str
    n: int
    covers: list
    z: tuple[int, int, int]
    indices: dict
    lhs: int
    rhs: int
    index: int  # instance index that produced it

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "type": "certificate",
            "ineq": self.ineq,
            "n": self.n,
            "covers": [list(c) for c in self.covers],
            "z": list(self.z),
            "indices": self.indices,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "index": self.index,
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "Certificate":
        return Certificate(
            obj["ineq"],
            int(obj["n"]),
            [tuple(c) for c in obj["covers"]],
            tuple(int(x) for x in obj["z"]),
            {key: int(v) for key, v in obj["indices"].items()},
            int(obj["lhs"]),
            int(obj["rhs"]),
            int(obj.get("index", -1)),
        )


def verify_certificate(cert: Certificate) -> bool:
    """Recompute the embedded instance and confirm the recorded violation."""
    p = build(cert.n, cert.covers)
    z = MarkedTriple(*cert.z)
    idx = cert.indices
    if cert.ineq == "gcpc":
        table = f_table_signed(p, z)
        a, b, pp, qq = idx["k"], idx["l"], idx["p"], idx["q"]
        lhs = table.get((a, b), 0) * table.get((pp, qq), 0)
        rhs = table.get((pp, b), 0) * table.get((a, qq), 0)
        return lhs == cert.lhs and rhs == cert.rhs and lhs > rhs
    F = f_table(p, z)
    rep = _CHECKERS[cert.ineq](F, idx["k"], idx["l"])
    return rep.lhs == cert.lhs and rep.rhs == cert.rhs and rep.verdict == FAILS


@dataclass
class SearchSummary:
    target: str
    instances: int = 0
    usable: int = 0
    holds: int = 0
    fails: int = 0
    vacuous: int = 0
    certificates: int = 0
    min_slack: list = field(default_factory=list)  # up to 5 smallest positive slacks
    critical: list = field(default_factory=list)  # two-of-three violations (never expected)

    def absorb(self, other: "SearchSummary") -> None:
        self.instances += other.instances
        self.usable += other.usable
        self.holds += other.holds
        self.fails += other.fails
        self.vacuous += other.vacuous
        self.certificates += other.certificates
        self.min_slack = sorted(self.min_slack + other.min_slack)[:5]
        self.critical.extend(other.critical)

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "type": "summary",
            "target": self.target,
            "instances": self.instances,
            "usable": self.usable,
            "holds": self.holds,
            "fails": self.fails,
            "vacuous": self.vacuous,
            "certificates": self.certificates,
            "min_slack": [str(s) for s in self.min_slack],
            "critical": self.critical,
        }


def random_instance(seed: int, index: int, n_min: int, n_max: int):
    """Deterministic (poset, triple) for one instance index; triple is None
    when the sample has no 3-chain."""
    rng = random.Random(seed * 1_000_003 + index)
    n = rng.randint(n_min, n_max)
    order = list(range(n))
    rng.shuffle(order)
    prob = rng.choice([0.1, 0.2, 0.3, 0.4, 0.5])
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < prob:
                pairs.append((order[i], order[j]))
    p = build(n, pairs)
    chains = [
        (a, b, c)
        for a in range(n)
        for b in range(n)
        for c in range(n)
        if p.less(a, b) and p.less(b, c)
    ]
    if not chains:
        return p, None
    return p, MarkedTriple(*rng.choice(chains))


def _scan_instance(job: SearchJob, index: int):
    summary = SearchSummary(job.target, instances=1)
    certs: list[Certificate] = []
    p, z = random_instance(job.seed, index, job.n_min, job.n_max)
    if z is None:
        return certs, summary
    if job.width_max is not None and params(p).width > job.width_max:
        return certs, summary
    summary.usable = 1
    F = f_table(p, z)
    target_id = "cpc2" if job.target == "gcpc" else job.target
    signed = None
    for k in range(1, p.n):
        for l in range(1, p.n - k + 1):
            trio = {name: fn(F, k, l) for name, fn in _CHECKERS.items()}
            # a double failure among {cpc, cpc1, cpc2} is impossible; if one
            # ever shows up it is logged as critical, never discarded
            if sum(1 for r in trio.values() if r.verdict == FAILS) >= 2:
                summary.critical.append(
                    {"covers": [list(c) for c in p.covers], "z": list(z.as_tuple()),
                     "k": k, "l": l, "index": index}
                )
            rep = trio[target_id]
            if rep.verdict == VACUOUS:
                summary.vacuous += 1
                continue
            if rep.verdict == HOLDS:
                summary.holds += 1
                if rep.slack > 0:
                    summary.min_slack = sorted(summary.min_slack + [Fraction(rep.slack)])[:5]
                continue
            summary.fails += 1
            if job.target == "gcpc":
                # signed-gap reduction: swap z1, z2 and translate indices
                if signed is None:
                    signed = f_table_signed(p, z.swapped12())
                a, b = -k - 1, k + l + 1
                lhs = signed.get((a, b), 0) * signed.get((a + 1, b + 1), 0)
                rhs = signed.get((a + 1, b), 0) * signed.get((a, b + 1), 0)
                if lhs > rhs:
                    certs.append(
                        Certificate(
                            "gcpc", p.n, list(p.covers), z.swapped12().as_tuple(),
                            {"k": a, "l": b, "p": a + 1, "q": b + 1}, lhs, rhs, index,
                        )
                    )
                    summary.certificates += 1
            else:
                certs.append(
                    Certificate(
                        job.target, p.n, list(p.covers), z.as_tuple(),
                        {"k": k, "l": l}, int(rep.lhs), int(rep.rhs), index,
                    )
                )
                summary.certificates += 1
    return certs, summary


def run(job: SearchJob, workers: int = 1):
    """Execute the job; returns (certificates, summary), deterministic in
    (seed, budget, filters) regardless of worker count."""
    summary = SearchSummary(job.target)
    certificates: list[Certificate] = []
    indices = range(job.budget)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(lambda i: _scan_instance(job, i), indices, chunksize=256)
            for certs, s in results:
                certificates.extend(certs)
                summary.absorb(s)
    else:
        for i in indices:
            certs, s = _scan_instance(job, i)
            certificates.extend(certs)
            summary.absorb(s)
    if job.out:
        with open(job.out, "a", encoding="utf-8") as fh:
            for cert in certificates:
                fh.write(json.dumps(cert.to_json_obj()) + "\n")
    return certificates, summary


# -- exhaustive small-poset enumeration --------------------------------------


def enumerate_posets(n: int):
    """One representative per isomorphism class, n <= 6.

    Grown by repeatedly attaching a new maximal element whose strict
    down-set is an order ideal, de-duplicated by canonical form.
    """
    if n > ENUMERATION_MAX_N:
        raise TooLarge(f"exhaustive enumeration guarded at n <= {ENUMERATION_MAX_N}")
    reps = [build(1, [])]
    for size in range(2, n + 1):
        seen = {}
        for p in reps:
            ideals = _ideals(p)
            for ideal in ideals:
                up = list(p.up) + [0]
                bits = ideal
                while bits:
                    x = (bits & -bits).bit_length() - 1
                    bits &= bits - 1
                    up[x] |= 1 << (size - 1)
                q = Poset(size, tuple(up))
                seen.setdefault(q.canonical_key(), q)
        reps = list(seen.values())
    return reps


def _ideals(p: Poset) -> list[int]:
    out = [0]
    seen = {0}
    stack = [0]
    while stack:
        ideal = stack.pop()
        for x in range(p.n):
            bx = 1 << x
            if ideal & bx or p.down[x] & ~ideal:
                continue
            nxt = ideal | bx
            if nxt not in seen:
                seen.add(nxt)
                out.append(nxt)
                stack.append(nxt)
    return out

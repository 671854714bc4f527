"""Exact verdicts for every cross-product-type inequality on F-tables.

Each checker returns a CheckReport whose lhs/rhs are exact rationals and
whose verdict is derived from the sign of ``slack = rhs - lhs`` (inequality
oriented as lhs <= rhs).  Comparisons involving square roots are decided by
isolating the root and squaring, with explicit sign analysis, so no
floating point ever enters a verdict.  "vacuous" is a first-class verdict:
it means a required positivity hypothesis fails (or every participating
cell is zero), and is counted separately from "holds".

Abbreviations used in the cell dictionaries: ``F_kl`` is F(k, l),
``F_k1l`` is F(k+1, l), ``F_kl2`` is F(k, l+2), and so on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadParams
from .extensions import FTable, NVector
from .posets import SCHEMA, PosetParams, fraction_str

HOLDS, FAILS, VACUOUS = "holds", "fails", "vacuous"


@dataclass
class CheckReport:
    ineq: str
    k: int | None
    l: int | None
    lhs: Fraction
    rhs: Fraction
    verdict: str
    cells: dict[str, int] = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    note: str = ""

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def ratio(self) -> Fraction | None:
        """Normalized rhs/lhs when lhs > 0; for human inspection."""
        return self.rhs / self.lhs if self.lhs > 0 else None

    def to_json_obj(self) -> dict:
        out = {
            "schema": SCHEMA,
            "type": "check",
            "ineq": self.ineq,
            "k": self.k,
            "l": self.l,
            "lhs": fraction_str(self.lhs),
            "rhs": fraction_str(self.rhs),
            "slack": fraction_str(self.slack),
            "verdict": self.verdict,
            "cells": {name: str(v) for name, v in self.cells.items()},
        }
        if self.extra:
            out["extra"] = {key: str(v) for key, v in self.extra.items()}
        r = self.ratio
        out["ratio"] = fraction_str(r) if r is not None else None
        if self.note:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def _report(ineq, k, l, lhs, rhs, cells, vacuous=False, extra=None, note="") -> CheckReport:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if vacuous:
        verdict = VACUOUS
    else:
        verdict = HOLDS if lhs <= rhs else FAILS
    return CheckReport(ineq, k, l, lhs, rhs, verdict, cells, extra or {}, note)


# -- plain product comparisons ----------------------------------------------


def check_cpc(F: FTable, k: int, l: int) -> CheckReport:
    """F(k,l) F(k+1,l+1) <= F(k+1,l) F(k,l+1)."""
    cells = {
        "F_kl": F.get(k, l),
        "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l),
        "F_kl1": F.get(k, l + 1),
    }
    lhs = cells["F_kl"] * cells["F_k1l1"]
    rhs = cells["F_k1l"] * cells["F_kl1"]
    return _report("cpc", k, l, lhs, rhs, cells, vacuous=all(v == 0 for v in cells.values()))


def check_cpc1(F: FTable, k: int, l: int) -> CheckReport:
    """F(k+2,l) F(k,l+1) <= F(k+1,l) F(k+1,l+1)."""
    cells = {
        "F_k2l": F.get(k + 2, l),
        "F_kl1": F.get(k, l + 1),
        "F_k1l": F.get(k + 1, l),
        "F_k1l1": F.get(k + 1, l + 1),
    }
    lhs = cells["F_k2l"] * cells["F_kl1"]
    rhs = cells["F_k1l"] * cells["F_k1l1"]
    return _report("cpc1", k, l, lhs, rhs, cells, vacuous=all(v == 0 for v in cells.values()))


def check_cpc2(F: FTable, k: int, l: int) -> CheckReport:
    """F(k,l+2) F(k+1,l) <= F(k,l+1) F(k+1,l+1)."""
    cells = {
        "F_kl2": F.get(k, l + 2),
        "F_k1l": F.get(k + 1, l),
        "F_kl1": F.get(k, l + 1),
        "F_k1l1": F.get(k + 1, l + 1),
    }
    lhs = cells["F_kl2"] * cells["F_k1l"]
    rhs = cells["F_kl1"] * cells["F_k1l1"]
    return _report("cpc2", k, l, lhs, rhs, cells, vacuous=all(v == 0 for v in cells.values()))


def check_half_cpc(F: FTable, k: int, l: int) -> CheckReport:
    """F(k,l) F(k+1,l+1) <= 2 F(k+1,l) F(k,l+1)."""
    r = check_cpc(F, k, l)
    return _report("half", k, l, r.lhs, 2 * r.rhs, r.cells, vacuous=r.verdict == VACUOUS)


def check_half_cpc1(F: FTable, k: int, l: int) -> CheckReport:
    """F(k+2,l) F(k,l+1) <= 2 F(k+1,l) F(k+1,l+1)."""
    r = check_cpc1(F, k, l)
    return _report("half1", k, l, r.lhs, 2 * r.rhs, r.cells, vacuous=r.verdict == VACUOUS)


def check_half_cpc2(F: FTable, k: int, l: int) -> CheckReport:
    """F(k,l+2) F(k+1,l) <= 2 F(k,l+1) F(k+1,l+1)."""
    r = check_cpc2(F, k, l)
    return _report("half2", k, l, r.lhs, 2 * r.rhs, r.cells, vacuous=r.verdict == VACUOUS)


def check_logc(F: FTable, k: int, l: int, which: int) -> CheckReport:
    """Log-concavity along the three lattice directions:

    1: F(k+2,l) F(k,l+2)  <= F(k+1,l+1)^2
    2: F(k,l)   F(k,l+2)  <= F(k,l+1)^2
    3: F(k,l)   F(k+2,l)  <= F(k+1,l)^2
    """
    if which == 1:
        cells = {"F_k2l": F.get(k + 2, l), "F_kl2": F.get(k, l + 2), "F_k1l1": F.get(k + 1, l + 1)}
        lhs, rhs = cells["F_k2l"] * cells["F_kl2"], cells["F_k1l1"] ** 2
    elif which == 2:
        cells = {"F_kl": F.get(k, l), "F_kl2": F.get(k, l + 2), "F_kl1": F.get(k, l + 1)}
        lhs, rhs = cells["F_kl"] * cells["F_kl2"], cells["F_kl1"] ** 2
    elif which == 3:
        cells = {"F_kl": F.get(k, l), "F_k2l": F.get(k + 2, l), "F_k1l": F.get(k + 1, l)}
        lhs, rhs = cells["F_kl"] * cells["F_k2l"], cells["F_k1l"] ** 2
    else:
        raise BadParams("which must be 1, 2 or 3")
    return _report(
        f"logc{which}", k, l, lhs, rhs, cells, vacuous=all(v == 0 for v in cells.values())
    )


def check_two_of_three(F: FTable, k: int, l: int) -> CheckReport:
    """At least two of {cpc, cpc1, cpc2} hold (vacuous counts as holding)."""
    reports = [check_cpc(F, k, l), check_cpc1(F, k, l), check_cpc2(F, k, l)]
    failures = sum(1 for r in reports if r.verdict == FAILS)
    cells: dict[str, int] = {}
    for r in reports:
        cells.update(r.cells)
    vac = all(r.verdict == VACUOUS for r in reports)
    return _report(
        "two-of-three", k, l, failures, 1, cells, vacuous=vac,
        extra={"verdicts": ",".join(r.verdict for r in reports)},
    )


# -- ratio lower bounds -------------------------------------------------------


def check_logconcave_product(F: FTable, k: int, l: int) -> CheckReport:
    """F(k+2,l) F(k,l+2) / F(k+1,l+1)^2 <= F(k+1,l) F(k,l+1) / (F(k,l) F(k+1,l+1)),
    cross-multiplied; requires F(k,l) F(k+1,l+1) > 0."""
    A = F.get(k + 1, l) * F.get(k, l + 1)
    B = F.get(k, l) * F.get(k + 1, l + 1)
    cells = {
        "F_kl": F.get(k, l), "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l), "F_kl1": F.get(k, l + 1),
        "F_k2l": F.get(k + 2, l), "F_kl2": F.get(k, l + 2),
    }
    if B == 0:
        return _report("logc-product", k, l, 0, 0, cells, vacuous=True)
    lhs = B * cells["F_k2l"] * cells["F_kl2"]
    rhs = A * cells["F_k1l1"] ** 2
    return _report("logc-product", k, l, lhs, rhs, cells)


def check_sqrt_lower(F: FTable, k: int, l: int) -> CheckReport:
    """A/B >= 1/2 + sqrt(F(k,l+2) F(k+2,l)) / (2 F(k+1,l+1)), B > 0 required;
    A = F(k+1,l) F(k,l+1), B = F(k,l) F(k+1,l+1).

    Decided exactly: (2A - B) F(k+1,l+1) >= B sqrt(CD) with both sides
    nonnegative, then squared.
    """
    A = F.get(k + 1, l) * F.get(k, l + 1)
    B = F.get(k, l) * F.get(k + 1, l + 1)
    C, D = F.get(k, l + 2), F.get(k + 2, l)
    cells = {
        "F_kl": F.get(k, l), "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l), "F_kl1": F.get(k, l + 1),
        "F_kl2": C, "F_k2l": D,
    }
    if B == 0:
        return _report("sqrt-lower", k, l, 0, 0, cells, vacuous=True)
    left = (2 * A - B) * F.get(k + 1, l + 1)
    if left < 0:
        return _report("sqrt-lower", k, l, B * B * C * D + 1, 0, cells, note="2A < B")
    return _report("sqrt-lower", k, l, B * B * C * D, left * left, cells, note="squared")


def check_vanish_lower(F: FTable, k: int, l: int) -> CheckReport:
    """A/B >= 1 / (1 + sqrt(1 - F(k,l) F(k+2,l) / F(k+1,l)^2)), requiring
    B > 0 and F(k,l+2) = 0.

    Equivalent to A sqrt(F(k+1,l)^2 - F(k,l) F(k+2,l)) >= (B - A) F(k+1,l);
    immediate when A >= B, otherwise squared.
    """
    A = F.get(k + 1, l) * F.get(k, l + 1)
    B = F.get(k, l) * F.get(k + 1, l + 1)
    cells = {
        "F_kl": F.get(k, l), "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l), "F_kl1": F.get(k, l + 1),
        "F_kl2": F.get(k, l + 2), "F_k2l": F.get(k + 2, l),
    }
    if B == 0 or F.get(k, l + 2) != 0:
        return _report("vanish-lower", k, l, 0, 0, cells, vacuous=True)
    if A >= B:
        return _report("vanish-lower", k, l, B, A, cells, note="A >= B")
    disc = F.get(k + 1, l) ** 2 - F.get(k, l) * F.get(k + 2, l)
    lhs = (B - A) ** 2 * F.get(k + 1, l) ** 2
    rhs = A * A * disc
    return _report("vanish-lower", k, l, lhs, rhs, cells, note="squared")


def check_main(F: FTable, k: int, l: int) -> CheckReport:
    """Branch on the vanishing pattern of F(k,l+2), F(k+2,l):

    * both positive:  A >= (1/2 + 1/(4 n sqrt(k l))) B   (squared form)
    * F(k,l+2) = 0 < F(k+2,l):  A >= (1/2 + 1/(16 n k l^2)) B
    * F(k+2,l) = 0 < F(k,l+2):  A >= (1/2 + 1/(16 n k^2 l)) B
    * both zero, B > 0:  A = B exactly

    Vacuous when B = F(k,l) F(k+1,l+1) = 0.
    """
    n = F.n
    A = F.get(k + 1, l) * F.get(k, l + 1)
    B = F.get(k, l) * F.get(k + 1, l + 1)
    C, D = F.get(k, l + 2), F.get(k + 2, l)
    cells = {
        "F_kl": F.get(k, l), "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l), "F_kl1": F.get(k, l + 1),
        "F_kl2": C, "F_k2l": D,
    }
    if B == 0:
        return _report("main", k, l, 0, 0, cells, vacuous=True)
    if C > 0 and D > 0:
        # (2A - B) 2 n sqrt(k l) >= B, squared
        left = 2 * A - B
        if left < 0:
            return _report("main", k, l, B * B + 1, 0, cells, note="2A < B")
        lhs, rhs = B * B, left * left * 4 * n * n * k * l
        return _report("main", k, l, lhs, rhs, cells, note="branch=nonvanishing(squared)")
    if C == 0 and D > 0:
        factor = Fraction(1, 2) + Fraction(1, 16 * n * k * l * l)
        return _report("main", k, l, factor * B, A, cells, note="branch=first-vanishing")
    if D == 0 and C > 0:
        factor = Fraction(1, 2) + Fraction(1, 16 * n * k * k * l)
        return _report("main", k, l, factor * B, A, cells, note="branch=second-vanishing")
    # both vanish: exact equality
    verdict = HOLDS if A == B else FAILS
    return CheckReport("main", k, l, Fraction(B), Fraction(A), verdict, cells,
                       note="branch=equality")


def check_thin_flat(F: FTable, prm: PosetParams, t: int, k: int, l: int) -> CheckReport:
    """A >= (1/2 + 1/(16 t (t+1)^3)) B for posets that are t-thin or t-flat
    with respect to the marked triple.  Vacuous when neither holds or B = 0.
    """
    marked = set(F.z.as_tuple())
    thin = all(
        prm.n - prm.b[u] - prm.b_star[u] <= t - 1 for u in range(prm.n) if u not in marked
    )
    flat = all(prm.b[u] + prm.b_star[u] <= t + 1 for u in marked)
    A = F.get(k + 1, l) * F.get(k, l + 1)
    B = F.get(k, l) * F.get(k + 1, l + 1)
    cells = {
        "F_kl": F.get(k, l), "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l), "F_kl1": F.get(k, l + 1),
    }
    if not (thin or flat) or B == 0:
        return _report("thin", k, l, 0, 0, cells, vacuous=True, extra={"t": t})
    factor = Fraction(1, 2) + Fraction(1, 16 * t * (t + 1) ** 3)
    return _report("thin", k, l, factor * B, A, cells, extra={"t": t})


def check_converse(F: FTable, k: int, l: int) -> CheckReport:
    """A <= 2 k l (min(k,l) + 1) n B, requiring B > 0."""
    n = F.n
    A = F.get(k + 1, l) * F.get(k, l + 1)
    B = F.get(k, l) * F.get(k + 1, l + 1)
    cells = {
        "F_kl": F.get(k, l), "F_k1l1": F.get(k + 1, l + 1),
        "F_k1l": F.get(k + 1, l), "F_kl1": F.get(k, l + 1),
    }
    if B == 0:
        return _report("converse", k, l, 0, 0, cells, vacuous=True)
    return _report("converse", k, l, A, 2 * k * l * (min(k, l) + 1) * n * B, cells)


def check_gcpc(table, k: int, l: int, p: int, q: int) -> CheckReport:
    """F(k,l) F(p,q) <= F(p,l) F(k,q) for k <= p, l <= q.

    ``table`` may be an FTable or a raw {(a, b): count} map (signed gaps)."""
    if k > p or l > q:
        raise BadParams("gcpc requires k <= p and l <= q")
    get = table.get if isinstance(table, dict) else table.entries.get
    cells = {
        "F_kl": get((k, l), 0),
        "F_pq": get((p, q), 0),
        "F_pl": get((p, l), 0),
        "F_kq": get((k, q), 0),
    }
    lhs = cells["F_kl"] * cells["F_pq"]
    rhs = cells["F_pl"] * cells["F_kq"]
    return _report(
        "gcpc", k, l, lhs, rhs, cells,
        vacuous=all(v == 0 for v in cells.values()), extra={"p": p, "q": q},
    )


def check_stanley(N: NVector, k: int) -> CheckReport:
    """Position-count bounds for one marked element:

    N_k <= (k-1) N_{k-1}  when N_{k-1} > 0,
    N_k <= (n-k) N_{k+1}  when N_{k+1} > 0,
    N_k^2 <= (k-1)(n-k) N_{k-1} N_{k+1}  when both are positive.

    The report's lhs/rhs carry the squared ratio bound; the verdict fails
    if any applicable bound fails, and is vacuous when none applies.
    """
    n = N.n
    nk, lo, hi = N.get(k), N.get(k - 1), N.get(k + 1)
    cells = {"N_km1": lo, "N_k": nk, "N_kp1": hi}
    failures = []
    applicable = False
    if lo > 0:
        applicable = True
        if nk > (k - 1) * lo:
            failures.append("up")
    if hi > 0:
        applicable = True
        if nk > (n - k) * hi:
            failures.append("down")
    if lo > 0 and hi > 0:
        lhs, rhs = nk * nk, (k - 1) * (n - k) * lo * hi
        if lhs > rhs:
            failures.append("ratio")
    else:
        lhs, rhs = 0, 0
    if not applicable:
        return _report("stanley", k, None, 0, 0, cells, vacuous=True)
    verdict = FAILS if failures else HOLDS
    return CheckReport("stanley", k, None, Fraction(lhs), Fraction(rhs), verdict, cells,
                       extra={"failed": ",".join(failures)} if failures else {})


# -- registry for the CLI -----------------------------------------------------

TABLE_CHECKS = {
    "cpc": check_cpc,
    "cpc1": check_cpc1,
    "cpc2": check_cpc2,
    "half": check_half_cpc,
    "half1": check_half_cpc1,
    "half2": check_half_cpc2,
    "logc1": lambda F, k, l: check_logc(F, k, l, 1),
    "logc2": lambda F, k, l: check_logc(F, k, l, 2),
    "logc3": lambda F, k, l: check_logc(F, k, l, 3),
    "logc-product": check_logconcave_product,
    "sqrt-lower": check_sqrt_lower,
    "vanish-lower": check_vanish_lower,
    "main": check_main,
    "converse": check_converse,
    "two-of-three": check_two_of_three,
}

ALL_CHECK_IDS = sorted(TABLE_CHECKS) + ["thin", "stanley", "gcpc"]

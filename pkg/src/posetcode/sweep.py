"""Parameter sweeps that check code dimensions and distances by exhaustive enumeration.

Each grid point yields one :class:`SweepRow`.  Rows are computed independently
and returned in grid order, so the report does not depend on the number of
worker processes.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .agcodes import INFINITY, AGCodeSpec, Divisor, Place, build_ag_code, finite
from .codes import (
    BudgetExceeded,
    ParameterOutOfRange,
    RSCodeSpec,
    build_code,
    default_budget,
    min_distance,
)
from .gf import parse_field

GRID_QS = (3, 4, 5, 7, 8, 9)
AG_QS = (5, 7, 8)
GRID_CAP = 500_000


@dataclass(frozen=True)
class SweepRow:
    kind: str
    params: tuple[tuple[str, object], ...]
    status: str
    expected: tuple[tuple[str, object], ...] = ()
    observed: tuple[tuple[str, object], ...] = ()
    detail: str = ""

    def line(self) -> str:
        p = " ".join(f"{k}={v}" for k, v in self.params)
        out = f"{self.kind} {p}: {self.status}"
        if self.expected:
            out += " expected(" + ",".join(f"{k}{v}" for k, v in self.expected) + ")"
        if self.observed:
            out += " observed(" + ",".join(f"{k}={v}" for k, v in self.observed) + ")"
        if self.detail:
            out += f" [{self.detail}]"
        return out


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.count("FAIL") == 0

    def summary(self) -> str:
        return (f"{len(self.rows)} rows: {self.count('PASS')} PASS, {self.count('FAIL')} FAIL, "
                f"{self.count('ParameterOutOfRange')} ParameterOutOfRange, "
                f"{self.count('BudgetExceeded')} BudgetExceeded")

    def text(self) -> str:
        return "\n".join([r.line() for r in self.rows] + [self.summary()]) + "\n"


# -- grids ------------------------------------------------------------------------


def bottleneck_grid(qs: Iterable[int] = GRID_QS, s_values: Iterable[int] = (2, 3, 4),
                  t_rule: str = "stated", cap: int = GRID_CAP,
                  extra_t: int = 0) -> Iterator[tuple]:
    """(q, r, s, b_row, t) with 2 <= r <= min(q, 4), 1 <= b_row <= s and q^(t-r+1) <= cap.

    ``t_rule="stated"`` starts t at r(b_row-1)+1; ``"strict"`` starts it at
    r*b_row.  ``extra_t`` widens the t range by that many values on both ends
    so out-of-range points can be exercised.
    """
    s_values = tuple(s_values)
    for q in qs:
        for r in range(2, min(q, 4) + 1):
            for s in s_values:
                for b in range(1, s + 1):
                    lo = r * (b - 1) + 1 if t_rule == "stated" else r * b
                    for t in range(lo - extra_t, r * s + 1 + extra_t):
                        if t - r + 1 >= 0 and q ** (t - r + 1) > cap:
                            continue
                        yield (q, r, s, b, t)


def nrt_grid(qs: Iterable[int] = GRID_QS, s_values: Iterable[int] = (2, 3, 4),
             cap: int = GRID_CAP) -> Iterator[tuple]:
    s_values = tuple(s_values)
    for q in qs:
        for r in range(2, min(q, 4) + 1):
            for s in s_values:
                for t in range(1, r * s + 1):
                    if q**t <= cap:
                        yield (q, r, s, t)


def ag_place_sets(q: int, r: int) -> list[tuple[Place, ...]]:
    """All-finite evaluation places 1..r, and 1..r-1 plus infinity."""
    return [tuple(finite(a) for a in range(1, r + 1)),
            tuple(finite(a) for a in range(1, r)) + (INFINITY,)]


def ag_grid(qs: Iterable[int] = AG_QS, r_values=(2, 3), s_values=(2, 3), max_coeff: int = 3,
            constrained: bool = True) -> Iterator[tuple]:
    """(q, places, s, divisor) for divisors on the places and infinity within the degree window."""
    for q in qs:
        for r in r_values:
            for s in s_values:
                lo, hi = (r - 1, r * s - r + 1) if constrained else (0, r * s - 1)
                for places in ag_place_sets(q, r):
                    support = list(dict.fromkeys(places + (INFINITY,)))
                    for cs in itertools.product(range(-max_coeff, max_coeff + 1), repeat=len(support)):
                        if lo <= sum(cs) <= hi:
                            yield (q, places, s, tuple(zip(support, cs)))


# -- single points -------------------------------------------------------------------


def _points(r: int) -> tuple[int, ...]:
    return tuple(range(r))


def bottleneck_point(args) -> SweepRow:
    q, r, s, b, t, budget = args
    params = (("q", q), ("r", r), ("s", s), ("b_row", b), ("t", t))
    expected = (("dim=", t - r + 1), ("d=", r * s - t + 1))
    try:
        code = build_code(RSCodeSpec(parse_field(str(q)), _points(r), s, t, b))
    except ParameterOutOfRange as exc:
        return SweepRow("bottleneck", params, "ParameterOutOfRange", detail=str(exc))
    try:
        d = min_distance(code, budget) if code.dim else None
    except BudgetExceeded:
        return SweepRow("bottleneck", params, "BudgetExceeded", expected, (("dim", code.dim),))
    observed = (("dim", code.dim), ("d", d))
    ok = code.dim == t - r + 1 and d == r * s - t + 1
    return SweepRow("bottleneck", params, "PASS" if ok else "FAIL", expected, observed)


def nrt_point(args) -> SweepRow:
    q, r, s, t, budget = args
    params = (("q", q), ("r", r), ("s", s), ("t", t))
    expected = (("dim=", t), ("d=", r * s - t + 1))
    try:
        code = build_code(RSCodeSpec(parse_field(str(q)), _points(r), s, t))
    except ParameterOutOfRange as exc:
        return SweepRow("nrt", params, "ParameterOutOfRange", detail=str(exc))
    try:
        d = min_distance(code, budget)
    except BudgetExceeded:
        return SweepRow("nrt", params, "BudgetExceeded", expected, (("dim", code.dim),))
    ok = code.dim == t and d == r * s - t + 1
    return SweepRow("nrt", params, "PASS" if ok else "FAIL", expected, (("dim", code.dim), ("d", d)))


def ag_point(args) -> SweepRow:
    """Check d >= rs - deg G, dim >= deg G - r + 2 and the MDS condition dim + d = rs - r + 2.

    With ``constrained=False`` the L(G) code in the NRT metric is checked
    against dim >= deg G + 1 and d >= rs - deg G instead.
    """
    q, places, s, items, constrained, budget = args
    G = Divisor(items)
    r, deg = len(places), G.degree
    label = "ag" if constrained else "ag-nrt"
    params = (("q", q), ("places", ",".join(map(str, places))), ("s", s),
              ("G", " ".join(f"{n}P[{p}]" for p, n in G.coeffs.items()) or "0"), ("deg", deg))
    if constrained:
        expected = (("d>=", r * s - deg), ("dim>=", deg - r + 2), ("dim+d=", r * s - r + 2))
    else:
        expected = (("d>=", r * s - deg), ("dim>=", deg + 1))
    try:
        code = build_ag_code(AGCodeSpec(parse_field(str(q)), places, G, s), constrained=constrained)
    except ParameterOutOfRange as exc:
        return SweepRow(label, params, "ParameterOutOfRange", detail=str(exc))
    try:
        d = min_distance(code, budget) if code.dim else None
    except BudgetExceeded:
        return SweepRow(label, params, "BudgetExceeded", expected, (("dim", code.dim),))
    if d is None:
        return SweepRow(label, params, "FAIL", expected, (("dim", 0),), "zero code")
    if constrained:
        ok = d >= r * s - deg and code.dim >= deg - r + 2 and code.dim + d == r * s - r + 2
    else:
        ok = d >= r * s - deg and code.dim >= deg + 1
    return SweepRow(label, params, "PASS" if ok else "FAIL", expected, (("dim", code.dim), ("d", d)))


# -- drivers -------------------------------------------------------------------------


def _run(func, jobs: list, workers: int) -> SweepReport:
    if workers <= 1:
        return SweepReport([func(j) for j in jobs])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return SweepReport(list(pool.map(func, jobs, chunksize=8)))


def run_bottleneck(workers: int = 1, budget: int | None = None, **grid) -> SweepReport:
    budget = default_budget() if budget is None else budget
    return _run(bottleneck_point, [g + (budget,) for g in bottleneck_grid(**grid)], workers)


def run_nrt(workers: int = 1, budget: int | None = None, **grid) -> SweepReport:
    budget = default_budget() if budget is None else budget
    return _run(nrt_point, [g + (budget,) for g in nrt_grid(**grid)], workers)


def run_ag(workers: int = 1, budget: int | None = None, constrained: bool = True, **grid) -> SweepReport:
    budget = default_budget() if budget is None else budget
    jobs = [g + (constrained, budget) for g in ag_grid(constrained=constrained, **grid)]
    return _run(ag_point, jobs, workers)


SWEEPS = {
    "bottleneck": run_bottleneck,
    "nrt": run_nrt,
    "ag": run_ag,
    "ag-nrt": lambda workers=1, budget=None, **grid: run_ag(workers, budget, constrained=False, **grid),
}

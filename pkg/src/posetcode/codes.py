"""Reed-Solomon evaluation codes in the NRT and bottleneck metrics.

A codeword is the s x r matrix ``H(f)`` whose entry (i, j) is the value of the
(i-1)-th hyperderivative of ``f`` at the j-th evaluation point.  Without a
``b_row`` the message space is all polynomials of degree < t and the metric is
NRT on ``C(s, r)``.  With ``b_row`` the message space is the subspace on which
the (b_row-1)-th hyperderivative takes the same value at every point, so row
``b_row`` of every codeword is constant, and the metric is ``U(s, r, b_row)``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import linalg
from .gf import FieldSpec, binom_mod_p
from .poly import Polynomial, taylor_codes
from .poset import (
    BottleneckShape,
    LengthMismatch,
    MatrixWord,
    Poset,
    bottleneck,
    bottleneck_weights,
    chain_union,
    nrt_weights,
)

DEFAULT_BUDGET = 500_000
CHUNK = 1 << 15


class ParameterOutOfRange(ValueError):
    pass


class DuplicatePoints(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    """Enumeration cap; the POSETCODE_BUDGET environment variable overrides it."""
    env = os.environ.get("POSETCODE_BUDGET")
    if env:
        value = int(env)
        if value < 1:
            raise ValueError("POSETCODE_BUDGET must be >= 1")
        return value
    return DEFAULT_BUDGET


def _codes(field: FieldSpec, points) -> tuple[int, ...]:
    pts = tuple(field.coerce(a) for a in points)
    if len(set(pts)) != len(pts):
        raise DuplicatePoints(f"evaluation points are not distinct: {list(pts)}")
    return pts


@dataclass(frozen=True)
class RSCodeSpec:
    field: FieldSpec
    points: tuple[int, ...]
    s: int
    t: int
    b_row: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", _codes(self.field, self.points))
        r, s, t = self.r, self.s, self.t
        if r < 1 or s < 1:
            raise ParameterOutOfRange("need at least one point and one row")
        if not 1 <= t <= r * s:
            raise ParameterOutOfRange(f"t={t} must satisfy 1 <= t <= rs={r * s}")
        if self.b_row is not None:
            if r < 2:
                raise ParameterOutOfRange("a bottleneck code needs r >= 2")
            if not 1 <= self.b_row <= s:
                raise ParameterOutOfRange(f"b_row={self.b_row} must lie in 1..{s}")
            lo = r * (self.b_row - 1) + 1
            if t < lo:
                raise ParameterOutOfRange(f"t={t} must satisfy r(b_row-1)+1={lo} <= t <= rs={r * s}")

    @property
    def r(self) -> int:
        return len(self.points)


@dataclass(frozen=True, eq=False)
class Code:
    """A linear code of s x r matrices with a message basis and a poset metric.

    ``generator[i]`` is the codeword of ``basis[i]``; ``evaluate`` maps a
    message function (polynomial or rational function) to its matrix.
    """

    field: FieldSpec
    s: int
    r: int
    b_row: int | None
    basis: tuple
    generator: np.ndarray
    metric: Poset
    evaluate: Callable[[Any], np.ndarray]
    spec: Any = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def length(self) -> int:
        return self.metric.n

    @property
    def shape(self) -> BottleneckShape | None:
        return None if self.b_row is None else BottleneckShape(self.s, self.r, self.b_row)

    @property
    def size(self) -> int:
        return self.field.q ** self.dim

    def message_function(self, message: Sequence):
        if len(message) != self.dim:
            raise LengthMismatch(f"message of length {len(message)}, code dimension {self.dim}")
        F = self.field
        f = None
        for m, b in zip(message, self.basis):
            term = b * F.coerce(m)
            f = term if f is None else f + term
        return f

    def weights(self, batch: np.ndarray) -> np.ndarray:
        if self.b_row is None:
            return nrt_weights(batch)
        return bottleneck_weights(batch, self.b_row)

    def weight(self, A) -> int:
        arr = A.array() if isinstance(A, MatrixWord) else np.asarray(A, dtype=np.int64)
        return int(self.weights(arr[None])[0])

    def __repr__(self):
        metric = "NRT" if self.b_row is None else f"U({self.s},{self.r},{self.b_row})"
        return f"Code([{self.length},{self.dim}] over {self.field!r}, {metric})"


# -- constrained polynomial spaces ---------------------------------------------


def hasse_row(field: FieldSpec, a: int, t: int, order: int) -> list[int]:
    """Coefficients of the linear form f -> d^order f(a) on polynomials of degree < t."""
    row = []
    for i in range(t):
        b = binom_mod_p(i, order, field.p) if i >= order else 0
        row.append(field.mul(b, field.pow(a, i - order)) if b else 0)
    return row


def constrained_basis(field: FieldSpec, points, t: int, deriv_order: int) -> list[Polynomial]:
    """Basis of {f : deg f < t, d^deriv_order f takes one common value at all points}.

    Unknowns are the t coefficients plus the shared value c; the homogeneous
    system "d^k f(a_j) - c = 0" is solved exactly and c is dropped.
    """
    if t < 1:
        raise ParameterOutOfRange("t must be >= 1")
    pts = _codes(field, points)
    minus_one = field.neg(1)
    rows = [hasse_row(field, a, t, deriv_order) + [minus_one] for a in pts]
    return [Polynomial(field, v[:t]) for v in linalg.nullspace(field, rows, t + 1)]


def hyperderivative_matrix(f: Polynomial, points: Sequence[int], s: int) -> np.ndarray:
    """H(f): entry (i, j) is d^i f(points[j]) for i < s (0-indexed)."""
    cols = [taylor_codes(f, a, s) for a in points]
    return np.array(cols, dtype=np.int64).reshape(len(points), s).T.copy()


def build_code(spec: RSCodeSpec) -> Code:
    F, s, r, t = spec.field, spec.s, spec.r, spec.t
    pts = spec.points
    if spec.b_row is None:
        basis = [Polynomial.monomial(F, i) for i in range(t)]
        metric = chain_union(s, r)
    else:
        basis = constrained_basis(F, pts, t, spec.b_row - 1)
        metric = bottleneck(BottleneckShape(s, r, spec.b_row))

    def evaluate(f):
        return hyperderivative_matrix(f, pts, s)

    gen = np.array([evaluate(b) for b in basis], dtype=np.int64).reshape(len(basis), s, r)
    return Code(F, s, r, spec.b_row, tuple(basis), gen, metric, evaluate, spec)


def encode(code: Code, message: Sequence) -> MatrixWord:
    f = code.message_function(message)
    if f is None:
        arr = np.zeros((code.s, code.r), dtype=np.int64)
    else:
        arr = code.evaluate(f)
    return MatrixWord(code.field, arr.tolist(), code.shape)


# -- exhaustive enumeration ----------------------------------------------------


@dataclass(frozen=True)
class WeightEnumerator:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    @property
    def min_nonzero_weight(self) -> int | None:
        return next((w for w, c in enumerate(self.counts) if w and c), None)

    def polynomial(self, var: str = "x") -> str:
        terms = []
        for w, c in enumerate(self.counts):
            if not c:
                continue
            mono = "" if w == 0 else (var if w == 1 else f"{var}^{w}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


def _messages(q: int, k: int, lo: int, hi: int) -> np.ndarray:
    """Messages lo..hi-1 in base-q counter order (digit 0 least significant)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, k), dtype=np.int64)
    for i in range(k):
        out[:, i] = idx % q
        idx //= q
    return out


def codeword_batch(field: FieldSpec, generator: np.ndarray, messages: np.ndarray) -> np.ndarray:
    k, s, r = generator.shape
    flat = generator.reshape(k, s * r)
    if field.is_prime_field:
        out = (messages @ flat) % field.p
    else:
        out = np.zeros((messages.shape[0], s * r), dtype=np.int64)
        for i in range(k):
            out = field.vadd(out, field.vmul(messages[:, i:i + 1], flat[i][None, :]))
    return out.reshape(-1, s, r)


def _tally(args) -> np.ndarray:
    field, generator, b_row, length, lo, hi = args
    q, k = field.q, generator.shape[0]
    counts = np.zeros(length + 1, dtype=np.int64)
    for start in range(lo, hi, CHUNK):
        stop = min(start + CHUNK, hi)
        batch = codeword_batch(field, generator, _messages(q, k, start, stop))
        w = nrt_weights(batch) if b_row is None else bottleneck_weights(batch, b_row)
        counts += np.bincount(w, minlength=length + 1)
    return counts


def _check_budget(code: Code, budget: int | None) -> int:
    budget = default_budget() if budget is None else budget
    if code.size > budget:
        raise BudgetExceeded(f"{code.size} codewords exceed the enumeration budget {budget}")
    return budget


def weight_enumerator(code: Code, budget: int | None = None, workers: int = 1) -> WeightEnumerator:
    """Exhaustive weight distribution; identical for any worker count."""
    _check_budget(code, budget)
    total = code.size
    if code.dim == 0:
        return WeightEnumerator((1,) + (0,) * code.length)
    workers = max(1, int(workers))
    if workers == 1 or total <= CHUNK:
        counts = _tally((code.field, code.generator, code.b_row, code.length, 0, total))
    else:
        step = -(-total // workers)
        jobs = [(code.field, code.generator, code.b_row, code.length, lo, min(lo + step, total))
                for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = sum(pool.map(_tally, jobs))
    return WeightEnumerator(tuple(int(c) for c in counts))


def min_distance(code: Code, budget: int | None = None, workers: int = 1) -> int:
    if code.dim < 1:
        raise ParameterOutOfRange("minimum distance of the zero code is undefined")
    d = weight_enumerator(code, budget, workers).min_nonzero_weight
    assert d is not None
    return d


def iter_codewords(code: Code, budget: int | None = None):
    """Yield (message, codeword array) pairs in counter order."""
    _check_budget(code, budget)
    q, k = code.field.q, code.dim
    for start in range(0, code.size, CHUNK):
        stop = min(start + CHUNK, code.size)
        msgs = _messages(q, k, start, stop)
        batch = codeword_batch(code.field, code.generator, msgs)
        for m, A in zip(msgs, batch):
            yield tuple(int(x) for x in m), A


# -- reports --------------------------------------------------------------------


@dataclass(frozen=True)
class SingletonReport:
    n: int
    k: int
    d: int

    @property
    def slack(self) -> int:
        return self.n - self.k + 1 - self.d

    @property
    def mds(self) -> bool:
        return self.slack == 0

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "slack": self.slack, "mds": self.mds}


def singleton_report(code: Code, d: int) -> SingletonReport:
    return SingletonReport(code.length, code.dim, d)


@dataclass(frozen=True)
class CodeSummary:
    length: int
    dim: int
    distance: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dim, self.length)

    @property
    def relative_distance(self) -> Fraction:
        return Fraction(self.distance, self.length)


@dataclass(frozen=True)
class MetricComparison:
    r: int
    s: int
    t: int
    nrt: CodeSummary
    bottleneck: CodeSummary
    nrt_closed: CodeSummary
    bottleneck_closed: CodeSummary

    @property
    def agrees(self) -> bool:
        return self.nrt == self.nrt_closed and self.bottleneck == self.bottleneck_closed

    def rows(self) -> list[tuple[str, Any, Any, str]]:
        a, b = self.nrt, self.bottleneck
        if b.relative_distance > a.relative_distance:
            rel = "C2 has advantage in error correction"
        elif b.relative_distance == a.relative_distance:
            rel = "equal"
        else:
            rel = "C1 has advantage in error correction"
        return [
            ("length", a.length, b.length, "C2 is shorter" if b.length < a.length else "-"),
            ("dimension", a.dim, b.dim, "C1 has a higher dimension" if a.dim > b.dim else "-"),
            ("minimum distance", a.distance, b.distance, "both are the same" if a.distance == b.distance else "differ"),
            ("rate", a.rate, b.rate, "depends on t, r, s"),
            ("relative distance", a.relative_distance, b.relative_distance, rel),
        ]


def closed_form_summaries(r: int, s: int, t: int) -> tuple[CodeSummary, CodeSummary]:
    d = r * s - t + 1
    return CodeSummary(r * s, t, d), CodeSummary(r * (s - 1) + 1, t - r + 1, d)


def compare_metrics(field: FieldSpec, points, s: int, t: int,
                    budget: int | None = None, workers: int = 1) -> MetricComparison:
    """Build the NRT code and the b_row = 1 bottleneck code and tabulate both.

    Needs r <= t <= rs; below r the bottleneck code's closed-form dimension
    t - r + 1 would not be positive.
    """
    r = len(tuple(points))
    if not r <= t <= r * s:
        raise ParameterOutOfRange(f"t={t} must satisfy r={r} <= t <= rs={r * s} to compare both codes")
    c1 = build_code(RSCodeSpec(field, tuple(points), s, t))
    c2 = build_code(RSCodeSpec(field, tuple(points), s, t, b_row=1))
    sums = []
    for c in (c1, c2):
        sums.append(CodeSummary(c.length, c.dim, min_distance(c, budget, workers)))
    closed = closed_form_summaries(c1.r, s, t)
    return MetricComparison(c1.r, s, t, sums[0], sums[1], *closed)

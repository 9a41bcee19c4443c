"""Bottleneck-metric codes from the rational function field GF(q)(x).

Only genus 0 and rational places are supported: a place is either a finite
point ``x = a`` (local parameter ``x - a``) or the point at infinity (local
parameter ``1/x``).  The code attached to a divisor ``G`` and places
``P_1..P_r`` sends f in L(G) to the s x r matrix whose column i holds the
Laurent coefficients of f at P_i starting from exponent ``-n_i`` where
``n_i`` is the coefficient of P_i in G.  Requiring the first row to be
constant gives the subspace L^(0) and a code in the ``U(s, r, 1)`` metric.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .codes import Code, ParameterOutOfRange, hasse_row
from .gf import FieldSpec
from .poly import Polynomial, gcd
from .poset import BottleneckShape, MatrixWord, bottleneck, chain_union


class PoleDeeperThanStart(ValueError):
    pass


class NotInRiemannRochSpace(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Place:
    """A rational place: ``Place(a)`` for x = a, ``Place(None)`` for infinity."""

    alpha: int | None = None

    @property
    def is_infinite(self) -> bool:
        return self.alpha is None

    def __str__(self):
        return "inf" if self.alpha is None else str(self.alpha)

    def sort_key(self):
        return (1, 0) if self.alpha is None else (0, self.alpha)


INFINITY = Place(None)


def finite(alpha: int) -> Place:
    return Place(int(alpha))


class Divisor:
    """Finite formal sum of rational places with integer coefficients."""

    def __init__(self, coeffs: Mapping[Place, int] | Iterable[tuple[Place, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged: dict[Place, int] = {}
        for place, n in items:
            merged[place] = merged.get(place, 0) + int(n)
        self.coeffs = {p: n for p, n in sorted(merged.items(), key=lambda kv: kv[0].sort_key()) if n}

    @property
    def degree(self) -> int:
        return sum(self.coeffs.values())

    def __getitem__(self, place: Place) -> int:
        return self.coeffs.get(place, 0)

    def support(self) -> list[Place]:
        return list(self.coeffs)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self.coeffs.items()) + list(other.coeffs.items()))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self.coeffs.items()) + [(p, -n) for p, n in other.coeffs.items()])

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{n}*P[{p}]" for p, n in self.coeffs.items()) + ")"


class RationalFunction:
    """num/den over GF(q) with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        F = num.field
        if den is None:
            den = Polynomial.constant(F, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = Polynomial.zero(F), Polynomial.constant(F, 1)
        else:
            g = gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading
            if lead != 1:
                inv = F.inv(lead)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(Polynomial.constant(self.field, other))
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        if isinstance(other, Polynomial):
            return RationalFunction(self.num * other, self.den)
        return RationalFunction(self.num.scale(other), self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def valuation(self, place: Place) -> int | float:
        return valuation(self, place)


def as_rational(f) -> RationalFunction:
    return f if isinstance(f, RationalFunction) else RationalFunction(f)


def _low_order(p: Polynomial) -> int:
    return next(i for i, c in enumerate(p.coeffs) if c)


def valuation(f, place: Place) -> int | float:
    f = as_rational(f)
    if not f:
        return float("inf")
    if place.is_infinite:
        return f.den.degree - f.num.degree
    return _low_order(f.num.shift(place.alpha)) - _low_order(f.den.shift(place.alpha))


def series_quotient(F: FieldSpec, num: Sequence[int], den: Sequence[int], n: int) -> list[int]:
    """First n coefficients of the power series num/den, den[0] != 0."""
    inv0 = F.inv(den[0])
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for i in range(1, min(k, len(den) - 1) + 1):
            if den[i] and out[k - i]:
                acc = F.sub(acc, F.mul(den[i], out[k - i]))
        out.append(F.mul(acc, inv0))
    return out


@dataclass(frozen=True)
class LaurentSlice:
    place: Place
    start: int
    coeffs: tuple[int, ...]


def _local_parts(f: RationalFunction, place: Place) -> tuple[int, list[int], list[int]]:
    """(valuation v, N, D) with f = t^v N(t)/D(t), N(0) != 0, D(0) != 0."""
    if place.is_infinite:
        n = list(f.num.coeffs[::-1])
        d = list(f.den.coeffs[::-1])
        return f.den.degree - f.num.degree, n, d
    N = f.num.shift(place.alpha).coeffs
    D = f.den.shift(place.alpha).coeffs
    a, b = _low_order(Polynomial(f.field, N)), _low_order(Polynomial(f.field, D))
    return a - b, list(N[a:]), list(D[b:])


def local_expansion(f, place: Place, start: int, count: int) -> LaurentSlice:
    """Coefficients of t^start .. t^(start+count-1) in the Laurent series of f at place."""
    f = as_rational(f)
    F = f.field
    if not f:
        return LaurentSlice(place, start, (0,) * count)
    v, N, D = _local_parts(f, place)
    if v < start:
        raise PoleDeeperThanStart(f"f has valuation {v} < {start} at place {place}")
    need = start + count - v
    ser = series_quotient(F, N, D, max(need, 0))
    coeffs = tuple(ser[e - v] if e >= v else 0 for e in range(start, start + count))
    return LaurentSlice(place, start, coeffs)


# -- Riemann-Roch spaces ---------------------------------------------------------


def rr_basis(field: FieldSpec, G: Divisor) -> list[RationalFunction]:
    """Basis of L(G) = {f : div(f) + G >= 0} on the projective line.

    f = p(x)/D(x) with D the product of (x - a)^n over finite places with
    positive coefficient; p has degree <= deg D + n_inf and vanishes to order
    -n at each finite place with negative coefficient.
    """
    D = Polynomial.constant(field, 1)
    conditions: list[tuple[int, int]] = []
    for place, n in G.coeffs.items():
        if place.is_infinite:
            continue
        if n > 0:
            D = D * Polynomial.linear(field, place.alpha) ** n
        else:
            conditions.append((place.alpha, -n))
    top = D.degree + G[INFINITY]
    if top < 0:
        return []
    size = top + 1
    rows = [hasse_row(field, a, size, j) for a, m in conditions for j in range(m)]
    vecs = linalg.nullspace(field, rows, size)
    return [RationalFunction(Polynomial(field, v), D) for v in vecs]


def in_riemann_roch(f, G: Divisor) -> bool:
    f = as_rational(f)
    if not f:
        return True
    F = f.field
    positive = Polynomial.constant(F, 1)
    for place, n in G.coeffs.items():
        if not place.is_infinite and n > 0:
            positive = positive * Polynomial.linear(F, place.alpha) ** n
    if positive % f.den:
        return False
    for place, n in G.coeffs.items():
        if n < 0 and not place.is_infinite and valuation(f, place) < -n:
            return False
    return valuation(f, INFINITY) >= -G[INFINITY]


# -- codes -------------------------------------------------------------------------


@dataclass(frozen=True)
class AGCodeSpec:
    field: FieldSpec
    places: tuple[Place, ...]
    G: Divisor
    s: int

    def __post_init__(self):
        places = tuple(self.places)
        object.__setattr__(self, "places", places)
        if len(set(places)) != len(places):
            raise ParameterOutOfRange("places must be distinct")
        for p in places:
            if not p.is_infinite and not 0 <= p.alpha < self.field.q:
                raise ParameterOutOfRange(f"place {p} is not a rational point of {self.field!r}")
        if self.r < 2:
            raise ParameterOutOfRange("need r >= 2 places")
        if self.s < 2:
            raise ParameterOutOfRange("need s >= 2")

    @property
    def r(self) -> int:
        return len(self.places)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(self.G[p] for p in self.places)

    @property
    def degree(self) -> int:
        return self.G.degree


def cf_matrix(f, spec: AGCodeSpec, check: bool = True) -> np.ndarray:
    """The s x r matrix of truncated local expansions of f at the places."""
    f = as_rational(f)
    if check and not in_riemann_roch(f, spec.G):
        raise NotInRiemannRochSpace(f"{f} is not in L(G) for {spec.G!r}")
    cols = [local_expansion(f, P, -n, spec.s).coeffs for P, n in zip(spec.places, spec.n)]
    return np.array(cols, dtype=np.int64).reshape(spec.r, spec.s).T.copy()


def cf_word(f, spec: AGCodeSpec) -> MatrixWord:
    return MatrixWord(spec.field, cf_matrix(f, spec).tolist())


def clipped_column_weights(f, spec: AGCodeSpec) -> list[int]:
    """min(s, nu_{P_i}(f) + n_i) per column: the number of leading zeros of column i."""
    f = as_rational(f)
    return [min(spec.s, valuation(f, P) + n) for P, n in zip(spec.places, spec.n)]


def l0_basis(spec: AGCodeSpec, basis: list[RationalFunction] | None = None) -> list[RationalFunction]:
    """Basis of the subspace of L(G) whose lowest-order coefficients agree at every place."""
    F = spec.field
    if basis is None:
        basis = rr_basis(F, spec.G)
    if not basis:
        return []
    lead = [[local_expansion(b, P, -n, 1).coeffs[0] for b in basis]
            for P, n in zip(spec.places, spec.n)]
    rows = [[F.sub(x, y) for x, y in zip(lead[0], lead[i])] for i in range(1, spec.r)]
    out = []
    for y in linalg.nullspace(F, rows, len(basis)):
        f = None
        for c, b in zip(y, basis):
            if c:
                term = b * c
                f = term if f is None else f + term
        out.append(f)
    return out


def build_ag_code(spec: AGCodeSpec, constrained: bool = True) -> Code:
    """Code of matrices c(f) for f in L^(0)(G) (or all of L(G) with constrained=False).

    The constrained code is measured in U(s, r, 1); the unconstrained one in
    the NRT metric on C(s, r).
    """
    r, s, deg = spec.r, spec.s, spec.degree
    if constrained and not r - 1 <= deg <= r * s - r + 1:
        raise ParameterOutOfRange(f"deg G = {deg} outside r-1..rs-r+1 = {r - 1}..{r * s - r + 1}")
    if not constrained and not 0 <= deg <= r * s - 1:
        raise ParameterOutOfRange(f"deg G = {deg} outside 0..rs-1 = 0..{r * s - 1}")
    full = rr_basis(spec.field, spec.G)
    basis = l0_basis(spec, full) if constrained else full

    def evaluate(f):
        return cf_matrix(f, spec, check=False)

    gen = np.array([evaluate(b) for b in basis], dtype=np.int64).reshape(len(basis), s, r)
    if basis and linalg.rank(spec.field, gen.reshape(len(basis), -1).tolist()) != len(basis):
        raise ParameterOutOfRange("the matrix map is not injective on this space")
    if constrained:
        metric, b_row = bottleneck(BottleneckShape(s, r, 1)), 1
    else:
        metric, b_row = chain_union(s, r), None
    return Code(spec.field, s, r, b_row, tuple(basis), gen, metric, evaluate, spec,
                meta={"constrained": constrained})


# -- the genus >= 1 inequality checker ----------------------------------------------


@dataclass(frozen=True)
class MdsInequalityParams:
    g: int
    r: int
    s: int
    k: int
    h: int
    A_k: int

    def violations(self) -> list[str]:
        g, r, s, k = self.g, self.r, self.s, self.k
        out = []
        if g < 1:
            out.append("g >= 1")
        if min(r, s, k) < 1:
            out.append("r, s, k positive")
        if not 2 * r + s - g <= r * s:
            out.append("2r + s - g <= rs")
        if not 0 <= k - 1 <= g <= r:
            out.append("0 <= k - 1 <= g <= r")
        if not g - 1 <= s:
            out.append("g - 1 <= s")
        if self.h < 1 or self.A_k < 0:
            out.append("h >= 1 and A_k >= 0")
        return out


@dataclass(frozen=True)
class MdsInequalityReport:
    params: MdsInequalityParams
    lhs: int
    rhs: int
    violations: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    @property
    def verdict(self) -> bool:
        return self.holds and not self.violations

    @property
    def distance_bound(self) -> int:
        p = self.params
        return p.s - p.g + 2 + p.k

    @property
    def dim_bound_stated(self) -> int:
        p = self.params
        return p.r * p.s - p.r + 1 - p.s

    @property
    def divisor_degree(self) -> int:
        p = self.params
        return p.r * p.s - p.r - p.s + p.g - 1

    @property
    def dim_bound_from_degree(self) -> int:
        """deg G - g - r + 2 evaluated at the divisor degree used in the existence argument."""
        p = self.params
        return self.divisor_degree - p.g - p.r + 2

    @property
    def mds(self) -> bool:
        return self.verdict and self.params.g == self.params.k - 1

    def notes(self) -> list[str]:
        out = []
        if self.params.g == 1:
            out.append("g = 1: the elliptic-curve remark takes k = 0, which the hypothesis "
                       "0 <= k - 1 excludes; no MDS claim is made from it here")
        return out

    def as_dict(self) -> dict:
        p = self.params
        return {
            "g": p.g, "r": p.r, "s": p.s, "k": p.k, "h": p.h, "A_k": p.A_k,
            "lhs": self.lhs, "rhs": self.rhs, "inequality_holds": self.holds,
            "violations": list(self.violations), "verdict": self.verdict,
            "distance_bound": self.distance_bound if self.verdict else None,
            "dim_bound_stated": self.dim_bound_stated if self.verdict else None,
            "dim_bound_from_degree": self.dim_bound_from_degree if self.verdict else None,
            "divisor_degree": self.divisor_degree,
            "mds": self.mds, "notes": self.notes(),
        }


def mds_inequality(params: MdsInequalityParams) -> MdsInequalityReport:
    """Evaluate C(r+s+k-g, r-1) * A_k < h exactly and the bounds it implies."""
    top = params.r + params.s + params.k - params.g
    lhs = comb(top, params.r - 1) * params.A_k if top >= 0 and params.r >= 1 else 0
    return MdsInequalityReport(params, lhs, params.h, tuple(params.violations()))


# -- text forms ------------------------------------------------------------------------


def parse_places(field: FieldSpec, text: str) -> tuple[Place, ...]:
    """``"1,3,4,inf"`` -> places; finite entries are element codes."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        out.append(INFINITY if tok in ("inf", "infinity", "oo") else finite(field.coerce(int(tok))))
    return tuple(out)


_DIV_RE = re.compile(r"^P(inf|\d+|@\d+)\s*:\s*(-?\d+)$", re.IGNORECASE)


def parse_divisor(text: str, places: Sequence[Place]) -> Divisor:
    """Parse ``"P1:0,P2:0,P3:0,Pinf:3"``.

    ``Pk`` is the k-th evaluation place (1-indexed), ``Pinf`` the place at
    infinity and ``P@a`` the finite place x = a (element code a), which need
    not be an evaluation place.
    """
    items = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        m = _DIV_RE.match(tok)
        if not m:
            raise ValueError(f"cannot parse divisor term {tok!r}")
        key, n = m.group(1).lower(), int(m.group(2))
        if key == "inf":
            place = INFINITY
        elif key.startswith("@"):
            place = finite(int(key[1:]))
        else:
            idx = int(key)
            if not 1 <= idx <= len(places):
                raise ValueError(f"P{idx} does not name one of the {len(places)} places")
            place = places[idx - 1]
        items.append((place, n))
    return Divisor(items)


def format_divisor(G: Divisor, places: Sequence[Place]) -> str:
    terms = []
    index = {p: i for i, p in enumerate(places)}
    for place in list(places) + [p for p in G.support() if p not in index]:
        n = G[place]
        if place in index:
            terms.append(f"P{index[place] + 1}:{n}")
        elif n:
            terms.append("Pinf:%d" % n if place.is_infinite else f"P@{place.alpha}:{n}")
    return ",".join(terms)

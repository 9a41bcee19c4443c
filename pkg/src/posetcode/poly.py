"""Dense univariate polynomials over GF(q) and Hasse hyperderivatives.

Coefficients are stored low-to-high as integer element codes (see
:mod:`posetcode.gf`).  ``Polynomial`` is an immutable value; the zero
polynomial has no coefficients and degree ``-inf``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable

from .gf import FieldElement, FieldSpec, MixedFields, binom_mod_p

NEG_INF = -math.inf


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        c = [field.coerce(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(c)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def constant(cls, field: FieldSpec, c) -> "Polynomial":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, c=1) -> "Polynomial":
        return cls(field, [0] * degree + [field.coerce(c)])

    @classmethod
    def linear(cls, field: FieldSpec, root) -> "Polynomial":
        """The monic polynomial z - root."""
        return cls(field, (field.neg(field.coerce(root)), 1))

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable) -> "Polynomial":
        out = cls.constant(field, 1)
        for a in roots:
            out = out * cls.linear(field, a)
        return out

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field!r}, {list(self.coeffs)})"

    def __str__(self):
        return pretty(self)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.field != self.field:
            raise MixedFields(f"{self.field!r} vs {other.field!r}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(F, [F.add(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = F.coerce(c)
        return Polynomial(F, [F.mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        inv_lead = F.inv(other.coeffs[-1])
        quo = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = F.mul(c, inv_lead)
            quo[k - d] = f
            for i, b in enumerate(other.coeffs):
                rem[k - d + i] = F.sub(rem[k - d + i], F.mul(f, b))
        return Polynomial(F, quo), Polynomial(F, rem[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    # -- evaluation -------------------------------------------------------

    def __call__(self, alpha):
        return FieldElement(self.field, self.eval_code(self.field.coerce(alpha)))

    def eval_code(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def shift(self, alpha) -> "Polynomial":
        """The polynomial g(t) = f(alpha + t); its coefficients are the Taylor coefficients at alpha."""
        return Polynomial(self.field, taylor_codes(self, self.field.coerce(alpha), max(len(self.coeffs), 1)))

    def reversed(self, length: int | None = None) -> "Polynomial":
        """t^(length-1) f(1/t), with length defaulting to len(coeffs)."""
        n = len(self.coeffs) if length is None else length
        c = list(self.coeffs) + [0] * (n - len(self.coeffs))
        return Polynomial(self.field, c[::-1])


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_eval(f: Polynomial, alpha) -> FieldElement:
    return f(alpha)


def hyperderivative(f: Polynomial, j: int) -> Polynomial:
    """The j-th Hasse derivative: sum over i >= j of C(i, j) f_i z^(i-j).

    Binomials are reduced mod p with Lucas' theorem, which keeps the result
    correct for j >= p where iterating d/dz would give zero.
    """
    if j < 0:
        raise ValueError("derivative order must be >= 0")
    F = f.field
    out = []
    for i in range(j, len(f.coeffs)):
        b = binom_mod_p(i, j, F.p)
        out.append(F.mul(b, f.coeffs[i]) if b else 0)
    return Polynomial(F, out)


def taylor_codes(f: Polynomial, a: int, count: int) -> list[int]:
    """Taylor coefficients at code ``a`` by repeated synthetic division by (z - a)."""
    F = f.field
    cur = list(f.coeffs)
    out = []
    for _ in range(count):
        if not cur:
            out.append(0)
            continue
        # Horner: quotient of cur by (z - a), remainder = cur(a)
        acc = 0
        quo = [0] * (len(cur) - 1)
        for k in range(len(cur) - 1, -1, -1):
            acc = F.add(F.mul(acc, a), cur[k])
            if k:
                quo[k - 1] = acc
        out.append(acc)
        cur = quo
    return out


def taylor_coeffs(f: Polynomial, alpha, count: int) -> list[FieldElement]:
    """(d^0 f(alpha), ..., d^(count-1) f(alpha)) for hyperderivatives d^j."""
    if count < 1:
        raise ValueError("count must be >= 1")
    F = f.field
    return [FieldElement(F, c) for c in taylor_codes(f, F.coerce(alpha), count)]


def vanishing_order(f: Polynomial, alpha) -> int | float:
    """Multiplicity of alpha as a root of f; ``math.inf`` for the zero polynomial."""
    if not f.coeffs:
        return math.inf
    F = f.field
    a = F.coerce(alpha)
    for j, c in enumerate(taylor_codes(f, a, len(f.coeffs))):
        if c:
            return j
    raise AssertionError("nonzero polynomial with all Taylor coefficients zero")  # pragma: no cover


# -- text forms ----------------------------------------------------------------


def pretty(f: Polynomial, var: str = "x") -> str:
    """Descending powers with caret exponents, e.g. ``4x^3 + 3x^2 + x``."""
    if not f.coeffs:
        return "0"
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        cs = str(c)
        if i == 0:
            terms.append(cs)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{cs}{mono}")
    return " + ".join(terms)


_TERM_RE = re.compile(r"^(\d*)\s*\*?\s*(?:([a-z])(?:\^(\d+))?)?$")


def parse_pretty(field: FieldSpec, text: str) -> Polynomial:
    """Inverse of :func:`pretty` (terms joined by ``+``; any single-letter variable)."""
    text = text.strip()
    if text == "0":
        return Polynomial.zero(field)
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        term = term.strip()
        m = _TERM_RE.match(term)
        if not term or not m:
            raise ValueError(f"cannot parse term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            e = 0
            if not m.group(1):
                raise ValueError(f"cannot parse term {term!r}")
        else:
            e = int(m.group(3)) if m.group(3) else 1
        coeffs[e] = field.add(coeffs.get(e, 0), field.coerce(c))
    top = max(coeffs)
    return Polynomial(field, [coeffs.get(i, 0) for i in range(top + 1)])


def format_coeffs(f: Polynomial) -> str:
    return "[" + ",".join(str(c) for c in f.coeffs) + "]"


def parse_coeffs(field: FieldSpec, text: str) -> Polynomial:
    """Parse the low-to-high list form ``[c0,c1,...]``."""
    body = text.strip().strip("[]")
    return Polynomial(field, [int(c) for c in body.split(",") if c.strip()])

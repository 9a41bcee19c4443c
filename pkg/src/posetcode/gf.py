"""Finite fields GF(p^m) with exact arithmetic.

Elements are encoded as integers in ``[0, q)``: the element
``c0 + c1*x + ... + c_{m-1}*x^{m-1}`` (residues mod the field modulus) is the
integer ``c0 + c1*p + ... + c_{m-1}*p^{m-1}``.  For a prime field this is just
the residue itself.  :class:`FieldElement` wraps such a code together with its
field for operator-style arithmetic; the hot paths (polynomials, linear
algebra, code enumeration) work on the raw integer codes through
:class:`FieldSpec` methods.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

MAX_ORDER = 1 << 20
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


class NonPrimeCharacteristic(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class MixedFields(FieldError):
    pass


class InvalidModulus(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over GF(p) as coefficient lists (low-to-high) ------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p); b must have nonzero leading coefficient."""
    a = _trim([x % p for x in a])
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterator[list[int]]:
    for n in range(p**degree):
        c = []
        for _ in range(degree):
            c.append(n % p)
            n //= p
        yield c + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _pmod(poly, cand, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over GF(p) with the smallest integer code.

    The code of ``c0 + c1 x + ... + x^m`` is ``sum(c_i p^i)``, so the scan
    visits candidates in increasing numeric order.
    """
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise InvalidModulus(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) defined by a monic irreducible ``modulus`` (low-to-high)."""

    p: int
    m: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrimeCharacteristic(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.m}")
        if self.p**self.m > MAX_ORDER:
            raise FieldTooLarge(f"GF({self.p}^{self.m}) exceeds the 2^20 element budget")
        if not self.modulus:
            mod = (0, 1) if self.m == 1 else smallest_irreducible(self.p, self.m)
            object.__setattr__(self, "modulus", mod)
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            object.__setattr__(self, "modulus", mod)
            if len(mod) != self.m + 1 or mod[-1] != 1:
                raise InvalidModulus(f"modulus must be monic of degree {self.m}")
            if self.m > 1 and not is_irreducible(mod, self.p):
                raise InvalidModulus(f"modulus {list(mod)} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __str__(self) -> str:
        return str(self.p) if self.m == 1 else f"{self.p}^{self.m}"

    # -- conversions ------------------------------------------------------

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = _pmod(list(coeffs), self.modulus, self.p) if len(coeffs) > self.m else coeffs
        n = 0
        for c in reversed(list(coeffs)):
            n = n * self.p + (c % self.p)
        return n

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        """Integer code for an int (taken as an element code) or a FieldElement."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise MixedFields(f"element of {value.spec!r} used in {self!r}")
            return value.code
        value = int(value)
        if self.m == 1:
            return value % self.p
        if not 0 <= value < self.q:
            raise FieldError(f"element code {value} out of range for {self!r}")
        return value

    def elements(self) -> Iterator["FieldElement"]:
        for a in range(self.q):
            yield FieldElement(self, a)

    # -- scalar arithmetic on codes --------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        if p == 2:
            return a
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.from_coeffs(_pmod(prod, self.modulus, self.p))

    @cached_property
    def _log_tables(self) -> tuple[list[int], list[int]] | None:
        """(exp, log) tables over a primitive element, or None above TABLE_LIMIT."""
        q = self.q
        if self.m == 1 or q > TABLE_LIMIT:
            return None
        for g in range(2, q):
            exp = [1] * (q - 1)
            x = 1
            ok = True
            for i in range(1, q - 1):
                x = self._mul_raw(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        tables = self._log_tables
        if tables is None:
            return self._mul_raw(a, b)
        exp, log = tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        tables = self._log_tables
        if tables is not None:
            exp, log = tables
            return exp[(-log[a]) % (self.q - 1)]
        return self._inv_egcd(a)

    def _inv_egcd(self, a: int) -> int:
        """Inverse via the extended Euclidean algorithm in GF(p)[x]."""
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.to_coeffs(a)))
        s0, s1 = [0], [1]
        while r1:
            # one polynomial division step r0 = quo*r1 + rem
            quo = [0] * max(len(r0) - len(r1) + 1, 1)
            rem = list(r0)
            inv_lead = pow(r1[-1], p - 2, p)
            while len(rem) >= len(r1) and rem:
                f = rem[-1] * inv_lead % p
                sh = len(rem) - len(r1)
                quo[sh] = f
                for i, c in enumerate(r1):
                    rem[sh + i] = (rem[sh + i] - f * c) % p
                _trim(rem)
            prod = [0] * (len(quo) + len(s1))
            for i, x in enumerate(quo):
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
            n = max(len(s0), len(prod))
            s_new = _trim([((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % p
                           for i in range(n)])
            r0, r1, s0, s1 = r1, rem, s1, s_new
        # r0 is a nonzero constant
        scale = pow(r0[0], p - 2, p)
        return self.from_coeffs(_pmod([c * scale for c in s0], self.modulus, p))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    # -- vectorised arithmetic on numpy arrays of codes -------------------

    @cached_property
    def _digit_scales(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for scale in self._digit_scales:
            out += (((a // scale) % p + (b // scale) % p) % p) * scale
        return out

    @cached_property
    def _np_tables(self) -> tuple[np.ndarray, np.ndarray]:
        tables = self._log_tables
        if tables is None:
            raise FieldError("vectorised multiplication needs q <= 2^16 for extension fields")
        exp, log = tables
        return np.array(exp + exp, dtype=np.int64), np.array(log, dtype=np.int64)

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a * b) % self.p
        exp, log = self._np_tables
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^m); the default modulus is the smallest monic irreducible."""
    return FieldSpec(p, m, tuple(modulus) if modulus else ())


def parse_field(text: str) -> FieldSpec:
    """Parse ``"5"``, ``"2^3"`` or ``"3^2;modulus=[2,2,1]"``.

    A bare prime power such as ``"8"`` is also accepted.
    """
    modulus = None
    head, _, tail = text.partition(";")
    if tail:
        key, _, val = tail.partition("=")
        if key.strip() != "modulus":
            raise FieldError(f"unknown field option {key.strip()!r}")
        modulus = [int(c) for c in val.strip().strip("[]").split(",") if c.strip()]
    match = _FIELD_RE.match(head)
    if not match:
        raise FieldError(f"cannot parse field {text!r}")
    p, m = int(match.group(1)), int(match.group(2) or 1)
    if match.group(2) is None and not is_prime(p):
        # prime power given as a plain number
        for base in range(2, p + 1):
            if p % base == 0:
                break
        e, n = 0, p
        while n % base == 0:
            n //= base
            e += 1
        if n == 1 and is_prime(base):
            p, m = base, e
    return field_new(p, m, modulus)


class FieldElement:
    """An element of a :class:`FieldSpec`, supporting ``+ - * /`` and ``**``."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.to_coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec!r} vs {other.spec!r}")
            return other.code
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElement(self.spec, self.spec.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == self.spec.from_int(other) if self.spec.m == 1 else self.code == other
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"{self.code}" if self.spec.m == 1 else f"{self.code}@{self.spec}"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Dispatch ``op`` in {"add", "sub", "mul", "div"} on two elements of one field."""
    if a.spec != b.spec:
        raise MixedFields(f"{a.spec!r} vs {b.spec!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def binom_mod_p(i: int, j: int, p: int) -> int:
    """C(i, j) mod p by Lucas' theorem; zero unless 0 <= j <= i."""
    if j < 0 or i < 0 or j > i:
        return 0
    out = 1
    while i or j:
        a, b = i % p, j % p
        if b > a:
            return 0
        num = den = 1
        for k in range(b):
            num = num * (a - k) % p
            den = den * (k + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        i //= p
        j //= p
    return out


def binom_char(i: int, j: int, spec: FieldSpec) -> FieldElement:
    """Image of the binomial coefficient C(i, j) in the field."""
    return FieldElement(spec, binom_mod_p(i, j, spec.p))

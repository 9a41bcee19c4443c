import math
import random

import pytest

from posetcode.gf import field_new
from posetcode.poly import (
    NEG_INF,
    Polynomial,
    format_coeffs,
    gcd,
    hyperderivative,
    parse_coeffs,
    parse_pretty,
    poly_eval,
    pretty,
    taylor_coeffs,
    vanishing_order,
)

GF5 = field_new(5)
GF7 = field_new(7)
FIELDS = [field_new(2), field_new(3), GF5, GF7, field_new(2, 3), field_new(3, 2), field_new(2, 4)]


def rand_poly(F, rng, max_deg):
    return Polynomial(F, [rng.randrange(F.q) for _ in range(rng.randint(0, max_deg + 1))])


def compositions(n, parts):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def naive_hyper(f, j):
    """Coefficient formula with the exact integer binomial reduced mod p (no Lucas)."""
    F = f.field
    out = [0] * max(0, len(f.coeffs) - j)
    for i, c in enumerate(f.coeffs):
        if i >= j:
            out[i - j] = F.mul(F.from_int(math.comb(i, j) % F.p), c)
    return Polynomial(F, out)


def division_order(f, a):
    """Exponent of (z - a) found by repeated exact division."""
    if f.is_zero():
        return math.inf
    lin = Polynomial.linear(f.field, a)
    k = 0
    while True:
        qt, rem = divmod(f, lin)
        if rem:
            return k
        f, k = qt, k + 1


# -- canonical form and text --------------------------------------------------------


def test_canonical_form():
    assert Polynomial(GF5, [1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial.zero(GF5).degree == NEG_INF
    assert Polynomial.constant(GF5, 3).degree == 0


def test_pretty_and_parse():
    f = Polynomial(GF5, [0, 1, 3, 4])
    assert pretty(f) == "4x^3 + 3x^2 + x"
    assert pretty(Polynomial.zero(GF5)) == "0"
    assert parse_pretty(GF5, "4x^3 + 3x^2 + x") == f
    assert format_coeffs(f) == "[0,1,3,4]"
    assert parse_coeffs(GF5, "[0,1,3,4]") == f
    rng = random.Random(1)
    for _ in range(200):
        g = rand_poly(GF7, rng, 6)
        assert parse_pretty(GF7, pretty(g)) == g
        assert parse_coeffs(GF7, format_coeffs(g)) == g


# -- spec examples -----------------------------------------------------------------


def test_eval_examples():
    assert poly_eval(parse_pretty(GF5, "4x^3 + 3x^2 + x"), GF5(3)) == GF5(3)
    assert poly_eval(Polynomial.zero(GF5), GF5(2)) == GF5(0)
    assert poly_eval(parse_pretty(GF5, "x^3 + 2x^2 + 4x + 1"), GF5(1)) == GF5(3)


def test_hyperderivative_examples():
    assert pretty(hyperderivative(parse_pretty(GF5, "4x^3 + 3x^2 + x"), 1)) == "2x^2 + x + 1"
    assert pretty(hyperderivative(parse_pretty(GF5, "x^3 + 2x^2 + 4x"), 1)) == "3x^2 + 4x + 4"
    f = parse_pretty(GF5, "x^4 + 1")
    assert hyperderivative(f, 5).is_zero()


def test_taylor_examples():
    c = GF7(3)
    f = Polynomial.linear(GF7, c) ** 4
    assert taylor_coeffs(f, c, 5) == [GF7(0)] * 4 + [GF7(1)]
    assert taylor_coeffs(Polynomial.constant(GF7, 6), GF7(2), 3) == [GF7(6), GF7(0), GF7(0)]
    assert taylor_coeffs(parse_pretty(GF5, "4x^3 + 3x^2 + x"), GF5(1), 2) == [GF5(3), GF5(4)]


def test_vanishing_examples():
    f = Polynomial.linear(GF5, 2) ** 3 * Polynomial.linear(GF5, 1)
    assert vanishing_order(f, GF5(2)) == 3
    assert vanishing_order(f, GF5(3)) == 0
    assert vanishing_order(Polynomial.zero(GF5), GF5(1)) == math.inf


# -- oracles and properties ------------------------------------------------------------


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_hyperderivative_matches_exact_binomials(F):
    rng = random.Random(F.q)
    for _ in range(300):
        f = rand_poly(F, rng, 12)
        j = rng.randrange(0, 14)
        assert hyperderivative(f, j) == naive_hyper(f, j)


def test_vanishing_order_division_oracle():
    rng = random.Random(3)
    for _ in range(1000):
        f = rand_poly(GF7, rng, 6)
        a = rng.randrange(7)
        if rng.random() < 0.5:  # force some high multiplicities
            f = f * Polynomial.linear(GF7, a) ** rng.randint(1, 4)
        assert vanishing_order(f, GF7(a)) == division_order(f, a)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_product_rule(F):
    rng = random.Random(11 * F.q)
    for _ in range(1000 // len(FIELDS) + 1):
        fs = [rand_poly(F, rng, 5) for _ in range(rng.randint(1, 4))]
        n = rng.randint(0, 6)
        prod = Polynomial.constant(F, 1)
        for f in fs:
            prod = prod * f
        total = Polynomial.zero(F)
        for comp in compositions(n, len(fs)):
            term = Polynomial.constant(F, 1)
            for f, ni in zip(fs, comp):
                term = term * hyperderivative(f, ni)
            total = total + term
        assert hyperderivative(prod, n) == total


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_power_rule(F):
    for c in range(min(F.q, 4)):
        lin = Polynomial.linear(F, c)
        for t in range(11):
            for n in range(13):
                want = (lin ** (t - n)).scale(F.from_int(math.comb(t, n) % F.p)) if n <= t else Polynomial.zero(F)
                assert hyperderivative(lin**t, n) == want


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_taylor_reconstruction(F):
    rng = random.Random(5 * F.q)
    for _ in range(200):
        f = rand_poly(F, rng, 9)
        a = rng.randrange(F.q)
        count = max(1, len(f.coeffs)) + rng.randint(0, 2)
        coeffs = taylor_coeffs(f, F(a), count)
        lin = Polynomial.linear(F, a)
        rebuilt = Polynomial.zero(F)
        for j, c in enumerate(coeffs):
            rebuilt = rebuilt + (lin**j).scale(c.code)
        assert rebuilt == f
        assert [c.code for c in coeffs] == [hyperderivative(f, j).eval_code(a) for j in range(count)]


def test_linearity():
    rng = random.Random(9)
    F = field_new(3, 2)
    for _ in range(1000):
        f, g = rand_poly(F, rng, 8), rand_poly(F, rng, 8)
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        j = rng.randrange(10)
        lhs = hyperderivative(f.scale(a) + g.scale(b), j)
        assert lhs == hyperderivative(f, j).scale(a) + hyperderivative(g, j).scale(b)


def test_division_and_gcd():
    rng = random.Random(2)
    for _ in range(300):
        f, g = rand_poly(GF7, rng, 8), rand_poly(GF7, rng, 4)
        if g.is_zero():
            continue
        qt, rem = divmod(f, g)
        assert qt * g + rem == f
        assert rem.degree < g.degree
        h = rand_poly(GF7, rng, 3)
        if h.is_zero():
            continue
        d = gcd(f * h, g * h)
        assert (f * h) % d == Polynomial.zero(GF7) and (g * h) % d == Polynomial.zero(GF7)
        assert (d % h.monic()).is_zero()


def test_shift_matches_taylor():
    F = field_new(2, 3)
    rng = random.Random(4)
    for _ in range(200):
        f = rand_poly(F, rng, 7)
        a = rng.randrange(F.q)
        want = [c.code for c in taylor_coeffs(f, F(a), max(1, len(f.coeffs)))]
        assert f.shift(a) == Polynomial(F, want)

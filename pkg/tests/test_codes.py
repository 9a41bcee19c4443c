import itertools
import math
import random
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from posetcode.codes import (
    BudgetExceeded,
    DuplicatePoints,
    ParameterOutOfRange,
    RSCodeSpec,
    SingletonReport,
    build_code,
    closed_form_summaries,
    compare_metrics,
    constrained_basis,
    encode,
    iter_codewords,
    min_distance,
    singleton_report,
    weight_enumerator,
)
from posetcode.gf import field_new, parse_field
from posetcode.poly import Polynomial, hyperderivative, parse_pretty, vanishing_order
from posetcode.poset import flatten, flatten_chain, nrt_weight, p_weight

GF3, GF5, GF7 = field_new(3), field_new(5), field_new(7)


def example_code():
    return build_code(RSCodeSpec(GF5, (1, 3, 4), 2, 4, b_row=1))


def message_for(code, f):
    """Solve for the message of f by brute force over the (tiny) message space."""
    for msg in itertools.product(range(code.field.q), repeat=code.dim):
        if code.message_function(msg) == f:
            return msg
    raise AssertionError(f"{f} is not in the code")


def brute_dimension(F, points, t, order):
    """log_q of the number of f in P(t-1) whose order-th hyperderivative is constant on the points.

    Prime fields only: the linear forms are built from exact integer binomials.
    """
    p = F.p
    forms = np.array([[math.comb(i, order) * pow(a, i - order, p) % p if i >= order else 0
                       for a in points] for i in range(t)], dtype=np.int64)
    count = 0
    for chunk in _batched(itertools.product(range(p), repeat=t), 1 << 15):
        vals = (np.array(chunk, dtype=np.int64) @ forms) % p
        count += int((vals == vals[:, :1]).all(axis=1).sum())
    dim = round(math.log(count, p))
    assert p**dim == count
    return dim


def _batched(it, n):
    while chunk := list(itertools.islice(it, n)):
        yield chunk


# -- constrained spaces -------------------------------------------------------------


def test_constrained_basis_examples():
    assert len(constrained_basis(GF5, (1, 3, 4), 4, 0)) == 2
    assert len(constrained_basis(GF5, (1, 3, 4), 4, 4)) == 4
    assert len(constrained_basis(GF7, (1, 2, 3, 4), 6, 1)) == 3 == brute_dimension(GF7, (1, 2, 3, 4), 6, 1)
    with pytest.raises(DuplicatePoints):
        constrained_basis(GF5, (1, 1, 4), 4, 0)


@pytest.mark.parametrize("p,r,t,order", [(p, r, t, k) for p in (3, 5, 7) for r in (2, 3)
                                         for t in range(1, 6) for k in range(0, 4) if r <= p])
def test_constrained_dimension_brute_force(p, r, t, order):
    F = field_new(p)
    pts = tuple(range(r))
    basis = constrained_basis(F, pts, t, order)
    assert len(basis) == brute_dimension(F, pts, t, order)
    for f in basis:
        vals = {hyperderivative(f, order).eval_code(a) for a in pts}
        assert len(vals) == 1


# -- build / encode -------------------------------------------------------------------


def test_build_examples():
    c = example_code()
    assert (c.length, c.dim) == (4, 2)
    n = build_code(RSCodeSpec(GF5, (1, 3, 4), 2, 4))
    assert (n.length, n.dim) == (6, 4)
    full = build_code(RSCodeSpec(GF5, (1, 3, 4), 2, 6, b_row=1))
    assert full.dim == full.length == 4 and min_distance(full) == 1


def test_parameter_ranges():
    with pytest.raises(ParameterOutOfRange):
        RSCodeSpec(GF5, (1, 3, 4), 2, 7)
    with pytest.raises(ParameterOutOfRange):
        RSCodeSpec(GF5, (1, 3, 4), 2, 3, b_row=2)  # needs t >= 4
    with pytest.raises(ParameterOutOfRange):
        RSCodeSpec(GF5, (1,), 2, 2, b_row=1)
    with pytest.raises(DuplicatePoints):
        RSCodeSpec(GF5, (1, 1), 2, 2)


def test_encode_examples():
    c = example_code()
    f = parse_pretty(GF5, "4x^3 + 3x^2 + x")
    assert encode(c, message_for(c, f)).entries == ((3, 3, 3), (4, 2, 2))
    f = parse_pretty(GF5, "2x^3 + 4x^2 + 3x + 1")
    assert encode(c, message_for(c, f)).entries == ((0, 0, 0), (2, 1, 1))
    assert encode(c, (0, 0)).entries == ((0, 0, 0), (0, 0, 0))


def test_codewords_have_constant_row():
    F = field_new(2, 3)
    for b in (1, 2, 3):
        code = build_code(RSCodeSpec(F, (1, 2, 5), 3, 3 * b - 1, b_row=b))
        for _, A in iter_codewords(code):
            assert len(set(A[b - 1].tolist())) == 1


# -- enumeration ---------------------------------------------------------------------


def test_enumerator_examples():
    enum = weight_enumerator(example_code())
    assert enum.as_dict() == {0: 1, 3: 4, 4: 20}
    assert enum.polynomial() == "1 + 4x^3 + 20x^4"
    assert min_distance(example_code()) == 3
    nrt = build_code(RSCodeSpec(GF5, (1, 3, 4), 2, 4))
    assert min_distance(nrt) == 3


def test_enumerator_against_p_weight_oracle():
    code = build_code(RSCodeSpec(GF3, (1, 2), 2, 3, b_row=1))
    enum = weight_enumerator(code)
    counts = [0] * (code.length + 1)
    for _, A in iter_codewords(code):
        counts[p_weight(code.metric, flatten(A, code.shape))] += 1
    assert list(enum.counts) == counts
    assert enum.total == 3**code.dim and enum.counts[0] == 1


def test_nrt_enumerator_against_p_weight_oracle():
    code = build_code(RSCodeSpec(field_new(2, 2), (0, 1, 3), 2, 3))
    counts = [0] * (code.length + 1)
    for _, A in iter_codewords(code):
        counts[p_weight(code.metric, flatten_chain(A))] += 1
    assert list(weight_enumerator(code).counts) == counts


def test_enumeration_independent_of_workers():
    code = build_code(RSCodeSpec(field_new(2, 3), (1, 2, 3), 3, 8, b_row=2))
    one = weight_enumerator(code, workers=1)
    assert code.size > 1 << 15
    assert weight_enumerator(code, workers=3).counts == one.counts


def test_budget():
    with pytest.raises(BudgetExceeded):
        weight_enumerator(example_code(), budget=24)
    assert weight_enumerator(example_code(), budget=25).total == 25


def test_budget_env(monkeypatch):
    monkeypatch.setenv("POSETCODE_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        weight_enumerator(example_code())


def test_t_below_r_leaves_the_constants():
    # t - r + 1 = 0 by the closed form, but constants always meet the constraint
    code = build_code(RSCodeSpec(GF5, (1, 3), 2, 1, b_row=1))
    assert code.dim == 1


def test_nrt_weight_identity():
    """nrt_weight(H(f)) = rs - sum_j min(s, nu_f(a_j)) with the clip at s."""
    rng = random.Random(12)
    for _ in range(1000):
        F = rng.choice([GF5, GF7, field_new(2, 3)])
        r = rng.randint(2, 4)
        s = rng.randint(1, 4)
        pts = rng.sample(range(F.q), r)
        f = Polynomial(F, [rng.randrange(F.q) for _ in range(rng.randint(1, r * s))])
        if rng.random() < 0.5:
            f = f * Polynomial.linear(F, pts[0]) ** rng.randint(1, s + 2)
        if f.is_zero():
            continue
        code = build_code(RSCodeSpec(F, tuple(pts), s, 1))
        A = code.evaluate(f)
        assert nrt_weight(A) == r * s - sum(min(s, vanishing_order(f, F(a))) for a in pts)


# -- reports ----------------------------------------------------------------------------


def test_singleton_examples():
    assert SingletonReport(4, 2, 3).slack == 0 and SingletonReport(4, 2, 3).mds
    assert SingletonReport(6, 4, 3).mds
    rep = singleton_report(example_code(), 3)
    assert rep.as_dict() == {"n": 4, "k": 2, "d": 3, "slack": 0, "mds": True}


def test_singleton_bound_on_subcodes():
    rng = random.Random(8)
    for _ in range(30):
        code = build_code(RSCodeSpec(GF5, (1, 3, 4), 2, rng.randint(3, 6), b_row=1))
        k = rng.randint(1, code.dim)
        sub = code.generator[rng.sample(range(code.dim), k)]
        sc = replace(code, basis=code.basis[:k], generator=sub)
        rep = singleton_report(sc, min_distance(sc))
        assert rep.slack >= 0


def test_compare_examples():
    cmp = compare_metrics(GF5, (1, 3, 4), 2, 4)
    assert (cmp.nrt.length, cmp.nrt.dim, cmp.nrt.distance) == (6, 4, 3)
    assert (cmp.bottleneck.length, cmp.bottleneck.dim, cmp.bottleneck.distance) == (4, 2, 3)
    assert cmp.nrt.relative_distance == Fraction(1, 2)
    assert cmp.bottleneck.relative_distance == Fraction(3, 4)
    assert cmp.agrees
    assert "C2 has advantage in error correction" in [row[3] for row in cmp.rows()]
    edge = compare_metrics(GF5, (1, 3, 4), 2, 3)
    assert edge.bottleneck.dim == 1
    with pytest.raises(ParameterOutOfRange):
        compare_metrics(GF5, (1, 3, 4), 2, 2)


def test_closed_forms():
    c1, c2 = closed_form_summaries(3, 2, 4)
    assert (c1.length, c1.dim, c1.distance, c1.rate) == (6, 4, 3, Fraction(2, 3))
    assert (c2.length, c2.dim, c2.distance, c2.rate) == (4, 2, 3, Fraction(1, 2))


def test_field_strings():
    code = build_code(RSCodeSpec(parse_field("2^3"), (1, 2, 4), 2, 4, b_row=1))
    assert min_distance(code) == 3

from fractions import Fraction as Q
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kostant.arith import (
    MultiPoly,
    QuasiPolynomial,
    as_rational,
    logistic_coeffs,
    parse_rational_list,
    rational_str,
    todd_coeffs,
)
from kostant.errors import UsageError

V = ("x", "y")
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, rationals, max_size=6).map(lambda t: MultiPoly(V, t))
points = st.tuples(rationals, rationals)


@given(rationals)
def test_rational_text_roundtrip(x):
    assert as_rational(rational_str(x)) == x


def test_parse_list():
    assert parse_rational_list("35/2, 35/2,5/2") == (Q(35, 2), Q(35, 2), Q(5, 2))
    for bad in ["", "1,a", "1/0", ","]:
        with pytest.raises(UsageError):
            parse_rational_list(bad)


@given(polys, polys, points)
def test_ring_ops_match_evaluation(p, q, pt):
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p - p).is_zero()


@given(polys, polys, polys, points)
def test_substitution_is_composition(p, f, g, pt):
    comp = p.substitute([f, g], V)
    assert comp.evaluate(pt) == p.evaluate([f.evaluate(pt), g.evaluate(pt)])


@given(polys.filter(lambda p: p.constant_term() != 0))
def test_truncated_inverse(p):
    bounds = (3, 3)
    inv = p.inverse_trunc(bounds)
    one = p.mul_trunc(inv, bounds)
    assert one == MultiPoly.constant(V, 1)


def test_todd_is_bernoulli():
    # x/(1-e^{-x}) = sum B_n^+ x^n / n!
    c = todd_coeffs(6)
    assert c[:5] == [Q(1), Q(1, 2), Q(1, 12), Q(0), Q(-1, 720)]
    assert c[6] == Q(1, 30240)


def test_logistic_series():
    # 1/(1+e^{-x}) = 1/2 + x/4 - x^3/48 + x^5/480 - ...
    c = logistic_coeffs(5)
    assert c == [Q(1, 2), Q(1, 4), Q(0), Q(-1, 48), Q(0), Q(1, 480)]


def _alternating(t):
    return QuasiPolynomial(
        ("t",),
        {(0,): MultiPoly(("t",), {(0,): Q(1, 2), (1,): 1}), (1,): MultiPoly(("t",), {(0,): Q(1, 2)})},
    )


def test_quasipolynomial_values_and_text():
    q = _alternating("t")
    assert [q.evaluate([t]) for t in range(4)] == [1, 1, 3, 3]
    assert str(q) == "(1/2 + 1/2*(-1)^(t)) + 1*t"
    assert q.even_odd() == {(0,): (1, 0), (1,): (1, 1)}


def test_quasipolynomial_json_roundtrip():
    q = _alternating("t")
    assert QuasiPolynomial.from_json(q.to_json()) == q


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-10, 10))
def test_quasipolynomial_affine_substitution(a, c, t):
    q = _alternating("t")
    img = MultiPoly.linear(("s",), [a], c)
    r = q.substitute([img], ("s",))
    assert r.evaluate([t]) == q.evaluate([a * t + c])


def test_polynomial_expansion_helper():
    # (x+1)^3 through repeated products
    x1 = MultiPoly.linear(V, [1, 0], 1)
    cube = x1 * x1 * x1
    assert [cube.coefficient((k, 0)) for k in range(4)] == [comb(3, k) for k in range(4)]

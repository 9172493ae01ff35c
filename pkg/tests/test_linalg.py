from fractions import Fraction as Q

from hypothesis import given
from hypothesis import strategies as st

from kostant import linalg

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_and_det(m):
    d = linalg.det(m)
    if d == 0:
        assert linalg.rank(m) < len(m)
        return
    inv = linalg.inverse(m)
    prod = linalg.matmul(m, inv)
    assert prod == [[Q(int(i == j)) for j in range(len(m))] for i in range(len(m))]


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4)))
def test_nullspace_is_kernel(m):
    ns = linalg.nullspace(m)
    assert len(ns) + linalg.rank(m) == len(m[0])
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(m, v))


@given(st.integers(1, 4).flatmap(square))
def test_smith_normal_form(a):
    u, d, v = linalg.smith_normal_form(a)
    assert linalg.matmul(linalg.matmul(u, a), v) == d
    assert abs(linalg.det(u)) == 1 and abs(linalg.det(v)) == 1
    diag = [d[i][i] for i in range(len(d))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d)) if i != j)
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert abs(linalg.det(a)) == (abs(eval("*".join(map(str, diag)))) if diag else 1)


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7), min_size=1, max_size=4))
def test_primitive(v):
    p = linalg.primitive(v)
    if not any(v):
        return
    ratios = {Q(a) / b for a, b in zip(p, v) if b}
    assert len(ratios) == 1 and ratios.pop() != 0
    assert next(x for x in p if x) > 0

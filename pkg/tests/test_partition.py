import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kostant import partition
from kostant.arith import MultiPoly
from kostant.errors import UsageError
from kostant.nested import basic_subsets
from kostant.partition import (
    chamber_quasipoly,
    dp_table,
    kostant_partition,
    kostant_partition_dp,
    kostant_partition_quasipoly,
    kostant_partition_simple,
    torus_all,
    torus_subgroup,
)
from kostant.rootsys import RootSystem


def canonical(rs, b):
    return tuple(sum((Q(c) * s[k] for c, s in zip(b, rs.simple_roots)), Q(0)) for k in range(rs.dim))


def test_small_examples():
    assert kostant_partition(RootSystem("A", 2), (1, 0, -1)) == 2
    assert kostant_partition(RootSystem("B", 2), (1, 1)) == 3
    assert kostant_partition(RootSystem("A", 1), (5, -5)) == 1
    assert kostant_partition(RootSystem("A", 3), (0, 0, 0, 0)) == 1


def test_vanishing():
    a2 = RootSystem("A", 2)
    assert kostant_partition(a2, (Q(1, 2), Q(1, 2), -1)) == 0  # off the root lattice
    assert kostant_partition(a2, (-1, 0, 1)) == 0  # outside the cone
    assert kostant_partition(a2, (1, 0, 0)) == 0  # outside the span
    b3 = RootSystem("B", 3)
    assert kostant_partition(b3, (Q(1, 2), Q(1, 2), Q(1, 2))) == 0
    assert kostant_partition(b3, (0, 0, -1)) == 0


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("A", 4)])
@settings(max_examples=40)
@given(data=st.data())
def test_against_dynamic_programming(key, data):
    rs = RootSystem(*key)
    b = data.draw(st.lists(st.integers(0, 7), min_size=rs.rank, max_size=rs.rank))
    assert kostant_partition_simple(rs, tuple(b)) == partition.dp_table(rs, b)[tuple(b)]


def test_torus_of_b2_basis():
    rs = RootSystem("B", 2)
    idx = rs.positive_roots.index
    group = torus_subgroup(rs, [idx((1, 1)), idx((1, -1))])
    assert [g.eps for g in group] == [(0, 0), (0, 1)]
    g = group[1]
    assert g.G(rs) == (Q(1, 2), Q(1, 2))
    # the character is trivial on both roots of the basis
    for a in [(1, 1), (1, -1)]:
        assert g.character(rs.positive_root_simple_coords[idx(a)]) == 1
    assert g.character(rs.positive_root_simple_coords[idx((1, 0))]) == -1


@pytest.mark.parametrize("key", [("B", 3), ("C", 3), ("D", 4)])
def test_torus_subgroup_orders(key):
    rs = RootSystem(*key)
    for bs in basic_subsets(rs):
        assert len(torus_subgroup(rs, bs.roots)) == bs.vol
    assert all(x in (0, 1) for g in torus_all(rs) for x in g.eps)


@pytest.mark.parametrize("key", [("B", 3), ("C", 3)])
def test_restricted_torus_matches_full(key):
    rs = RootSystem(*key)
    rng = random.Random(3)
    for _ in range(25):
        b = tuple(rng.randint(0, 6) for _ in range(rs.rank))
        if not any(b):
            continue
        full = chamber_quasipoly(rs, b, restrict_torus=False)(b)
        assert full == chamber_quasipoly(rs, b)(b) == kostant_partition_dp(rs, canonical(rs, b))


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3)])
def test_quasipolynomial_at_random_bases(key):
    rs = RootSystem(*key)
    rng = random.Random(f"base-{key}")
    n_pos = len(rs.positive_roots)
    for _ in range(50):
        a = canonical(rs, [rng.randint(0, 6) for _ in range(rs.rank)])
        q = kostant_partition_quasipoly(rs, a)
        assert q.evaluate(a) == kostant_partition_dp(rs, a)
        assert q.total_degree() <= n_pos - rs.rank
        if rs.family == "A":
            assert q.is_polynomial()


def test_a1_quasipolynomial_is_one():
    rs = RootSystem("A", 1)
    q = kostant_partition_quasipoly(rs, (3, -3))
    assert str(q) == "1"


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_stretched_argument(key):
    rs = RootSystem(*key)
    rng = random.Random(f"stretch-{key}")
    for _ in range(3):
        b = [rng.randint(0, 2) for _ in range(rs.rank)]
        if not any(b):
            b[0] = 1
        a = canonical(rs, b)
        q = kostant_partition_quasipoly(rs, a, [MultiPoly.linear(("t",), [x]) for x in a])
        table = dp_table(rs, [6 * x for x in b])
        for t in range(1, 7):
            assert q.evaluate([t]) == table[tuple(t * x for x in b)]
        top = max(q.parts[q.zero_form].terms, key=sum, default=None) if q.zero_form in q.parts else None
        assert top is not None and q.parts[q.zero_form].terms[top] > 0


def test_quasipolynomial_on_the_chamber_closure():
    # a formula fixed at one base holds on the whole closed chamber
    rs = RootSystem("B", 3)
    base = canonical(rs, (3, 5, 6))
    q = kostant_partition_quasipoly(rs, base)
    for t in range(1, 5):
        for shift in [(0, 0, 0), (1, 1, 1)]:
            a = canonical(rs, [t * x + s for x, s in zip((3, 5, 6), shift)])
            if partition.select_mpns_lex(partition.maximal_proper_nested_sets(rs), partition.lex_vectors(rs, partition.to_simple(rs, a))) == partition.select_mpns_lex(
                partition.maximal_proper_nested_sets(rs), partition.lex_vectors(rs, partition.to_simple(rs, base))
            ):
                assert q.evaluate(a) == kostant_partition_dp(rs, a)


def test_direction_pointing_out_of_the_cone_is_rejected():
    rs = RootSystem("B", 2)
    with pytest.raises(UsageError):
        kostant_partition(rs, (0, 1), [(-1, 0)])
    assert kostant_partition(rs, (0, 1), [(1, 0)]) == 1


def test_chamber_cache_reuse():
    rs = RootSystem("C", 2)
    cache = partition.chamber_cache(rs)
    before = len(cache.table)
    for b in [(5, 3), (10, 6), (15, 9)]:
        chamber_quasipoly(rs, b)
    assert len(cache.table) <= before + 1

import itertools
import json
import random
from fractions import Fraction as Q

import pytest

from kostant import linalg, nested
from kostant.errors import SingularVectorError, UsageError
from kostant.nested import (
    basic_subsets,
    complete_subsets,
    in_open_cone,
    irreducible_subsets,
    is_nested,
    lex_vectors,
    maximal_proper_nested_sets,
    perturb_simple,
    regular_perturbation,
    select_mpns_lex,
    select_mpns_simple,
)
from kostant.partition import LINEAR, jk_residue
from kostant.rootsys import RootSystem, simple_root_coords

MPNS_COUNTS = {("A", 2): 2, ("B", 2): 3, ("A", 3): 6, ("B", 3): 15, ("C", 3): 15, ("A", 4): 24, ("D", 4): 45}
IRREDUCIBLE = {("A", 2): 4, ("A", 3): 11, ("B", 3): 17, ("D", 4): 41}


@pytest.mark.parametrize("key", sorted(MPNS_COUNTS))
def test_mpns_counts(key):
    rs = RootSystem(*key)
    assert len(maximal_proper_nested_sets(rs, cache_dir=None)) == MPNS_COUNTS[key]


@pytest.mark.parametrize("key", sorted(IRREDUCIBLE))
def test_irreducible_counts(key):
    assert len(irreducible_subsets(RootSystem(*key))) == IRREDUCIBLE[key]


def _brute_irreducible(rs):
    vecs = rs.positive_root_simple_coords
    n = len(vecs)

    def rk(idx):
        return linalg.rank([vecs[i] for i in idx]) if idx else 0

    out = set()
    for size in range(1, n + 1):
        for s in itertools.combinations(range(n), size):
            r = rk(s)
            if any(rk(s + (j,)) == r for j in range(n) if j not in s):
                continue  # not complete
            split = False
            for k in range(1, size):
                for left in itertools.combinations(s, k):
                    right = tuple(i for i in s if i not in left)
                    if rk(left) + rk(right) == r:
                        split = True
                        break
                if split:
                    break
            if not split:
                out.add(frozenset(s))
    return out


@pytest.mark.parametrize("key", [("B", 2), ("A", 3), ("C", 3)])
def test_irreducible_against_brute_force(key):
    rs = RootSystem(*key)
    got = {frozenset(s.roots) for s in irreducible_subsets(rs)}
    assert got == _brute_irreducible(rs)


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("D", 4)])
def test_mpns_structure(key):
    rs = RootSystem(*key)
    complete = set(complete_subsets(rs))
    for m in maximal_proper_nested_sets(rs, cache_dir=None):
        assert len(m.members) == rs.rank
        assert is_nested(rs, m.members)
        assert all(s in complete for s in m.members)
        # theta(M) is a basis with volume a power of two, and 1 in type A
        assert m.vol & (m.vol - 1) == 0
        if rs.family == "A":
            assert m.vol == 1
        assert abs(linalg.det(m.theta_matrix)) == m.vol


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("C", 3)])
def test_jk_of_basic_fractions(key):
    # JK(1 / prod_{alpha in sigma} alpha) is 1/vol(sigma) inside C(sigma) and 0 outside
    rs = RootSystem(*key)
    rng = random.Random(0)
    subsets = basic_subsets(rs)
    for _ in range(6):
        v = perturb_simple(rs, [rng.randint(1, 9) for _ in range(rs.rank)])
        for bs in rng.sample(subsets, 6):
            got = jk_residue(rs, v, (0,) * rs.rank, [(i, LINEAR, 1) for i in bs.roots])
            inside = in_open_cone(bs.matrix, v)
            assert got == (Q(1, bs.vol) if inside else 0)


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("D", 4)])
def test_finite_and_infinitesimal_perturbation_agree(key):
    rs = RootSystem(*key)
    mpns = maximal_proper_nested_sets(rs, cache_dir=None)
    rng = random.Random(1)
    for _ in range(40):
        b = [rng.randint(0, 4) for _ in range(rs.rank)]
        d = [Q(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(rs.rank)]
        finite = select_mpns_simple(mpns, perturb_simple(rs, b, [d]))
        assert finite == select_mpns_lex(mpns, lex_vectors(rs, b, [d]))


def test_singular_vector_raises():
    rs = RootSystem("A", 2)
    mpns = maximal_proper_nested_sets(rs, cache_dir=None)
    with pytest.raises(SingularVectorError):
        select_mpns_simple(mpns, (1, 1))  # on the wall spanned by alpha1 + alpha2
    assert select_mpns_simple(mpns, (-1, 2)) == []


def test_regular_perturbation_keeps_point_in_closure():
    rs = RootSystem("B", 3)
    a = (2, 1, 0)  # alpha-coordinates (2, 3, 3): on several walls
    v = regular_perturbation(rs, a)
    assert nested.is_regular_simple(rs, simple_root_coords(rs, v))
    for n in nested.wall_normals(rs):
        ha = sum(x * y for x, y in zip(n, simple_root_coords(rs, a)))
        hv = sum(x * y for x, y in zip(n, simple_root_coords(rs, v)))
        assert ha == 0 or (ha > 0) == (hv > 0)
    with pytest.raises(UsageError):
        regular_perturbation(rs, (-1, 0, 0))


@pytest.mark.parametrize("key,expected", [(("A", 2), 2), (("B", 2), 3), (("A", 3), 7), (("B", 3), 23), (("C", 3), 23)])
def test_chamber_counts(key, expected):
    assert nested.count_chambers(RootSystem(*key)) == expected


def test_disk_cache_roundtrip(tmp_path):
    rs = RootSystem("B", 3)
    nested._MPNS_MEMO.pop(rs, None)
    first = maximal_proper_nested_sets(rs, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert [f.name for f in files] == ["mpns-B3-v1.json"]
    text = files[0].read_text()
    nested._MPNS_MEMO.pop(rs)
    again = maximal_proper_nested_sets(rs, cache_dir=tmp_path)
    assert again == first
    assert files[0].read_text() == text
    # a file written under another order version is ignored and rewritten
    data = json.loads(text)
    data["order_version"] = 0
    data["mpns"] = data["mpns"][:1]
    files[0].write_text(json.dumps(data))
    nested._MPNS_MEMO.pop(rs)
    assert maximal_proper_nested_sets(rs, cache_dir=tmp_path) == first
    assert files[0].read_text() == text


def test_custom_order_uses_its_own_cache_file(tmp_path):
    base = RootSystem("B", 2)
    rs = RootSystem("B", 2, root_order=list(reversed(base.positive_roots)))
    maximal_proper_nested_sets(rs, cache_dir=tmp_path)
    (name,) = [f.name for f in tmp_path.iterdir()]
    assert name.startswith("mpns-B2-") and name != "mpns-B2-v1.json"

"""Nested-set combinatorics on a positive root system.

All geometry is done in simple-root coordinates, where the positive roots
are nonnegative integer vectors and C(Delta+) is the positive orthant.
Subsets of roots are frozensets of indices into ``rs.positive_roots``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations
from math import gcd
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .errors import InternalError, SingularVectorError, UsageError
from .rootsys import ORDER_VERSION, RootSystem, Weight, in_positive_cone, simple_root_coords

RootSet = FrozenSet[int]


def _vectors(rs: RootSystem, idx) -> list:
    pr = rs.positive_root_simple_coords
    return [pr[i] for i in idx]


def span_rank(rs: RootSystem, idx) -> int:
    return linalg.rank(_vectors(rs, sorted(idx)))


def closure(rs: RootSystem, idx) -> RootSet:
    """``span(idx) ∩ Δ+``."""
    idx = sorted(idx)
    base = _vectors(rs, idx)
    k = linalg.rank(base)
    return frozenset(i for i, a in enumerate(rs.positive_root_simple_coords) if linalg.rank(base + [a]) == k)


def is_complete(rs: RootSystem, idx) -> bool:
    return closure(rs, idx) == frozenset(idx)


def components(rs: RootSystem, idx) -> List[RootSet]:
    """Connected components of the linear matroid on ``idx``.

    Elements are joined through the fundamental circuits of a greedy basis."""
    idx = sorted(idx)
    parent = {i: i for i in idx}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    basis: List[int] = []
    for i in idx:
        if linalg.rank(_vectors(rs, basis + [i])) > len(basis):
            basis.append(i)
    bvecs = _vectors(rs, basis)
    m = linalg.transpose([list(map(Q, v)) for v in bvecs])
    for i in idx:
        if i in basis:
            continue
        coeffs = linalg.solve(m, list(map(Q, rs.positive_root_simple_coords[i])))
        for b, c in zip(basis, coeffs):
            if c:
                union(i, b)
    groups: Dict[int, set] = {}
    for i in idx:
        groups.setdefault(find(i), set()).add(i)
    return sorted((frozenset(g) for g in groups.values()), key=lambda s: (len(s), sorted(s)))


def is_irreducible(rs: RootSystem, idx) -> bool:
    return len(components(rs, idx)) == 1


@lru_cache(maxsize=None)
def complete_subsets(rs: RootSystem) -> Tuple[RootSet, ...]:
    """Every nonempty complete subset, grown by closures of one extra root at a time."""
    n = len(rs.positive_roots)
    level = {closure(rs, [i]) for i in range(n)}
    found = set(level)
    while level:
        nxt = set()
        for s in level:
            for i in range(n):
                if i not in s:
                    t = closure(rs, s | {i})
                    if t not in found:
                        found.add(t)
                        nxt.add(t)
        level = nxt
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


@dataclass(frozen=True)
class IrreducibleSubset:
    roots: RootSet
    dim: int


@lru_cache(maxsize=None)
def irreducible_subsets(rs: RootSystem) -> Tuple[IrreducibleSubset, ...]:
    return tuple(
        IrreducibleSubset(s, span_rank(rs, s)) for s in complete_subsets(rs) if is_irreducible(rs, s)
    )


# ---------------------------------------------------------------------------
# maximal (proper) nested sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalNestedSet:
    members: Tuple[RootSet, ...]
    theta: Tuple[int, ...]  # root indices, sorted by the total order
    vol: int
    theta_matrix: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False)  # rows: simple coords of theta

    def coords(self, v: Sequence[Q]) -> Tuple[Q, ...]:
        """Coordinates of a simple-coordinate vector in the basis theta(M)."""
        return _theta_inverse(self.theta_matrix, tuple(v))

    def to_json(self) -> dict:
        return {"members": [sorted(m) for m in self.members], "theta": list(self.theta), "vol": self.vol}


@lru_cache(maxsize=None)
def _theta_inv_matrix(theta_matrix):
    return linalg.inverse(linalg.transpose([list(map(Q, r)) for r in theta_matrix]))


def _theta_inverse(theta_matrix, v):
    return tuple(linalg.matvec(_theta_inv_matrix(theta_matrix), v))


def phi(rs: RootSystem, members) -> Tuple[int, ...]:
    """Maximal root (in the frozen order) of every member."""
    return tuple(max(m) for m in members)


def _maximal_nested_of(rs: RootSystem, top: RootSet, memo) -> List[Tuple[RootSet, ...]]:
    if top in memo:
        return memo[top]
    k = span_rank(rs, top)
    if k == 1:
        memo[top] = [(top,)]
        return memo[top]
    out = []
    for sub in complete_subsets(rs):
        if sub < top and span_rank(rs, sub) == k - 1:
            parts = [_maximal_nested_of(rs, c, memo) for c in components(rs, sub)]
            combos = [()]
            for options in parts:
                combos = [c + o for c in combos for o in options]
            out.extend((top,) + c for c in combos)
    memo[top] = out
    return out


@lru_cache(maxsize=None)
def maximal_nested_sets(rs: RootSystem) -> Tuple[Tuple[RootSet, ...], ...]:
    """All maximal nested sets (each contains the whole of Δ+, which is irreducible)."""
    top = frozenset(range(len(rs.positive_roots)))
    found = _maximal_nested_of(rs, top, {})
    canon = {tuple(sorted(m, key=lambda s: (len(s), sorted(s)))) for m in found}
    return tuple(sorted(canon, key=lambda m: [sorted(s) for s in m]))


def is_nested(rs: RootSystem, members) -> bool:
    """Independent check of the nestedness condition on every antichain."""
    members = list(members)
    if not all(is_complete(rs, m) and is_irreducible(rs, m) for m in members):
        return False
    for k in range(2, len(members) + 1):
        for sub in combinations(members, k):
            if any(a < b or b < a for a, b in combinations(sub, 2)):
                continue
            union = frozenset().union(*sub)
            if not is_complete(rs, union):
                return False
            if sorted(map(sorted, components(rs, union))) != sorted(map(sorted, sub)):
                return False
    return True


def is_proper(rs: RootSystem, members) -> bool:
    f = phi(rs, members)
    return len(set(f)) == rs.rank and span_rank(rs, f) == rs.rank


def _make_mpns(rs: RootSystem, members) -> MaximalNestedSet:
    theta = tuple(sorted(phi(rs, members)))
    mat = tuple(rs.positive_root_simple_coords[i] for i in theta)
    vol = abs(linalg.det(mat))
    if vol.denominator != 1 or vol == 0:
        raise InternalError("degenerate theta(M)")
    return MaximalNestedSet(tuple(members), theta, int(vol), mat)


def _cache_path(rs: RootSystem, cache_dir) -> Optional[Path]:
    if cache_dir is None:
        return None
    return Path(cache_dir) / f"mpns-{rs.family}{rs.rank}{rs.order_tag}-v{ORDER_VERSION}.json"


def default_cache_dir() -> Path:
    env = os.environ.get("KOSTANT_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "kostant"


_MPNS_MEMO: Dict[RootSystem, Tuple[MaximalNestedSet, ...]] = {}
_CACHE_DIR: Optional[Path] = None


def set_cache_dir(path) -> None:
    """Directory used for on-disk nested-set caches when no explicit one is passed (None disables)."""
    global _CACHE_DIR
    _CACHE_DIR = Path(path) if path is not None else None


_UNSET = object()


def maximal_proper_nested_sets(rs: RootSystem, cache_dir=_UNSET) -> Tuple[MaximalNestedSet, ...]:
    """Maximal nested sets whose maximal roots form a basis (under the frozen order)."""
    if rs in _MPNS_MEMO:
        return _MPNS_MEMO[rs]
    path = _cache_path(rs, _CACHE_DIR if cache_dir is _UNSET else cache_dir)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        header = (data.get("family"), data.get("rank"), data.get("order_version"), data.get("order_tag", ""))
        if header == (rs.family, rs.rank, ORDER_VERSION, rs.order_tag):
            out = tuple(_make_mpns(rs, tuple(frozenset(m) for m in d["members"])) for d in data["mpns"])
            _MPNS_MEMO[rs] = out
            return out
    out = tuple(_make_mpns(rs, m) for m in maximal_nested_sets(rs) if is_proper(rs, m))
    _MPNS_MEMO[rs] = out
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(mpns_to_json(rs, out))
        tmp.replace(path)
    return out


def mpns_to_json(rs: RootSystem, mpns) -> str:
    payload = {
        "family": rs.family,
        "rank": rs.rank,
        "order_version": ORDER_VERSION,
        "order_tag": rs.order_tag,
        "mpns": [m.to_json() for m in mpns],
    }
    return json.dumps(payload, sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# hyperplanes, basic subsets, regular vectors
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def wall_normals(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    """Primitive normals (simple coordinates) of hyperplanes spanned by r-1 roots."""
    r = rs.rank
    pr = rs.positive_root_simple_coords
    if r == 1:
        return ()
    normals = set()
    for idx in combinations(range(len(pr)), r - 1):
        vecs = [pr[i] for i in idx]
        if linalg.rank(vecs) < r - 1:
            continue
        ns = linalg.nullspace(vecs)
        normals.add(linalg.primitive(ns[0]))
    return tuple(sorted(normals))


@dataclass(frozen=True)
class BasicSubset:
    roots: Tuple[int, ...]
    vol: int
    matrix: Tuple[Tuple[int, ...], ...] = field(repr=False)


@lru_cache(maxsize=None)
def basic_subsets(rs: RootSystem) -> Tuple[BasicSubset, ...]:
    pr = rs.positive_root_simple_coords
    out = []
    for idx in combinations(range(len(pr)), rs.rank):
        mat = tuple(pr[i] for i in idx)
        d = linalg.det(mat)
        if d:
            out.append(BasicSubset(idx, abs(int(d)), mat))
    return tuple(out)


def in_open_cone(matrix, v) -> Optional[bool]:
    """Strict membership of v in the cone spanned by the rows of ``matrix``.

    Returns None when v lies on a facet hyperplane of that cone."""
    c = _theta_inverse(tuple(matrix), tuple(v))
    if any(x == 0 for x in c):
        return None
    return all(x > 0 for x in c)


@lru_cache(maxsize=None)
def generic_direction(rs: RootSystem) -> Tuple[Q, ...]:
    """A fixed interior direction of C(Δ+) lying on no wall (simple coordinates)."""
    rho = [sum(a[i] for a in rs.positive_root_simple_coords) for i in range(rs.rank)]  # 2 rho
    normals = wall_normals(rs)
    t = 7
    while True:
        d = tuple(Q(c) + Q(1, t ** (i + 1)) for i, c in enumerate(rho))
        if all(sum(h * x for h, x in zip(n, d)) != 0 for n in normals):
            return d
        t += 1


def perturb_simple(rs: RootSystem, a: Sequence[Q], directions: Sequence[Sequence[Q]] = ()) -> Tuple[Q, ...]:
    """Regular vector whose chamber closure contains ``a`` (both in simple coordinates).

    Moves successively along ``directions`` then along the generic direction,
    each time by half the distance to the nearest wall not containing the point."""
    normals = wall_normals(rs)
    v = tuple(Q(x) for x in a)
    for d in list(directions) + [generic_direction(rs)]:
        d = tuple(Q(x) for x in d)
        eps = None
        for n in normals:
            hv = sum(h * x for h, x in zip(n, v))
            hd = sum(h * x for h, x in zip(n, d))
            if hv and hd:
                ratio = abs(Q(hv) / hd)
                if eps is None or ratio < eps:
                    eps = ratio
        eps = Q(1) if eps is None else eps / 2
        v = tuple(x + eps * y for x, y in zip(v, d))
    if any(sum(h * x for h, x in zip(n, v)) == 0 for n in normals):
        raise InternalError("perturbation failed to reach a regular vector")
    return v


def regular_perturbation(rs: RootSystem, a: Sequence, directions: Sequence[Sequence] = ()) -> Weight:
    """Canonical-coordinate version of :func:`perturb_simple`; ``a`` must lie in C(Δ+)."""
    if not in_positive_cone(rs, a):
        raise UsageError(f"{tuple(map(str, a))} is not in the cone C(Δ+) of {rs.name}")
    sa = simple_root_coords(rs, a)
    sd = [simple_root_coords(rs, d) for d in directions]
    v = perturb_simple(rs, sa, sd)
    return to_canonical(rs, v)


def to_canonical(rs: RootSystem, simple: Sequence[Q]) -> Weight:
    out = [Q(0)] * rs.dim
    for c, a in zip(simple, rs.simple_roots):
        for k in range(rs.dim):
            out[k] += c * a[k]
    return tuple(out)


def is_regular_simple(rs: RootSystem, v: Sequence[Q]) -> bool:
    return all(x > 0 for x in v) and all(sum(h * x for h, x in zip(n, v)) != 0 for n in wall_normals(rs))


def select_mpns(rs: RootSystem, mpns: Sequence[MaximalNestedSet], v: Sequence) -> List[MaximalNestedSet]:
    """MPNS whose open cone C(θ(M)) contains the regular vector v (canonical coordinates)."""
    sv = simple_root_coords(rs, v)
    return select_mpns_simple(mpns, sv)


def select_mpns_simple(mpns: Sequence[MaximalNestedSet], sv: Sequence[Q]) -> List[MaximalNestedSet]:
    out = []
    for m in mpns:
        inside = in_open_cone(m.theta_matrix, sv)
        if inside is None:
            raise SingularVectorError("vector lies on a wall of some C(θ(M)); perturb it first")
        if inside:
            out.append(m)
    return out


@lru_cache(maxsize=None)
def _sign_rows(matrix) -> Tuple[Tuple[int, ...], ...]:
    """Integer rows whose products with v have the signs of v's coordinates in the basis ``matrix``."""
    inv = _theta_inv_matrix(tuple(matrix))
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    return tuple(tuple(int(x * den) for x in row) for row in inv)


def _lex_sign(row, vectors) -> int:
    for v in vectors:
        s = sum(a * b for a, b in zip(row, v))
        if s:
            return 1 if s > 0 else -1
    return 0


class _SignTable:
    """Stacked sign rows of several bases, for vectorized lexicographic tests."""

    def __init__(self, matrices):
        rows = [row for m in matrices for row in _sign_rows(tuple(m))]
        self.count = len(matrices)
        self.width = len(rows) // max(self.count, 1)
        self.bound = max((abs(x) for row in rows for x in row), default=0)
        self.rows = np.array(rows, dtype=np.int64)
        self.exact = np.array(rows, dtype=object)

    def inside(self, vectors: Sequence[Sequence[int]]) -> np.ndarray:
        """Boolean mask of the bases whose open cone holds the perturbed vector."""
        big = max((abs(x) for v in vectors for x in v), default=0)
        if self.bound * big * self.width < 2**62:
            prod = self.rows @ np.array(vectors, dtype=np.int64).T
        else:
            prod = self.exact @ np.array(vectors, dtype=object).T
        nz = prod != 0
        if not nz.any(axis=1).all():
            raise SingularVectorError("perturbation directions are not generic enough")
        first = prod[np.arange(len(prod)), nz.argmax(axis=1)]
        return (first > 0).reshape(self.count, self.width).all(axis=1)


_TABLES: Dict[Tuple, _SignTable] = {}
_LAST: Dict[str, Tuple[object, _SignTable]] = {}


def _sign_table(kind: str, source, matrices) -> _SignTable:
    last = _LAST.get(kind)
    if last is not None and last[0] is source:
        return last[1]
    mats = tuple(tuple(m) for m in matrices())
    key = (kind, mats)
    table = _TABLES.get(key)
    if table is None:
        table = _TABLES[key] = _SignTable(mats)
    _LAST[kind] = (source, table)
    return table


def select_mpns_lex(mpns: Sequence[MaximalNestedSet], vectors: Sequence[Sequence[Q]]) -> List[MaximalNestedSet]:
    """Selection at b + e1*d1 + e2*d2 + ... for infinitesimals e1 >> e2 >> ... > 0.

    ``vectors`` = (b, d1, d2, ...).  This is what a small enough rational
    perturbation selects, without computing it."""
    if not isinstance(mpns, tuple):
        mpns = tuple(mpns)
    if not mpns:
        return []
    table = _sign_table("mpns", mpns, lambda: [m.theta_matrix for m in mpns])
    mask = table.inside([integral_vector(v) for v in vectors])
    return [m for m, keep in zip(mpns, mask) if keep]


def integral_vector(v: Sequence) -> Tuple[int, ...]:
    """Positive multiple of a rational vector with integer entries (same signs everywhere)."""
    den = 1
    for x in v:
        d = Q(x).denominator
        den = den * d // gcd(den, d)
    return tuple(int(Q(x) * den) for x in v)


def lex_vectors(rs: RootSystem, b: Sequence, directions: Sequence[Sequence] = ()) -> List[Tuple[int, ...]]:
    """(b, d1, ..., generic direction), each scaled to integers, for the lexicographic tests."""
    return [integral_vector(b), *(integral_vector(d) for d in directions), integral_vector(generic_direction(rs))]


def containing_basic_subsets_lex(rs: RootSystem, vectors: Sequence[Sequence[int]]) -> List[BasicSubset]:
    """Basic subsets whose open cone contains b + e1*d1 + ... (infinitesimal perturbation)."""
    subsets = basic_subsets(rs)
    table = _sign_table("basic", subsets, lambda: [bs.matrix for bs in subsets])
    mask = table.inside([integral_vector(v) for v in vectors])
    return [bs for bs, keep in zip(subsets, mask) if keep]


def containing_basic_subsets(rs: RootSystem, sv: Sequence[Q]) -> List[BasicSubset]:
    out = []
    for b in basic_subsets(rs):
        inside = in_open_cone(b.matrix, sv)
        if inside is None:
            raise SingularVectorError("vector lies on a facet of a basic cone")
        if inside:
            out.append(b)
    return out


# ---------------------------------------------------------------------------
# chambers
# ---------------------------------------------------------------------------


def _region_point(constraints, r):
    """Exact interior point of {x > 0, s*h.x > 0 for (h, s) in constraints}, or None."""
    from scipy.optimize import linprog

    a_ub = []
    b_ub = []
    for h, s in constraints:
        a_ub.append([-s * c for c in h])
        b_ub.append(-1.0)
    res = linprog(
        c=np.zeros(r) if not a_ub else np.ones(r),
        A_ub=np.array(a_ub, dtype=float) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        bounds=[(1, None)] * r,
        method="highs",
    )
    if res.status != 0:
        return None
    for den in (1, 2, 4, 16, 256, 10**6):
        x = tuple(Q(round(float(v) * den)) / den + Q(1, 10**9) * (i + 1) for i, v in enumerate(res.x))
        if all(c > 0 for c in x) and all(s * sum(hh * xx for hh, xx in zip(h, x)) > 0 for h, s in constraints):
            return x
    raise InternalError("could not certify an LP interior point exactly")


def arrangement_regions(rs: RootSystem) -> List[Tuple[Q, ...]]:
    """One exact interior point per region of the wall arrangement inside C(Δ+)."""
    r = rs.rank
    walls = [n for n in wall_normals(rs) if sum(1 for c in n if c) > 1]  # coordinate walls bound the cone
    regions = [([], tuple(Q(1) for _ in range(r)) if not walls else _region_point([], r))]
    for h in walls:
        nxt = []
        for cons, p in regions:
            val = sum(a * b for a, b in zip(h, p))
            if val == 0:
                for s in (1, -1):
                    q = _region_point(cons + [(h, s)], r)
                    if q is not None:
                        nxt.append((cons + [(h, s)], q))
                continue
            s = 1 if val > 0 else -1
            nxt.append((cons + [(h, s)], p))
            q = _region_point(cons + [(h, -s)], r)
            if q is not None:
                nxt.append((cons + [(h, -s)], q))
        regions = nxt
    return [p for _, p in regions]


def count_chambers(rs: RootSystem, max_rank: int = 4) -> int:
    """Number of connected components of C_reg(Δ+).

    Regions of the full wall arrangement are grouped by the set of basic cones
    containing them: a chamber is the intersection of the cones C(σ) containing it."""
    if rs.rank > max_rank:
        raise UsageError(f"chamber counting is supported up to rank {max_rank}")
    signatures = set()
    for p in arrangement_regions(rs):
        signatures.add(tuple(b.roots for b in containing_basic_subsets(rs, p)))
    return len(signatures)

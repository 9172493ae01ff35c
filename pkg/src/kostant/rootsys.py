"""Positive root systems of the classical families A, B, C, D.

Weights are tuples of Fractions in the canonical (ambient) basis.  Type A
lives in dimension r+1 and accepts gl-weights whose coordinates need not
sum to zero.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction as Q
from functools import cached_property
from typing import Dict, Sequence, Tuple

from . import linalg
from .arith import as_rational
from .errors import UsageError

Weight = Tuple[Q, ...]
Root = Tuple[int, ...]

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

# bump whenever the root order changes: it keys on-disk caches
ORDER_VERSION = 1


def as_weight(v: Sequence) -> Weight:
    return tuple(as_rational(x) for x in v)


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y)), 0)


def _unit(n: int, i: int, c: int = 1) -> Root:
    return tuple(c if k == i else 0 for k in range(n))


def _positive_roots(family: str, r: int) -> Tuple[int, list]:
    n = r + 1 if family == "A" else r
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(tuple((k == i) - (k == j) for k in range(n)))
    if family != "A":
        for i in range(n):
            for j in range(i + 1, n):
                roots.append(tuple((k == i) + (k == j) for k in range(n)))
    if family == "B":
        roots += [_unit(n, i) for i in range(n)]
    elif family == "C":
        roots += [_unit(n, i, 2) for i in range(n)]
    return n, roots


def _simple_roots(family: str, r: int, n: int) -> list:
    simple = [tuple((k == i) - (k == i + 1) for k in range(n)) for i in range(r if family == "A" else r - 1)]
    if family == "B":
        simple.append(_unit(n, n - 1))
    elif family == "C":
        simple.append(_unit(n, n - 1, 2))
    elif family == "D":
        simple.append(tuple(int(k >= n - 2) for k in range(n)))
    return simple


class RootSystem:
    """Static geometry of ``X_r``: ordered positive roots, simple roots, rho, lattices.

    Positive roots are sorted lexicographically on canonical coordinates,
    largest last; this total order is frozen (see ``ORDER_VERSION``).
    ``root_order`` replaces it by any other listing of the positive roots.
    Final answers do not depend on the order, only the nested-set data does.
    """

    def __init__(self, family: str, rank: int, root_order: Sequence[Sequence[int]] | None = None):
        family = str(family).upper()
        if family not in FAMILIES:
            raise UsageError(f"unknown family {family!r}; expected one of A, B, C, D")
        if not isinstance(rank, int) or rank < MIN_RANK[family]:
            raise UsageError(f"rank {rank!r} out of range for family {family} (minimum {MIN_RANK[family]})")
        self.family = family
        self.rank = rank
        self.dim, roots = _positive_roots(family, rank)
        self.positive_roots: Tuple[Root, ...] = tuple(sorted(roots))
        self.order_tag = ""
        if root_order is not None:
            custom = tuple(tuple(int(x) for x in a) for a in root_order)
            if sorted(custom) != list(self.positive_roots):
                raise UsageError(f"root_order is not a listing of the positive roots of {family}{rank}")
            if custom != self.positive_roots:
                self.positive_roots = custom
                self.order_tag = "-" + hashlib.sha1(repr(custom).encode()).hexdigest()[:10]
        self.order: Dict[Root, int] = {a: i for i, a in enumerate(self.positive_roots)}
        self.simple_roots: Tuple[Root, ...] = tuple(_simple_roots(family, rank, self.dim))

    def __repr__(self) -> str:
        if self.order_tag:
            return f"RootSystem({self.family!r}, {self.rank}, root_order={list(self.positive_roots)!r})"
        return f"RootSystem({self.family!r}, {self.rank})"

    def _key(self):
        return (self.family, self.rank, self.order_tag and self.positive_roots)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def to_json(self) -> dict:
        return {"family": self.family, "rank": self.rank}

    # -- derived data --------------------------------------------------------

    @cached_property
    def rho(self) -> Weight:
        if self.family == "A":
            # shifted by the all-ones vector; every formula only uses differences
            return tuple(Q(self.rank - i) for i in range(self.dim))
        total = [sum(a[k] for a in self.positive_roots) for k in range(self.dim)]
        return tuple(Q(x, 2) for x in total)

    @cached_property
    def _to_simple(self):
        # rows: linear forms giving simple-root coordinates of a vector in the span
        cols = [list(map(Q, a)) for a in self.simple_roots]  # r vectors
        gram = [[Q(dot(a, b)) for b in self.simple_roots] for a in self.simple_roots]
        ginv = linalg.inverse(gram)
        # c = G^{-1} R^T x
        return [
            [sum((ginv[i][k] * cols[k][j] for k in range(self.rank)), Q(0)) for j in range(self.dim)]
            for i in range(self.rank)
        ]

    @cached_property
    def simple_coord_matrix(self):
        """r x dim rational matrix sending a vector of the root span to its simple-root coordinates."""
        return self._to_simple

    @cached_property
    def positive_root_simple_coords(self) -> Tuple[Tuple[int, ...], ...]:
        out = []
        for a in self.positive_roots:
            c = linalg.matvec(self._to_simple, a)
            assert all(x.denominator == 1 and x >= 0 for x in c), (self, a, c)
            out.append(tuple(int(x) for x in c))
        return tuple(out)

    @cached_property
    def fundamental_weights(self) -> Tuple[Weight, ...]:
        """Dual basis to the simple coroots, solved exactly.

        For type A the extra freedom is fixed by a zero last coordinate,
        which gives omega_i = e_1 + ... + e_i."""
        coroots = [[Q(2 * x, dot(a, a)) for x in a] for a in self.simple_roots]
        cols = list(coroots)
        rhs = [[Q(int(i == j)) for j in range(self.rank)] for i in range(self.rank)]
        if self.family == "A":
            cols.append([Q(int(k == self.dim - 1)) for k in range(self.dim)])
            rhs = [row + [Q(0)] for row in rhs]
        # Omega * M = rhs where M has the vectors in cols as columns
        m = linalg.transpose(cols)
        omega = linalg.matmul(rhs, linalg.inverse(m))
        return tuple(tuple(row) for row in omega)

    # -- predicates ------------------------------------------------------------

    def check_weight(self, w: Sequence) -> Weight:
        w = as_weight(w)
        if len(w) != self.dim:
            raise UsageError(f"{self.name} weights have {self.dim} coordinates, got {len(w)}")
        return w

    def in_span(self, w: Sequence) -> bool:
        return self.family != "A" or sum(w) == 0


def build_root_system(family: str, rank: int) -> RootSystem:
    return RootSystem(family, rank)


def from_funda_to_cano(rs: RootSystem, v: Sequence) -> Weight:
    if len(v) != rs.rank:
        raise UsageError(f"{rs.name} needs {rs.rank} fundamental coordinates, got {len(v)}")
    v = as_weight(v)
    out = [Q(0)] * rs.dim
    for c, om in zip(v, rs.fundamental_weights):
        if c:
            for k in range(rs.dim):
                out[k] += c * om[k]
    return tuple(out)


def from_cano_to_funda(rs: RootSystem, w: Sequence) -> Weight:
    w = rs.check_weight(w)
    return tuple(Q(2) * dot(w, a) / dot(a, a) for a in rs.simple_roots)


def simple_root_coords(rs: RootSystem, w: Sequence) -> Tuple[Q, ...]:
    w = rs.check_weight(w)
    if not rs.in_span(w):
        raise UsageError(f"{w} is outside the span of the roots of {rs.name}")
    return tuple(linalg.matvec(rs.simple_coord_matrix, w))


def in_positive_cone(rs: RootSystem, w: Sequence) -> bool:
    w = rs.check_weight(w)
    if not rs.in_span(w):
        return False
    return all(c >= 0 for c in simple_root_coords(rs, w))


def in_root_lattice(rs: RootSystem, w: Sequence) -> bool:
    w = rs.check_weight(w)
    if not rs.in_span(w):
        return False
    return all(c.denominator == 1 for c in simple_root_coords(rs, w))


def is_dominant(rs: RootSystem, w: Sequence) -> bool:
    w = rs.check_weight(w)
    if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
        return False
    if rs.family in ("B", "C"):
        return w[-1] >= 0
    if rs.family == "D":
        return w[-2] >= abs(w[-1])
    return True


def is_integral_weight(rs: RootSystem, w: Sequence) -> bool:
    """True when all fundamental-weight coordinates are integers."""
    return all(c.denominator == 1 for c in from_cano_to_funda(rs, w))

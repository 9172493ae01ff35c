"""Weyl groups of classical type as signed permutations, and the valid
elements / valid pairs feeding the alternating sums of Kostant and Steinberg.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import permutations, product
from math import lcm
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .rootsys import RootSystem, Weight, as_weight, in_root_lattice


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation acting by ``(w v)_i = signs[i] * v[perm[i]]``."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    def apply(self, v: Sequence) -> tuple:
        return tuple(s * v[p] for p, s in zip(self.perm, self.signs))

    @property
    def sign(self) -> int:
        return _perm_sign(self.perm) * _prod(self.signs)

    def __str__(self) -> str:
        return "[" + ",".join(("-" if s < 0 else "") + str(p + 1) for p, s in zip(self.perm, self.signs)) + "]"


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(tuple(range(rs.dim)), (1,) * rs.dim)


def _allowed_signs(rs: RootSystem):
    n = rs.dim
    if rs.family == "A":
        return [(1,) * n]
    signs = list(product((1, -1), repeat=n))
    if rs.family == "D":
        signs = [s for s in signs if s.count(-1) % 2 == 0]
    return signs


def weyl_enumerate(rs: RootSystem) -> Iterator[WeylElement]:
    """Each element of W exactly once; streamed, never materialized."""
    for perm in permutations(range(rs.dim)):
        for signs in _allowed_signs(rs):
            yield WeylElement(perm, signs)


def weyl_order(rs: RootSystem) -> int:
    from math import factorial

    r = rs.rank
    if rs.family == "A":
        return factorial(r + 1)
    if rs.family == "D":
        return 2 ** (r - 1) * factorial(r)
    return 2 ** r * factorial(r)


def apply(w: WeylElement, v: Sequence) -> Weight:
    return w.apply(as_weight(v))


def sign(w: WeylElement) -> int:
    return w.sign


class ValidTerm(NamedTuple):
    element: object  # WeylElement or (WeylElement, WeylElement)
    sign: int
    argument: Weight
    simple: Optional[Tuple[int, ...]] = None  # simple-root coordinates of the argument


# ---------------------------------------------------------------------------
# integer helpers: cone membership on scaled vectors
# ---------------------------------------------------------------------------


class _ConeTest:
    """Exact test ``x in C(Delta+)`` for integer vectors ``x`` (already scaled)."""

    def __init__(self, rs: RootSystem):
        s = rs.simple_coord_matrix
        den = lcm(*(x.denominator for row in s for x in row))
        self.rows = [[int(x * den) for x in row] for row in s]
        self.den = den
        self.is_a = rs.family == "A"
        self.dim = rs.dim
        # a row is decided once every position up to its last nonzero entry is filled
        self.last = [max(j for j, x in enumerate(row) if x) for row in self.rows]
        n = self.dim
        self.decided_at = [[k for k, last in enumerate(self.last) if last == p] for p in range(n)]
        self.open_at = [[k for k, last in enumerate(self.last) if last > p] for p in range(n)]
        # suffix sums of the positive and negative parts of each row
        self.pos = [[sum(max(c, 0) for c in row[d:]) for d in range(n + 1)] for row in self.rows]
        self.neg = [[sum(min(c, 0) for c in row[d:]) for d in range(n + 1)] for row in self.rows]

    def __call__(self, x: Sequence[int]) -> bool:
        if self.is_a and sum(x) != 0:
            return False
        return all(sum(a * b for a, b in zip(row, x)) >= 0 for row in self.rows)

    def simple(self, x: Sequence[int], k: int) -> Optional[Tuple[int, ...]]:
        """Simple-root coordinates of x / k, or None when they are not integers."""
        return self.simple_from_rows([sum(a * b for a, b in zip(row, x)) for row in self.rows], k)

    def simple_from_rows(self, values: Sequence[int], k: int) -> Optional[Tuple[int, ...]]:
        d = self.den * k
        out = []
        for v in values:
            q, r = divmod(v, d)
            if r:
                return None
            out.append(q)
        return tuple(out)


@lru_cache(maxsize=None)
def _cone_test(rs: RootSystem) -> _ConeTest:
    return _ConeTest(rs)


def _scale_of(*weights) -> int:
    return lcm(1, *(Q(c).denominator for w in weights for c in w))


def _scaled(w, k: int) -> Tuple[int, ...]:
    return tuple(int(Q(c) * k) for c in w)


def _shifted(rs: RootSystem, w: Sequence, times: int = 1) -> Weight:
    return tuple(Q(a) + times * b for a, b in zip(w, rs.rho))


def valid_elements(rs: RootSystem, lam: Sequence, mu: Sequence) -> List[ValidTerm]:
    """All w with w(lam+rho) - (mu+rho) in C(Delta+), with sign and argument."""
    lam, mu = rs.check_weight(lam), rs.check_weight(mu)
    lr, mr = _shifted(rs, lam), _shifted(rs, mu)
    k = _scale_of(lr, mr)
    cone = _cone_test(rs)
    lr_i, mr_i = _scaled(lr, k), _scaled(mr, k)
    out = []
    for w in weyl_enumerate(rs):
        x = tuple(a - b for a, b in zip(w.apply(lr_i), mr_i))
        if cone(x):
            out.append(ValidTerm(w, w.sign, tuple(Q(c, k) for c in x), cone.simple(x, k)))
    return out


def valid_pairs_naive(rs: RootSystem, lam: Sequence, mu: Sequence, nu: Sequence) -> List[ValidTerm]:
    """Full |W|^2 scan; the reference for :func:`valid_pairs`."""
    lam, mu, nu = (rs.check_weight(x) for x in (lam, mu, nu))
    lr, mr, nr = _shifted(rs, lam), _shifted(rs, mu), _shifted(rs, nu, 2)
    k = _scale_of(lr, mr, nr)
    lr_i, mr_i, nr_i = _scaled(lr, k), _scaled(mr, k), _scaled(nr, k)
    cone = _cone_test(rs)
    elements = list(weyl_enumerate(rs))
    images = [(w, w.apply(mr_i)) for w in elements]
    out = []
    for w in elements:
        s = tuple(a - b for a, b in zip(w.apply(lr_i), nr_i))
        for w2, m in images:
            x = tuple(a + b for a, b in zip(s, m))
            if cone(x):
                out.append(ValidTerm((w, w2), w.sign * w2.sign, tuple(Q(c, k) for c in x)))
    return out


def _pairs_for_outer(rs: RootSystem, cone: _ConeTest, s: Tuple[int, ...], m: Tuple[int, ...]):
    """Signed permutations w2 with s + w2(m) in the cone, built position by position.

    Returns (perm, signs, vector, row values) tuples.  A branch is cut as soon as a
    simple-root coordinate that is already fully determined is negative, or
    when even the most favourable completion cannot make an undetermined one
    nonnegative."""
    n = cone.dim
    rows = cone.rows
    nrows = len(rows)
    signs_free = rs.family != "A"
    decided_at, open_at, pos, neg = cone.decided_at, cone.open_at, cone.pos, cone.neg
    absm = [abs(x) for x in m]

    perm = [0] * n
    sg = [1] * n
    used = [False] * n
    base = [sum(row[j] * s[j] for j in range(n)) for row in rows]
    acc = list(base)

    def hopeless(depth: int) -> bool:
        # upper bound on the rest of each open row, letting values repeat
        free = [i for i in range(n) if not used[i]]
        if signs_free:
            top = max(absm[i] for i in free)
            for k in open_at[depth]:
                if acc[k] + top * (pos[k][depth + 1] - neg[k][depth + 1]) < 0:
                    return True
            return False
        hi = max(m[i] for i in free)
        lo = min(m[i] for i in free)
        for k in open_at[depth]:
            if acc[k] + pos[k][depth + 1] * hi + neg[k][depth + 1] * lo < 0:
                return True
        return False

    found = []

    def rec(depth: int):
        if depth == n:
            x = tuple(s[j] + sg[j] * m[perm[j]] for j in range(n))
            if not cone.is_a or sum(x) == 0:
                found.append((tuple(perm), tuple(sg), x, tuple(acc)))
            return
        for i in range(n):
            if used[i]:
                continue
            for sgn in ((1, -1) if signs_free and m[i] != 0 else (1,)):
                val = sgn * m[i]
                used[i] = True
                perm[depth] = i
                sg[depth] = sgn
                for k in range(nrows):
                    acc[k] += rows[k][depth] * val
                if all(acc[k] >= 0 for k in decided_at[depth]) and (depth + 1 == n or not hopeless(depth)):
                    rec(depth + 1)
                for k in range(nrows):
                    acc[k] -= rows[k][depth] * val
                used[i] = False

    rec(0)
    return found


def valid_pairs(rs: RootSystem, lam: Sequence, mu: Sequence, nu: Sequence) -> List[ValidTerm]:
    """All (w, w') with w(lam+rho) + w'(mu+rho) - (nu+2 rho) in C(Delta+).

    Both loops are branch-and-bound searches over signed permutations.  Since
    w'(mu+rho) <= mu+rho, a valid outer w needs w(lam+rho) + mu - nu - rho
    in the cone, which is the inner search with the roles of lam and mu swapped."""
    lam, mu, nu = (rs.check_weight(x) for x in (lam, mu, nu))
    lr, mr, nr = _shifted(rs, lam), _shifted(rs, mu), _shifted(rs, nu, 2)
    k = _scale_of(lr, mr, nr)
    lr_i, mr_i, nr_i = _scaled(lr, k), _scaled(mr, k), _scaled(nr, k)
    cone = _cone_test(rs)
    out = []
    zero_slots = [i for i, x in enumerate(mr_i) if x == 0]
    outer_zero = [i for i, x in enumerate(lr_i) if x == 0]
    shift = tuple(a - b for a, b in zip(mr_i, nr_i))
    outer = [
        w
        for perm, sg, _, _ in _pairs_for_outer(rs, cone, shift, lr_i)
        for w in _sign_variants(rs, perm, sg, outer_zero)
    ]
    for w in outer:
        s = tuple(a - b for a, b in zip(w.apply(lr_i), nr_i))
        for perm, sg, x, vals in _pairs_for_outer(rs, cone, s, mr_i):
            arg = tuple(Q(c, k) for c in x)
            simple = cone.simple_from_rows(vals, k)
            for w2 in _sign_variants(rs, perm, sg, zero_slots):
                out.append(ValidTerm((w, w2), w.sign * w2.sign, arg, simple))
    return out


def _sign_variants(rs: RootSystem, perm, sg, zero_slots):
    """Group elements with the same action on a vector having zero coordinates.

    The search fixes the sign +1 on zero coordinates; the other sign choices
    give distinct group elements with identical image, which Steinberg's sum
    must count (with their own signs)."""
    if rs.family == "A" or not zero_slots:
        if rs.family == "D" and list(sg).count(-1) % 2:
            return
        yield WeylElement(perm, sg)
        return
    positions = [j for j in range(len(perm)) if perm[j] in zero_slots]
    for flips in product((1, -1), repeat=len(positions)):
        s2 = list(sg)
        for j, f in zip(positions, flips):
            s2[j] = f
        if rs.family == "D" and s2.count(-1) % 2:
            continue
        yield WeylElement(tuple(perm), tuple(s2))


def lattice_shortcut(rs: RootSystem, v: Sequence) -> bool:
    """True when v is in the root lattice (otherwise Weyl sums vanish)."""
    return in_root_lattice(rs, v)

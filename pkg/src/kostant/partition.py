"""Kostant's vector partition function.

The main path sums Jeffrey-Kirwan residues over a finite torus set and
computes each residue as an iterated residue along the maximal proper nested
sets selected by the chamber.  A dynamic-programming count serves as the
independent oracle.

Arguments are handled in simple-root coordinates ``b`` (a = sum b_i alpha_i).
Every chamber gets one quasipolynomial in ``b`` which is cached and then
evaluated, so large arguments cost no more than small ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import product
from math import factorial, gcd
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .arith import MultiPoly, QuasiPolynomial, compose_series, logistic_coeffs, todd_coeffs
from .errors import InternalError, UsageError
from .nested import (
    MaximalNestedSet,
    basic_subsets,
    containing_basic_subsets,
    containing_basic_subsets_lex,
    lex_vectors,
    maximal_proper_nested_sets,
    select_mpns_lex,
    select_mpns_simple,
)
from .rootsys import RootSystem, Weight, as_weight

# ---------------------------------------------------------------------------
# torus elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusElement:
    """A point G of E/E_Z of order at most 2.

    ``eps[i]`` is <alpha_i, 2G> mod 2 for the i-th simple root, so the
    character of a root with simple coordinates d is (-1)^(d . eps)."""

    eps: Tuple[int, ...]

    def character(self, simple: Sequence[int]) -> int:
        return -1 if sum(d * e for d, e in zip(simple, self.eps)) % 2 else 1

    def G(self, rs: RootSystem) -> Weight:
        """Representative in canonical coordinates with <alpha_i, G> = eps_i / 2."""
        rows = [list(map(Q, a)) for a in rs.simple_roots]
        rhs = [Q(e, 2) for e in self.eps]
        if rs.family == "A":
            rows.append([Q(1)] * rs.dim)
            rhs.append(Q(0))
        return tuple(linalg.solve(rows, rhs))

    @property
    def is_identity(self) -> bool:
        return not any(self.eps)


def torus_subgroup(rs: RootSystem, sigma: Sequence[int]) -> List[TorusElement]:
    """T(sigma): elements whose character is trivial on every root of sigma.

    With y_i = <alpha_i, G> mod 1 the condition is  S y in Z^r  for the
    integer matrix S of simple coordinates of sigma; a Smith form U S V = D
    gives y = V w with w_i in (1/d_i) Z."""
    pr = rs.positive_root_simple_coords
    mat = [list(pr[i]) for i in sigma]
    if linalg.rank(mat) != rs.rank or len(mat) != rs.rank:
        raise UsageError("torus subgroup needs a basis of roots")
    _, d, v = linalg.smith_normal_form(mat)
    diag = [d[i][i] for i in range(rs.rank)]
    out = set()
    for t in product(*(range(x) for x in diag)):
        w = [Q(ti, di) for ti, di in zip(t, diag)]
        y = [sum((v[i][k] * w[k] for k in range(rs.rank)), Q(0)) % 1 for i in range(rs.rank)]
        two_y = [2 * c for c in y]
        if any(c.denominator != 1 for c in two_y):
            raise InternalError(f"torus element of order > 2 for {rs.name}; unsupported")
        out.add(TorusElement(tuple(int(c) % 2 for c in two_y)))
    if len(out) != abs(linalg.det(mat)):
        raise InternalError("torus subgroup has the wrong order")
    return sorted(out, key=lambda g: g.eps)


_TORUS_ALL: Dict[RootSystem, Tuple[TorusElement, ...]] = {}


def torus_all(rs: RootSystem) -> Tuple[TorusElement, ...]:
    """Union of T(sigma) over every basic subset."""
    if rs not in _TORUS_ALL:
        found = set()
        for b in basic_subsets(rs):
            if b.vol == 1:
                found.add(TorusElement((0,) * rs.rank))
            else:
                found.update(torus_subgroup(rs, b.roots))
        _TORUS_ALL[rs] = tuple(sorted(found, key=lambda g: g.eps))
    return _TORUS_ALL[rs]


def torus_set(rs: RootSystem, sv: Sequence[Q], directions: Sequence[Sequence] | None = None) -> List[TorusElement]:
    """Union of T(sigma) over the basic subsets whose cone contains the chamber.

    The chamber is that of the regular vector ``sv`` or, when ``directions``
    is given, the one reached from sv by infinitesimal moves along them."""
    found = set()
    if directions is None:
        cones = containing_basic_subsets(rs, sv)
    else:
        cones = containing_basic_subsets_lex(rs, [sv, *directions])
    for b in cones:
        if b.vol == 1:
            found.add(TorusElement((0,) * rs.rank))
        else:
            found.update(torus_subgroup(rs, b.roots))
    return sorted(found, key=lambda g: g.eps)


# ---------------------------------------------------------------------------
# iterated residues along a nested set
# ---------------------------------------------------------------------------

LINEAR, TODD, LOGISTIC = "linear", "todd", "logistic"


@dataclass(frozen=True)
class _Frame:
    """Blow-up coordinates attached to a maximal nested set.

    Variable j belongs to member S_j and z_i = <phi(S_i), u> = prod over
    S_j containing S_i of s_j.  In these coordinates every root form is a
    monomial times a polynomial with nonzero constant term."""

    contains: Tuple[Tuple[bool, ...], ...]  # contains[i][j]: S_j ⊇ S_i
    basis_inv: Tuple[Tuple[Q, ...], ...]  # simple coords -> coords in phi(M)
    jac: Tuple[int, ...]
    root_data: Tuple[Tuple[Tuple[int, ...], Tuple[Tuple[Tuple[int, ...], Q], ...]], ...]  # per root: (monomial, unit terms)


_FRAMES: Dict[Tuple[RootSystem, Tuple], _Frame] = {}


def _frame(rs: RootSystem, m: MaximalNestedSet) -> _Frame:
    key = (rs, m.members)
    if key in _FRAMES:
        return _FRAMES[key]
    members = m.members
    r = len(members)
    pr = rs.positive_root_simple_coords
    beta = [max(s) for s in members]
    contains = tuple(tuple(members[j] >= members[i] for j in range(r)) for i in range(r))
    basis = linalg.transpose([list(map(Q, pr[b])) for b in beta])
    binv = linalg.inverse(basis)
    jac = tuple(sum(contains[i][j] for i in range(r)) - 1 for j in range(r))
    data = []
    for a, simple in enumerate(pr):
        owners = [i for i in range(r) if a in members[i]]
        own = min(owners, key=lambda i: len(members[i]))
        d = linalg.matvec(binv, simple)
        mono = tuple(int(contains[own][j]) for j in range(r))
        unit = []
        for i, c in enumerate(d):
            if not c:
                continue
            if not contains[i][own]:
                raise InternalError("root has a coordinate outside its minimal member")
            ext = tuple(int(contains[i][j] and not contains[own][j]) for j in range(r))
            unit.append((ext, c))
        if not any(not any(e) for e, _ in unit):
            raise InternalError("root form is not normal crossing in the nested-set chart")
        data.append((mono, tuple(unit)))
    fr = _Frame(contains, tuple(map(tuple, binv)), jac, tuple(data))
    _FRAMES[key] = fr
    return fr


def _svars(r: int) -> Tuple[str, ...]:
    return tuple(f"s{j + 1}" for j in range(r))


def iterated_residue_poly(
    rs: RootSystem,
    m: MaximalNestedSet,
    factors: Sequence[Tuple[int, str, int]],
    cvars: Sequence[str] | None = None,
) -> MultiPoly:
    """IRes_M of  e^{<a,u>} * prod factor(root)^mult  as a polynomial in the phi(M)-coordinates of a.

    ``factors`` lists (root index, kind, multiplicity) with kind one of
    ``linear`` (1/<alpha,u>), ``todd`` (1/(1 - e^{-<alpha,u>})) or
    ``logistic`` (1/(1 + e^{-<alpha,u>})).  The residue is the coefficient of
    s_1^-1 ... s_r^-1 of the pulled-back form; variables of the returned
    polynomial are ``cvars`` (default c1..cr), coordinate c_i multiplying
    z_i = <phi(S_i), u> in <a,u>."""
    fr = _frame(rs, m)
    r = rs.rank
    cvars = tuple(cvars) if cvars is not None else tuple(f"c{i + 1}" for i in range(r))
    expo = list(fr.jac)
    for a, kind, mult in factors:
        if kind in (LINEAR, TODD):
            mono = fr.root_data[a][0]
            for j in range(r):
                expo[j] -= mult * mono[j]
    need = tuple(-1 - e for e in expo)
    if min(need) < 0:
        return MultiPoly(cvars)
    dens = _unit_part(fr, tuple(sorted(factors)), need)
    # numerator: exp(sum_i c_i z_i) with z_i = s^{col_i}
    cols = [tuple(int(fr.contains[i][j]) for j in range(r)) for i in range(r)]
    out: Dict[Tuple[int, ...], Q] = {}
    ranges = [range(min(need[j] for j in range(r) if cols[i][j]) + 1) for i in range(r)]
    for n in product(*ranges):
        rest = tuple(need[j] - sum(n[i] * cols[i][j] for i in range(r)) for j in range(r))
        if min(rest) < 0:
            continue
        coeff = dens.coefficient(rest)
        if coeff:
            den = 1
            for k in n:
                den *= factorial(k)
            out[n] = out.get(n, 0) + coeff / den
    return MultiPoly(cvars, out)


_UNITS: Dict[Tuple, MultiPoly] = {}


def _unit_part(fr: _Frame, factors: Tuple, need: Tuple[int, ...]) -> MultiPoly:
    """Product of the invertible series left once the monomials are pulled out."""
    key = (id(fr), factors, need)
    if key in _UNITS:
        return _UNITS[key]
    r = len(need)
    sv = _svars(r)
    deg = sum(need)
    result = MultiPoly.constant(sv, 1)
    for a, kind, mult in factors:
        mono, unit_terms = fr.root_data[a]
        v = MultiPoly(sv, {e: c for e, c in unit_terms})
        x = v * MultiPoly(sv, {mono: 1})
        if kind == LINEAR:
            f = v.inverse_trunc(need)
        elif kind == TODD:
            f = compose_series(x, todd_coeffs(deg), need).mul_trunc(v.inverse_trunc(need), need)
        elif kind == LOGISTIC:
            f = compose_series(x, logistic_coeffs(deg), need)
        else:
            raise UsageError(f"unknown factor kind {kind!r}")
        for _ in range(mult):
            result = result.mul_trunc(f, need)
    _UNITS[key] = result
    return result


def jk_residue(rs: RootSystem, sv: Sequence[Q], numerator: Sequence, factors) -> Q:
    """JK residue, for the chamber of the regular vector ``sv``, of
    e^{<numerator,u>} * prod of factors (see :func:`iterated_residue_poly`).

    ``numerator`` is in simple-root coordinates."""
    total = Q(0)
    for m in select_mpns_simple(maximal_proper_nested_sets(rs), sv):
        poly = iterated_residue_poly(rs, m, factors)
        c = linalg.matvec(_frame(rs, m).basis_inv, [Q(x) for x in numerator])
        total += poly.evaluate(c) / m.vol
    return total


def _bvars(r: int) -> Tuple[str, ...]:
    return tuple(f"b{i + 1}" for i in range(r))


_TERMS: Dict[Tuple[RootSystem, Tuple, Tuple[int, ...]], MultiPoly] = {}


def jk_term_poly(rs: RootSystem, m: MaximalNestedSet, g: TorusElement) -> MultiPoly:
    """(1/vol M) IRes_M of the g-twisted generating function, as a polynomial in b.

    The phase (-1)^{<a,2G>} is left to the caller (it is the parity form g.eps)."""
    key = (rs, m.members, g.eps)
    if key in _TERMS:
        return _TERMS[key]
    pr = rs.positive_root_simple_coords
    factors = [(a, TODD if g.character(pr[a]) == 1 else LOGISTIC, 1) for a in range(len(pr))]
    r = rs.rank
    poly = iterated_residue_poly(rs, m, factors)
    fr = _frame(rs, m)
    bv = _bvars(r)
    images = [MultiPoly.linear(bv, fr.basis_inv[i]) for i in range(r)]
    out = poly.substitute(images, bv).scale(Q(1, m.vol))
    _TERMS[key] = out
    return out


def jk_term(rs: RootSystem, m: MaximalNestedSet, g: TorusElement, b=None):
    """Numeric value at simple coordinates ``b``, or the quasipolynomial when b is None."""
    poly = jk_term_poly(rs, m, g)
    q = QuasiPolynomial(poly.variables, {g.eps: poly})
    return q if b is None else q.evaluate(b)


# ---------------------------------------------------------------------------
# chambers and the partition function
# ---------------------------------------------------------------------------


class CompiledQuasi:
    """Integer-arithmetic evaluator of a quasipolynomial in b with integral parity forms."""

    __slots__ = ("quasi", "den", "parts")

    def __init__(self, quasi: QuasiPolynomial):
        self.quasi = quasi
        den = 1
        for poly in quasi.parts.values():
            for c in poly.terms.values():
                den = den * c.denominator // gcd(den, c.denominator)
        self.den = den
        self.parts = []
        for form, poly in quasi.parts.items():
            if any(c.denominator != 1 for c in form):
                raise InternalError("torus phase with a non-integral form")
            terms = [(e, int(c * den)) for e, c in poly.terms.items()]
            self.parts.append((tuple(int(c) for c in form), terms))

    def __call__(self, b: Sequence[int]) -> Q:
        total = 0
        for form, terms in self.parts:
            acc = 0
            for e, c in terms:
                t = c
                for x, k in zip(b, e):
                    if k:
                        t *= x**k
                acc += t
            if sum(f * x for f, x in zip(form, b)) % 2:
                acc = -acc
            total += acc
        return Q(total, self.den)


class ChamberCache:
    """Quasipolynomials in b keyed by the set of selected nested sets."""

    def __init__(self):
        self.table: Dict[Tuple, CompiledQuasi] = {}
        self.hits = 0
        self.misses = 0

    def clear(self):
        self.table.clear()
        self.hits = self.misses = 0


_CACHES: Dict[RootSystem, ChamberCache] = {}


def chamber_cache(rs: RootSystem) -> ChamberCache:
    return _CACHES.setdefault(rs, ChamberCache())


def chamber_quasipoly(rs: RootSystem, b: Sequence[Q], directions=(), restrict_torus: bool = True) -> CompiledQuasi:
    """Quasipolynomial in simple coordinates, valid on the closure of the chamber
    reached from ``b`` by perturbing along ``directions`` then a fixed generic direction.

    Chambers selecting the same nested sets share it: the residue sum only
    sees the selection, and torus elements outside the restricted set
    contribute zero for either chamber."""
    mpns = maximal_proper_nested_sets(rs)
    vectors = lex_vectors(rs, b, directions)
    selected = select_mpns_lex(mpns, vectors)
    key = (tuple(m.members for m in selected), restrict_torus)
    cache = chamber_cache(rs)
    hit = cache.table.get(key)
    if hit is not None:
        cache.hits += 1
        return hit
    cache.misses += 1
    if rs.family == "A":
        torus = [TorusElement((0,) * rs.rank)]  # every basic subset is unimodular
    elif restrict_torus:
        torus = torus_set(rs, vectors[0], vectors[1:])
    else:
        torus = torus_all(rs)
    bv = _bvars(rs.rank)
    parts: Dict[Tuple, MultiPoly] = {}
    for g in torus:
        acc = MultiPoly(bv)
        for m in selected:
            acc = acc + jk_term_poly(rs, m, g)
        parts[g.eps] = parts[g.eps] + acc if g.eps in parts else acc
    compiled = CompiledQuasi(QuasiPolynomial(bv, parts))
    cache.table[key] = compiled
    return compiled


def simple_forms(rs: RootSystem) -> List[List[Q]]:
    """Linear forms giving simple-root coordinates of a root-lattice vector.

    Type A uses partial sums, which agree with the orthogonal projection on
    sum-zero vectors and keep integral coefficients for gl-weights."""
    if rs.family == "A":
        return [[Q(int(k <= i)) for k in range(rs.dim)] for i in range(rs.rank)]
    return [list(row) for row in rs.simple_coord_matrix]


def to_simple(rs: RootSystem, a: Sequence) -> Tuple[Q, ...]:
    a = rs.check_weight(a)
    if rs.family == "A" and sum(a) != 0:
        raise UsageError(f"{tuple(map(str, a))} is outside the span of the roots of {rs.name}")
    return tuple(linalg.matvec(simple_forms(rs), a))


def kostant_partition(rs: RootSystem, a: Sequence, directions: Sequence[Sequence] = ()) -> int:
    """Number of ways to write ``a`` as a nonnegative integer combination of positive roots."""
    a = rs.check_weight(a)
    if rs.family == "A" and sum(a) != 0:
        return 0
    b = tuple(linalg.matvec(simple_forms(rs), a))
    return kostant_partition_simple(rs, b, [to_simple(rs, d) for d in directions])


def kostant_partition_simple(rs: RootSystem, b: Sequence[Q], directions=()) -> int:
    if any(x.denominator != 1 for x in b) or any(x < 0 for x in b):
        return 0
    if not any(b):
        return 1
    directions = tuple(map(tuple, directions))
    for i, x in enumerate(b):
        if x == 0:
            first = next((d[i] for d in directions if d[i]), 0)
            if first < 0:
                raise UsageError("perturbation direction leaves the positive root cone")
    return _partition_value(rs, tuple(int(x) for x in b), directions)


@lru_cache(maxsize=1 << 18)
def _partition_value(rs: RootSystem, b: Tuple[int, ...], directions) -> int:
    # alternating sums revisit the same arguments many times
    value = chamber_quasipoly(rs, b, directions)(b)
    if value.denominator != 1 or value < 0:
        raise InternalError(f"partition function produced {value} at {b}")
    return int(value)


def kostant_partition_quasipoly(
    rs: RootSystem,
    base: Sequence,
    formal: Sequence[MultiPoly] | None = None,
    directions: Sequence[Sequence] = (),
) -> QuasiPolynomial:
    """Quasipolynomial valid on the closure of the chamber reached from ``base``.

    ``formal`` gives the argument as affine polynomials (one per canonical
    coordinate); by default the variables a[1], ..., a[n] are used."""
    base = rs.check_weight(base)
    b = to_simple(rs, base)
    if any(x < 0 for x in b):
        raise UsageError(f"{tuple(map(str, base))} is not in the cone C(Δ+) of {rs.name}")
    q = chamber_quasipoly(rs, b, [to_simple(rs, d) for d in directions]).quasi
    if formal is None:
        names = tuple(f"a[{i + 1}]" for i in range(rs.dim))
        formal = [MultiPoly.var(names, n) for n in names]
    formal = list(formal)
    if len(formal) != rs.dim:
        raise UsageError(f"{rs.name} needs {rs.dim} formal coordinates")
    target = formal[0].variables
    images = []
    for row in simple_forms(rs):
        acc = MultiPoly(target)
        for c, p in zip(row, formal):
            if c:
                acc = acc + p.scale(c)
        images.append(acc)
    return q.substitute(images, target)


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


def dp_table(rs: RootSystem, bounds: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """k at every point of the box 0 <= b <= bounds (simple coordinates), by unbounded knapsack over roots."""
    bounds = tuple(int(x) for x in bounds)
    points = list(product(*(range(x + 1) for x in bounds)))  # lexicographic, so b - d precedes b
    table = {p: 0 for p in points}
    table[(0,) * len(bounds)] = 1
    for d in rs.positive_root_simple_coords:
        for p in points:
            q = tuple(x - y for x, y in zip(p, d))
            if min(q) >= 0:
                table[p] += table[q]
    return table


def kostant_partition_dp(rs: RootSystem, a: Sequence) -> int:
    a = as_weight(a)
    a = rs.check_weight(a)
    if rs.family == "A" and sum(a) != 0:
        return 0
    b = linalg.matvec(simple_forms(rs), a)
    if any(x.denominator != 1 or x < 0 for x in b):
        return 0
    return dp_table(rs, [int(x) for x in b])[tuple(int(x) for x in b)]

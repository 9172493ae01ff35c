"""Weight multiplicities and tensor product coefficients.

Kostant's formula and Steinberg's formula reduce both to alternating sums of
partition function values over valid Weyl group data.  Freudenthal's
recursion, the Weyl dimension formula and a Brauer-Klimyk character product
give independent oracles at small scale.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .arith import MultiPoly, QuasiPolynomial
from .errors import InternalError, UsageError
from .partition import kostant_partition_quasipoly, kostant_partition_simple, simple_forms
from .rootsys import RootSystem, Weight, as_weight, dot, in_positive_cone, in_root_lattice, is_dominant
from .weyl import valid_elements, valid_pairs, weyl_enumerate


def _require_dominant(rs: RootSystem, name: str, w) -> Weight:
    w = rs.check_weight(w)
    if not is_dominant(rs, w):
        raise UsageError(f"{name} = {tuple(map(str, w))} is not dominant for {rs.name}")
    return w


def _in_lattice(rs: RootSystem, v) -> bool:
    return in_root_lattice(rs, v)


def _partial_sum(rs: RootSystem, items, dirs) -> int:
    total = 0
    for b, s in items:
        total += s * kostant_partition_simple(rs, b, dirs)
    return total


def _signed_sum(rs: RootSystem, terms, directions=(), jobs: int = 1) -> int:
    # many Weyl data share an argument; add their signs first
    weights: Counter = Counter()
    forms = simple_forms(rs)
    for t in terms:
        b = t.simple if t.simple is not None else tuple(linalg.matvec(forms, t.argument))
        weights[b] += t.sign
    items = sorted((b, s) for b, s in weights.items() if s)
    dirs = [tuple(linalg.matvec(forms, d)) for d in directions]
    if jobs <= 1 or len(items) < 2 * jobs:
        return _partial_sum(rs, items, dirs)
    import multiprocessing
    from concurrent.futures import ProcessPoolExecutor

    chunks = [items[i::jobs] for i in range(jobs)]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
        parts = pool.map(_partial_sum, [rs] * jobs, chunks, [dirs] * jobs)
        return sum(parts)


def weight_multiplicity(rs: RootSystem, lam: Sequence, mu: Sequence, directions=(), jobs: int = 1) -> int:
    """Multiplicity of the weight mu in V(lam), by Kostant's formula."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = rs.check_weight(mu)
    diff = tuple(a - b for a, b in zip(lam, mu))
    if not _in_lattice(rs, diff) or not in_positive_cone(rs, diff):
        return 0
    value = _signed_sum(rs, valid_elements(rs, lam, mu), directions, jobs)
    if value < 0:
        raise InternalError(f"negative multiplicity {value}")
    return value


def tensor_coefficient(rs: RootSystem, lam: Sequence, mu: Sequence, nu: Sequence, directions=(), jobs: int = 1) -> int:
    """Multiplicity of V(nu) in V(lam) ⊗ V(mu), by Steinberg's formula."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = _require_dominant(rs, "mu", mu)
    nu = _require_dominant(rs, "nu", nu)
    diff = tuple(a + b - c for a, b, c in zip(lam, mu, nu))
    # every Steinberg argument is diff minus a positive combination
    if not _in_lattice(rs, diff) or not in_positive_cone(rs, diff):
        return 0
    value = _signed_sum(rs, valid_pairs(rs, lam, mu, nu), directions, jobs)
    if value < 0:
        raise InternalError(f"negative tensor coefficient {value}")
    return value


# ---------------------------------------------------------------------------
# formal versions
# ---------------------------------------------------------------------------


def formal_vector(name: str, n: int, variables: Sequence[str] | None = None) -> List[MultiPoly]:
    """The symbols name[1], ..., name[n] as polynomials (in ``variables`` if given)."""
    names = [f"{name}[{i + 1}]" for i in range(n)]
    variables = tuple(variables) if variables is not None else tuple(names)
    return [MultiPoly.var(variables, v) for v in names]


def stretched(weight: Sequence, var: str = "t") -> List[MultiPoly]:
    return [MultiPoly.linear((var,), [as_weight([c])[0]]) for c in weight]


def _coerce_formal(vectors: Sequence[Sequence[MultiPoly]]):
    names: List[str] = []
    for vec in vectors:
        for p in vec:
            for v in p.variables:
                if v not in names:
                    names.append(v)
    target = tuple(names)
    out = []
    for vec in vectors:
        row = []
        for p in vec:
            images = [MultiPoly.var(target, v) for v in p.variables]
            row.append(p.substitute(images, target) if p.variables else MultiPoly.constant(target, p.constant_term()))
        out.append(row)
    return target, out


def _apply_formal(w, vec: Sequence[MultiPoly]) -> List[MultiPoly]:
    return [vec[p].scale(s) for p, s in zip(w.perm, w.signs)]


def _check_base(rs: RootSystem, base, formal, name):
    if len(formal) != rs.dim:
        raise UsageError(f"formal vector {name} needs {rs.dim} entries")
    base = rs.check_weight(base)
    return base


def weight_multiplicity_quasipoly(
    rs: RootSystem,
    lam: Sequence,
    lamF: Sequence[MultiPoly],
    mu: Sequence,
    muF: Sequence[MultiPoly],
) -> QuasiPolynomial:
    """Quasipolynomial in the formal symbols agreeing with Kostant's sum near (lam, mu).

    The valid Weyl elements and every chamber are those of the base point."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = _check_base(rs, mu, muF, "mu")
    _check_base(rs, lam, lamF, "lambda")
    target, (lf, mf) = _coerce_formal([lamF, muF])
    rho = rs.rho
    total = QuasiPolynomial(target)
    diff = tuple(a - b for a, b in zip(lam, mu))
    if not _in_lattice(rs, diff):
        return total
    for term in valid_elements(rs, lam, mu):
        w = term.element
        wrho = w.apply(rho)
        images = [p - q + (wr - r) for p, q, wr, r in zip(_apply_formal(w, lf), mf, wrho, rho)]
        q = kostant_partition_quasipoly(rs, term.argument, images)
        total = total + q.scale(term.sign)
    return total


def tensor_quasipoly(
    rs: RootSystem,
    lam: Sequence,
    lamF: Sequence[MultiPoly],
    mu: Sequence,
    muF: Sequence[MultiPoly],
    nu: Sequence,
    nuF: Sequence[MultiPoly],
) -> QuasiPolynomial:
    """Quasipolynomial in the formal symbols agreeing with Steinberg's sum near (lam, mu, nu)."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = _require_dominant(rs, "mu", mu)
    nu = _require_dominant(rs, "nu", nu)
    for base, f, name in ((lam, lamF, "lambda"), (mu, muF, "mu"), (nu, nuF, "nu")):
        _check_base(rs, base, f, name)
    target, (lf, mf, nf) = _coerce_formal([lamF, muF, nuF])
    rho = rs.rho
    total = QuasiPolynomial(target)
    diff = tuple(a + b - c for a, b, c in zip(lam, mu, nu))
    if not _in_lattice(rs, diff):
        return total
    for term in valid_pairs(rs, lam, mu, nu):
        w, w2 = term.element
        wr, w2r = w.apply(rho), w2.apply(rho)
        images = [
            a + b - c + (x + y - 2 * r)
            for a, b, c, x, y, r in zip(_apply_formal(w, lf), _apply_formal(w2, mf), nf, wr, w2r, rho)
        ]
        q = kostant_partition_quasipoly(rs, term.argument, images)
        total = total + q.scale(term.sign)
    return total


def _eventual_scale(rs: RootSystem, *weights) -> int:
    """A factor N so large that N*A + B lies in C(Δ+) exactly when (A, B) does lexicographically.

    B is a difference of Weyl images of rho (bounded by 4 rho), A has
    simple coordinates with denominators dividing that of the inputs."""
    bound = 4 * sum(sum(row) for row in rs.positive_root_simple_coords) + 1
    den = 1
    for w in weights:
        for c in linalg.matvec(simple_forms(rs), w):
            den = max(den, c.denominator)
    return 8 * bound * den


def _stretched_sum(rs, terms, scale, linear_of, var):
    """Sum of sign * k(t*A + B) over eventually valid terms, as a quasipolynomial in t."""
    total = QuasiPolynomial((var,))
    grouped: Counter = Counter()
    for term in terms:
        grouped[(linear_of(term), tuple(a - scale * l for a, l in zip(term.argument, linear_of(term))))] += term.sign
    for (lin, const), s in grouped.items():
        if not s:
            continue
        images = [MultiPoly.linear((var,), [l], c) for l, c in zip(lin, const)]
        q = kostant_partition_quasipoly(rs, lin, images, directions=[const])
        total = total + q.scale(s)
    return total


def weight_multiplicity_stretched(rs: RootSystem, lam: Sequence, mu: Sequence, var: str = "t") -> QuasiPolynomial:
    """t -> multiplicity of t*mu in V(t*lam), valid for every t >= 0.

    Weyl elements and chambers are those that apply for all large t."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = rs.check_weight(mu)
    n = _eventual_scale(rs, lam, mu)
    big_l, big_m = [n * x for x in lam], [n * x for x in mu]
    terms = valid_elements(rs, big_l, big_m)
    return _stretched_sum(
        rs, terms, n, lambda t: tuple(a - b for a, b in zip(t.element.apply(lam), mu)), var
    )


def tensor_stretched(rs: RootSystem, lam: Sequence, mu: Sequence, nu: Sequence, var: str = "t") -> QuasiPolynomial:
    """t -> multiplicity of V(t*nu) in V(t*lam) ⊗ V(t*mu), valid for every t >= 0."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = _require_dominant(rs, "mu", mu)
    nu = _require_dominant(rs, "nu", nu)
    n = _eventual_scale(rs, lam, mu, nu)
    terms = valid_pairs(rs, [n * x for x in lam], [n * x for x in mu], [n * x for x in nu])

    def linear_of(t):
        w, w2 = t.element
        return tuple(a + b - c for a, b, c in zip(w.apply(lam), w2.apply(mu), nu))

    return _stretched_sum(rs, terms, n, linear_of, var)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def weyl_dimension(rs: RootSystem, lam: Sequence) -> int:
    lam = _require_dominant(rs, "lambda", lam)
    rho = rs.rho
    num = Q(1)
    for a in rs.positive_roots:
        num *= Q(dot([x + y for x, y in zip(lam, rho)], a)) / dot(rho, a)
    if num.denominator != 1:
        raise InternalError("non-integral Weyl dimension")
    return int(num)


def _reflect(x: Weight, a) -> Weight:
    c = Q(2 * dot(x, a)) / dot(a, a)
    return tuple(xi - c * ai for xi, ai in zip(x, a))


def dominant_conjugate(rs: RootSystem, x: Sequence) -> Tuple[Weight, int]:
    """(w x, sign w) with w x dominant, via simple reflections."""
    x = as_weight(x)
    sign = 1
    moved = True
    while moved:
        moved = False
        for a in rs.simple_roots:
            if dot(x, a) < 0:
                x = _reflect(x, a)
                sign = -sign
                moved = True
    return x, sign


def classical_conjugate(rs: RootSystem, x: Sequence) -> Tuple[Weight, int]:
    """Same as :func:`dominant_conjugate`, by sorting signed coordinates.

    The Weyl group acts by signed permutations and its sign character is the
    determinant, so the sign is the permutation parity times the flipped signs."""
    return _sorted_conjugate(rs.family, as_weight(x))


def _sorted_conjugate(family: str, x):
    # works on ints or Fractions alike
    if family == "A":
        order = sorted(range(len(x)), key=lambda i: -x[i])
        return tuple(x[i] for i in order), _parity(order)
    signs = [-1 if c < 0 else 1 for c in x]
    if family == "D" and signs.count(-1) % 2:
        zero = [i for i, c in enumerate(x) if c == 0]
        if zero:
            signs[zero[0]] = -1
    y = [s * c for s, c in zip(signs, x)]
    order = sorted(range(len(y)), key=lambda i: -y[i])
    y = [y[i] for i in order]
    det = _parity(order) * (-1) ** signs.count(-1)
    if family == "D" and signs.count(-1) % 2:
        y[-1] = -y[-1]
        det = -det
    return tuple(y), det


def _strictly_dominant(family: str, y) -> bool:
    """Regularity of a vector already in dominant (sorted) form."""
    if any(a <= b for a, b in zip(y, y[1:-1])):
        return False
    last_pair = y[-2] > (abs(y[-1]) if family == "D" else y[-1])
    if family in "BC":
        return last_pair and y[-1] > 0
    return last_pair


def _parity(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _is_regular(rs: RootSystem, x: Weight) -> bool:
    return all(dot(x, a) != 0 for a in rs.positive_roots)


def dominant_weights(rs: RootSystem, lam: Sequence) -> List[Weight]:
    """Dominant weights mu <= lam, highest first (by height of lam - mu).

    Dominant weights below lam are connected to it by subtracting positive
    roots inside the dominant chamber, so a search from lam finds them all."""
    lam = _require_dominant(rs, "lambda", lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for a in rs.positive_roots:
                v = tuple(x - y for x, y in zip(w, a))
                if v not in seen and is_dominant(rs, v):
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    forms = simple_forms(rs)

    def height(w):
        b = linalg.matvec(forms, [p - q for p, q in zip(lam, w)])
        return sum(b)

    return sorted(seen, key=lambda w: (height(w), tuple(-x for x in w)))


@lru_cache(maxsize=None)
def _freudenthal_table(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    rho = rs.rho
    lr = [x + y for x, y in zip(lam, rho)]
    top = dot(lr, lr)
    table: Dict[Weight, int] = {}
    for mu in dominant_weights(rs, lam):
        if mu == lam:
            table[mu] = 1
            continue
        acc = Q(0)
        for a in rs.positive_roots:
            k = 1
            while True:
                x = tuple(p + k * q for p, q in zip(mu, a))
                m = table.get(classical_conjugate(rs, x)[0], 0)
                if not m:
                    break
                acc += m * dot(x, a)
                k += 1
        mr = [x + y for x, y in zip(mu, rho)]
        den = top - dot(mr, mr)
        value = 2 * acc / den
        if value.denominator != 1 or value < 0:
            raise InternalError(f"Freudenthal produced {value}")
        if value:
            table[mu] = int(value)
    return table


def freudenthal_multiplicity(rs: RootSystem, lam: Sequence, mu: Sequence) -> int:
    lam = _require_dominant(rs, "lambda", lam)
    mu = rs.check_weight(mu)
    dom, _ = classical_conjugate(rs, mu)
    return _freudenthal_table(rs, lam).get(dom, 0)


def orbit(rs: RootSystem, w: Sequence) -> List[Weight]:
    w = as_weight(w)
    return sorted({g.apply(w) for g in weyl_enumerate(rs)})


def character(rs: RootSystem, lam: Sequence) -> Dict[Weight, int]:
    """All weights of V(lam) with multiplicities (Freudenthal on dominant weights, then orbits)."""
    lam = _require_dominant(rs, "lambda", lam)
    out: Dict[Weight, int] = {}
    for mu, m in _freudenthal_table(rs, lam).items():
        for x in orbit(rs, mu):
            out[x] = m
    return out


@lru_cache(maxsize=None)
def _doubled_character(rs: RootSystem, lam: Weight) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    return tuple((tuple(int(2 * c) for c in k), m) for k, m in character(rs, lam).items())


def tensor_decomposition(rs: RootSystem, lam: Sequence, mu: Sequence) -> Dict[Weight, int]:
    """V(lam) ⊗ V(mu) by the Brauer-Klimyk rule over the weights of the smaller factor."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = _require_dominant(rs, "mu", mu)
    if weyl_dimension(rs, mu) > weyl_dimension(rs, lam):
        lam, mu = mu, lam
    # doubled coordinates are integers for every classical weight
    shift = tuple(int(2 * (a + c)) for a, c in zip(lam, rs.rho))
    out: Counter = Counter()
    for k, m in _doubled_character(rs, mu):
        d, s = _sorted_conjugate(rs.family, tuple(a + b for a, b in zip(shift, k)))
        if _strictly_dominant(rs.family, d):
            out[d] += s * m
    rho = rs.rho
    result = {tuple(Q(p, 2) - q for p, q in zip(d, rho)): v for d, v in out.items() if v}
    return dict(sorted(result.items()))


def tensor_oracle(rs: RootSystem, lam: Sequence, mu: Sequence, nu: Sequence) -> int:
    nu = _require_dominant(rs, "nu", nu)
    return tensor_decomposition(rs, lam, mu).get(nu, 0)


def tensor_oracle_extraction(rs: RootSystem, lam: Sequence, mu: Sequence) -> Dict[Weight, int]:
    """Decompose ch V(lam) · ch V(mu) by repeatedly removing the highest remaining character."""
    lam = _require_dominant(rs, "lambda", lam)
    mu = _require_dominant(rs, "mu", mu)
    cl, cm = character(rs, lam), character(rs, mu)
    product: Counter = Counter()
    for x, a in cl.items():
        for y, b in cm.items():
            product[tuple(p + q for p, q in zip(x, y))] += a * b
    rho = rs.rho
    out: Dict[Weight, int] = {}
    while True:
        dom = [w for w, m in product.items() if m and is_dominant(rs, w)]
        if not dom:
            break
        top = max(dom, key=lambda w: (dot(w, rho), w))
        c = product[top]
        if c < 0:
            raise InternalError("negative leftover in character extraction")
        out[top] = c
        for w, m in character(rs, top).items():
            product[w] -= c * m
    if any(product.values()):
        raise InternalError("character extraction left a remainder")
    return dict(sorted(out.items()))


def weight_support(rs: RootSystem, lam: Sequence, method: str = "kostant") -> Dict[Weight, int]:
    """Every weight of V(lam) with its multiplicity.

    Candidates are the lattice points lam - (nonnegative root combination)
    in the orbit hull; with ``method="kostant"`` each is evaluated by
    Kostant's formula, otherwise read from Freudenthal's table."""
    lam = _require_dominant(rs, "lambda", lam)
    if method != "kostant":
        return character(rs, lam)
    out = {}
    for mu in dominant_weights(rs, lam):
        m = weight_multiplicity(rs, lam, mu)
        if m:
            for x in orbit(rs, mu):
                out[x] = m
    return out

"""Exact coefficient rings: rationals, multivariate polynomials, truncated
Laurent series and period-2 quasipolynomials.

Everything here is immutable and works over :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction as Q
from itertools import product
from math import factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import InternalError, TruncationError, UsageError

Exp = Tuple[int, ...]
Scalar = Union[int, Q]


def as_rational(x) -> Q:
    """Coerce ints, Fractions and strings such as ``"35/2"`` to a Fraction."""
    if isinstance(x, Q):
        return x
    if isinstance(x, bool):
        raise UsageError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, str):
        try:
            return Q(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational: {x!r}") from exc
    raise UsageError(f"not a rational: {x!r}")


def rational_str(x: Q) -> str:
    """Canonical text form: ``p/q``, or ``p`` when the denominator is 1."""
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational_list(text: str) -> Tuple[Q, ...]:
    """Parse ``"35/2,35/2,5/2"`` into a tuple of Fractions."""
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    if not parts:
        raise UsageError(f"empty weight: {text!r}")
    return tuple(as_rational(p) for p in parts)


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial with rational coefficients in a fixed ordered set of variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, Scalar] | None = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        n = len(self.variables)
        clean: Dict[Exp, Q] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise UsageError(f"exponent {e} does not match {n} variables")
                if c:
                    clean[tuple(e)] = c if isinstance(c, Q) else Q(c)
        self.terms: Dict[Exp, Q] = clean

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exp, Q]) -> "MultiPoly":
        # trusted constructor: caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, variables: Sequence[str], c: Scalar) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise UsageError(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def linear(cls, variables: Sequence[str], coeffs: Sequence[Scalar], const: Scalar = 0) -> "MultiPoly":
        variables = tuple(variables)
        n = len(variables)
        if len(coeffs) != n:
            raise UsageError("linear form arity mismatch")
        terms: Dict[Exp, Q] = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Q(c)
        if const:
            terms[(0,) * n] = Q(const)
        return cls._raw(variables, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Q:
        return self.terms.get((0,) * len(self.variables), Q(0))

    def coefficient(self, exp: Sequence[int]) -> Q:
        return self.terms.get(tuple(exp), Q(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in a deterministic order: by total degree, then exponent."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise UsageError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, as_rational(other))

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "MultiPoly":
        c = as_rational(c)
        if not c:
            return MultiPoly._raw(self.variables, {})
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Exp, Q] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "MultiPoly":
        return self.scale(1 / as_rational(c))

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise UsageError("negative power of a polynomial")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == MultiPoly.constant(self.variables, as_rational(other))
        except UsageError:
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Q:
        if len(point) != len(self.variables):
            raise UsageError(f"point has {len(point)} coordinates, expected {len(self.variables)}")
        pt = [as_rational(p) for p in point]
        total = Q(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def substitute(self, images: Sequence["MultiPoly"], variables: Sequence[str] | None = None) -> "MultiPoly":
        """Compose: replace the i-th variable by ``images[i]`` (all in one target ring)."""
        if len(images) != len(self.variables):
            raise UsageError("substitution arity mismatch")
        target = tuple(variables) if variables is not None else images[0].variables if images else ()
        powers: list = [dict() for _ in images]
        result = MultiPoly(target)
        for e, c in self.terms.items():
            t = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = images[i] ** k
                    t = t * cache[k]
            result = result + t
        return result

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        if len(variables) != len(self.variables):
            raise UsageError("rename arity mismatch")
        return MultiPoly._raw(tuple(variables), dict(self.terms))

    # -- truncated power series in all variables ---------------------------

    def truncated(self, bounds: Sequence[int]) -> "MultiPoly":
        """Drop every term with some exponent above the matching bound."""
        return MultiPoly._raw(
            self.variables,
            {e: c for e, c in self.terms.items() if all(k <= b for k, b in zip(e, bounds))},
        )

    def mul_trunc(self, other: "MultiPoly", bounds: Sequence[int]) -> "MultiPoly":
        """Product as power series, keeping exponents within ``bounds`` (a box)."""
        other = self._coerce(other)
        bounds = tuple(bounds)
        out: Dict[Exp, Q] = {}
        b_items = list(other.terms.items())
        for e1, c1 in self.terms.items():
            room = tuple(b - k for b, k in zip(bounds, e1))
            if min(room, default=0) < 0:
                continue
            for e2, c2 in b_items:
                ok = True
                for k, rm in zip(e2, room):
                    if k > rm:
                        ok = False
                        break
                if ok:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    def inverse_trunc(self, bounds: Sequence[int]) -> "MultiPoly":
        """Multiplicative inverse as a power series truncated to ``bounds``.

        The constant term must be a nonzero rational."""
        c0 = self.constant_term()
        if not c0:
            raise InternalError("power series with zero constant term is not invertible")
        h = (self - c0).scale(1 / c0)
        # 1/(c0 (1 + h)) = (1/c0) sum (-h)^n ; h has no constant term
        return compose_series(h, _geometric_alternating(sum(bounds)), bounds).scale(1 / c0)

    # -- rendering ---------------------------------------------------------

    def monomial_str(self, e: Exp) -> str:
        parts = []
        for v, k in zip(self.variables, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self.monomial_str(e)
            if not mono:
                s = rational_str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{rational_str(c)}*{mono}"
            out.append(s)
        text = " + ".join(out)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.variables}, {self})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [[list(e), rational_str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        return cls(data["variables"], {tuple(e): as_rational(c) for e, c in data["terms"]})


def _geometric_alternating(n: int):
    return [Q((-1) ** k) for k in range(n + 1)]


def compose_series(x: MultiPoly, coeffs: Sequence[Q], bounds: Sequence[int]) -> MultiPoly:
    """Evaluate ``sum coeffs[n] * x**n`` as a power series truncated to ``bounds``.

    ``x`` must have zero constant term, so high powers die out in the box."""
    if x.constant_term():
        raise InternalError("series composition needs a zero constant term")
    nv = x.variables
    result = MultiPoly.constant(nv, coeffs[0]) if coeffs else MultiPoly(nv)
    power = MultiPoly.constant(nv, 1)
    for c in coeffs[1:]:
        power = power.mul_trunc(x, bounds)
        if power.is_zero():
            break
        if c:
            result = result + power.scale(c)
    return result


# ---------------------------------------------------------------------------
# Univariate Taylor coefficients used by the residue engine
# ---------------------------------------------------------------------------


def exp_coeffs(n: int) -> list:
    return [Q(1, factorial(k)) for k in range(n + 1)]


def series_div_univariate(num: Sequence[Q], den: Sequence[Q], n: int) -> list:
    """Coefficients 0..n of num/den for univariate power series (den[0] != 0)."""
    out = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else Q(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out


_TODD_CACHE: Dict[int, list] = {}
_LOGISTIC_CACHE: Dict[int, list] = {}


def todd_coeffs(n: int) -> list:
    """Taylor coefficients of x / (1 - e^{-x}) up to degree n."""
    if n not in _TODD_CACHE:
        # (1 - e^{-x}) / x = sum_{k>=0} (-1)^k x^k / (k+1)!
        den = [Q((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
        _TODD_CACHE[n] = series_div_univariate([Q(1)], den, n)
    return _TODD_CACHE[n]


def logistic_coeffs(n: int) -> list:
    """Taylor coefficients of 1 / (1 + e^{-x}) up to degree n."""
    if n not in _LOGISTIC_CACHE:
        den = [Q(2)] + [Q((-1) ** k, factorial(k)) for k in range(1, n + 1)]
        _LOGISTIC_CACHE[n] = series_div_univariate([Q(1)], den, n)
    return _LOGISTIC_CACHE[n]


# ---------------------------------------------------------------------------
# Truncated Laurent series in one active variable
# ---------------------------------------------------------------------------


class LaurentSeries:
    """``sum_{k >= low} coeffs[k - low] * z^k + O(z^trunc)``.

    Coefficients are MultiPolys in the remaining variables ``rest``.
    """

    __slots__ = ("var", "rest", "low", "coeffs", "trunc")

    def __init__(self, var: str, rest: Sequence[str], low: int, coeffs: Sequence, trunc: int):
        rest = tuple(rest)
        cs = [c if isinstance(c, MultiPoly) else MultiPoly.constant(rest, as_rational(c)) for c in coeffs]
        for c in cs:
            if c.variables != rest:
                raise UsageError("coefficient ring does not match the remaining variables")
        if trunc < low:
            raise UsageError("truncation order below lowest exponent")
        cs = cs[: trunc - low]
        cs += [MultiPoly(rest)] * (trunc - low - len(cs))
        # normalize so that a nonzero series has a nonzero leading coefficient
        k = 0
        while k < len(cs) and cs[k].is_zero():
            k += 1
        self.var = var
        self.rest = rest
        self.low = low + k
        self.coeffs = tuple(cs[k:])
        self.trunc = trunc

    @classmethod
    def from_terms(cls, var: str, rest: Sequence[str], terms: Mapping[int, Scalar], trunc: int) -> "LaurentSeries":
        low = min(terms, default=trunc)
        low = min(low, trunc)
        coeffs = [terms.get(k, 0) for k in range(low, trunc)]
        return cls(var, rest, low, coeffs, trunc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> MultiPoly:
        if k >= self.trunc:
            raise TruncationError(f"coefficient of {self.var}^{k} unknown (truncated at {self.trunc})")
        if k < self.low:
            return MultiPoly(self.rest)
        return self.coeffs[k - self.low]

    def _check(self, other: "LaurentSeries"):
        if self.var != other.var or self.rest != other.rest:
            raise UsageError("Laurent series over different variables")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and (self.var, self.rest, self.trunc) == (other.var, other.rest, other.trunc)
            and (self.is_zero() and other.is_zero() or (self.low, self.coeffs) == (other.low, other.coeffs))
        )

    def __repr__(self) -> str:
        parts = [f"({c})*{self.var}^{self.low + i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts or ["0"]) + f" + O({self.var}^{self.trunc})"


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    a._check(b)
    trunc = min(a.trunc + b.low, b.trunc + a.low)
    low = a.low + b.low
    n = max(trunc - low, 0)
    zero = MultiPoly(a.rest)
    out = [zero] * n
    for i, ca in enumerate(a.coeffs):
        if ca.is_zero() or i >= n:
            continue
        for j, cb in enumerate(b.coeffs):
            if i + j >= n:
                break
            if not cb.is_zero():
                out[i + j] = out[i + j] + ca * cb
    return LaurentSeries(a.var, a.rest, low, out, max(trunc, low))


def series_invert(a: LaurentSeries) -> LaurentSeries:
    if a.is_zero():
        raise InternalError("cannot invert a zero (or fully truncated) series")
    lead = a.coeffs[0]
    if not lead.is_constant() or lead.is_zero():
        raise InternalError("leading coefficient is not an invertible scalar (wrong variable ordering?)")
    c0 = lead.constant_term()
    n = a.trunc - a.low  # number of known coefficients
    inv = [MultiPoly.constant(a.rest, 1 / c0)]
    for k in range(1, n):
        acc = MultiPoly(a.rest)
        for j in range(1, k + 1):
            acc = acc + a.coeffs[j] * inv[k - j]
        inv.append(acc.scale(-1 / c0))
    return LaurentSeries(a.var, a.rest, -a.low, inv, -a.low + n)


def residue_coeff(a: LaurentSeries) -> MultiPoly:
    """Coefficient of ``var^-1``."""
    if a.trunc < 0:
        raise TruncationError(f"residue needs truncation order >= 0, got {a.trunc}")
    return a.coefficient(-1)


def laurent_view(p: MultiPoly, shift: int, known: int) -> LaurentSeries:
    """View ``var0^shift * p`` as a Laurent series in the first variable of ``p``.

    ``p`` is a power series whose coefficients are known up to degree
    ``known`` in that variable."""
    var, rest = p.variables[0], p.variables[1:]
    by_k: Dict[int, Dict[Exp, Q]] = {}
    for e, c in p.terms.items():
        if e[0] <= known:
            by_k.setdefault(e[0], {})[e[1:]] = c
    coeffs = [MultiPoly._raw(rest, by_k.get(k, {})) for k in range(known + 1)]
    return LaurentSeries(var, rest, shift, coeffs, shift + known + 1)


def iterated_residue(u: MultiPoly, shifts: Sequence[int], known: Sequence[int]) -> Q:
    """``Res_{s_r} ... Res_{s_1}`` of ``prod s_j^{shifts[j]} * u`` (innermost first).

    ``u`` is a power series known up to degree ``known[j]`` in ``s_j``."""
    cur = u
    for sh, kn in zip(shifts, known):
        if sh >= 0:
            # no pole in this variable: the residue of a power series vanishes
            return Q(0)
        cur = residue_coeff(laurent_view(cur, sh, kn))
    return cur.constant_term()


# ---------------------------------------------------------------------------
# Quasipolynomials with period 2
# ---------------------------------------------------------------------------


def _reduce_form(form: Sequence[Scalar]) -> Tuple[Q, ...]:
    return tuple(as_rational(c) % 2 for c in form)


class QuasiPolynomial:
    """Sum over parity characters ``(-1)^{<form, x>}`` of polynomials.

    ``parts`` maps a linear form (coefficients reduced mod 2) to the polynomial
    multiplying that character; the zero form is the purely polynomial part.
    Forms must take integer values at the points where the quasipolynomial is
    evaluated.
    """

    __slots__ = ("variables", "parts")

    def __init__(self, variables: Sequence[str], parts: Mapping[Tuple, MultiPoly] | None = None):
        self.variables = tuple(variables)
        clean: Dict[Tuple[Q, ...], MultiPoly] = {}
        for form, poly in (parts or {}).items():
            key = _reduce_form(form)
            if len(key) != len(self.variables) or poly.variables != self.variables:
                raise UsageError("quasipolynomial part does not match its variables")
            acc = clean.get(key)
            acc = poly if acc is None else acc + poly
            if acc.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = acc
        self.parts = clean

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "QuasiPolynomial":
        return cls(poly.variables, {(0,) * len(poly.variables): poly})

    @property
    def zero_form(self) -> Tuple[Q, ...]:
        return (Q(0),) * len(self.variables)

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        if other.variables != self.variables:
            raise UsageError("variable mismatch")
        parts = dict(self.parts)
        for f, p in other.parts.items():
            parts[f] = parts[f] + p if f in parts else p
        return QuasiPolynomial(self.variables, parts)

    def __neg__(self) -> "QuasiPolynomial":
        return QuasiPolynomial(self.variables, {f: -p for f, p in self.parts.items()})

    def __sub__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return self + (-other)

    def scale(self, c: Scalar) -> "QuasiPolynomial":
        return QuasiPolynomial(self.variables, {f: p.scale(c) for f, p in self.parts.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, QuasiPolynomial) and self.variables == other.variables and self.parts == other.parts

    def is_polynomial(self) -> bool:
        return all(not any(f) for f in self.parts)

    def polynomial_part(self) -> MultiPoly:
        return self.parts.get(self.zero_form, MultiPoly(self.variables))

    def nonzero_forms(self):
        return sorted(f for f in self.parts if any(f))

    def total_degree(self) -> int:
        return max((p.total_degree() for p in self.parts.values()), default=-1)

    def evaluate(self, point: Sequence[Scalar]) -> Q:
        if len(point) != len(self.variables):
            raise UsageError(f"point has {len(point)} coordinates, expected {len(self.variables)}")
        pt = [as_rational(x) for x in point]
        total = Q(0)
        for form, poly in self.parts.items():
            val = sum((c * x for c, x in zip(form, pt)), Q(0))
            if val.denominator != 1:
                raise UsageError("parity form is not integral at this point")
            sign = -1 if val.numerator % 2 else 1
            total += sign * poly.evaluate(pt)
        return total

    def substitute(self, images: Sequence[MultiPoly], variables: Sequence[str]) -> "QuasiPolynomial":
        """Compose with affine images; parity forms must stay linear.

        Constant parts of a form become a global sign on the matching polynomial."""
        variables = tuple(variables)
        parts: Dict[Tuple, MultiPoly] = {}
        for form, poly in self.parts.items():
            lin = MultiPoly(variables)
            for c, img in zip(form, images):
                if c:
                    lin = lin + img.scale(c)
            if lin.total_degree() > 1:
                raise UsageError("parity form must compose with affine maps")
            const = lin.constant_term()
            if const.denominator != 1:
                raise UsageError("parity form acquires a non-integral constant")
            new_form = tuple(lin.coefficient(tuple(1 if j == i else 0 for j in range(len(variables)))) for i in range(len(variables)))
            p = poly.substitute(images, variables)
            if const.numerator % 2:
                p = -p
            key = _reduce_form(new_form)
            parts[key] = parts[key] + p if key in parts else p
        return QuasiPolynomial(variables, parts)

    def parity_pairs(self) -> Tuple[Tuple[Q, ...] | None, Dict[Exp, Tuple[Q, Q]]]:
        """Single-form view: ``(form, {exp: (base, alternating)})``.

        The value at x is ``sum (base + alternating * (-1)^{form(x)}) x^exp``.
        Raises UsageError when more than one nontrivial form is present."""
        forms = self.nonzero_forms()
        if len(forms) > 1:
            raise UsageError("quasipolynomial has several parity forms")
        form = forms[0] if forms else None
        base = self.polynomial_part()
        alt = self.parts.get(form, MultiPoly(self.variables)) if form else MultiPoly(self.variables)
        exps = set(base.terms) | set(alt.terms)
        return form, {e: (base.coefficient(e), alt.coefficient(e)) for e in exps}

    def even_odd(self) -> Dict[Exp, Tuple[Q, Q]]:
        """Per monomial, the coefficient when the parity form is even and when it is odd."""
        _, pairs = self.parity_pairs()
        return {e: (b + a, b - a) for e, (b, a) in pairs.items()}

    def form_str(self, form: Sequence[Q]) -> str:
        return str(MultiPoly.linear(self.variables, form))

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        try:
            form, pairs = self.parity_pairs()
        except UsageError:
            chunks = []
            for f in sorted(self.parts):
                p = self.parts[f]
                chunks.append(f"({p})" if not any(f) else f"({p})*(-1)^({self.form_str(f)})")
            return " + ".join(chunks)
        helper = MultiPoly(self.variables)
        order = sorted(pairs, key=lambda e: (sum(e), tuple(-x for x in e)))
        out = []
        for e in order:
            b, a = pairs[e]
            if a:
                coeff = f"({rational_str(b)} + {rational_str(a)}*(-1)^({self.form_str(form)}))"
            else:
                coeff = rational_str(b)
            mono = helper.monomial_str(e)
            out.append(coeff if not mono else f"{coeff}*{mono}")
        return " + ".join(out)

    def __repr__(self) -> str:
        return f"QuasiPolynomial({self.variables}, {self})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "parts": [
                {"form": [rational_str(c) for c in f], "polynomial": self.parts[f].to_json()["terms"]}
                for f in sorted(self.parts)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuasiPolynomial":
        variables = tuple(data["variables"])
        parts = {}
        for part in data["parts"]:
            form = tuple(as_rational(c) for c in part["form"])
            parts[form] = MultiPoly(variables, {tuple(e): as_rational(c) for e, c in part["polynomial"]})
        return cls(variables, parts)


def quasipoly_eval(q: QuasiPolynomial, point: Sequence[Scalar]) -> Q:
    return q.evaluate(point)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def lattice_box(bounds: Sequence[int]) -> Iterable[Exp]:
    return product(*(range(b + 1) for b in bounds))

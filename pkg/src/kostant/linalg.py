"""Small exact linear algebra over Q and Z (matrices are lists of rows)."""

from __future__ import annotations

from fractions import Fraction as Q
from math import gcd
from typing import List, Sequence, Tuple

from .errors import UsageError

Matrix = List[List[Q]]


def to_matrix(rows) -> Matrix:
    return [[Q(x) for x in row] for row in rows]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Q(0)) for row in a]


def rref(m) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(map(Q, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def det(m) -> Q:
    a = [list(map(Q, row)) for row in m]
    n = len(a)
    d = Q(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Q(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m) -> Matrix:
    n = len(m)
    aug = [list(map(Q, row)) + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise UsageError("matrix is singular")
    return [row[n:] for row in red]


def solve(m, b) -> List[Q]:
    """Unique solution x of m x = b (m square or with full column rank); raises if none."""
    rows = len(m)
    cols = len(m[0])
    aug = [list(map(Q, m[i])) + [Q(b[i])] for i in range(rows)]
    red, piv = rref(aug)
    if cols in piv:
        raise UsageError("vector outside the span")
    if len(piv) < cols:
        raise UsageError("solution is not unique")
    x = [Q(0)] * cols
    for row, c in zip(red, piv):
        x[c] = row[cols]
    return x


def nullspace(m) -> Matrix:
    """Basis of {x : m x = 0}."""
    cols = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Q(0)] * cols
        v[f] = Q(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def primitive(v: Sequence[Q]) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector whose first nonzero entry is positive."""
    den = 1
    for x in v:
        den = den * Q(x).denominator // gcd(den, Q(x).denominator)
    ints = [int(Q(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix: returns (U, D, V) with U a V = D.

    U and V are unimodular, D is diagonal with d_1 | d_2 | ... (nonnegative)."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [[int(x) for x in row] for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(x, i, j):
        x[i], x[j] = x[j], x[i]

    def swap_cols(x, i, j):
        for row in x:
            row[i], row[j] = row[j], row[i]

    def add_row(x, src, dst, f):
        x[dst] = [p + f * q for p, q in zip(x[dst], x[src])]

    def add_col(x, src, dst, f):
        for row in x:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not entries:
                return u, d, v
            _, pi, pj = min(entries)
            swap_rows(d, t, pi)
            swap_rows(u, t, pi)
            swap_cols(d, t, pj)
            swap_cols(v, t, pj)
            done = True
            for i in range(t + 1, m):
                q = d[i][t] // d[t][t]
                if q:
                    add_row(d, t, i, -q)
                    add_row(u, t, i, -q)
                if d[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = d[t][j] // d[t][t]
                if q:
                    add_col(d, t, j, -q)
                    add_col(v, t, j, -q)
                if d[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold any offending entry into row t and retry
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(d, bad[0], t, 1)
            add_row(u, bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v

"""Small exact linear algebra over Q used by the geometry code."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of {x : rows . x = 0}, as primitive integer vectors."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(piv):
            x[p] = -red[r][f]
        basis.append(primitive(x))
    return basis


def primitive(vec) -> list:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def solve(a, b) -> list:
    """Solve the square non-singular system a x = b exactly."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def proj_sqnorm(a, basis) -> Fraction:
    """Squared norm of the orthogonal projection of a onto span(basis)."""
    if not basis:
        return Fraction(0)
    gram = [[dot(u, v) for v in basis] for u in basis]
    rhs = [dot(u, a) for u in basis]
    coef = solve(gram, rhs)
    return Fraction(dot(coef, rhs))

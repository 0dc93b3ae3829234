"""Exact simplex over the rationals.

The tableau is kept as integers over one common denominator and pivoted
fraction-free, so every entry stays a subdeterminant of the input and no
Fraction objects appear in the inner loop. Bland's rule guarantees
termination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence


@dataclass
class FeasibilityResult:
    x: list | None  # primal solution (Fractions) when feasible
    y: list | None  # Farkas vector when infeasible: y.A >= 0 columnwise, y.b < 0


@dataclass
class OptimumResult:
    value: Fraction
    x: list
    y: list  # optimal dual prices


def _int_rows(A, b):
    """Scale each row of [A | b] to integers. Returns rows and the scale used."""
    rows, scales = [], []
    for arow, bi in zip(A, b):
        fr = [Fraction(x) for x in arow] + [Fraction(bi)]
        s = 1
        for x in fr:
            s = lcm(s, x.denominator)
        rows.append([int(x * s) for x in fr])
        scales.append(s)
    return rows, scales


class _Tableau:
    """Row 0 is the objective (reduced costs, rhs = -value); rows 1..m constraints."""

    def __init__(self, rows, basis):
        self.t = rows
        self.den = 1
        self.basis = basis  # basis[i] = column basic in constraint row i+1

    def pivot(self, r, c):
        t, den = self.t, self.den
        prow = t[r]
        p = prow[c]
        for i in range(len(t)):
            if i == r:
                continue
            row = t[i]
            f = row[c]
            if f:
                t[i] = [(a * p - f * b) // den for a, b in zip(row, prow)]
            elif p != den:
                t[i] = [(a * p) // den for a in row]
        self.den = p
        self.basis[r - 1] = c

    def run(self, allowed: int):
        """Bland's rule on columns < allowed until optimal or unbounded."""
        t = self.t
        while True:
            obj = t[0]
            c = next((j for j in range(allowed) if obj[j] < 0), None)
            if c is None:
                return True
            best = None
            for i in range(1, len(t)):
                a = t[i][c]
                if a > 0:
                    num = t[i][-1]
                    if best is None:
                        best = (i, num, a)
                    else:
                        _, bn, ba = best
                        lhs, rhs = num * ba, bn * a
                        if lhs < rhs or (lhs == rhs and self.basis[i - 1] < self.basis[best[0] - 1]):
                            best = (i, num, a)
            if best is None:
                return False
            self.pivot(best[0], c)


def feasible(A: Sequence[Sequence], b: Sequence) -> FeasibilityResult:
    """Decide {x >= 0 : A x = b}; return x or a Farkas vector y."""
    m = len(A)
    nvar = len(A[0]) if m else 0
    if m == 0:
        return FeasibilityResult([Fraction(0)] * nvar, None)
    rows, scales = _int_rows(A, b)
    signs = []
    for r in rows:
        s = -1 if r[-1] < 0 else 1
        if s < 0:
            r[:] = [-x for x in r]
        signs.append(s)
    ncol = nvar + m
    t = [[0] * (ncol + 1)]
    for i, r in enumerate(rows):
        row = r[:-1] + [0] * m + [r[-1]]
        row[nvar + i] = 1
        t.append(row)
    # objective: minimise the artificial sum
    obj = [0] * (ncol + 1)
    for row in t[1:]:
        for j in range(nvar):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    t[0] = obj
    tab = _Tableau(t, [nvar + i for i in range(m)])
    tab.run(ncol)
    den = tab.den
    t = tab.t
    if t[0][-1] != 0:
        # dual prices of the phase-1 problem give the Farkas vector
        y = []
        for i in range(m):
            price = Fraction(den - t[0][nvar + i], den)
            y.append(-price * signs[i] * scales[i])
        return FeasibilityResult(None, y)
    x = [Fraction(0)] * nvar
    for i, col in enumerate(tab.basis):
        if col < nvar:
            x[col] = Fraction(t[i + 1][-1], den)
    return FeasibilityResult(x, None)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> OptimumResult | None:
    """max c.x subject to A x <= b, x >= 0, with b >= 0. None if unbounded."""
    m = len(A)
    nvar = len(c)
    rows, scales = _int_rows(A, b)
    if any(r[-1] < 0 for r in rows):
        raise ValueError("maximize needs b >= 0")
    cs = 1
    cf = [Fraction(x) for x in c]
    for x in cf:
        cs = lcm(cs, x.denominator)
    ncol = nvar + m
    t = [[-int(x * cs) for x in cf] + [0] * (m + 1)]
    for i, r in enumerate(rows):
        row = r[:-1] + [0] * m + [r[-1]]
        row[nvar + i] = 1
        t.append(row)
    tab = _Tableau(t, [nvar + i for i in range(m)])
    if not tab.run(ncol):
        return None
    den, t = tab.den, tab.t
    x = [Fraction(0)] * nvar
    for i, col in enumerate(tab.basis):
        if col < nvar:
            x[col] = Fraction(t[i + 1][-1], den)
    value = Fraction(t[0][-1], den * cs)
    y = [Fraction(t[0][nvar + i], den * cs) * scales[i] for i in range(m)]
    return OptimumResult(value, x, y)

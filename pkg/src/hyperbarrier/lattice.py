"""Sublattices of Z^d in Hermite normal form."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import InputError, KGraph, VertexPartition, index_vector


class LatticeError(InputError):
    pass


def _xgcd(a: int, b: int):
    # returns g, x, y with a*x + b*y = g >= 0
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(rows: Sequence[Sequence[int]], d: int) -> list:
    """Row-style Hermite normal form with zero rows dropped."""
    m = [list(map(int, r)) for r in rows if any(r)]
    out = []
    col = 0
    while m and col < d:
        nz = [r for r in m if r[col] != 0]
        if not nz:
            col += 1
            continue
        piv = nz[0]
        rest = [r for r in m if r[col] == 0]
        for r in nz[1:]:
            g, x, y = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            new_piv = [x * p + y * q for p, q in zip(piv, r)]
            red = [a * q - b * p for p, q in zip(piv, r)]
            piv = new_piv
            if any(red):
                rest.append(red)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append((col, piv))
        m = rest
        col += 1
    # reduce entries above each pivot into [0, pivot)
    for i in range(len(out)):
        c, row = out[i]
        for j in range(i):
            cj, rj = out[j]
            q = rj[c] // row[c]
            if q:
                out[j] = (cj, [a - q * b for a, b in zip(rj, row)])
    return [r for _, r in out]


@dataclass(frozen=True)
class IntegerLattice:
    d: int
    basis: tuple

    def __init__(self, d: int, basis: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "basis", tuple(tuple(r) for r in hnf(list(basis), d)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list:
        return [next(i for i, x in enumerate(r) if x) for r in self.basis]

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def to_json(self) -> dict:
        return {"d": self.d, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "IntegerLattice":
        return cls(obj["d"], obj["basis"])


@dataclass(frozen=True)
class LatticeClassification:
    complete: bool | None = None
    minimal: bool | None = None
    witness: tuple | None = None


def lattice_from_generators(vectors: Iterable[Sequence[int]], d: int | None = None) -> IntegerLattice:
    vs = [tuple(int(x) for x in v) for v in vectors]
    if d is None:
        if not vs:
            raise LatticeError("dimension needed for an empty generator list")
        d = len(vs[0])
    for v in vs:
        if len(v) != d:
            raise LatticeError(f"vector {v} does not have dimension {d}")
    return IntegerLattice(d, vs)


def contains(L: IntegerLattice, v: Sequence[int]) -> bool:
    if len(v) != L.d:
        raise LatticeError(f"vector of dimension {len(v)} tested against Z^{L.d}")
    w = list(map(int, v))
    rows = iter(zip(L.pivots(), L.basis))
    nxt = next(rows, None)
    for c in range(L.d):
        if nxt is not None and nxt[0] == c:
            row = nxt[1]
            if w[c] % row[c]:
                return False
            q = w[c] // row[c]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
            nxt = next(rows, None)
        elif w[c]:
            return False
    return True


def unit(d: int, i: int, scale: int = 1) -> tuple:
    return tuple(scale if j == i else 0 for j in range(d))


def differences(d: int) -> list:
    """u_i - u_j for i != j, ordered by (i, j)."""
    return [tuple((1 if t == i else 0) - (1 if t == j else 0) for t in range(d))
            for i in range(d) for j in range(d) if i != j]


def complete_generators(d: int, k: int) -> list:
    """Generators of {x : k | sum x}: k u_1, then u_j - u_1, then all u_i - u_j."""
    gens = [unit(d, 0, k)]
    gens += [tuple((1 if t == j else 0) - (1 if t == 0 else 0) for t in range(d)) for j in range(1, d)]
    for g in differences(d):
        if g not in gens:
            gens.append(g)
    return gens


def is_complete(L: IntegerLattice, k: int) -> LatticeClassification:
    for g in complete_generators(L.d, k):
        if not contains(L, g):
            return LatticeClassification(complete=False, witness=g)
    return LatticeClassification(complete=True)


def is_minimal(L: IntegerLattice) -> LatticeClassification:
    for g in differences(L.d):
        if contains(L, g):
            return LatticeClassification(minimal=False, witness=g)
    return LatticeClassification(minimal=True)


def _coarse_map(P: VertexPartition, Pp: VertexPartition) -> list:
    if not P.refines(Pp):
        raise LatticeError("partition does not refine the coarser partition")
    return [Pp.part_of(p[0]) for p in P.parts]


def missing_wrt(L: IntegerLattice, P: VertexPartition, Pp: VertexPartition):
    """First u_i - u_j (i, j in one coarse part) not in L, or None."""
    coarse = _coarse_map(P, Pp)
    if L.d != P.d:
        raise LatticeError("lattice dimension does not match partition")
    for i in range(P.d):
        for j in range(P.d):
            if i != j and coarse[i] == coarse[j]:
                g = tuple((1 if t == i else 0) - (1 if t == j else 0) for t in range(P.d))
                if not contains(L, g):
                    return g
    return None


def is_complete_wrt(L: IntegerLattice, P: VertexPartition, Pp: VertexPartition) -> bool:
    return missing_wrt(L, P, Pp) is None


def _slice_first(L: IntegerLattice, j: int) -> IntegerLattice:
    """{x in Z^(d-1) : x with a 0 inserted at position j lies in L}."""
    perm = [j] + [t for t in range(L.d) if t != j]
    rows = [[r[t] for t in perm] for r in L.basis]
    H = hnf(rows, L.d)
    kept = [r[1:] for r in H if r[0] == 0]
    return IntegerLattice(L.d - 1, kept)


def merge_parts(L: IntegerLattice, i: int, j: int) -> IntegerLattice:
    """Lattice on the merged coordinates: lift puts the merged coordinate at i, 0 at j."""
    if i == j:
        raise LatticeError("cannot merge a part with itself")
    # place x_j = 0 then drop coordinate j; the merged coordinate keeps index i
    return _slice_first(L, j)


def reduce_nonminimal(L: IntegerLattice, P: VertexPartition):
    if L.d != P.d:
        raise LatticeError("lattice dimension does not match partition")
    if is_minimal(L).minimal:
        raise LatticeError("lattice is already minimal")
    parts = [list(p) for p in P.parts]
    while True:
        w = is_minimal(L).witness
        if w is None:
            break
        i = w.index(1)
        j = w.index(-1)
        a, b = min(i, j), max(i, j)
        L = merge_parts(L, a, b)
        parts[a] = sorted(parts[a] + parts[b])
        del parts[b]
    return L, VertexPartition(parts)


def lift(x: Sequence[int], i: int, j: int) -> tuple:
    """Inverse coordinate map of merge_parts(., i, j) with the merged mass at i."""
    x = list(x)
    return tuple(x[:j] + [0] + x[j:])


def edge_lattice(G: KGraph, P: VertexPartition) -> IntegerLattice:
    return IntegerLattice(P.d, {index_vector(e, P) for e in G.edges})


def robust_threshold(mu, n: int, k: int) -> int:
    from fractions import Fraction
    return max(1, math.ceil(Fraction(mu) * n ** k))


def robust_edge_lattice(G: KGraph, P: VertexPartition, mu, counts: Counter | None = None) -> IntegerLattice:
    if counts is None:
        counts = Counter(index_vector(e, P) for e in G.edges)
    t = robust_threshold(mu, G.n, G.k)
    return IntegerLattice(P.d, [v for v, c in sorted(counts.items()) if c >= t])


def subgroup_index(L: IntegerLattice):
    if L.rank < L.d:
        return math.inf
    return math.prod(r[p] for r, p in zip(L.basis, L.pivots()))

"""Exact convex geometry: fractional matchings, Farkas certificates, hulls."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, isqrt, lcm
from typing import Sequence

from . import lp
from ._linalg import dot, nullspace, primitive, proj_sqnorm, rank, rref
from .core import Allocation, InputError, KGraph, VertexPartition, index_vector


class NotInHull(InputError):
    """Target outside the convex hull; carries a separating functional."""

    def __init__(self, functional, offset):
        self.functional = functional
        self.offset = offset
        super().__init__("target lies outside the convex hull")


class HullTooLarge(RuntimeError):
    pass


def frac_json(x) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


# fractional matchings ------------------------------------------------------

@dataclass(frozen=True)
class FractionalMatching:
    weights: dict  # edge -> Fraction, only non-zero entries
    balanced_over: tuple | None = None

    def coverage(self, n: int) -> list:
        cov = [Fraction(0)] * n
        for e, w in self.weights.items():
            for v in e:
                cov[v] += w
        return cov

    def is_valid(self, H: KGraph) -> bool:
        if any(w < 0 for w in self.weights.values()):
            return False
        if any(e not in H.edge_set for e in self.weights):
            return False
        return all(c == 1 for c in self.coverage(H.n))

    def to_json(self) -> dict:
        out = {"weights": [[list(e), frac_json(w)] for e, w in sorted(self.weights.items())]}
        if self.balanced_over is not None:
            out["balanced_over"] = [list(i) for i in self.balanced_over]
        return out


@dataclass(frozen=True)
class FarkasCertificate:
    a: tuple

    def is_valid(self, H: KGraph) -> bool:
        if sum(self.a) >= 0:
            return False
        return all(sum(self.a[v] for v in e) >= 0 for e in H.edges)

    def to_json(self) -> dict:
        return {"a": [frac_json(x) for x in self.a]}


def _incidence(H: KGraph) -> list:
    rows = [[0] * len(H.edges) for _ in range(H.n)]
    for j, e in enumerate(H.edges):
        for v in e:
            rows[v][j] = 1
    return rows


def _uncovered_vertex(H: KGraph):
    covered = set()
    for e in H.edges:
        covered.update(e)
    return next((v for v in range(H.n) if v not in covered), None)


def _normalise(y) -> tuple:
    return tuple(Fraction(x) for x in primitive(y))


def solve_fpm(H: KGraph, use_shortcut: bool = True):
    """Return (FractionalMatching, None) or (None, FarkasCertificate)."""
    if H.n == 0:
        return FractionalMatching({}), None
    if use_shortcut:
        v = _uncovered_vertex(H)
        if v is not None:
            return None, FarkasCertificate(tuple(Fraction(-1 if u == v else 0) for u in range(H.n)))
    res = lp.feasible(_incidence(H), [1] * H.n)
    if res.x is not None:
        w = {e: x for e, x in zip(H.edges, res.x) if x}
        return FractionalMatching(w), None
    return None, FarkasCertificate(_normalise(res.y))


def fractional_perfect_matching(H: KGraph) -> FractionalMatching | None:
    return solve_fpm(H)[0]


def farkas_certificate(H: KGraph) -> FarkasCertificate | None:
    return solve_fpm(H)[1]


def f_balanced_fpm(H: KGraph, P: VertexPartition, F: Allocation) -> FractionalMatching | None:
    """FPM whose weight per index class is proportional to its multiplicity in I(F)."""
    classes = [i for i, _ in F.index_set]
    mult = dict(F.index_set)
    idx = [index_vector(e, P) for e in H.edges]
    if any(i not in mult for i in idx):
        raise InputError("graph has edges whose index is not in I(F)")
    A = _incidence(H)
    b = [1] * H.n
    for i0, i1 in zip(classes, classes[1:]):
        # sum_{i(e)=i0} w / m0 - sum_{i(e)=i1} w / m1 = 0, cleared of denominators
        m0, m1 = mult[i0], mult[i1]
        A.append([m1 if t == i0 else (-m0 if t == i1 else 0) for t in idx])
        b.append(0)
    res = lp.feasible(A, b)
    if res.x is None:
        return None
    w = {e: x for e, x in zip(H.edges, res.x) if x}
    return FractionalMatching(w, tuple(F.index_multiset()))


def class_sums(fm: FractionalMatching, P: VertexPartition) -> dict:
    out = {}
    for e, w in fm.weights.items():
        i = index_vector(e, P)
        out[i] = out.get(i, Fraction(0)) + w
    return out


def balanced_decomposition(fm: FractionalMatching, P: VertexPartition, F: Allocation) -> list:
    """Split an F-balanced FPM into weighted sets T holding one edge per index.

    Repeatedly take the lightest remaining edge, complete it with one edge of
    every other index class and subtract that weight from each.
    """
    if any(m != 1 for _, m in F.index_set):
        raise InputError("decomposition implemented for index sets without repeats")
    classes = [i for i, _ in F.index_set]
    rem = {e: w for e, w in fm.weights.items() if w}
    out = []
    while rem:
        e0 = min(rem, key=lambda e: (rem[e], e))
        w0 = rem[e0]
        i0 = index_vector(e0, P)
        T = [e0]
        for i in classes:
            if i == i0:
                continue
            cand = sorted(e for e in rem if index_vector(e, P) == i)
            if not cand:
                raise InputError("matching is not balanced over I(F)")
            T.append(cand[0])
        for e in T:
            rem[e] -= w0
            if rem[e] == 0:
                del rem[e]
            elif rem[e] < 0:
                raise InputError("matching is not balanced over I(F)")
        out.append((tuple(sorted(T)), w0))
    return out


# Caratheodory ----------------------------------------------------------------

@dataclass(frozen=True)
class ConvexCombination:
    points: tuple
    coefficients: tuple
    denominator_bound: int

    def value(self) -> tuple:
        d = len(self.points[0]) if self.points else 0
        return tuple(sum(l * Fraction(p[t]) for l, p in zip(self.coefficients, self.points)) for t in range(d))


def _q_rational(x, q) -> bool:
    return Fraction(x).denominator <= q


def caratheodory_reduce(X: Sequence[Sequence], x: Sequence, q: int | None = None,
                        k: int | None = None) -> ConvexCombination:
    pts = []
    for p in X:
        t = tuple(Fraction(c) for c in p)
        if t not in pts:
            pts.append(t)
    if not pts:
        raise InputError("empty point set")
    d = len(pts[0])
    xx = tuple(Fraction(c) for c in x)
    if q is None:
        q = max(c.denominator for c in [*xx, *(c for p in pts for c in p)])
    if any(not _q_rational(c, q) for p in pts for c in p) or any(not _q_rational(c, q) for c in xx):
        raise InputError(f"coordinates are not {q}-rational")
    if k is None:
        r2 = max(sum(c * c for c in p) for p in pts)
        k = 1
        while 4 * k * k < r2:
            k += 1
    A = [[p[t] for p in pts] for t in range(d)] + [[1] * len(pts)]
    b = list(xx) + [1]
    res = lp.feasible(A, b)
    if res.x is None:
        y = res.y
        raise NotInHull(tuple(y[:d]), y[d])
    chosen = [(p, l) for p, l in zip(pts, res.x) if l]
    r = len(chosen)
    bound = q * q * factorial(r - 1) * (4 * k) ** (r - 1)
    return ConvexCombination(tuple(p for p, _ in chosen), tuple(l for _, l in chosen), bound)


# hulls ---------------------------------------------------------------------

def _int_points(X) -> list:
    rows = []
    for p in X:
        fr = [Fraction(1)] + [Fraction(c) for c in p]
        s = 1
        for c in fr:
            s = lcm(s, c.denominator)
        rows.append(tuple(int(c * s) for c in fr))
    return sorted(set(rows))


def _prim(v) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def double_description(cons: Sequence[Sequence[int]], dim: int, max_rays: int = 200000):
    """Extreme rays and lineality of {y : c.y >= 0 for c in cons}."""
    lin = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    rays = []  # (vector, tight-set bitmask)
    for idx, a in enumerate(cons):
        bit = 1 << idx
        vals = [dot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(vals) if v), None)
        if piv is not None:
            ls = lin[piv] if vals[piv] > 0 else tuple(-x for x in lin[piv])
            s = abs(vals[piv])
            new_lin = [_prim(tuple(s * x - vals[i] * y for x, y in zip(l, ls)))
                       for i, l in enumerate(lin) if i != piv]
            new_rays = []
            for r, z in rays:
                ar = dot(a, r)
                new_rays.append((_prim(tuple(s * x - ar * y for x, y in zip(r, ls))), z | bit))
            prev = (1 << idx) - 1
            new_rays.append((ls, prev))
            lin, rays = new_lin, new_rays
            continue
        plus, zero, minus = [], [], []
        for r, z in rays:
            v = dot(a, r)
            (plus if v > 0 else zero if v == 0 else minus).append((r, z, v))
        out = [(r, z) for r, z, _ in plus] + [(r, z | bit) for r, z, _ in zero]
        need = dim - len(lin) - 2
        for rp, zp, vp in plus:
            for rm, zm, vm in minus:
                common = zp & zm
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for r, z in rays:
                    if r is rp or r is rm:
                        continue
                    if common & z == common:
                        adjacent = False
                        break
                if adjacent:
                    out.append((_prim(tuple(vp * x - vm * y for x, y in zip(rm, rp))), common | bit))
        if len(out) > max_rays:
            raise HullTooLarge(f"more than {max_rays} rays")
        rays = out
    return [r for r, _ in rays], lin


@dataclass(frozen=True)
class HRep:
    """CH(X) = {x : a.x >= b for (a, b) in inequalities, a.x = b for equalities}."""

    inequalities: tuple
    equalities: tuple


def hull_facets(X: Sequence[Sequence], max_dim: int = 12) -> HRep:
    pts = _int_points(X)
    if not pts:
        raise InputError("empty point set")
    dim = len(pts[0])
    if dim - 1 > max_dim:
        raise HullTooLarge(f"ambient dimension {dim - 1} exceeds cap {max_dim}")
    rays, lin = double_description(pts, dim)
    ineq = sorted({(tuple(r[1:]), -r[0]) for r in rays if any(r[1:])})
    eq = sorted({(tuple(l[1:]), -l[0]) for l in lin})
    return HRep(tuple(ineq), tuple(eq))


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^d given by a basis."""

    d: int
    basis: tuple

    @classmethod
    def from_normals(cls, normals, d: int) -> "Subspace":
        return cls(d, tuple(tuple(v) for v in nullspace([list(a) for a in normals], d)))

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(d, tuple(tuple(1 if i == j else 0 for i in range(d)) for j in range(d)))

    @classmethod
    def span(cls, vectors, d: int) -> "Subspace":
        red, _ = rref([list(v) for v in vectors]) if vectors else ([], [])
        return cls(d, tuple(tuple(primitive(r)) for r in red))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def normals(self) -> list:
        return nullspace([list(b) for b in self.basis], self.d) if self.basis else Subspace.full(self.d).basis

    def contains(self, v) -> bool:
        return rank(list(self.basis) + [list(v)]) == self.dim

    def proj_sqnorm(self, a) -> Fraction:
        return proj_sqnorm(a, [list(b) for b in self.basis])

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and all(self.contains(b) for b in other.basis)


def partition_subspace(P: VertexPartition) -> Subspace:
    """{x : sum of x over every part is 0}."""
    return Subspace.from_normals([[1 if P.part_of(v) == i else 0 for v in range(P.n)] for i in range(P.d)], P.n)


def minimum_face_subspace(X: Sequence[Sequence], max_dim: int = 12) -> Subspace:
    """Linear span of the smallest face of CH(X) containing 0."""
    pts = [tuple(Fraction(c) for c in p) for p in X]
    d = len(pts[0])
    if tuple([Fraction(0)] * d) not in pts:
        raise InputError("point set must contain 0")
    H = hull_facets(pts, max_dim)
    normals = [a for a, b in H.equalities] + [a for a, b in H.inequalities if b == 0]
    return Subspace.from_normals(normals, d)


def minimum_face_points(X: Sequence[Sequence]) -> list:
    """Points of X on the smallest face through 0: x with -x in the cone of X."""
    pts = [tuple(Fraction(c) for c in p) for p in X]
    d = len(pts[0])
    out = []
    for p in pts:
        A = [[q[t] for q in pts] for t in range(d)]
        if lp.feasible(A, [-c for c in p]).x is not None:
            out.append(p)
    return out


@dataclass(frozen=True)
class BallResult:
    inside: bool
    regime: str  # "exact" or "probabilistic"
    critical: tuple | None = None  # (a, b) of the binding facet
    critical_sqradius: Fraction | None = None
    separating: tuple | None = None


def ball_in_hull(X: Sequence[Sequence], S: Subspace, delta, max_dim: int = 12,
                 probes: int = 64, seed: int = 0) -> BallResult:
    delta = Fraction(delta)
    d2 = delta * delta
    pts = [tuple(Fraction(c) for c in p) for p in X]
    d = len(pts[0])
    if d > max_dim:
        return _probe_ball(pts, S, delta, probes, seed)
    H = hull_facets(pts, max_dim)
    for a, b in H.equalities:
        if b != 0 or S.proj_sqnorm(a) != 0:
            return BallResult(False, "exact", critical=(a, b), critical_sqradius=Fraction(0))
    best = None
    for a, b in H.inequalities:
        p2 = S.proj_sqnorm(a)
        if b > 0 or (b == 0 and p2 != 0):
            return BallResult(False, "exact", critical=(a, b), critical_sqradius=Fraction(0))
        if p2 == 0:
            continue
        r2 = Fraction(b * b) / p2
        if best is None or r2 < best[1]:
            best = ((a, b), r2)
    if best is None:
        return BallResult(True, "exact")
    return BallResult(d2 <= best[1], "exact", critical=best[0], critical_sqradius=best[1])


def _probe_ball(pts, S: Subspace, delta, probes, seed) -> BallResult:
    rng = random.Random(seed)
    d = len(pts[0])
    dirs = [tuple(s * c for c in b) for b in S.basis for s in (1, -1)]
    while len(dirs) < probes and S.basis:
        co = [rng.randint(-3, 3) for _ in S.basis]
        v = tuple(sum(c * b[t] for c, b in zip(co, S.basis)) for t in range(d))
        if any(v):
            dirs.append(v)
    A = [[p[t] for p in pts] for t in range(d)] + [[1] * len(pts)]
    for v in dirs:
        n2 = sum(Fraction(c) ** 2 for c in v)
        # rational t with t^2 |v|^2 <= delta^2
        scale = 10 ** 6
        t = Fraction(isqrt(int(delta * delta * scale * scale / n2)), scale)
        target = [t * c for c in v]
        res = lp.feasible(A, target + [1])
        if res.x is None:
            return BallResult(False, "exact", separating=tuple(res.y))
    return BallResult(True, "probabilistic")

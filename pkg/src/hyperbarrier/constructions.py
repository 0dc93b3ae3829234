"""Deterministic generators for barrier constructions and seeded random instances."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import InputError, KComplex, KGraph, VertexPartition, index_vector
from .instance import Instance
from .lattice import IntegerLattice, contains


class ConstructionError(InputError):
    """Parameters describe an invalid construction."""


def _prov(family: str, seed=None, **params) -> dict:
    clean = {}
    for key, val in params.items():
        if isinstance(val, IntegerLattice):
            val = val.to_json()
        elif isinstance(val, Fraction):
            val = [val.numerator, val.denominator]
        elif isinstance(val, tuple):
            val = list(val)
        clean[key] = val
    return {"family": family, "parameters": clean, "seed": seed}


def space_barrier_complex(n: int, k: int, j: int, S) -> KComplex:
    """All i-sets with at most j vertices in S, for i <= k."""
    S = set(S)
    return KComplex(n, k, [[e for e in itertools.combinations(range(n), i) if len(S.intersection(e)) <= j]
                           for i in range(k + 1)])


def gen_space_barrier(n: int, k: int, j: int, s: int) -> Instance:
    if not 1 <= j <= k - 1:
        raise ConstructionError("need 1 <= j <= k-1")
    if not 0 <= s <= n:
        raise ConstructionError("need 0 <= s <= n")
    S = tuple(range(s))
    J = space_barrier_complex(n, k, j, S)
    return Instance.from_complex(J, marked=S, provenance=_prov("space", n=n, k=k, j=j, s=s))


def gen_partite_space_barrier(part_size: int, r: int, k: int, j: int, s: int) -> Instance:
    if r < k:
        raise ConstructionError("need r >= k")
    if not 1 <= j <= k - 1:
        raise ConstructionError("need 1 <= j <= k-1")
    if not 0 <= s <= part_size or part_size < 1:
        raise ConstructionError("need 0 <= s <= part size")
    P = VertexPartition.from_sizes([part_size] * r)
    S = tuple(sorted(v for p in P.parts for v in p[:s]))
    Sset = set(S)
    lv = [[()]]
    for i in range(1, k + 1):
        lv.append([tuple(sorted(t)) for parts in itertools.combinations(P.parts, i)
                   for t in itertools.product(*parts) if len(Sset.intersection(t)) <= j])
    J = KComplex(P.n, k, lv)
    return Instance.from_complex(J, partition=P, marked=S,
                                 provenance=_prov("partite_space", part_size=part_size, r=r, k=k, j=j, s=s))


def index_filter_graph(part_sizes, k: int, L: IntegerLattice) -> tuple:
    """k-graph of all k-sets whose index vector lies in L, with the partition."""
    P = VertexPartition.from_sizes(part_sizes)
    if L.d != P.d:
        raise ConstructionError(f"lattice dimension {L.d} != number of parts {P.d}")
    edges = [e for e in itertools.combinations(range(P.n), k) if contains(L, index_vector(e, P))]
    return KGraph(P.n, k, edges), P


def gen_divisibility_barrier(part_sizes, k: int, L: IntegerLattice) -> Instance:
    part_sizes = list(part_sizes)
    if contains(L, part_sizes):
        raise ConstructionError("i(V) lies in L, so there is no barrier")
    G, P = index_filter_graph(part_sizes, k, L)
    return Instance.from_graph(G, partition=P,
                               provenance=_prov("divisibility", part_sizes=part_sizes, k=k, L=L))


def pikhurko_sizes(n: int) -> list:
    q = n // 4
    if q % 2:
        return [q, q, q, q]
    return [q - 1, q + 1, q, q]


def gen_pikhurko(n: int) -> Instance:
    if n <= 0 or n % 4:
        raise ConstructionError("n must be a positive multiple of 4")
    P = VertexPartition.from_sizes(pikhurko_sizes(n))
    edges = []
    for e in itertools.combinations(range(n), 3):
        a, b, c, d = index_vector(e, P)
        if a == 3 or (a == 1 and max(b, c, d) == 2) or (b == c == d == 1):
            continue
        edges.append(e)
    G = KGraph(n, 3, edges)
    return Instance.from_graph(G, partition=P, clique_level=4, provenance=_prov("pikhurko", n=n))


def gen_multipartite_hs(k: int, n: int, delta_star: int, seed: int = 0, p=Fraction(1, 2)) -> Instance:
    """Random k-partite graph with parts of size n, each vertex having >= delta_star neighbours in every other part."""
    if k < 2 or n < 1:
        raise ConstructionError("need k >= 2 and n >= 1")
    if not 0 <= delta_star <= n:
        raise ConstructionError("need 0 <= delta_star <= n")
    rng = random.Random(seed)
    P = VertexPartition.from_sizes([n] * k)
    lab = P.labels
    edges = {e for e in itertools.combinations(range(P.n), 2) if lab[e[0]] != lab[e[1]] and rng.random() < p}
    for v in range(P.n):
        for part in P.parts:
            if lab[part[0]] == lab[v]:
                continue
            have = sum(1 for w in part if tuple(sorted((v, w))) in edges)
            for w in part:
                if have >= delta_star:
                    break
                e = tuple(sorted((v, w)))
                if e not in edges:
                    edges.add(e)
                    have += 1
    G = KGraph(P.n, 2, edges)
    return Instance.from_graph(G, partition=P, clique_level=k,
                               provenance=_prov("multipartite_hs", seed, k=k, n=n, delta_star=delta_star,
                                                p=Fraction(p)))


def gen_random_kgraph(n: int, k: int, p, seed: int = 0) -> KGraph:
    rng = random.Random(seed)
    p = float(p)
    return KGraph(n, k, [e for e in itertools.combinations(range(n), k) if rng.random() < p])


def gen_random_min_codegree(n: int, k: int, t: int, seed: int = 0, p=Fraction(1, 2)) -> Instance:
    """Seeded random k-graph, then lexicographically least additions until every (k-1)-set has codegree >= t."""
    if t > n - k + 1:
        raise ConstructionError("codegree target exceeds n-k+1")
    G = gen_random_kgraph(n, k, p, seed)
    edges = set(G.edges)
    if t > 0:
        for sub in itertools.combinations(range(n), k - 1):
            have = sum(1 for w in range(n) if w not in sub and tuple(sorted(sub + (w,))) in edges)
            for w in range(n):
                if have >= t:
                    break
                if w in sub:
                    continue
                e = tuple(sorted(sub + (w,)))
                if e not in edges:
                    edges.add(e)
                    have += 1
    return Instance.from_graph(KGraph(n, k, edges),
                               provenance=_prov("random_min_codegree", seed, n=n, k=k, t=t, p=Fraction(p)))


def gen_random_min_degree_complex(n: int, k: int, degrees, seed: int = 0, p=Fraction(1, 2)) -> KComplex:
    """Random k-complex with delta_i >= degrees[i-1] for 1 <= i <= k-1 and all vertices present.

    Level i is drawn from the i-sets whose (i-1)-subsets are all present, then each (i-1)-edge
    below its target gets the lexicographically least missing extensions.
    """
    if len(degrees) != k - 1:
        raise InputError("need one degree target per level 1..k-1")
    rng = random.Random(seed)
    p = float(p)
    lv = [{()}, {(v,) for v in range(n)}]
    for i in range(2, k + 1):
        below = lv[i - 1]
        cand = [c for c in itertools.combinations(range(n), i)
                if all(s in below for s in itertools.combinations(c, i - 1))]
        cur = {c for c in cand if rng.random() < p}
        target = degrees[i - 2]
        cand_set = set(cand)
        for f in sorted(below):
            have = sum(1 for w in range(n) if w not in f and tuple(sorted(f + (w,))) in cur)
            for w in range(n):
                if have >= target:
                    break
                e = tuple(sorted(f + (w,)))
                if w in f or e in cur or e not in cand_set:
                    continue
                cur.add(e)
                have += 1
            if have < target:
                raise InputError(f"cannot reach degree {target} at level {i - 1}")
        lv.append(cur)
    return KComplex(n, k, [sorted(l) for l in lv])


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def build(self) -> Instance:
        p = dict(self.params)
        f = self.family
        try:
            if f == "space":
                return gen_space_barrier(p["n"], p["k"], p["j"], p["s"])
            if f == "partite_space":
                return gen_partite_space_barrier(p["part_size"], p["r"], p["k"], p["j"], p["s"])
            if f == "divisibility":
                L = p["L"] if isinstance(p["L"], IntegerLattice) else IntegerLattice.from_json(p["L"])
                return gen_divisibility_barrier(p["part_sizes"], p["k"], L)
            if f == "pikhurko":
                return gen_pikhurko(p["n"])
            if f == "multipartite_hs":
                return gen_multipartite_hs(p["k"], p["n"], p["delta_star"], self.seed or 0)
            if f == "random_min_codegree":
                return gen_random_min_codegree(p["n"], p["k"], p["t"], self.seed or 0)
        except KeyError as exc:
            raise ConstructionError(f"missing parameter {exc}") from None
        raise ConstructionError(f"unknown family {f!r}")


FAMILIES = ("space", "partite_space", "divisibility", "pikhurko", "multipartite_hs", "random_min_codegree")

"""Exact matching solvers and barrier detectors."""
from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import kernels, lp
from .core import (VACUOUS, InputError, KComplex, KGraph, VertexPartition, clique_complex,
                   degree_sequence)
from .lattice import IntegerLattice, is_complete, missing_wrt, robust_edge_lattice, robust_threshold


@dataclass(frozen=True)
class Matching:
    edges: tuple

    @property
    def covered(self) -> int:
        return sum(len(e) for e in self.edges)

    def __len__(self):
        return len(self.edges)

    def is_valid(self, H: KGraph) -> bool:
        seen = set()
        for e in self.edges:
            if e not in H.edge_set or seen & set(e):
                return False
            seen.update(e)
        return True

    def to_json(self) -> list:
        return [list(e) for e in self.edges]


def _top(H) -> KGraph:
    return H.top() if isinstance(H, KComplex) else H


def perfect_matching(H) -> Matching | None:
    H = _top(H)
    if H.k == 0 or H.n % H.k:
        raise InputError(f"k={H.k} does not divide n={H.n}")
    sol = kernels.exact_cover(H.n, list(H.edges))
    if sol is None:
        return None
    return Matching(tuple(sorted(H.edges[i] for i in sol)))


def fractional_matching_number(H: KGraph) -> Fraction:
    if not H.edges:
        return Fraction(0)
    A = [[1 if v in e else 0 for e in H.edges] for v in range(H.n)]
    return lp.maximize([1] * len(H.edges), A, [1] * H.n).value


def _greedy(H: KGraph) -> list:
    used, out = set(), []
    for i, e in enumerate(H.edges):
        if not used & set(e):
            out.append(i)
            used.update(e)
    return out


def max_matching(H) -> Matching:
    H = _top(H)
    if not H.edges:
        return Matching(())
    upper = min(H.n // H.k, math.floor(fractional_matching_number(H)))
    sol = kernels.max_matching(H.n, list(H.edges), upper, _greedy(H))
    return Matching(tuple(sorted(H.edges[i] for i in sol)))


def perfect_clique_packing(G: KGraph, h: int) -> Matching | None:
    if h < G.k:
        raise InputError("clique size below edge size")
    if G.n % h:
        raise InputError(f"h={h} does not divide n={G.n}")
    J = clique_complex(G, h)
    return perfect_matching(J.top())


# space barriers --------------------------------------------------------------

@dataclass(frozen=True)
class SpaceCertificate:
    j: int
    S: tuple
    violation_count: int
    threshold: Fraction
    regime: str

    def to_json(self) -> dict:
        return {"j": self.j, "S": list(self.S), "violation_count": self.violation_count,
                "threshold": [self.threshold.numerator, self.threshold.denominator],
                "regime": self.regime}


def heavy_count(H: KGraph, S, j: int) -> int:
    S = set(S)
    return sum(1 for e in H.edges if len(S.intersection(e)) > j)


def _local_search(H: KGraph, size: int, j: int, rng: random.Random, restarts: int):
    n = H.n
    inc = [[] for _ in range(n)]
    for i, e in enumerate(H.edges):
        for v in e:
            inc[v].append(i)
    best = None
    for _ in range(restarts):
        S = set(rng.sample(range(n), size))
        cnt = [len(S.intersection(e)) for e in H.edges]
        cur = sum(1 for c in cnt if c > j)
        while True:
            move = None
            for u in sorted(S):
                for w in range(n):
                    if w in S:
                        continue
                    delta = 0
                    for i in inc[u]:
                        c = cnt[i] - (1 if w not in H.edges[i] else 0)
                        delta += (c > j) - (cnt[i] > j)
                    for i in inc[w]:
                        if u in H.edges[i]:
                            continue
                        delta += (cnt[i] + 1 > j) - (cnt[i] > j)
                    if delta < 0 and (move is None or delta < move[0]):
                        move = (delta, u, w)
            if move is None:
                break
            _, u, w = move
            S.remove(u)
            S.add(w)
            for i in inc[u]:
                cnt[i] -= 1
            for i in inc[w]:
                cnt[i] += 1
            cur += move[0]
        cand = (cur, tuple(sorted(S)))
        if best is None or cand < best:
            best = cand
    return best


def detect_space_barrier(J, beta, seed: int = 0, exhaustive_limit: int = 14,
                         restarts: int = 8) -> SpaceCertificate | None:
    H = _top(J)
    n, k = H.n, H.k
    threshold = Fraction(beta) * n ** k
    regime = "exhaustive" if n <= exhaustive_limit else "local-search"
    rng = random.Random(seed)
    for j in range(1, k):
        size = j * n // k
        if regime == "exhaustive":
            count, S = kernels.min_heavy_subset(n, list(H.edges), size, j)
        else:
            count, S = _local_search(H, size, j, rng, restarts)
        if count <= threshold:
            return SpaceCertificate(j, tuple(S), count, threshold, regime)
    return None


# divisibility barriers -------------------------------------------------------

@dataclass(frozen=True)
class DivisibilityCertificate:
    partition: VertexPartition
    lattice: IntegerLattice
    witness: tuple
    regime: str
    mu: Fraction
    min_part: int

    def to_json(self) -> dict:
        return {"partition": [list(p) for p in self.partition.parts], "lattice": self.lattice.to_json(),
                "witness": list(self.witness), "regime": self.regime,
                "mu": [self.mu.numerator, self.mu.denominator], "min_part": self.min_part}


def set_partitions(vertices, blocks: int, min_size: int = 1):
    """Partitions of the given vertices into exactly `blocks` blocks, as label lists (RGS order)."""
    vertices = list(vertices)
    m = len(vertices)
    labels = [0] * m
    sizes = [0] * blocks

    def rec(i, used):
        if i == m:
            if used == blocks and min(sizes) >= min_size:
                yield list(labels)
            return
        rest = m - i
        deficit = sum(max(0, min_size - sizes[b]) for b in range(used)) + (blocks - used) * min_size
        if deficit > rest:
            return
        for b in range(min(used + 1, blocks)):
            labels[i] = b
            sizes[b] += 1
            yield from rec(i + 1, max(used, b + 1))
            sizes[b] -= 1

    if m == 0:
        if blocks == 0:
            yield []
        return
    yield from rec(0, 0)


def _decode(code: int, base: int, d: int) -> tuple:
    out = []
    for _ in range(d):
        code, r = divmod(code, base)
        out.append(r)
    return tuple(out)


def index_counts(H: KGraph, labels, d: int) -> Counter:
    base = H.k + 1
    codes = Counter(kernels.index_codes(list(H.edges), list(labels), base))
    return Counter({_decode(c, base, d): m for c, m in codes.items()})


def count_by_index(G: KGraph, P: VertexPartition) -> dict:
    return dict(sorted(index_counts(G, P.labels, P.d).items()))


def _refinements(Pp: VertexPartition, total: int, min_size: int):
    """Label lists for partitions refining Pp with `total` blocks."""
    parts = Pp.parts
    r = len(parts)

    def splits(i, remaining):
        if i == r:
            if remaining == 0:
                yield []
            return
        max_b = min(len(parts[i]), remaining - (r - i - 1))
        for b in range(1, max_b + 1):
            for rest in splits(i + 1, remaining - b):
                yield [b] + rest

    for counts in splits(0, total):
        per_part = [list(set_partitions(p, b, min_size)) for p, b in zip(parts, counts)]
        for combo in itertools.product(*per_part):
            labels = [0] * Pp.n
            offset = 0
            for p, labs, b in zip(parts, combo, counts):
                for v, l in zip(p, labs):
                    labels[v] = offset + l
                offset += b
            yield labels


def _witness_for(vectors, d: int, k: int, P: VertexPartition | None, Pp: VertexPartition | None):
    L = IntegerLattice(d, vectors)
    if Pp is None:
        w = is_complete(L, k).witness
    else:
        w = missing_wrt(L, P, Pp)
    return L, w


def detect_divisibility_barrier(G, mu, min_part: int = 1, Pprime: VertexPartition | None = None,
                                seed: int = 0, exhaustive_limit: int = 12,
                                restarts: int = 8) -> DivisibilityCertificate | None:
    G = _top(G)
    if min_part < 1:
        raise InputError("min_part must be at least 1")
    n, k = G.n, G.k
    mu = Fraction(mu)
    t = robust_threshold(mu, n, k)
    regime = "exhaustive" if n <= exhaustive_limit else "local-search"
    if regime == "local-search":
        return _divisibility_local(G, mu, min_part, Pprime, seed, restarts)
    cache = {}
    if Pprime is None:
        candidates = ((d, labels) for d in range(1, k + 1) for labels in set_partitions(range(n), d, min_part))
    else:
        r = Pprime.d
        candidates = ((d, labels) for d in range(r + 1, k * r + 1) for labels in _refinements(Pprime, d, min_part))
    for d, labels in candidates:
        counts = index_counts(G, labels, d)
        robust = tuple(sorted(v for v, c in counts.items() if c >= t))
        P = VertexPartition.from_labels(labels)
        key = (d, robust) if Pprime is None else (d, robust, tuple(Pprime.part_of(p[0]) for p in P.parts))
        if key not in cache:
            cache[key] = _witness_for(robust, d, k, P, Pprime)
        L, w = cache[key]
        if w is not None:
            return DivisibilityCertificate(P, L, w, regime, mu, min_part)
    return None


def _divisibility_local(G, mu, min_part, Pprime, seed, restarts):
    """Single-vertex moves minimising the edges outside a maximal incomplete sublattice."""
    if Pprime is not None:
        raise InputError("partite divisibility search is exhaustive only (n <= limit)")
    n, k = G.n, G.k
    t = robust_threshold(mu, n, k)
    rng = random.Random(seed)

    def score(labels, d):
        counts = index_counts(G, labels, d)
        gens, out = [], 0
        for v, c in sorted(counts.items(), key=lambda x: (-x[1], x[0])):
            if is_complete(IntegerLattice(d, gens + [v]), k).complete:
                out += c if c >= t else 0
            else:
                gens.append(v)
        return out

    for d in range(2, k + 1):
        for _ in range(restarts):
            labels = [i % d for i in range(n)]
            rng.shuffle(labels)
            cur = score(labels, d)
            improved = True
            while improved and cur > 0:
                improved = False
                for v in range(n):
                    for b in range(d):
                        if b == labels[v]:
                            continue
                        old = labels[v]
                        labels[v] = b
                        sizes = Counter(labels)
                        if len(sizes) == d and min(sizes.values()) >= min_part:
                            s = score(labels, d)
                            if s < cur:
                                cur, improved = s, True
                                continue
                        labels[v] = old
            if cur == 0:
                P = VertexPartition.from_labels(_canonical(labels))
                L = robust_edge_lattice(G, P, mu)
                w = is_complete(L, k).witness
                if w is not None:
                    return DivisibilityCertificate(P, L, w, "local-search", mu, min_part)
    return None


def _canonical(labels) -> list:
    seen = {}
    return [seen.setdefault(l, len(seen)) for l in labels]


# the trichotomy ------------------------------------------------------------------

@dataclass(frozen=True)
class BarrierReport:
    outcome: str
    parameters: dict
    matching: Matching | None = None
    space: SpaceCertificate | None = None
    divisibility: DivisibilityCertificate | None = None
    max_matching_size: int | None = None

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "parameters": self.parameters}
        if self.matching is not None:
            out["matching"] = self.matching.to_json()
        if self.space is not None:
            out["space_barrier"] = self.space.to_json()
        if self.divisibility is not None:
            out["divisibility_barrier"] = self.divisibility.to_json()
        if self.max_matching_size is not None:
            out["max_matching_size"] = self.max_matching_size
        return out


def default_min_part(J: KComplex, mu) -> int:
    dk = degree_sequence(J)[J.k - 1]
    if dk is VACUOUS:
        return 1
    return max(1, math.ceil(dk - Fraction(mu) * J.n))


def analyze(J: KComplex, beta=Fraction(1, 100), mu=Fraction(1, 1000), min_part: int | None = None,
            seed: int = 0, deficiency_limit: int = 30) -> BarrierReport:
    H = J.top()
    if H.n % H.k:
        raise InputError(f"k={H.k} does not divide n={H.n}")
    beta, mu = Fraction(beta), Fraction(mu)
    if min_part is None:
        min_part = default_min_part(J, mu)
    params = {"beta": [beta.numerator, beta.denominator], "mu": [mu.numerator, mu.denominator],
              "min_part": min_part, "seed": seed}
    M = perfect_matching(H)
    if M is not None:
        return BarrierReport("matching", params, matching=M)
    space = detect_space_barrier(J, beta, seed=seed)
    div = detect_divisibility_barrier(H, mu, min_part, seed=seed)
    mm = len(max_matching(H)) if H.n <= deficiency_limit else None
    if space and div:
        outcome = "space_and_divisibility_barrier"
    elif space:
        outcome = "space_barrier"
    elif div:
        outcome = "divisibility_barrier"
    else:
        outcome = "inconclusive"
    return BarrierReport(outcome, params, space=space, divisibility=div, max_matching_size=mm)


# graphs ----------------------------------------------------------------------

def triangle_count(G: KGraph) -> int:
    adj = [set() for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    return sum(1 for u, v in G.edges for w in adj[u] & adj[v] if w > v)


def goodman_check(G: KGraph):
    if G.k != 2:
        raise InputError("goodman_check needs a 2-graph")
    pairs = math.comb(G.n, 2)
    triples = math.comb(G.n, 3)
    d = Fraction(len(G.edges), pairs) if pairs else Fraction(0)
    tri = Fraction(triangle_count(G), triples) if triples else Fraction(0)
    return d, tri, tri >= d * (2 * d - 1)

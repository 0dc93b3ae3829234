"""Hypergraphs, partitions, index vectors, degree sequences and allocations."""
from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Edge = tuple  # sorted tuple of distinct ints


class InputError(ValueError):
    """Malformed or out-of-contract input."""


@functools.total_ordering
class _Vacuous:
    """Minimum over an empty level. Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "VACUOUS"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("vacuous")

    def __reduce__(self):
        return (_Vacuous, ())


VACUOUS = _Vacuous()


def _edge(e, n=None) -> Edge:
    t = tuple(sorted(int(x) for x in e))
    if len(set(t)) != len(t):
        raise InputError(f"repeated vertex in edge {list(e)}")
    if n is not None and t and (t[0] < 0 or t[-1] >= n):
        raise InputError(f"edge {list(t)} has a vertex outside [0, {n})")
    return t


@dataclass(frozen=True)
class KGraph:
    """A k-uniform hypergraph on vertices 0..n-1."""

    n: int
    k: int
    edges: tuple

    def __init__(self, n: int, k: int, edges: Iterable = ()):
        if n < 0 or k < 0:
            raise InputError("n and k must be non-negative")
        es = sorted({_edge(e, n) for e in edges})
        for e in es:
            if len(e) != k:
                raise InputError(f"edge {list(e)} does not have size {k}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "edges", tuple(es))

    @functools.cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> list:
        return [e for e in self.edges if v in e]

    def min_codegree(self):
        """Minimum number of edges through a (k-1)-set."""
        if self.k == 0:
            return VACUOUS
        cnt = Counter()
        for e in self.edges:
            for sub in itertools.combinations(e, self.k - 1):
                cnt[sub] += 1
        if self.n < self.k - 1:
            return VACUOUS
        return min((cnt[s] for s in itertools.combinations(range(self.n), self.k - 1)), default=VACUOUS)


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition of 0..n-1 into non-empty parts."""

    parts: tuple

    def __init__(self, parts: Iterable[Iterable[int]], n: int | None = None):
        ps = tuple(tuple(sorted(int(v) for v in p)) for p in parts)
        seen = set()
        for p in ps:
            if not p:
                raise InputError("empty part")
            for v in p:
                if v in seen:
                    raise InputError(f"vertex {v} in two parts")
                seen.add(v)
        total = len(seen)
        if seen != set(range(total)):
            raise InputError("parts do not cover 0..n-1")
        if n is not None and total != n:
            raise InputError(f"partition covers {total} vertices, expected {n}")
        object.__setattr__(self, "parts", ps)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "VertexPartition":
        out, start = [], 0
        for s in sizes:
            out.append(range(start, start + s))
            start += s
        return cls(out)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        d = max(labels) + 1 if len(labels) else 0
        parts = [[] for _ in range(d)]
        for v, lab in enumerate(labels):
            parts[lab].append(v)
        return cls(parts)

    @property
    def d(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    @property
    def sizes(self) -> tuple:
        return tuple(len(p) for p in self.parts)

    @functools.cached_property
    def labels(self) -> tuple:
        lab = [0] * self.n
        for i, p in enumerate(self.parts):
            for v in p:
                lab[v] = i
        return tuple(lab)

    def part_of(self, v: int) -> int:
        return self.labels[v]

    def refines(self, coarser: "VertexPartition") -> bool:
        if self.n != coarser.n:
            return False
        return all(len({coarser.labels[v] for v in p}) == 1 for p in self.parts)


def index_vector(S: Iterable[int], P: VertexPartition) -> tuple:
    vec = [0] * P.d
    lab = P.labels
    for v in S:
        vec[lab[v]] += 1
    return tuple(vec)


@dataclass(frozen=True)
class DegreeSequence:
    values: tuple

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, r):
        return self.values[r]

    def __len__(self):
        return len(self.values)

    def dominates(self, bound: Sequence) -> bool:
        """Pointwise >=; vacuous entries satisfy any bound."""
        return all(a >= b for a, b in zip(self.values, bound))

    def to_json(self) -> list:
        return [v if v is not VACUOUS else "vacuous" for v in self.values]


def _min(values):
    m = VACUOUS
    for x in values:
        if m is VACUOUS or x < m:
            m = x
    return m


@dataclass(frozen=True)
class KComplex:
    """Leveled edge sets J_0..J_k over 0..n-1, with the empty edge at level 0."""

    n: int
    k: int
    levels: tuple

    def __init__(self, n: int, k: int, levels: Sequence[Iterable]):
        if len(levels) != k + 1:
            raise InputError(f"expected {k + 1} levels, got {len(levels)}")
        lv = []
        for r, edges in enumerate(levels):
            es = sorted({_edge(e, n) for e in edges})
            for e in es:
                if len(e) != r:
                    raise InputError(f"edge {list(e)} listed at level {r}")
            lv.append(tuple(es))
        if lv[0] != ((),):
            raise InputError("level 0 must hold exactly the empty edge")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "levels", tuple(lv))

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable) -> "KComplex":
        """k-system with the given edges of any size <= k (empty edge added)."""
        lv = [[] for _ in range(k + 1)]
        lv[0].append(())
        for e in edges:
            t = _edge(e, n)
            if len(t) > k:
                raise InputError(f"edge {list(t)} larger than k={k}")
            lv[len(t)].append(t)
        return cls(n, k, lv)

    @functools.cached_property
    def level_sets(self) -> tuple:
        return tuple(frozenset(l) for l in self.levels)

    def __contains__(self, e) -> bool:
        t = tuple(sorted(e))
        return len(t) <= self.k and t in self.level_sets[len(t)]

    @functools.cached_property
    def is_complex(self) -> bool:
        for r in range(1, self.k + 1):
            lower = self.level_sets[r - 1]
            for e in self.levels[r]:
                for sub in itertools.combinations(e, r - 1):
                    if sub not in lower:
                        return False
        return True

    def top(self) -> KGraph:
        return KGraph(self.n, self.k, self.levels[self.k])

    def is_partite(self, P: VertexPartition) -> bool:
        lab = P.labels
        return all(len({lab[v] for v in e}) == len(e) for lvl in self.levels for e in lvl)

    def _extension_counts(self, r: int, P: VertexPartition | None = None) -> Counter:
        """Count (r+1)-edges over each r-edge, keyed by (e, part of added vertex)."""
        cnt = Counter()
        lab = P.labels if P is not None else None
        for f in self.levels[r + 1]:
            for i, v in enumerate(f):
                e = f[:i] + f[i + 1:]
                cnt[(e, lab[v] if lab else 0)] += 1
        return cnt


def downward_closure(edges: Iterable, n: int, k: int | None = None) -> KComplex:
    es = [_edge(e, n) for e in edges]
    if k is None:
        k = max((len(e) for e in es), default=0)
    lv = [set() for _ in range(k + 1)]
    lv[0].add(())
    for e in es:
        if len(e) > k:
            raise InputError(f"edge {list(e)} larger than k={k}")
        for r in range(1, len(e) + 1):
            lv[r].update(itertools.combinations(e, r))
    return KComplex(n, k, lv)


def complete_complex(n: int, k: int) -> KComplex:
    return KComplex(n, k, [list(itertools.combinations(range(n), r)) for r in range(k + 1)])


def clique_complex(G: KGraph, r: int) -> KComplex:
    """Level i holds the i-sets all of whose k-subsets are edges of G."""
    k, n = G.k, G.n
    if r < k:
        raise InputError(f"clique level {r} below edge size {k}")
    lv = [list(itertools.combinations(range(n), i)) for i in range(k)]
    lv.append(list(G.edges))
    es = G.edge_set
    for i in range(k + 1, r + 1):
        nxt = []
        for c in lv[i - 1]:
            for w in range(c[-1] + 1, n):
                if all(sub + (w,) in es for sub in itertools.combinations(c, k - 1)):
                    nxt.append(c + (w,))
        lv.append(nxt)
    return KComplex(n, r, lv)


def partite_complete_complex(P: VertexPartition, k: int) -> KComplex:
    lv = [[()]]
    for r in range(1, k + 1):
        lv.append([tuple(sorted(t)) for parts in itertools.combinations(P.parts, r)
                   for t in itertools.product(*parts)])
    return KComplex(P.n, k, lv)


def degree_sequence(J: KComplex) -> DegreeSequence:
    vals = []
    for r in range(J.k):
        cnt = J._extension_counts(r)
        vals.append(_min(cnt[(e, 0)] for e in J.levels[r]))
    return DegreeSequence(tuple(vals))


def partite_degree_sequence(J: KComplex, P: VertexPartition) -> DegreeSequence:
    if P.n != J.n:
        raise InputError("partition size does not match complex")
    if not J.is_partite(P):
        raise InputError("complex is not partite with respect to the partition")
    lab = P.labels
    vals = []
    for j in range(J.k):
        cnt = J._extension_counts(j, P)
        vals.append(_min(
            cnt[(e, i)]
            for e in J.levels[j]
            for i in range(P.d)
            if not any(lab[v] == i for v in e)
        ))
    return DegreeSequence(tuple(vals))


def index_profile(J: KComplex, P: VertexPartition) -> Counter:
    """Number of edges of each index vector, over all levels."""
    return Counter(index_vector(e, P) for lvl in J.levels for e in lvl)


def density_at_index(J: KComplex, P: VertexPartition, i: Sequence[int],
                     profile: Counter | None = None) -> Fraction:
    i = tuple(i)
    if len(i) != P.d:
        raise InputError("index vector length does not match partition")
    s = sum(i)
    if s > J.k or min(i, default=0) < 0:
        raise InputError(f"index {i} outside levels 0..{J.k}")
    total = math.prod(math.comb(len(p), a) for p, a in zip(P.parts, i))
    if total == 0:
        raise InputError(f"no sets of index {i}: density undefined")
    if profile is not None:
        return Fraction(profile[i], total)
    hits = sum(1 for e in J.levels[s] if index_vector(e, P) == i)
    return Fraction(hits, total)


# allocations ---------------------------------------------------------------

@dataclass(frozen=True)
class Allocation:
    """Multiset of maps [k] -> [r] closed under permuting positions."""

    k: int
    r: int
    functions: tuple  # sorted (f, multiplicity) pairs, f a tuple of part labels
    index_set: tuple  # sorted (index vector, multiplicity) pairs

    @property
    def size(self) -> int:
        return sum(m for _, m in self.functions)

    @property
    def distinct(self) -> list:
        return [f for f, _ in self.functions]

    def index_multiset(self) -> list:
        return [i for i, m in self.index_set for _ in range(m)]

    @functools.cached_property
    def is_uniform(self) -> bool:
        target = Fraction(self.size, self.r)
        for pos in range(self.k):
            cnt = Counter()
            for f, m in self.functions:
                cnt[f[pos]] += m
            if any(cnt[j] != target for j in range(self.r)):
                return False
        return True

    @functools.cached_property
    def is_connected(self) -> bool:
        # the largest admissible G_F: jj' allowed iff every ordered position pair
        # can be sent to (j, j')
        adj = {j: set() for j in range(self.r)}
        pos_pairs = [(a, b) for a in range(self.k) for b in range(self.k) if a != b]
        for j, jj in itertools.combinations(range(self.r), 2):
            ok = all(any(f[a] == j and f[b] == jj for f in self.distinct) for a, b in pos_pairs)
            if ok and pos_pairs:
                adj[j].add(jj)
                adj[jj].add(j)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        return len(seen) == self.r


def _function_index(f, r) -> tuple:
    vec = [0] * r
    for j in f:
        vec[j] += 1
    return tuple(vec)


def allocation_from_index_set(I: Iterable[Sequence[int]], k: int, r: int) -> Allocation:
    funcs = Counter()
    idx = Counter()
    for i in I:
        i = tuple(int(x) for x in i)
        if len(i) != r or any(x < 0 for x in i):
            raise InputError(f"index vector {i} not in N^{r}")
        if sum(i) != k:
            raise InputError(f"index vector {i} does not sum to k={k}")
        idx[i] += 1
        base = tuple(j for j, c in enumerate(i) for _ in range(c))
        for perm in itertools.permutations(range(k)):
            funcs[tuple(base[p] for p in perm)] += 1
    return Allocation(k, r, tuple(sorted(funcs.items())), tuple(sorted(idx.items())))


def build_allocation(kind: str, k: int, r: int = 1, index_set=None) -> Allocation:
    if kind == "nonpartite":
        return allocation_from_index_set([(k,)], k, 1)
    if kind == "partite_injective":
        if r < k:
            raise InputError("injective allocation needs r >= k")
        I = [tuple(1 if j in c else 0 for j in range(r)) for c in itertools.combinations(range(r), k)]
        return allocation_from_index_set(I, k, r)
    if kind == "from_index_set":
        if index_set is None:
            raise InputError("from_index_set needs an index set")
        return allocation_from_index_set(index_set, k, r)
    raise InputError(f"unknown allocation kind {kind!r}")


def is_pf_partite(J: KComplex, P: VertexPartition, F: Allocation) -> bool:
    prefixes = set()
    for f in F.distinct:
        for j in range(F.k + 1):
            prefixes.add(_function_index(f[:j], F.r))
    return all(index_vector(e, P) in prefixes for lvl in J.levels for e in lvl)


def f_degree_sequence(J: KComplex, P: VertexPartition, F: Allocation) -> DegreeSequence:
    if F.k != J.k or F.r != P.d:
        raise InputError("allocation shape does not match complex and partition")
    if not is_pf_partite(J, P, F):
        raise InputError("complex is not PF-partite")
    counts = [J._extension_counts(j, P) for j in range(J.k)]
    edges_by_index = [dict() for _ in range(J.k)]
    for j in range(J.k):
        for e in J.levels[j]:
            edges_by_index[j].setdefault(index_vector(e, P), []).append(e)
    vals = []
    for j in range(J.k):
        best = VACUOUS
        for f in F.distinct:
            need = _function_index(f[:j], F.r)
            part = f[j]
            m = _min(counts[j][(e, part)] for e in edges_by_index[j].get(need, ()))
            if m is not VACUOUS and (best is VACUOUS or m < best):
                best = m
        vals.append(best)
    return DegreeSequence(tuple(vals))

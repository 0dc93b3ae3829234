"""Transferrals in matched k-graphs and the digraphs they induce."""
from __future__ import annotations

import itertools
import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import lp
from .core import InputError, KComplex, KGraph, VertexPartition, index_vector
from .lattice import contains, lattice_from_generators, missing_wrt


class TransferralNotFound(LookupError):
    """A bounded search for a transferral or representation came up empty."""


def _chi(n: int, edges) -> list:
    x = [0] * n
    for e in edges:
        for v in e:
            x[v] += 1
    return x


@dataclass(frozen=True)
class MatchedSystem:
    """A k-graph J with a perfect matching M of J."""

    J: KGraph
    M: tuple

    def __init__(self, J, M):
        if isinstance(J, KComplex):
            J = J.top()
        M = tuple(sorted(tuple(sorted(e)) for e in M))
        seen = set()
        for e in M:
            if e not in J.edge_set:
                raise InputError(f"matching edge {list(e)} is not an edge")
            if seen & set(e):
                raise InputError("matching edges overlap")
            seen.update(e)
        if len(seen) != J.n:
            raise InputError("matching does not cover every vertex")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "M", M)

    @property
    def n(self) -> int:
        return self.J.n

    @property
    def k(self) -> int:
        return self.J.k

    def is_proper(self, P: VertexPartition) -> bool:
        """Every edge index is realised by some matching edge."""
        have = {index_vector(e, P) for e in self.M}
        return all(index_vector(e, P) in have for e in self.J.edges)


@dataclass(frozen=True)
class Transferral:
    T: tuple
    Tprime: tuple
    u: int
    v: int
    b: int = 1

    def __init__(self, T, Tprime, u, v, b=1):
        object.__setattr__(self, "T", tuple(sorted(tuple(sorted(e)) for e in T)))
        object.__setattr__(self, "Tprime", tuple(sorted(tuple(sorted(e)) for e in Tprime)))
        object.__setattr__(self, "u", int(u))
        object.__setattr__(self, "v", int(v))
        object.__setattr__(self, "b", int(b))

    @property
    def size(self) -> int:
        return len(self.T)

    def to_json(self) -> dict:
        return {"T": [list(e) for e in self.T], "Tprime": [list(e) for e in self.Tprime],
                "u": self.u, "v": self.v, "b": self.b}

    @classmethod
    def from_json(cls, obj) -> "Transferral":
        return cls(obj["T"], obj["Tprime"], obj["u"], obj["v"], obj.get("b", 1))


def verify_transferral(sys: MatchedSystem, t: Transferral) -> bool:
    for e in t.T:
        if e not in sys.J.edge_set:
            raise InputError(f"{list(e)} is not an edge of J")
    mset = set(sys.M)
    for e in t.Tprime:
        if e not in mset:
            raise InputError(f"{list(e)} is not an edge of M")
    if t.b < 1 or len(t.T) != len(t.Tprime):
        return False
    diff = [a - c for a, c in zip(_chi(sys.n, t.T), _chi(sys.n, t.Tprime))]
    want = [0] * sys.n
    want[t.u] += t.b
    want[t.v] -= t.b
    return diff == want


def _moves(sys: MatchedSystem) -> list:
    """Distinct nonzero chi(e) - chi(e') with the lexicographically first (e, e') for each."""
    out, seen = [], set()
    for e in sys.J.edges:
        ce = _chi(sys.n, [e])
        for f in sys.M:
            vec = tuple(a - c for a, c in zip(ce, _chi(sys.n, [f])))
            if any(vec) and vec not in seen:
                seen.add(vec)
                out.append((vec, e, f))
    return out


def _unwind(parent, state, moves):
    T, Tp = [], []
    while parent[state] is not None:
        prev, mi = parent[state]
        T.append(moves[mi][1])
        Tp.append(moves[mi][2])
        state = prev
    return T, Tp


def _in_cone(target, vectors) -> bool:
    if not vectors:
        return not any(target)
    A = [[vec[i] for vec in vectors] for i in range(len(target))]
    return lp.feasible(A, list(target)).x is not None


def _decompose(y: list, by_min: dict, c: int, memo: set):
    """Lexicographically first multiset of c edges with chi equal to y, or None."""
    i = next((j for j, a in enumerate(y) if a), None)
    if i is None:
        return [] if c == 0 else None
    if c == 0 or min(y) < 0:
        return None
    key = (tuple(y), c)
    if key in memo:
        return None
    for e in by_min.get(i, ()):
        if all(y[w] > 0 for w in e):
            for w in e:
                y[w] -= 1
            rest = _decompose(y, by_min, c - 1, memo)
            for w in e:
                y[w] += 1
            if rest is not None:
                return [e] + rest
    memo.add(key)
    return None


def _root_obstructed(sys: MatchedSystem, u: int, v: int, B: int) -> bool:
    """Exact necessary conditions: the target lies in the cone and the lattice of the step vectors."""
    vecs = [m[0] for m in _moves(sys)]
    unit = [0] * sys.n
    unit[u], unit[v] = 1, -1
    if not _in_cone(unit, vecs):
        return True
    L = lattice_from_generators(vecs, sys.n)
    return not any(contains(L, [b * a for a in unit]) for b in range(1, B + 1))


def find_transferral(sys: MatchedSystem, u: int, v: int, B: int, C: int,
                     prune: bool = True, method: str = "decompose") -> Transferral | None:
    """Minimum-size b-fold (u, v)-transferral with b <= B and size <= C.

    Ties break by size, then b, then lexicographic order of (T', T). The default search fixes
    the size c, b and a multiset T' of matching edges, then decomposes
    b(u - v) + chi(T') into c edges of J. method="bfs" searches imbalance vectors instead.
    With prune on, a root check of the cone and lattice of step vectors rules out hopeless pairs.
    """
    if u == v:
        return Transferral((), (), u, v, 1)
    B = min(B, C)
    if B < 1:
        return None
    if prune and _root_obstructed(sys, u, v, B):
        return None
    if method == "bfs":
        return _find_bfs(sys, u, v, B, C, prune)
    if method != "decompose":
        raise InputError(f"unknown method {method!r}")
    n = sys.n
    by_min = {}
    for e in sys.J.edges:
        by_min.setdefault(e[0], []).append(e)
    memo = set()
    for c in range(1, C + 1):
        for b in range(1, min(B, c) + 1):
            for Tp in itertools.combinations_with_replacement(sys.M, c):
                y = _chi(n, Tp)
                y[u] += b
                y[v] -= b
                if y[v] < 0:
                    continue
                T = _decompose(y, by_min, c, memo)
                if T is not None:
                    return Transferral(T, Tp, u, v, b)
    return None


def _find_bfs(sys: MatchedSystem, u: int, v: int, B: int, C: int, prune: bool):
    """Breadth-first search over imbalance vectors, one J edge and one M edge per step."""
    n = sys.n
    moves = _moves(sys)
    targets = {}
    for b in range(1, B + 1):
        t = [0] * n
        t[u], t[v] = b, -b
        targets[tuple(t)] = b
    two_k = 2 * sys.k

    def viable(x, rem):
        for i in range(n):
            if i == u:
                lo = min(abs(b - x[i]) for b in range(1, B + 1))
            elif i == v:
                lo = min(abs(-b - x[i]) for b in range(1, B + 1))
            else:
                lo = abs(x[i])
            if lo > rem:
                return False
        l1 = min(sum(abs(a - c) for a, c in zip(x, t)) for t in targets)
        return l1 <= two_k * rem

    start = tuple([0] * n)
    parent = {start: None}
    frontier = [start]
    for depth in range(1, C + 1):
        nxt = []
        rem = C - depth
        for x in frontier:
            for mi, (vec, _, _) in enumerate(moves):
                y = tuple(a + c for a, c in zip(x, vec))
                if y in parent:
                    continue
                if prune and not viable(y, rem):
                    continue
                parent[y] = (x, mi)
                nxt.append(y)
        hits = [(targets[y], y) for y in nxt if y in targets]
        if hits:
            b, y = min(hits)
            T, Tp = _unwind(parent, y, moves)
            return Transferral(T, Tp, u, v, b)
        frontier = nxt
        if not frontier:
            break
    return None


@dataclass(frozen=True)
class TransferralDigraph:
    n: int
    ell: int
    adj: tuple  # adj[u] = frozenset of out-neighbours, loops included
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u])]

    def min_outdegree(self, U=None) -> int:
        U = range(self.n) if U is None else list(U)
        Us = set(U)
        return min((len(self.adj[u] & Us) for u in U), default=0)

    def is_complete_on(self, U) -> bool:
        U = list(U)
        return all(self.has_edge(a, b) for a in U for b in U)

    def to_json(self) -> dict:
        return {"n": self.n, "ell": self.ell, "edges": [list(e) for e in self.edges()]}


def _reach(sys: MatchedSystem, ell: int):
    """One search from 0 that finds the shortest simple transferral for every ordered pair."""
    n = sys.n
    moves = _moves(sys)
    start = tuple([0] * n)
    parent = {start: None}
    frontier = [start]
    found = {}
    for depth in range(1, ell + 1):
        rem = ell - depth
        nxt = []
        for x in frontier:
            for mi, (vec, _, _) in enumerate(moves):
                y = tuple(a + c for a, c in zip(x, vec))
                if y in parent:
                    continue
                # a simple target has entries in {-1, 0, 1}, each step moves an entry by at most 1
                if any(abs(a) > rem + 1 for a in y) or sum(1 for a in y if abs(a) > rem) > 2:
                    continue
                parent[y] = (x, mi)
                nxt.append(y)
                if sorted(y) == [-1] + [0] * (n - 2) + [1]:
                    uu, vv = y.index(1), y.index(-1)
                    if (uu, vv) not in found:
                        T, Tp = _unwind(parent, y, moves)
                        found[(uu, vv)] = Transferral(T, Tp, uu, vv, 1)
        frontier = nxt
    return found


def _pair_job(args):
    sys, u, v, ell = args
    return (u, v), find_transferral(sys, u, v, 1, ell)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("HYPERBARRIER_JOBS", "1")))
    except ValueError:
        return 1


def transferral_digraph(sys: MatchedSystem, ell: int, method: str = "pairs",
                        jobs: int | None = None) -> TransferralDigraph:
    """D_ell: u -> v iff a simple (u, v)-transferral of size <= ell exists.

    method "pairs" runs find_transferral per ordered pair and may fan out over worker
    processes; "reach" runs one breadth-first search from 0 that serves every pair.
    """
    if ell < 0:
        raise InputError("ell must be non-negative")
    n = sys.n
    wit = {}
    if method == "reach":
        wit = _reach(sys, ell)
    elif method == "pairs":
        jobs = default_jobs() if jobs is None else jobs
        pairs = [(sys, u, v, ell) for u in range(n) for v in range(n) if u != v]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                res = list(ex.map(_pair_job, pairs, chunksize=max(1, len(pairs) // (4 * jobs))))
        else:
            res = [_pair_job(p) for p in pairs]
        wit = {k: t for k, t in res if t is not None}
    else:
        raise InputError(f"unknown method {method!r}")
    adj = [set([u]) for u in range(n)]
    for (u, v) in wit:
        adj[u].add(v)
    return TransferralDigraph(n, ell, tuple(frozenset(a) for a in adj), dict(sorted(wit.items())))


def compose_simple(sys: MatchedSystem, t1: Transferral, t2: Transferral) -> Transferral:
    if t1.b != 1 or t2.b != 1:
        raise InputError("compose_simple needs simple transferrals")
    if t1.v != t2.u:
        raise InputError(f"endpoint mismatch: {t1.v} != {t2.u}")
    return Transferral(t1.T + t2.T, t1.Tprime + t2.Tprime, t1.u, t2.v, 1)


def bidirectional_downgrade(sys: MatchedSystem, t: Transferral, back: Transferral) -> Transferral:
    """Simple (u, v)-transferral of size (b-1)c' + c from a b-fold (u, v) and a simple (v, u)."""
    if back.b != 1:
        raise InputError("reverse transferral must be simple")
    if (back.u, back.v) != (t.v, t.u):
        raise InputError("reverse transferral has the wrong endpoints")
    if not verify_transferral(sys, t) or not verify_transferral(sys, back):
        raise InputError("input transferral does not verify")
    m = t.b - 1
    return Transferral(t.T + back.T * m, t.Tprime + back.Tprime * m, t.u, t.v, 1)


def _path(adj_within, src, dst):
    """Shortest path src -> dst as a vertex list, or None."""
    prev = {src: None}
    q = deque([src])
    while q:
        x = q.popleft()
        if x == dst:
            out = [x]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])
            return out[::-1]
        for y in sorted(adj_within[x]):
            if y not in prev:
                prev[y] = x
                q.append(y)
    return None


@dataclass(frozen=True)
class ReceivingPartition:
    parts: tuple
    receivers: tuple
    min_outdegree: int
    bound: Fraction
    shortfall: Fraction
    max_path: int

    @property
    def ok(self) -> bool:
        return self.shortfall <= 0

    def to_json(self) -> dict:
        return {"parts": [list(p) for p in self.parts], "receivers": list(self.receivers),
                "min_outdegree": self.min_outdegree,
                "bound": [self.bound.numerator, self.bound.denominator],
                "shortfall": [self.shortfall.numerator, self.shortfall.denominator],
                "max_path": self.max_path}


def _dist_to(adj, vertices, v):
    """Shortest path lengths to v inside the vertex set."""
    vs = set(vertices)
    radj = {x: set() for x in vs}
    for x in vs:
        for y in adj[x]:
            if y in vs:
                radj[y].add(x)
    dist = {v: 0}
    q = deque([v])
    while q:
        x = q.popleft()
        for y in sorted(radj[x]):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def receiving_partition(adj, ell: int, alpha, vertices=None) -> ReceivingPartition:
    """Carve the vertex set into parts, each reaching a receiver by a path of length <= ell.

    adj maps each vertex to its out-neighbours; only arcs inside `vertices` count.
    Receivers are chosen by largest in-degree in the residual set; a part is the iterated
    in-neighbourhood of its receiver, stopped once growth falls below gamma*n, with gamma
    doubling per part. Vertices left over attach through one extra arc.
    """
    if ell < 2:
        raise InputError("path bound must be at least 2")
    V = sorted(range(len(adj)) if vertices is None else vertices)
    Vs = set(V)
    n = len(V)
    alpha = Fraction(alpha)
    out = {x: set(adj[x]) & Vs for x in V}
    delta = min((len(out[x]) for x in V), default=0)
    dist_all = {}
    parts, receivers = [], []
    S = list(V)
    gamma = Fraction(1, ell - 1)
    while S and len(S) >= max(delta, 1):
        Ss = set(S)
        indeg = {x: 0 for x in S}
        for x in S:
            for y in out[x]:
                if y in Ss:
                    indeg[y] += 1
        v = min(S, key=lambda x: (-indeg[x], x))
        dist = _dist_to(out, V, v)
        layers = [sum(1 for x in S if dist.get(x, ell + 1) <= j) for j in range(ell)]
        j = 1
        while j < ell - 1 and layers[j + 1] > layers[j] + gamma * n:
            j += 1
        part = [x for x in S if dist.get(x, ell + 1) <= j]
        parts.append(part)
        receivers.append(v)
        dist_all[v] = dist
        S = [x for x in S if x not in set(part)]
        gamma *= 2
    max_path = max((dist_all[r][x] for r, p in zip(receivers, parts) for x in p), default=0)
    for x in S:
        for idx, (r, p) in enumerate(zip(receivers, parts)):
            hops = [dist_all[r][y] for y in out[x] if y in set(p)]
            if hops:
                p.append(x)
                max_path = max(max_path, 1 + min(hops))
                break
        else:
            parts.append([x])
            receivers.append(x)
    bound = delta - alpha * n
    smallest = min((len(p) for p in parts), default=0)
    return ReceivingPartition(tuple(tuple(sorted(p)) for p in parts), tuple(receivers), delta,
                              bound, max(Fraction(0), bound - smallest), max_path)


# cancellation and completion ---------------------------------------------------

def _pair_by_part(xs, ys, P: VertexPartition):
    """Pair two vertex multisets with equal part counts so each pair shares a part."""
    bx, by = {}, {}
    for x in sorted(xs):
        bx.setdefault(P.part_of(x), []).append(x)
    for y in sorted(ys):
        by.setdefault(P.part_of(y), []).append(y)
    if {p: len(l) for p, l in bx.items()} != {p: len(l) for p, l in by.items()}:
        raise InputError("multisets have different part counts")
    return [(a, b) for p in sorted(bx) for a, b in zip(bx[p], by[p])]


def _vertices(edges) -> list:
    return [v for e in edges for v in e]


class _Finder:
    """Caches bounded transferral searches."""

    def __init__(self, sys, B, C):
        self.sys, self.B, self.C = sys, B, C
        self.cache = {}

    def get(self, u, v):
        if (u, v) not in self.cache:
            self.cache[(u, v)] = find_transferral(self.sys, u, v, self.B, self.C)
        t = self.cache[(u, v)]
        if t is None:
            raise TransferralNotFound(f"no ({u},{v})-transferral with b <= {self.B}, size <= {self.C}")
        return t


def cancel_and_extend(sys: MatchedSystem, P: VertexPartition, A, Aprime, B: int, C: int,
                      Cprime: int | None = None, finder: _Finder | None = None):
    """Multisets T in J, T' in M with A in T, A' in T' and chi(T) = chi(T')."""
    if not sys.is_proper(P):
        raise InputError("matched system is not proper for the partition")
    A = [tuple(sorted(e)) for e in A]
    Aprime = [tuple(sorted(e)) for e in Aprime]
    for e in A:
        if e not in sys.J.edge_set:
            raise InputError(f"{list(e)} is not an edge of J")
    mset = set(sys.M)
    for e in Aprime:
        if e not in mset:
            raise InputError(f"{list(e)} is not an edge of M")
    by_index = {}
    for f in sys.M:
        by_index.setdefault(index_vector(f, P), f)
    Astar = [by_index[index_vector(e, P)] for e in A]
    S = A + Aprime
    Sp = Astar + Aprime
    finder = finder or _Finder(sys, B, C)
    fact = math.factorial(B)
    T = S * fact
    Tp = Sp * fact
    for a, b in _pair_by_part(_vertices(S), _vertices(Sp), P):
        if a == b:
            continue
        t = finder.get(b, a)
        reps = fact // t.b
        T += list(t.T) * reps
        Tp += list(t.Tprime) * reps
    if Cprime is not None and len(T) > Cprime:
        raise TransferralNotFound(f"cancellation needs size {len(T)} > {Cprime}")
    return tuple(sorted(T)), tuple(sorted(Tp))


def small_sum_representation(X, x, s: int):
    """Multisets S1, S2 of X, each of size <= s, with sum(S1) - sum(S2) = x and minimal total size."""
    X = [tuple(v) for v in X]
    x = tuple(x)
    d = len(x)
    if not any(x):
        return (), ()
    if not X or not contains(lattice_from_generators(X, d), x):
        raise InputError("target is not in the lattice generated by X")
    sums = []
    for t in range(s + 1):
        level = {}
        for combo in itertools.combinations_with_replacement(range(len(X)), t):
            tot = tuple(sum(X[i][c] for i in combo) for c in range(d))
            level.setdefault(tot, combo)
        sums.append(level)
    for m in range(1, 2 * s + 1):
        for a in range(max(0, m - s), min(s, m) + 1):
            b = m - a
            for tot, combo in sums[a].items():
                need = tuple(p - q for p, q in zip(tot, x))
                if need in sums[b]:
                    return tuple(X[i] for i in combo), tuple(X[i] for i in sums[b][need])
    raise TransferralNotFound(f"no representation with parts of size <= {s}")


@dataclass(frozen=True)
class CompletionReport:
    complete: bool
    stage: str
    detail: dict
    digraph: TransferralDigraph | None = None
    refined: VertexPartition | None = None
    max_size: int | None = None

    def to_json(self) -> dict:
        out = {"complete": self.complete, "stage": self.stage, "detail": self.detail}
        if self.refined is not None:
            out["refined_partition"] = [list(p) for p in self.refined.parts]
        if self.max_size is not None:
            out["max_size"] = self.max_size
        if self.digraph is not None:
            out["digraph"] = self.digraph.to_json()
        return out


def _chain(sys, wit, path):
    t = Transferral((), (), path[0], path[0], 1)
    for a, b in zip(path, path[1:]):
        t = compose_simple(sys, t, wit[(a, b)])
    return t


def complete_transferral_digraph(sys: MatchedSystem, Pp: VertexPartition, B: int, C: int, ell: int,
                                 ell_prime: int, alpha=Fraction(1, 10), s: int = 4) -> CompletionReport:
    """Build simple transferrals between every pair inside each part of Pp, or name the stage that fails.

    Stages: properness, irreducibility (all pairs in each part), receiving partition of D_ell,
    edge lattice completeness for the refined partition, then the explicit construction.
    The result is complete when every pair has a verified transferral of size <= ell_prime.
    """
    n = sys.n
    if not sys.is_proper(Pp):
        return CompletionReport(False, "properness", {})
    finder = _Finder(sys, B, C)
    for U in Pp.parts:
        for a in U:
            for b in U:
                if a != b and finder.cache.setdefault((a, b), find_transferral(sys, a, b, B, C)) is None:
                    return CompletionReport(False, "irreducibility", {"u": a, "v": b, "B": B, "C": C})
    D = transferral_digraph(sys, ell)
    wit = dict(D.witnesses)
    parts, receivers = [], []
    for U in Pp.parts:
        rp = receiving_partition([D.adj[x] for x in range(n)], max(ell, 2), alpha, vertices=U)
        parts.extend(rp.parts)
        receivers.extend(rp.receivers)
    P = VertexPartition(tuple(parts), n)
    receiver_of = {x: r for p, r in zip(parts, receivers) for x in p}
    pair = {}
    # inside a refined part: u -> w -> v through the receiver w
    for p in P.parts:
        w = receiver_of[p[0]]
        to_w = {x: _chain(sys, wit, _path(D.adj, x, w)) for x in p}
        for u in p:
            if u != w:
                pair[(u, w)] = to_w[u]
        for v in p:
            if v == w:
                continue
            down = bidirectional_downgrade(sys, finder.get(w, v), to_w[v])
            for u in p:
                if u != v:
                    pair[(u, v)] = compose_simple(sys, to_w[u], down)
    X = sorted({index_vector(e, P) for e in sys.J.edges})
    L = lattice_from_generators(X, P.d)
    miss = missing_wrt(L, P, Pp)
    if miss is not None:
        return CompletionReport(False, "lattice", {"witness": list(miss), "lattice": L.to_json()},
                                refined=P)
    edge_of = {}
    for e in sys.J.edges:
        edge_of.setdefault(index_vector(e, P), e)

    def simple(u, v):
        if u == v:
            return Transferral((), (), u, u, 1)
        return pair[(u, v)]

    for i, j in itertools.permutations(range(P.d), 2):
        if Pp.part_of(P.parts[i][0]) != Pp.part_of(P.parts[j][0]):
            continue
        x = [0] * P.d
        x[i], x[j] = 1, -1
        S1, S2 = small_sum_representation(X, x, s)
        Sedges = [edge_of[vec] for vec in S1]
        Tedges = [edge_of[vec] for vec in S2]
        us, vs = _vertices(Sedges), _vertices(Tedges)
        u1 = min(a for a in us if P.part_of(a) == i)
        v1 = min(b for b in vs if P.part_of(b) == j)
        rest_u = list(us)
        rest_u.remove(u1)
        rest_v = list(vs)
        rest_v.remove(v1)
        A1, A1p = cancel_and_extend(sys, P, Sedges, [], B, C, finder=finder)
        A2 = list(A1)
        for e in Sedges:
            A2.remove(e)
        A3, A3p = A2 + Tedges, list(A1p)
        for a, b in _pair_by_part(rest_u, rest_v, P):
            t = simple(a, b)
            A3 += list(t.T)
            A3p += list(t.Tprime)
        core = Transferral(A3, A3p, v1, u1, 1)
        for u in P.parts[i]:
            for v in P.parts[j]:
                t = compose_simple(sys, compose_simple(sys, simple(v, v1), core), simple(u1, u))
                pair[(v, u)] = t
    adj = [set([u]) for u in range(n)]
    big = 0
    for (u, v), t in pair.items():
        if not verify_transferral(sys, t):
            raise AssertionError(f"constructed ({u},{v}) transferral does not verify")
        adj[u].add(v)
        big = max(big, t.size)
    out = TransferralDigraph(n, max(big, 0), tuple(frozenset(a) for a in adj), dict(sorted(pair.items())))
    if not all(out.is_complete_on(U) for U in Pp.parts):
        return CompletionReport(False, "construction", {}, digraph=out, refined=P, max_size=big)
    if big > ell_prime:
        return CompletionReport(False, "size_bound", {"max_size": big, "ell_prime": ell_prime},
                                digraph=out, refined=P, max_size=big)
    return CompletionReport(True, "complete", {}, digraph=out, refined=P, max_size=big)

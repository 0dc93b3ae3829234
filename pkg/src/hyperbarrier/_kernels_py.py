"""Pure-Python search kernels. Same signatures as the compiled module."""
from __future__ import annotations

import itertools


class _Cover:
    def __init__(self, n, edges):
        self.n = n
        self.edges = [tuple(e) for e in edges]
        self.inc = [[] for _ in range(n)]
        for i, e in enumerate(self.edges):
            for v in e:
                self.inc[v].append(i)
        self.dead = [0] * len(self.edges)
        self.deg = [len(l) for l in self.inc]
        self.done = [False] * n

    def kill_vertex(self, v):
        self.done[v] = True
        dead, deg, edges = self.dead, self.deg, self.edges
        for f in self.inc[v]:
            if dead[f] == 0:
                for w in edges[f]:
                    deg[w] -= 1
            dead[f] += 1

    def revive_vertex(self, v):
        dead, deg, edges = self.dead, self.deg, self.edges
        for f in reversed(self.inc[v]):
            dead[f] -= 1
            if dead[f] == 0:
                for w in edges[f]:
                    deg[w] += 1
        self.done[v] = False

    def select(self, e):
        for v in self.edges[e]:
            self.kill_vertex(v)

    def unselect(self, e):
        for v in reversed(self.edges[e]):
            self.revive_vertex(v)

    def pick(self):
        best, bd = -1, None
        for v in range(self.n):
            if not self.done[v] and (bd is None or self.deg[v] < bd):
                best, bd = v, self.deg[v]
                if bd == 0:
                    break
        return best

    def live(self, v):
        return [f for f in self.inc[v] if self.dead[f] == 0]


def exact_cover(n, edges):
    """Indices of edges partitioning 0..n-1, or None."""
    st = _Cover(n, edges)
    sol = []

    def rec():
        v = st.pick()
        if v < 0:
            return True
        if st.deg[v] == 0:
            return False
        for f in st.live(v):
            st.select(f)
            sol.append(f)
            if rec():
                return True
            sol.pop()
            st.unselect(f)
        return False

    return list(sol) if rec() else None


def max_matching(n, edges, upper, initial):
    """Branch and bound for a largest set of disjoint edges.

    upper is a proven bound on the optimum; initial a feasible matching.
    """
    st = _Cover(n, edges)
    k = len(edges[0]) if len(edges) else 1
    best = list(initial)
    cur = []

    def bound():
        active = sum(1 for v in range(n) if not st.done[v] and st.deg[v] > 0)
        return len(cur) + active // k

    def rec():
        nonlocal best
        if len(best) >= upper:
            return
        v = -1
        for w in range(n):
            if not st.done[w] and st.deg[w] > 0:
                if v < 0 or st.deg[w] < st.deg[v]:
                    v = w
        if v < 0:
            if len(cur) > len(best):
                best = list(cur)
            return
        if bound() <= len(best):
            return
        for f in st.live(v):
            st.select(f)
            cur.append(f)
            rec()
            cur.pop()
            st.unselect(f)
            if len(best) >= upper:
                return
        st.kill_vertex(v)
        rec()
        st.revive_vertex(v)

    rec()
    return best


def min_heavy_subset(n, edges, size, j):
    """Lexicographically first size-subset S minimising #edges with > j vertices in S."""
    masks = [sum(1 << v for v in e) for e in edges]
    best = None
    for S in itertools.combinations(range(n), size):
        sm = 0
        for v in S:
            sm |= 1 << v
        c = 0
        for m in masks:
            if (m & sm).bit_count() > j:
                c += 1
                if best is not None and c >= best[0]:
                    break
        if best is None or c < best[0]:
            best = (c, S)
            if c == 0:
                break
    return best


def index_codes(edges, labels, base):
    """Encode each edge's index vector as sum of base**label."""
    pw = [base ** l for l in labels]
    return [sum(pw[v] for v in e) for e in edges]

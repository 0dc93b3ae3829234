# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels. Mirrors _kernels_py line for line in behaviour."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

import numpy as np


cdef struct Cover:
    int n
    int m
    int k
    int *edges      # m*k
    int *inc_start  # n+1
    int *inc        # m*k
    int *dead
    int *deg
    char *done


cdef int cover_init(Cover *st, int n, int k, edges) except -1:
    cdef int m = len(edges)
    cdef int i, t, v
    st.n = n
    st.m = m
    st.k = k
    st.edges = <int *>malloc(max(1, m * k) * sizeof(int))
    st.inc_start = <int *>malloc((n + 1) * sizeof(int))
    st.inc = <int *>malloc(max(1, m * k) * sizeof(int))
    st.dead = <int *>malloc(max(1, m) * sizeof(int))
    st.deg = <int *>malloc(max(1, n) * sizeof(int))
    st.done = <char *>malloc(max(1, n) * sizeof(char))
    for v in range(n + 1):
        st.inc_start[v] = 0
    for i in range(m):
        e = edges[i]
        st.dead[i] = 0
        for t in range(k):
            v = e[t]
            st.edges[i * k + t] = v
            st.inc_start[v + 1] += 1
    for v in range(n):
        st.inc_start[v + 1] += st.inc_start[v]
        st.deg[v] = st.inc_start[v + 1] - st.inc_start[v]
        st.done[v] = 0
    cdef int *fill = <int *>malloc((n + 1) * sizeof(int))
    for v in range(n):
        fill[v] = st.inc_start[v]
    for i in range(m):
        for t in range(k):
            v = st.edges[i * k + t]
            st.inc[fill[v]] = i
            fill[v] += 1
    free(fill)
    return 0


cdef void cover_free(Cover *st):
    free(st.edges)
    free(st.inc_start)
    free(st.inc)
    free(st.dead)
    free(st.deg)
    free(st.done)


cdef inline void kill_vertex(Cover *st, int v):
    cdef int p, f, t
    st.done[v] = 1
    for p in range(st.inc_start[v], st.inc_start[v + 1]):
        f = st.inc[p]
        if st.dead[f] == 0:
            for t in range(st.k):
                st.deg[st.edges[f * st.k + t]] -= 1
        st.dead[f] += 1


cdef inline void revive_vertex(Cover *st, int v):
    cdef int p, f, t
    for p in range(st.inc_start[v + 1] - 1, st.inc_start[v] - 1, -1):
        f = st.inc[p]
        st.dead[f] -= 1
        if st.dead[f] == 0:
            for t in range(st.k):
                st.deg[st.edges[f * st.k + t]] += 1
    st.done[v] = 0


cdef inline void select(Cover *st, int e):
    cdef int t
    for t in range(st.k):
        kill_vertex(st, st.edges[e * st.k + t])


cdef inline void unselect(Cover *st, int e):
    cdef int t
    for t in range(st.k - 1, -1, -1):
        revive_vertex(st, st.edges[e * st.k + t])


cdef int pick(Cover *st):
    cdef int v, best = -1, bd = 0
    for v in range(st.n):
        if not st.done[v] and (best < 0 or st.deg[v] < bd):
            best = v
            bd = st.deg[v]
            if bd == 0:
                break
    return best


cdef int live_list(Cover *st, int v, int *out):
    cdef int p, f, c = 0
    for p in range(st.inc_start[v], st.inc_start[v + 1]):
        f = st.inc[p]
        if st.dead[f] == 0:
            out[c] = f
            c += 1
    return c


cdef bint cover_rec(Cover *st, int *sol, int depth):
    cdef int v = pick(st)
    if v < 0:
        sol[depth] = -1
        return True
    if st.deg[v] == 0:
        return False
    cdef int cnt = st.inc_start[v + 1] - st.inc_start[v]
    cdef int *cand = <int *>malloc(max(1, cnt) * sizeof(int))
    cdef int c = live_list(st, v, cand)
    cdef int i, f
    cdef bint ok = False
    for i in range(c):
        f = cand[i]
        select(st, f)
        sol[depth] = f
        if cover_rec(st, sol, depth + 1):
            ok = True
            break
        unselect(st, f)
    free(cand)
    return ok


def exact_cover(int n, edges):
    if n == 0:
        return []
    if len(edges) == 0:
        return None
    cdef int k = len(edges[0])
    cdef Cover st
    cover_init(&st, n, k, edges)
    cdef int *sol = <int *>malloc((n + 2) * sizeof(int))
    cdef int i
    out = None
    try:
        if cover_rec(&st, sol, 0):
            out = []
            i = 0
            while sol[i] >= 0:
                out.append(sol[i])
                i += 1
    finally:
        free(sol)
        cover_free(&st)
    return out


cdef struct BB:
    int upper
    int best_len
    int cur_len
    int *best
    int *cur


cdef void bb_rec(Cover *st, BB *bb):
    if bb.best_len >= bb.upper:
        return
    cdef int v = -1, w, active = 0
    for w in range(st.n):
        if not st.done[w] and st.deg[w] > 0:
            active += 1
            if v < 0 or st.deg[w] < st.deg[v]:
                v = w
    cdef int i
    if v < 0:
        if bb.cur_len > bb.best_len:
            for i in range(bb.cur_len):
                bb.best[i] = bb.cur[i]
            bb.best_len = bb.cur_len
        return
    if bb.cur_len + active // st.k <= bb.best_len:
        return
    cdef int cnt = st.inc_start[v + 1] - st.inc_start[v]
    cdef int *cand = <int *>malloc(max(1, cnt) * sizeof(int))
    cdef int c = live_list(st, v, cand)
    cdef int f
    for i in range(c):
        f = cand[i]
        select(st, f)
        bb.cur[bb.cur_len] = f
        bb.cur_len += 1
        bb_rec(st, bb)
        bb.cur_len -= 1
        unselect(st, f)
        if bb.best_len >= bb.upper:
            free(cand)
            return
    free(cand)
    kill_vertex(st, v)
    bb_rec(st, bb)
    revive_vertex(st, v)


def max_matching(int n, edges, int upper, initial):
    if len(edges) == 0:
        return list(initial)
    cdef int k = len(edges[0])
    cdef Cover st
    cover_init(&st, n, k, edges)
    cdef BB bb
    bb.upper = upper
    bb.best = <int *>malloc((n + 1) * sizeof(int))
    bb.cur = <int *>malloc((n + 1) * sizeof(int))
    bb.best_len = len(initial)
    bb.cur_len = 0
    cdef int i
    for i in range(bb.best_len):
        bb.best[i] = initial[i]
    try:
        bb_rec(&st, &bb)
        out = [bb.best[i] for i in range(bb.best_len)]
    finally:
        free(bb.best)
        free(bb.cur)
        cover_free(&st)
    return out


cdef inline int popcount64(uint64_t x):
    return __builtin_popcountll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long)


def min_heavy_subset(int n, edges, int size, int j):
    if n > 64:
        raise ValueError("compiled subset search needs n <= 64")
    cdef int m = len(edges)
    cdef uint64_t[:] masks = np.zeros(max(1, m), dtype=np.uint64)
    cdef int i, t, c
    cdef uint64_t mk
    for i in range(m):
        mk = 0
        for v in edges[i]:
            mk |= (<uint64_t>1) << <int>v
        masks[i] = mk
    cdef int *idx = <int *>malloc((size + 1) * sizeof(int))
    for t in range(size):
        idx[t] = t
    cdef int best = -1
    cdef uint64_t sm
    best_set = None
    try:
        while True:
            sm = 0
            for t in range(size):
                sm |= (<uint64_t>1) << idx[t]
            c = 0
            for i in range(m):
                if popcount64(masks[i] & sm) > j:
                    c += 1
                    if best >= 0 and c >= best:
                        break
            if best < 0 or c < best:
                best = c
                best_set = tuple(idx[t] for t in range(size))
                if c == 0:
                    break
            # next combination in lexicographic order
            t = size - 1
            while t >= 0 and idx[t] == n - size + t:
                t -= 1
            if t < 0:
                break
            idx[t] += 1
            for i in range(t + 1, size):
                idx[i] = idx[i - 1] + 1
    finally:
        free(idx)
    return (best, best_set)


def index_codes(edges, labels, long long base):
    cdef Py_ssize_t n = len(labels)
    cdef int64_t[:] pw = np.empty(max(1, n), dtype=np.int64)
    cdef Py_ssize_t v
    for v in range(n):
        pw[v] = base ** labels[v]
    cdef int64_t s
    out = []
    for e in edges:
        s = 0
        for v in e:
            s += pw[v]
        out.append(s)
    return out

"""Brute-force reference computations, written without the package's search code."""
import itertools
from collections import Counter
from math import comb


def all_subsets(n, r):
    return list(itertools.combinations(range(n), r))


def brute_degree_sequence(levels, n, k):
    """delta_r straight from the definition; None for an empty level."""
    sets = [set(l) for l in levels]
    out = []
    for r in range(k):
        best = None
        for e in sets[r]:
            d = sum(1 for w in range(n) if w not in e and tuple(sorted(e + (w,))) in sets[r + 1])
            best = d if best is None else min(best, d)
        out.append(best)
    return out


def brute_max_matching(edges, n):
    """Largest set of pairwise disjoint edges, by plain recursion over edge order."""
    edges = sorted(edges)
    best = 0

    def rec(i, used, size):
        nonlocal best
        best = max(best, size)
        if i == len(edges) or size + (n - len(used)) // max(1, len(edges[0])) <= best:
            return
        e = edges[i]
        if not used.intersection(e):
            rec(i + 1, used | set(e), size + 1)
        rec(i + 1, used, size)

    if edges:
        rec(0, frozenset(), 0)
    return best


def brute_has_perfect_matching(edges, n, k):
    return n % k == 0 and brute_max_matching(edges, n) == n // k


def chi(n, edges):
    v = [0] * n
    for e in edges:
        for x in e:
            v[x] += 1
    return v


def brute_simple_transferral_size(J, M, n, u, v, cap):
    """Smallest c <= cap with multisets T of J, T' of M, |T| = |T'| = c and chi(T) - chi(T') = e_u - e_v."""
    if u == v:
        return 0
    want = [0] * n
    want[u] += 1
    want[v] -= 1
    J = sorted(J)
    for c in range(1, cap + 1):
        mvecs = {tuple(chi(n, Tp)) for Tp in itertools.combinations_with_replacement(sorted(M), c)}
        for T in itertools.combinations_with_replacement(J, c):
            x = chi(n, T)
            if tuple(a - b for a, b in zip(x, want)) in mvecs:
                return c
    return None


def brute_digraph(J, M, n, ell):
    return {(u, v) for u in range(n) for v in range(n)
            if (s := brute_simple_transferral_size(J, M, n, u, v, ell)) is not None and s <= ell}


def residue_closure(gens, d, D):
    """Subgroup of (Z/D)^d generated by gens together with D*Z^d, by breadth-first closure."""
    zero = (0,) * d
    seen = {zero}
    frontier = [zero]
    gens = [tuple(x % D for x in g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % D for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def det_int(rows):
    """Integer determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * det_int([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n))


def sets_of_index(P_parts, i):
    return sum(1 for _ in itertools.product(*(itertools.combinations(p, a) for p, a in zip(P_parts, i))))


def binom_index_count(sizes, i):
    out = 1
    for s, a in zip(sizes, i):
        out *= comb(s, a)
    return out


def index_histogram(edges, labels, d):
    cnt = Counter()
    for e in edges:
        vec = [0] * d
        for v in e:
            vec[labels[v]] += 1
        cnt[tuple(vec)] += 1
    return cnt

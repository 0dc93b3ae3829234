import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import all_subsets, brute_has_perfect_matching, brute_max_matching, index_histogram

from hyperbarrier.constructions import (gen_divisibility_barrier, gen_pikhurko, gen_space_barrier,
                                        index_filter_graph)
from hyperbarrier.core import InputError, KGraph, VertexPartition, clique_complex, downward_closure
from hyperbarrier.lattice import contains, is_complete, lattice_from_generators, robust_threshold
from hyperbarrier.solver import (analyze, count_by_index, detect_divisibility_barrier,
                                 detect_space_barrier, goodman_check, heavy_count, max_matching,
                                 perfect_clique_packing, perfect_matching, set_partitions)

EX1 = lattice_from_generators([(-2, 2), (0, 1)])
K6 = KGraph(6, 3, all_subsets(6, 3))


def _stirling2(n, d):
    return sum((-1) ** i * math.comb(d, i) * (d - i) ** n for i in range(d + 1)) // math.factorial(d)


# matchings ------------------------------------------------------------------------

def test_complete_graph_has_perfect_matching():
    M = perfect_matching(K6)
    assert len(M) == 2 and M.is_valid(K6)


def test_parity_graph_has_no_perfect_matching():
    G, _ = index_filter_graph([3, 3], 3, EX1)
    assert perfect_matching(G) is None
    assert not brute_has_perfect_matching(G.edges, 6, 3)


def test_small_space_barrier_has_no_perfect_matching():
    H = gen_space_barrier(6, 3, 1, 3).graph
    assert perfect_matching(H) is None
    assert len(max_matching(H)) == 1 == brute_max_matching(H.edges, 6)


def test_indivisible_order_rejected():
    with pytest.raises(InputError):
        perfect_matching(KGraph(7, 3, all_subsets(7, 3)))


def test_max_matching_examples():
    assert len(max_matching(gen_space_barrier(9, 3, 2, 7).graph)) == 2
    assert len(max_matching(KGraph(5, 3, []))) == 0


@pytest.mark.parametrize("n,k", [(6, 3), (7, 3), (8, 3), (8, 4), (9, 3)])
def test_space_matching_law(n, k):
    for j in range(1, k):
        for s in range(n + 1):
            H = gen_space_barrier(n, k, j, s).graph
            want = min(n // k, (n - s) // (k - j))
            got = max_matching(H)
            assert got.is_valid(H) and len(got) == want
            if n <= 7:
                assert brute_max_matching(H.edges, n) == want


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_matchings_agree_with_recursion(seed):
    rng = random.Random(seed)
    n = rng.choice([6, 9])
    H = KGraph(n, 3, [e for e in all_subsets(n, 3) if rng.random() < rng.uniform(0.02, 0.2)])
    pm = perfect_matching(H)
    mm = max_matching(H)
    assert mm.is_valid(H) and len(mm) == brute_max_matching(H.edges, n)
    assert (pm is not None) == (len(mm) == n // 3)
    if pm is not None:
        assert pm.is_valid(H) and len(pm) == n // 3


def test_clique_packings():
    M = perfect_clique_packing(KGraph(8, 3, all_subsets(8, 3)), 4)
    assert len(M) == 2
    for n in (8, 12):
        assert perfect_clique_packing(gen_pikhurko(n).graph, 4) is None
    with pytest.raises(InputError):
        perfect_clique_packing(K6, 4)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_lattice_filter_graphs_have_no_perfect_matching(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 3)
    sizes = [rng.randint(1, 9 // d) for _ in range(d)]
    while sum(sizes) % 3:
        sizes[rng.randrange(d)] += 1
    if sum(sizes) > 9:
        return
    gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, d))]
    L = lattice_from_generators(gens, d)
    if contains(L, tuple(sizes)):
        return
    inst = gen_divisibility_barrier(sizes, 3, L)
    assert perfect_matching(inst.graph) is None
    assert not brute_has_perfect_matching(inst.graph.edges, sum(sizes), 3)


# space barriers -------------------------------------------------------------------

def test_space_barrier_detects_itself():
    inst = gen_space_barrier(9, 3, 1, 3)
    c = detect_space_barrier(inst.complex(), Fraction(1, 100))
    assert c.j == 1 and c.violation_count == 0 and c.regime == "exhaustive"
    assert heavy_count(inst.graph, c.S, 1) == 0 and len(c.S) == 3


def test_complete_graph_has_no_space_barrier():
    assert detect_space_barrier(K6, Fraction(1, 100)) is None
    # brute force over every S of size 2 and 4
    assert min(sum(1 for e in K6.edges if len(set(e) & set(S)) > 1) for S in all_subsets(6, 2)) == 4
    assert min(sum(1 for e in K6.edges if len(set(e) & set(S)) > 2) for S in all_subsets(6, 4)) == 4


def test_extremal_graph_space_certificate_recounts():
    inst = gen_pikhurko(8)
    J = clique_complex(inst.graph, 4)
    c = detect_space_barrier(J, Fraction(1, 100))
    assert c is not None and len(c.S) == c.j * 8 // 4
    brute = sum(1 for e in J.levels[4] if len(set(e) & set(c.S)) > c.j)
    assert brute == c.violation_count <= c.threshold


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_space_certificates_are_minimal(seed):
    rng = random.Random(seed)
    n = rng.choice([6, 9])
    H = KGraph(n, 3, [e for e in all_subsets(n, 3) if rng.random() < 0.4])
    c = detect_space_barrier(H, Fraction(1))
    assert c is not None
    best = min(sum(1 for e in H.edges if len(set(e) & set(S)) > c.j) for S in all_subsets(n, c.j * n // 3))
    assert c.violation_count == best


# divisibility barriers ---------------------------------------------------------------

def test_parity_graph_certificate():
    G, P = index_filter_graph([3, 3], 3, EX1)
    c = detect_divisibility_barrier(G, Fraction(1, 1000))
    assert sorted(c.partition.parts) == sorted(P.parts)
    parts = sorted(c.partition.parts)
    # in (V_1, V_2) order the lattice is the even-first-coordinate one
    L = c.lattice if c.partition.parts == tuple(parts) else lattice_from_generators(
        [tuple(reversed(b)) for b in c.lattice.basis], 2)
    for x in itertools.product(range(-3, 4), repeat=2):
        if sum(x) % 3 == 0:
            assert contains(L, x) == (x[0] % 2 == 0)


def test_complete_graph_has_no_divisibility_barrier():
    assert detect_divisibility_barrier(K6, Fraction(1, 1000)) is None


def test_extremal_graph_parity():
    for n in (8, 12):
        inst = gen_pikhurko(n)
        J = clique_complex(inst.graph, 4)
        V1 = inst.partition.parts[0]
        rest = [v for v in range(n) if v not in V1]
        counts = count_by_index(J.top(), VertexPartition([V1, rest]))
        assert all(i[0] % 2 == 0 for i in counts)
    c = detect_divisibility_barrier(clique_complex(gen_pikhurko(8).graph, 4).top(), Fraction(1, 1000))
    assert c is not None


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_divisibility_certificates_recount(seed):
    rng = random.Random(seed)
    n = 6
    H = KGraph(n, 3, [e for e in all_subsets(n, 3) if rng.random() < rng.uniform(0.2, 0.8)])
    mu = Fraction(rng.randint(0, 20), 1000)
    c = detect_divisibility_barrier(H, mu)
    if c is None:
        return
    P = c.partition
    hist = index_histogram(H.edges, P.labels, P.d)
    t = robust_threshold(mu, n, 3)
    L = lattice_from_generators([i for i, m in hist.items() if m >= t], P.d)
    assert L == c.lattice
    assert not contains(L, c.witness) and sum(c.witness) % 3 == 0
    assert not is_complete(L, 3).complete
    M = perfect_matching(H)
    if M is not None:
        # the matching's index sum is i(V), which lies in the full edge lattice
        full = lattice_from_generators(list(hist), P.d)
        assert contains(full, P.sizes)


# the trichotomy --------------------------------------------------------------------------

def test_analyze_outcomes():
    assert analyze(downward_closure(K6.edges, 6, 3)).outcome == "matching"
    G, _ = index_filter_graph([3, 3], 3, EX1)
    r = analyze(downward_closure(G.edges, 6, 3), min_part=1)
    assert r.outcome in ("divisibility_barrier", "space_and_divisibility_barrier")
    assert r.divisibility is not None
    s = analyze(gen_space_barrier(9, 3, 1, 4).complex())
    assert s.space is not None and s.max_matching_size == 2


# counting and graphs -------------------------------------------------------------------

def test_index_counts_of_complete_graph():
    counts = count_by_index(K6, VertexPartition([[0, 1, 2], [3, 4, 5]]))
    assert counts == {(a, 3 - a): math.comb(3, a) * math.comb(3, 3 - a) for a in range(4)}
    assert count_by_index(KGraph(6, 3, []), VertexPartition([[0, 1, 2], [3, 4, 5]])) == {}


def test_goodman_examples():
    assert goodman_check(KGraph(5, 2, all_subsets(5, 2))) == (1, 1, True)
    assert goodman_check(KGraph(5, 2, [])) == (0, 0, True)
    K33 = KGraph(6, 2, [(a, b) for a in range(3) for b in range(3, 6)])
    assert goodman_check(K33) == (Fraction(3, 5), 0, False)


@pytest.mark.parametrize("n,d", [(4, 2), (5, 3), (6, 2), (6, 3), (7, 4)])
def test_set_partition_counts(n, d):
    labs = list(set_partitions(range(n), d))
    assert len(labs) == _stirling2(n, d)
    assert len({tuple(l) for l in labs}) == len(labs)
    big = [l for l in labs if min(l.count(b) for b in range(d)) >= 2]
    assert big == list(set_partitions(range(n), d, 2))

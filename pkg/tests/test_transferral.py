import itertools
import random
from collections import Counter, deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import all_subsets, brute_digraph, brute_simple_transferral_size, chi

from hyperbarrier.constructions import gen_space_barrier, index_filter_graph
from hyperbarrier.core import InputError, KGraph, VertexPartition
from hyperbarrier.lattice import lattice_from_generators
from hyperbarrier.transferral import (MatchedSystem, Transferral, TransferralNotFound,
                                      bidirectional_downgrade, cancel_and_extend,
                                      complete_transferral_digraph, compose_simple,
                                      find_transferral, receiving_partition,
                                      small_sum_representation, transferral_digraph,
                                      verify_transferral)
from hyperbarrier.verify import perfect_matchings, random_matched_system

EX1 = lattice_from_generators([(-2, 2), (0, 1)])
K6 = MatchedSystem(KGraph(6, 3, all_subsets(6, 3)), [(0, 1, 2), (3, 4, 5)])


def _parity_system():
    G, P = index_filter_graph([4, 2], 3, EX1)
    return MatchedSystem(G, [(0, 1, 4), (2, 3, 5)]), P


# verification and search -------------------------------------------------------

def test_empty_transferral_verifies():
    assert verify_transferral(K6, Transferral((), (), 2, 2))


def test_single_swap():
    t = Transferral([(0, 4, 5)], [(3, 4, 5)], 0, 3)
    assert verify_transferral(K6, t)
    assert not verify_transferral(K6, Transferral([(0, 4, 5)], [(3, 4, 5)], 0, 3, b=2))


def test_non_edges_are_errors():
    with pytest.raises(InputError):
        verify_transferral(K6, Transferral([(0, 4, 5)], [(0, 4, 5)], 0, 3))
    G, _ = index_filter_graph([4, 2], 3, EX1)
    sys = MatchedSystem(G, [(0, 1, 4), (2, 3, 5)])
    with pytest.raises(InputError):
        verify_transferral(sys, Transferral([(0, 1, 2)], [(0, 1, 4)], 2, 4))


def test_matching_must_be_perfect():
    with pytest.raises(InputError):
        MatchedSystem(KGraph(6, 3, all_subsets(6, 3)), [(0, 1, 2)])
    with pytest.raises(InputError):
        MatchedSystem(KGraph(6, 3, all_subsets(6, 3)), [(0, 1, 2), (2, 3, 4)])


def test_find_loop_is_empty():
    t = find_transferral(K6, 4, 4, 1, 3)
    assert t.size == 0 and verify_transferral(K6, t)


def test_find_simple_swap():
    t = find_transferral(K6, 0, 3, 1, 3)
    assert t.size == 1 and t.b == 1 and verify_transferral(K6, t)


@pytest.mark.parametrize("prune", [True, False])
def test_space_barrier_blocks_transfers_out_of_S(prune):
    # every edge meets S at most once and every matching edge exactly once
    inst = gen_space_barrier(6, 3, 1, 2)
    S = {0, 1}
    assert all(len(set(e) & S) <= 1 for e in inst.graph.edges)
    for M in perfect_matchings(inst.graph)[:3]:
        sys = MatchedSystem(inst.graph, M)
        for u in S:
            for v in set(range(6)) - S:
                assert find_transferral(sys, u, v, 3, 4, prune=prune) is None


def test_search_agrees_with_enumeration_on_small_systems():
    for seed in range(12):
        sys = random_matched_system(seed)
        J = sys.J.edges
        for u, v in itertools.permutations(range(6), 2):
            t = find_transferral(sys, u, v, 1, 2)
            want = brute_simple_transferral_size(J, sys.M, 6, u, v, 2)
            assert (t.size if t else None) == want


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_decompose_and_bfs_find_the_same_sizes(seed):
    sys = random_matched_system(seed)
    for u, v in itertools.permutations(range(6), 2):
        a = find_transferral(sys, u, v, 2, 3, prune=False)
        b = find_transferral(sys, u, v, 2, 3, prune=False, method="bfs")
        assert (a is None) == (b is None)
        if a is not None:
            assert (a.size, a.b) == (b.size, b.b)
            assert verify_transferral(sys, a) and verify_transferral(sys, b)
        c = find_transferral(sys, u, v, 2, 3)
        assert (c.size if c else None) == (a.size if a else None)


# digraphs ---------------------------------------------------------------------------

def test_size_zero_gives_loops_only():
    D = transferral_digraph(K6, 0)
    assert D.edges() == [(u, u) for u in range(6)]


def test_complete_system_digraphs():
    D1 = transferral_digraph(K6, 1)
    assert set(D1.edges()) == brute_digraph(K6.J.edges, K6.M, 6, 1)
    assert len(D1.edges()) == 24
    D2 = transferral_digraph(K6, 2)
    assert D2.is_complete_on(range(6))


def test_parity_system_has_no_crossing_arcs():
    sys, P = _parity_system()
    for ell in (1, 2, 3):
        D = transferral_digraph(sys, ell)
        assert not any(P.part_of(u) != P.part_of(v) for u, v in D.edges())
    D = transferral_digraph(sys, 2)
    assert set(D.edges()) == brute_digraph(sys.J.edges, sys.M, 6, 2)


def test_pair_and_reach_routes_agree():
    for seed in range(20):
        sys = random_matched_system(seed)
        for ell in (1, 2, 3):
            assert transferral_digraph(sys, ell).adj == transferral_digraph(sys, ell, method="reach").adj


def test_parallel_digraph_matches_serial():
    sys = random_matched_system(5)
    assert transferral_digraph(sys, 3, jobs=2) == transferral_digraph(sys, 3, jobs=1)


def test_digraph_laws_on_random_systems():
    for seed in range(10):
        sys = random_matched_system(seed)
        D = [transferral_digraph(sys, ell) for ell in range(4)]
        for a, b in zip(D, D[1:]):
            assert all(b.has_edge(u, v) for u, v in a.edges())
        for l1, l2 in ((1, 1), (1, 2)):
            for u, w in D[l1].edges():
                for v in D[l2].adj[w]:
                    assert D[l1 + l2].has_edge(u, v)


# composition and downgrading -----------------------------------------------------------

def test_composition_sizes():
    a = find_transferral(K6, 0, 3, 1, 1)
    b = find_transferral(K6, 3, 1, 1, 1)
    c = compose_simple(K6, a, b)
    assert (c.u, c.v, c.size) == (0, 1, 2) and verify_transferral(K6, c)
    d = compose_simple(K6, c, find_transferral(K6, 1, 4, 1, 1))
    assert (d.u, d.v, d.size) == (0, 4, 3) and verify_transferral(K6, d)
    e = compose_simple(K6, Transferral((), (), 0, 0), a)
    assert (e.u, e.v, e.size) == (0, 3, 1) and verify_transferral(K6, e)


def test_composition_endpoint_mismatch():
    a = find_transferral(K6, 0, 3, 1, 1)
    with pytest.raises(InputError):
        compose_simple(K6, a, a)


def test_downgrade_of_simple_is_unchanged():
    t = find_transferral(K6, 0, 3, 1, 1)
    back = find_transferral(K6, 3, 0, 1, 1)
    assert bidirectional_downgrade(K6, t, back) == t


def test_downgrade_of_double_transfer():
    # a 2-fold transfer needs at least two edges, since an edge holds u at most once
    t = Transferral([(0, 4, 5), (0, 4, 5)], [(3, 4, 5), (3, 4, 5)], 0, 3, b=2)
    assert verify_transferral(K6, t)
    back = Transferral([(1, 2, 3)], [(0, 1, 2)], 3, 0)
    out = bidirectional_downgrade(K6, t, back)
    assert out.size == 3 and out.b == 1 and verify_transferral(K6, out)


def test_downgrade_endpoint_mismatch():
    t = find_transferral(K6, 0, 3, 1, 1)
    with pytest.raises(InputError):
        bidirectional_downgrade(K6, t, find_transferral(K6, 3, 1, 1, 1))


# receiving partitions --------------------------------------------------------------------

def _bfs_dist(adj, src, dst):
    seen = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        if x == dst:
            return seen[x]
        for y in adj[x]:
            if y not in seen:
                seen[y] = seen[x] + 1
                q.append(y)
    return None


def test_complete_digraph_one_part():
    adj = [set(range(8)) for _ in range(8)]
    rp = receiving_partition(adj, 3, 0.1)
    assert rp.parts == (tuple(range(8)),) and len(rp.receivers) == 1 and rp.ok


def test_two_cliques_two_parts():
    adj = [set(range(4)) if x < 4 else set(range(4, 8)) for x in range(8)]
    rp = receiving_partition(adj, 3, 0.1)
    assert sorted(rp.parts) == [(0, 1, 2, 3), (4, 5, 6, 7)]


def test_random_tournament_reaches_receivers():
    rng = random.Random(0)
    n = 30
    adj = [{x} for x in range(n)]
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < 0.5:
            adj[a].add(b)
        else:
            adj[b].add(a)
    rp = receiving_partition(adj, 10, 0.2)
    assert sorted(x for p in rp.parts for x in p) == list(range(n))
    worst = 0
    for p, r in zip(rp.parts, rp.receivers):
        for x in p:
            d = _bfs_dist(adj, x, r)
            assert d is not None and d <= 10
            worst = max(worst, d)
    assert worst <= rp.max_path <= 10


def test_path_bound_below_two_rejected():
    with pytest.raises(InputError):
        receiving_partition([{0}], 1, 0.1)


# cancellation and small sums --------------------------------------------------------------

def test_cancel_nothing():
    assert cancel_and_extend(K6, VertexPartition([range(6)]), [], [], 1, 3) == ((), ())


def test_cancel_one_edge():
    T, Tp = cancel_and_extend(K6, VertexPartition([range(6)]), [(0, 3, 4)], [], 1, 3)
    assert chi(6, T) == chi(6, Tp)
    assert len(T) == len(Tp)
    assert Counter(T)[(0, 3, 4)] >= 1
    assert all(e in K6.M for e in Tp)


def test_cancel_on_random_systems():
    rng = random.Random(2)
    done = 0
    for seed in range(40):
        sys = random_matched_system(seed)
        P = VertexPartition([range(6)])
        A = rng.sample(sys.J.edges, 2)
        Ap = [rng.choice(sys.M)]
        try:
            T, Tp = cancel_and_extend(sys, P, A, Ap, 2, 4)
        except TransferralNotFound:
            continue
        done += 1
        assert chi(6, T) == chi(6, Tp)
        assert not Counter(A) - Counter(T) and not Counter(Ap) - Counter(Tp)
    assert done >= 5


def test_cancel_needs_proper_system():
    with pytest.raises(InputError):
        cancel_and_extend(K6, VertexPartition([[0, 1, 2, 3], [4, 5]]), [], [], 1, 3)


def test_small_sums():
    assert small_sum_representation([(1, -1)], (2, -2), 3) == (((1, -1), (1, -1)), ())
    assert small_sum_representation([(2, 1), (1, 2)], (1, -1), 3) == (((2, 1),), ((1, 2),))
    assert small_sum_representation([(2, 1)], (0, 0), 3) == ((), ())


def test_small_sum_errors():
    with pytest.raises(InputError):
        small_sum_representation([(2, 1)], (1, 0), 3)
    with pytest.raises(TransferralNotFound):
        small_sum_representation([(1, -1)], (3, -3), 2)


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=3),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_small_sum_reconstructs_target(X, co):
    x = tuple(sum(c * v[t] for c, v in zip(co, X)) for t in range(2))
    S1, S2 = small_sum_representation(X, x, 6)
    got = tuple(sum(v[t] for v in S1) - sum(v[t] for v in S2) for t in range(2))
    assert got == x and len(S1) <= 6 and len(S2) <= 6


# completion pipeline ------------------------------------------------------------------------

def test_complete_system_completes():
    r = complete_transferral_digraph(K6, VertexPartition([range(6)]), 1, 3, 2, 50)
    assert r.complete and r.digraph.is_complete_on(range(6))
    for (u, v), t in r.digraph.witnesses.items():
        assert (t.u, t.v) == (u, v) and verify_transferral(K6, t)


def test_parity_system_fails_at_lattice():
    G, P = index_filter_graph([4, 5], 3, EX1)
    sys = MatchedSystem(G, [(0, 1, 4), (2, 3, 5), (6, 7, 8)])
    r = complete_transferral_digraph(sys, VertexPartition([range(9)]), 2, 4, 2, 50)
    assert not r.complete and r.stage == "lattice"
    assert r.detail["witness"] == [1, -1]
    assert r.detail["lattice"]["basis"] == [[1, 2], [0, 6]]


def test_space_barrier_fails_at_irreducibility():
    inst = gen_space_barrier(6, 3, 1, 2)
    sys = MatchedSystem(inst.graph, perfect_matchings(inst.graph)[0])
    r = complete_transferral_digraph(sys, VertexPartition([range(6)]), 2, 4, 2, 50)
    assert not r.complete and r.stage == "irreducibility"
    assert r.detail["u"] in (0, 1) and r.detail["v"] not in (0, 1)

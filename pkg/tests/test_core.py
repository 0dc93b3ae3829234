import itertools
import math
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import all_subsets, brute_degree_sequence

from hyperbarrier.constructions import gen_partite_space_barrier, gen_pikhurko, gen_space_barrier
from hyperbarrier.core import (VACUOUS, InputError, KComplex, KGraph, VertexPartition, build_allocation,
                               clique_complex, complete_complex, degree_sequence, density_at_index,
                               downward_closure, f_degree_sequence, index_profile, index_vector,
                               partite_complete_complex, partite_degree_sequence)


def _brute_partite(J: KComplex, P: VertexPartition):
    lab = P.labels
    lv = [set(l) for l in J.levels]
    out = []
    for j in range(J.k):
        best = None
        for e in lv[j]:
            for i, part in enumerate(P.parts):
                if any(lab[v] == i for v in e):
                    continue
                c = sum(1 for w in part if tuple(sorted(e + (w,))) in lv[j + 1])
                best = c if best is None else min(best, c)
        out.append(best)
    return out


def _vals(ds):
    return [None if v is VACUOUS else v for v in ds]


# closure and clique complexes -------------------------------------------------

def test_closure_of_one_edge():
    J = downward_closure([(0, 1, 2)], 3)
    assert J.levels == (((),), ((0,), (1,), (2,)), ((0, 1), (0, 2), (1, 2)), ((0, 1, 2),))
    assert J.is_complex


def test_closure_of_nothing():
    J = downward_closure([], 5)
    assert J.levels == (((),),)


def test_closure_of_all_triples_of_four():
    J = downward_closure(all_subsets(4, 3), 4)
    assert [len(l) for l in J.levels] == [math.comb(4, r) for r in range(4)]


def test_out_of_range_vertex_rejected():
    with pytest.raises(InputError):
        downward_closure([(0, 1, 7)], 5)


def test_clique_complex_of_complete_graph():
    J = clique_complex(KGraph(5, 3, all_subsets(5, 3)), 4)
    assert len(J.levels[4]) == 5


def test_clique_complex_drops_removed_clique():
    T = (0, 1, 2, 3)
    G = KGraph(8, 3, [e for e in all_subsets(8, 3) if not set(e) <= set(T)])
    J = clique_complex(G, 4)
    assert T not in J.levels[4]
    assert len(J.levels[4]) == 70 - 1 - 4 * 4  # every 4-set holding 3 vertices of T loses a triple


def test_clique_complex_of_extremal_graph_matches_enumeration():
    G = gen_pikhurko(8).graph
    brute = [c for c in all_subsets(8, 4) if all(t in G for t in itertools.combinations(c, 3))]
    assert list(clique_complex(G, 4).levels[4]) == brute


def test_clique_level_below_edge_size_rejected():
    with pytest.raises(InputError):
        clique_complex(KGraph(4, 3, []), 2)


@given(st.integers(0, 2 ** 20 - 1), st.integers(3, 6))
def test_closure_is_idempotent(mask, n):
    edges = [e for i, e in enumerate(all_subsets(n, 3)) if mask >> i & 1]
    J = downward_closure(edges, n, 3)
    again = downward_closure([e for lvl in J.levels[1:] for e in lvl], n, 3)
    assert again.levels == J.levels


# degree sequences --------------------------------------------------------------

def test_complete_complex_degrees():
    assert _vals(degree_sequence(complete_complex(6, 3))) == [6, 5, 4]


def test_tetrahedron_complex_of_complete_graph():
    J = clique_complex(KGraph(6, 3, all_subsets(6, 3)), 4)
    brute = brute_degree_sequence(J.levels, 6, 4)
    assert _vals(degree_sequence(J)) == brute
    assert brute[3] == 3


def test_space_barrier_degrees():
    J = gen_space_barrier(6, 3, 1, 2).complex()
    assert brute_degree_sequence(J.levels, 6, 3) == [6, 4, 3]
    assert _vals(degree_sequence(J)) == [6, 4, 3]
    # n - |S| - (i - j) for i >= j
    assert [6 - 2 - (i - 1) for i in (1, 2)] == [4, 3]


def test_empty_level_is_vacuous():
    J = KComplex(4, 2, [[()], [(0,)], []])
    ds = degree_sequence(J)
    assert ds[0] == 1 and ds[1] == 0
    J2 = KComplex(4, 2, [[()], [], []])
    assert degree_sequence(J2)[1] is VACUOUS
    assert degree_sequence(J2).dominates((0, 99))


@given(st.integers(0, 2 ** 20 - 1), st.integers(4, 6))
def test_degrees_non_increasing_on_complexes(mask, n):
    edges = [e for i, e in enumerate(all_subsets(n, 3)) if mask >> i & 1]
    if not edges:
        return
    J = downward_closure(edges, n, 3)
    ds = degree_sequence(J)
    assert _vals(ds) == brute_degree_sequence(J.levels, n, 3)
    for r in range(2, 3):
        assert ds[r] <= ds[r - 1]


def test_partite_complete_degrees():
    P = VertexPartition.from_sizes([4, 4, 4])
    assert _vals(partite_degree_sequence(partite_complete_complex(P, 3), P)) == [4, 4, 4]


def test_partite_space_barrier_degrees():
    inst = gen_partite_space_barrier(6, 3, 3, 1, 3)
    J, P = inst.complex(), inst.partition
    assert _vals(partite_degree_sequence(J, P)) == _brute_partite(J, P) == [6, 3, 3]


def test_single_partite_edge():
    P = VertexPartition([[0], [1], [2]])
    assert _vals(partite_degree_sequence(downward_closure([(0, 1, 2)], 3), P)) == [1, 1, 1]


def test_partite_degrees_need_partite_complex():
    P = VertexPartition([[0, 1], [2]])
    with pytest.raises(InputError):
        partite_degree_sequence(downward_closure([(0, 1, 2)], 3), P)


def test_allocation_degrees_reduce_to_plain_and_partite():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(4, 6)
        J = downward_closure([e for e in all_subsets(n, 3) if rng.random() < 0.5], n, 3)
        F = build_allocation("nonpartite", 3)
        assert f_degree_sequence(J, VertexPartition([range(n)]), F) == degree_sequence(J)
    P = VertexPartition.from_sizes([2, 2, 2, 2])
    full = partite_complete_complex(P, 3)
    for _ in range(20):
        keep = [e for e in full.levels[3] if rng.random() < 0.6]
        J = downward_closure(keep, 8, 3)
        F = build_allocation("partite_injective", 3, 4)
        assert f_degree_sequence(J, P, F) == partite_degree_sequence(J, P)


def test_allocation_degrees_over_empty_first_level():
    J = KComplex(3, 3, [[()], [], [], []])
    ds = f_degree_sequence(J, VertexPartition([range(3)]), build_allocation("nonpartite", 3))
    assert ds[0] == 0 and ds[1] is VACUOUS and ds[2] is VACUOUS


# index vectors and densities -----------------------------------------------------

def test_index_vectors():
    P = VertexPartition([[0, 1, 2], [3, 4, 5]])
    assert index_vector((0, 3, 4), P) == (1, 2)
    assert index_vector((), P) == (0, 0)
    assert index_vector(range(6), P) == (3, 3)


def test_density_of_complete_complex():
    P = VertexPartition.from_sizes([2, 3])
    J = complete_complex(5, 3)
    for i in [(0, 0), (1, 0), (1, 1), (2, 1), (0, 3)]:
        assert density_at_index(J, P, i) == 1


def test_density_direct_count():
    P = VertexPartition.from_sizes([2, 2])
    J = KComplex.from_edges(4, 2, [(0,), (1,), (2,), (3,), (0, 2), (0, 3), (1, 2)])
    assert density_at_index(J, P, (1, 1)) == Fraction(3, 4)


def test_density_of_excluded_class_is_zero():
    inst = gen_pikhurko(8)
    J = clique_complex(inst.graph, 4)
    assert density_at_index(J, inst.partition, (0, 1, 1, 1)) == 0


def test_density_needs_sets_of_that_index():
    with pytest.raises(InputError):
        density_at_index(complete_complex(3, 3), VertexPartition([[0], [1, 2]]), (2, 0))


def test_profile_matches_direct_counts():
    inst = gen_pikhurko(12)
    J, P = clique_complex(inst.graph, 4), inst.partition
    prof = index_profile(J, P)
    for i in itertools.product(range(3), repeat=4):
        if sum(i) <= 4 and all(a <= s for a, s in zip(i, P.sizes)):
            assert density_at_index(J, P, i, prof) == density_at_index(J, P, i)


@given(st.integers(0, 2 ** 30), st.integers(2, 3))
def test_product_bound_on_partite_complexes(seed, r):
    # density at a 0/1 index is at most the product bound from its faces
    rng = random.Random(seed)
    P = VertexPartition.from_sizes([rng.randint(1, 3) for _ in range(r)])
    full = partite_complete_complex(P, r)
    keep = [e for e in full.levels[r] if rng.random() < rng.random()]
    J = downward_closure(keep, P.n, r)
    prof = index_profile(J, P)
    for i in itertools.product((0, 1), repeat=r):
        m = sum(i)
        if m < 2:
            continue
        d = density_at_index(J, P, i, prof)
        faces = [density_at_index(J, P, tuple(a - (t == j) for t, a in enumerate(i)), prof)
                 for j in range(r) if i[j]]
        assert math.prod(faces) >= d ** (m - 1)


# allocations -----------------------------------------------------------------------

def _position_counts(F):
    out = Counter()
    for f, m in F.functions:
        for pos, part in enumerate(f):
            out[(pos, part)] += m
    return out


def test_nonpartite_allocation():
    F = build_allocation("nonpartite", 3)
    assert F.size == 6 and F.is_uniform and F.is_connected


def test_injective_allocation():
    F = build_allocation("partite_injective", 3, 4)
    assert F.size == 24 and F.is_uniform and F.is_connected
    assert all(m == 1 and len(set(f)) == 3 for f, m in F.functions)


def test_allocation_from_index_set():
    F = build_allocation("from_index_set", 3, 2, index_set=[(2, 1), (1, 2)])
    assert F.size == 12
    counts = _position_counts(F)
    assert set(counts.values()) == {6}
    assert F.is_uniform


def test_allocation_index_vector_must_sum_to_k():
    with pytest.raises(InputError):
        build_allocation("from_index_set", 3, 2, index_set=[(1, 1)])


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda t: sum(t) == 3),
                min_size=1, max_size=4))
def test_allocation_closed_under_permutation(I):
    F = build_allocation("from_index_set", 3, 2, index_set=I)
    assert F.size == math.factorial(3) * len(I)
    fs = dict(F.functions)
    for f, m in F.functions:
        for perm in itertools.permutations(range(3)):
            assert fs[tuple(f[p] for p in perm)] == m
    counts = _position_counts(F)
    uniform = all(counts[(pos, part)] * 2 == F.size for pos in range(3) for part in range(2))
    assert F.is_uniform == uniform

"""Named verification suites, shared by the command line and the test suite."""
from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import geometry, solver
from .constructions import (gen_divisibility_barrier, gen_pikhurko, gen_random_kgraph,
                            gen_random_min_codegree, gen_random_min_degree_complex, gen_space_barrier,
                            space_barrier_complex)
from .core import (VACUOUS, KComplex, KGraph, VertexPartition, clique_complex, degree_sequence,
                   density_at_index, index_profile, index_vector)
from .lattice import IntegerLattice, contains, is_complete, is_minimal, lattice_from_generators
from .transferral import (MatchedSystem, Transferral, TransferralNotFound, _chi, bidirectional_downgrade,
                          cancel_and_extend, compose_simple, find_transferral, transferral_digraph,
                          verify_transferral)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


@dataclass
class SuiteResult:
    suite: str
    criterion: int
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "criterion": self.criterion, "passed": self.passed,
                "elapsed": round(self.elapsed, 3),
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


SUITES = {}


def suite(name: str, criterion: int, budget: float | None = None):
    def wrap(fn):
        def run() -> SuiteResult:
            res = SuiteResult(name, criterion)
            t0 = time.perf_counter()
            fn(res.checks)
            res.elapsed = time.perf_counter() - t0
            if budget is not None:
                res.checks.append(Check(f"runtime under {budget:g} s", res.elapsed < budget,
                                        f"{res.elapsed:.2f} s"))
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        SUITES[name] = run
        return run
    return wrap


def run_suite(name: str) -> SuiteResult:
    return SUITES[name]()


# 1 -------------------------------------------------------------------------------

@suite("pikhurko", 1, budget=5)
def _pikhurko(out):
    """Extremal tetrahedron-packing instances: codegree, no packing, only even tetrahedra."""
    for n, want in ((8, 3), (12, 7)):
        inst = gen_pikhurko(n)
        G = inst.graph
        d = G.min_codegree()
        out.append(Check(f"n={n}: minimum codegree {want}", d == want, f"got {d}"))
        out.append(Check(f"n={n}: no perfect tetrahedron packing", solver.perfect_clique_packing(G, 4) is None))
        P = inst.partition
        bip = VertexPartition([P.parts[0], tuple(sorted(v for p in P.parts[1:] for v in p))])
        counts = solver.count_by_index(clique_complex(G, 4).top(), bip)
        odd = sum(c for i, c in counts.items() if i[0] % 2)
        out.append(Check(f"n={n}: odd tetrahedra 0", odd == 0, f"classes {dict(counts)}"))


# 2 -------------------------------------------------------------------------------

def space_law_cases():
    for k in (3, 4):
        for n in range(k, 13):
            for j in range(1, k):
                base = j * n // k
                for s in range(base, base + 3):
                    if s <= n:
                        yield n, k, j, s


@suite("space-law", 2, budget=60)
def _space_law(out):
    """Maximum matching of the space-barrier top level equals min(n/k, (n-s)/(k-j)) rounded down."""
    bad, count = [], 0
    for n, k, j, s in space_law_cases():
        J = space_barrier_complex(n, k, j, range(s))
        got = len(solver.max_matching(J.top()))
        want = min(n // k, (n - s) // (k - j))
        count += 1
        if got != want:
            bad.append((n, k, j, s, got, want))
    out.append(Check(f"matching law on {count} parameter sets", not bad, f"mismatches {bad[:5]}" if bad else ""))


# 3 -------------------------------------------------------------------------------

def random_barrier_lattice(seed: int):
    """Part sizes and a lattice L with i(V) not in L, k=3, n in {6, 9}, d <= 3."""
    rng = random.Random(seed)
    while True:
        n = rng.choice((6, 9))
        d = rng.choice((1, 2, 3))
        cuts = sorted(rng.sample(range(1, n), d - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, d + 1))]
        L = lattice_from_generators(gens, d)
        if not contains(L, sizes):
            return sizes, L


@suite("divisibility", 3, budget=120)
def _divisibility(out):
    """Index-filtered graphs with i(V) outside L have no perfect matching and a detected barrier."""
    no_pm = found = 0
    bad = []
    for seed in range(50):
        sizes, L = random_barrier_lattice(seed)
        inst = gen_divisibility_barrier(sizes, 3, L)
        G = inst.graph
        pm = solver.perfect_matching(G)
        cert = solver.detect_divisibility_barrier(G, Fraction(1, 1000), min_part=1)
        ok_cert = (cert is not None and cert.regime == "exhaustive" and cert.witness not in cert.lattice
                   and sum(cert.witness) % 3 == 0)
        no_pm += pm is None
        found += ok_cert
        if pm is not None or not ok_cert:
            bad.append(seed)
    out.append(Check("no perfect matching on 50 seeded barriers", no_pm == 50, f"{no_pm}/50"))
    out.append(Check("exhaustive detector certifies all 50", found == 50, f"{found}/50, failing seeds {bad}"))


# 4 -------------------------------------------------------------------------------

EXAMPLE_1 = IntegerLattice(2, [(-2, 2), (0, 1)])
EXAMPLE_2 = IntegerLattice(3, [(-2, 1, 1), (1, -2, 1), (1, 0, 0)])


@suite("lattice-examples", 4)
def _lattice_examples(out):
    """Membership characterisations and completeness/minimality flags of the two example lattices."""
    box2 = list(itertools.product(range(-4, 5), repeat=2))
    agree = all((v in EXAMPLE_1) == (v[0] % 2 == 0) for v in box2)
    out.append(Check("example 1: member iff x even on [-4,4]^2", agree))
    box3 = list(itertools.product(range(-3, 4), repeat=3))
    agree = all((v in EXAMPLE_2) == ((v[1] - v[2]) % 3 == 0) for v in box3)
    out.append(Check("example 2: member iff y = z mod 3 on [-3,3]^3", agree))
    c1, m1 = is_complete(EXAMPLE_1, 3), is_minimal(EXAMPLE_1)
    out.append(Check("example 1: incomplete for k=3, minimal", not c1.complete and m1.minimal,
                     f"witness {c1.witness}"))
    c2, m2 = is_complete(EXAMPLE_2, 4), is_minimal(EXAMPLE_2)
    out.append(Check("example 2: incomplete for k=4, minimal", not c2.complete and m2.minimal,
                     f"witness {c2.witness}"))


# 5 -------------------------------------------------------------------------------

TRIPLES_6 = list(itertools.combinations(range(6), 3))


def _dichotomy(H: KGraph, use_shortcut: bool) -> bool:
    fm, cert = geometry.solve_fpm(H, use_shortcut=use_shortcut)
    if (fm is None) == (cert is None):
        return False
    return fm.is_valid(H) if fm is not None else cert.is_valid(H)


@suite("lp-duality", 5, budget=120)
def _lp_duality(out):
    """Exactly one of a fractional perfect matching or a Farkas certificate, each verified."""
    bad = 0
    for seed in range(500):
        rng = random.Random(seed)
        p = rng.random()
        H = KGraph(6, 3, [e for e in TRIPLES_6 if rng.random() < p])
        bad += not _dichotomy(H, use_shortcut=False)
    out.append(Check("500 seeded 3-graphs on 6 vertices", bad == 0, f"{bad} failures"))
    bad = total = 0
    for m in range(7):
        for es in itertools.combinations(TRIPLES_6, m):
            total += 1
            bad += not _dichotomy(KGraph(6, 3, es), use_shortcut=True)
    out.append(Check(f"all {total} 3-graphs on 6 vertices with <= 6 edges", bad == 0, f"{bad} failures"))


# 6 -------------------------------------------------------------------------------

@suite("fpm-degrees", 6)
def _fpm_degrees(out):
    """3-systems with degree sequence >= (n, 2n/3, n/3) have a fractional perfect matching."""
    ok_deg = ok_fpm = 0
    for seed in range(100):
        n = 6 if seed < 50 else 9
        J = gen_random_min_degree_complex(n, 3, [2 * n // 3, n // 3], seed=seed)
        ok_deg += degree_sequence(J).dominates((n, 2 * n // 3, n // 3))
        fm = geometry.fractional_perfect_matching(J.top())
        ok_fpm += fm is not None and fm.is_valid(J.top())
    out.append(Check("degree sequences meet the bound", ok_deg == 100, f"{ok_deg}/100"))
    out.append(Check("fractional perfect matching found", ok_fpm == 100, f"{ok_fpm}/100"))


# 7 -------------------------------------------------------------------------------

def random_matched_system(seed: int, n: int = 6, k: int = 3) -> MatchedSystem:
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    M = [tuple(sorted(order[i:i + k])) for i in range(0, n, k)]
    p = rng.uniform(0.15, 0.6)
    edges = set(M) | {e for e in itertools.combinations(range(n), k) if rng.random() < p}
    return MatchedSystem(KGraph(n, k, edges), M)


def _empty(u):
    return Transferral((), (), u, u, 1)


@suite("transferral-calculus", 7, budget=60)
def _transferral_calculus(out):
    """Digraph loops, monotonicity, composition closure, the downgrade size law, verification closure."""
    tally = Counter()
    fails = Counter()
    L = 3
    for seed in range(100):
        sys = random_matched_system(seed)
        n = sys.n
        Ds = [transferral_digraph(sys, l) for l in range(L + 1)]
        tally["loops"] += 1
        fails["loops"] += not all(D.has_edge(u, u) for D in Ds for u in range(n))
        tally["monotone"] += 1
        fails["monotone"] += not all(set(Ds[l].edges()) <= set(Ds[l + 1].edges()) for l in range(L))
        tally["two routes"] += 1
        fails["two routes"] += transferral_digraph(sys, L, method="reach").adj != Ds[L].adj
        for l1 in range(L + 1):
            for l2 in range(L + 1 - l1):
                for (u, w) in Ds[l1].edges():
                    for v in Ds[l2].adj[w]:
                        t1 = Ds[l1].witnesses.get((u, w), _empty(u))
                        t2 = Ds[l2].witnesses.get((w, v), _empty(w))
                        t = compose_simple(sys, t1, t2)
                        tally["composition"] += 1
                        fails["composition"] += not (verify_transferral(sys, t) and t.size <= l1 + l2
                                                     and Ds[l1 + l2].has_edge(u, v))
        for u, v in itertools.permutations(range(n), 2):
            t = find_transferral(sys, u, v, 3, 3)
            back = find_transferral(sys, v, u, 1, 3)
            for x in (t, back):
                if x is not None:
                    tally["verify"] += 1
                    fails["verify"] += not verify_transferral(sys, x)
            if t is None or back is None:
                continue
            candidates = [t]
            if t.b == 1:
                candidates += [Transferral(t.T * b, t.Tprime * b, u, v, b) for b in (2, 3)]
            for tb in candidates:
                out_t = bidirectional_downgrade(sys, tb, back)
                tally["size law"] += 1
                fails["size law"] += not (out_t.size == (tb.b - 1) * back.size + tb.size
                                          and verify_transferral(sys, out_t))
        P = VertexPartition([tuple(range(n))])
        A = [e for e in sys.J.edges if e not in sys.M][:1]
        try:
            T, Tp = cancel_and_extend(sys, P, A, [sys.M[0]], 2, 3)
        except TransferralNotFound:
            tally["cancellation skipped"] += 1
        else:
            tally["cancellation"] += 1
            ok = (_chi(n, T) == _chi(n, Tp) and not Counter(A) - Counter(T)
                  and not Counter([sys.M[0]]) - Counter(Tp) and len(T) == len(Tp))
            fails["cancellation"] += not ok
    for key in ("loops", "monotone", "two routes", "composition", "size law", "verify", "cancellation"):
        out.append(Check(f"{key}", fails[key] == 0 and tally[key] > 0,
                         f"{tally[key] - fails[key]}/{tally[key]} ok"
                         + (f", {tally['cancellation skipped']} systems not irreducible enough"
                            if key == "cancellation" else "")))


# 8 -------------------------------------------------------------------------------

def perfect_matchings(G: KGraph) -> list:
    """Every perfect matching, by brute force."""
    out = []
    for combo in itertools.combinations(G.edges, G.n // G.k):
        if len({v for e in combo for v in e}) == G.n:
            out.append(combo)
    return out


@suite("transferral-obstruction", 8)
def _transferral_obstruction(out):
    """No transferral from outside S into S when every top edge meets S and |S| = n/3."""
    # every triple meets S = {4, 5}: the same complex as 'at most 2 vertices in {0,1,2,3}'
    J = gen_space_barrier(6, 3, 2, 4).complex()
    S = {4, 5}
    G = J.top()
    assert all(S.intersection(e) for e in G.edges)
    Ms = perfect_matchings(G)
    found = []
    for M in Ms:
        sys = MatchedSystem(G, M)
        for u in range(6):
            for v in S:
                if u in S:
                    continue
                t = find_transferral(sys, u, v, 6, 6, prune=False)
                if t is not None:
                    found.append((M, u, v))
    out.append(Check(f"no (u,v)-transferral, u outside S, v in S, B,C <= 6, all {len(Ms)} matchings",
                     not found, f"{len(found)} found"))
    # the complex with at most one vertex of S = {0, 1} per edge: the mirrored obstruction
    J1 = gen_space_barrier(6, 3, 1, 2).complex()
    G1 = J1.top()
    Ms1 = perfect_matchings(G1)
    found = []
    for M in Ms1:
        sys = MatchedSystem(G1, M)
        for u in (0, 1):
            for v in range(2, 6):
                if find_transferral(sys, u, v, 6, 6, prune=False) is not None:
                    found.append((M, u, v))
    out.append(Check(f"at most one vertex of S per edge: no (u,v)-transferral, u in S, v outside S, "
                     f"all {len(Ms1)} matchings", not found, f"{len(found)} found"))
    # same complex, direction u outside S, v in S: transferrals exist, so this check is expected to fail
    found = []
    for M in Ms1:
        sys = MatchedSystem(G1, M)
        for u in range(2, 6):
            for v in (0, 1):
                t = find_transferral(sys, u, v, 6, 6, prune=False)
                if t is not None:
                    found.append((M, t))
    detail = f"{len(found)} found"
    if found:
        M, t = found[0]
        detail += f"; e.g. M={[list(e) for e in M]}, T={[list(e) for e in t.T]}, T'={[list(e) for e in t.Tprime]}"
    out.append(Check("at most one vertex of S per edge: no (u,v)-transferral, u outside S, v in S",
                     not found, detail))


# 9 -------------------------------------------------------------------------------

def random_complex(seed: int) -> KComplex:
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    k = rng.choice((2, 3))
    lv = [{()}, {(v,) for v in range(n) if rng.random() < 0.9}]
    for r in range(2, k + 1):
        cand = [c for c in itertools.combinations(range(n), r)
                if all(s in lv[r - 1] for s in itertools.combinations(c, r - 1))]
        if rng.random() < 1 / 3:
            lv.append(set(cand))
        else:
            p = rng.random()
            lv.append({c for c in cand if rng.random() < p})
    return KComplex(n, k, [sorted(l) for l in lv])


def _indices(P: VertexPartition, k: int):
    sizes = P.sizes
    for i in itertools.product(*(range(min(s, k) + 1) for s in sizes)):
        if sum(i) <= k:
            yield i


def density_checks(J: KComplex, P: VertexPartition) -> Counter:
    """Violations of the three density inequalities for one complex and partition."""
    prof = index_profile(J, P)
    sizes = P.sizes
    k = J.k
    ds = degree_sequence(J)
    allsets = [c for r in range(k + 1) for c in itertools.combinations(range(J.n), r)]
    member = set(e for lvl in J.levels for e in lvl)
    supported_missing = Counter(
        index_vector(c, P) for c in allsets
        if c not in member and all(s in member for r in range(len(c)) for s in itertools.combinations(c, r)))
    idx = list(_indices(P, k))
    dens = {i: density_at_index(J, P, i, prof) for i in idx}
    bad = Counter()

    def d_or_zero(i):
        return dens.get(i, Fraction(0))

    for i in idx:
        for ip in idx:
            if ip != i and all(a <= b for a, b in zip(ip, i)):
                bad["monotone"] += dens[ip] < dens[i]
        s = sum(i)
        if s <= k - 1 and dens[i] > 0:
            lhs = sum(d_or_zero(tuple(a + (t == j) for t, a in enumerate(i))) * sizes[j] for j in range(P.d))
            delta = ds[s]
            bad["degree"] += delta is not VACUOUS and lhs < delta * dens[i]
        if supported_missing[i] == 0 and s >= 1:
            rhs = 1 - sum(i[j] * (1 - dens[tuple(a - (t == j) for t, a in enumerate(i))])
                          for j in range(P.d) if i[j])
            bad["supported"] += dens[i] < rhs
    return bad


@suite("densities", 9)
def _densities(out):
    """Index-density inequalities on random complexes and the clique 4-complex degree bound."""
    total = Counter()
    cases = 0
    for seed in range(300):
        J = random_complex(seed)
        for d in (1, 2, 3):
            for labels in solver.set_partitions(range(J.n), d):
                P = VertexPartition.from_labels(labels)
                total += density_checks(J, P)
                cases += 1
    for key, label in (("monotone", "(i) density monotone under index order"),
                       ("degree", "(ii) degree-density inequality"),
                       ("supported", "(iii) supported-edge inequality")):
        out.append(Check(label, total[key] == 0, f"{total[key]} violations over {cases} (complex, partition) pairs"))
    bad = 0
    for seed in range(300):
        rng = random.Random(seed)
        n = rng.randint(5, 9)
        t = rng.randint(0, n - 2)
        G = gen_random_min_codegree(n, 3, t, seed).graph
        dG = G.min_codegree()
        bound = (n, n - 1, dG, 3 * dG - 2 * n + 3)
        bad += not degree_sequence(clique_complex(G, 4)).dominates(bound)
    out.append(Check("clique 4-complex degree bound on 300 seeded 3-graphs", bad == 0, f"{bad} violations"))


# 10 ------------------------------------------------------------------------------

@suite("goodman", 10, budget=10)
def _goodman(out):
    """Triangle density at least d(2d-1) on random graphs; the checker flags K_{3,3}."""
    bad = []
    for seed in range(200):
        p = random.Random(seed).uniform(0.1, 0.9)
        G = gen_random_kgraph(30, 2, p, seed=seed)
        if not solver.goodman_check(G)[2]:
            bad.append(seed)
    out.append(Check("flag true on 200 seeded graphs, n=30", not bad, f"failing seeds {bad}"))
    K33 = KGraph(6, 2, [(a, b) for a in range(3) for b in range(3, 6)])
    d, t, flag = solver.goodman_check(K33)
    out.append(Check("K_{3,3} flagged false", flag is False and d == Fraction(3, 5) and t == 0,
                     f"d={d}, t={t}"))


# 11 ------------------------------------------------------------------------------

DETERMINISM_RUNS = [
    ["gen", "space", "--n", "6", "--k", "3", "--j", "1", "--s", "2"],
    ["gen", "partite_space", "--part-size", "4", "--r", "3", "--k", "3", "--j", "1", "--s", "2"],
    ["gen", "divisibility", "--part-sizes", "3,3", "--k", "3", "--lattice=-2,2;0,1"],
    ["gen", "pikhurko", "--n", "8"],
    ["gen", "multipartite_hs", "--k", "3", "--n", "3", "--delta-star", "2", "--seed", "5"],
    ["gen", "random_min_codegree", "--n", "9", "--k", "3", "--t", "3", "--seed", "1"],
]


@suite("determinism", 11)
def _determinism(out):
    """Each gen and analyze invocation, run twice, produces byte-identical output."""
    import os
    import tempfile

    from .cli import run
    with tempfile.TemporaryDirectory() as tmp:
        for i, args in enumerate(DETERMINISM_RUNS):
            a = run(args)
            b = run(args)
            out.append(Check(f"{' '.join(args[:2])} repeatable", a[0] == b[0] == 0 and a[1] == b[1]))
            path = os.path.join(tmp, f"inst{i}.json")
            with open(path, "w") as fh:
                fh.write(a[1])
            x = run(["analyze", path, "--seed", "3"])
            y = run(["analyze", path, "--seed", "3"])
            out.append(Check(f"analyze on {args[1]} repeatable", x == y and x[0] in (0, 2, 3),
                             f"exit {x[0]}"))


ORDER = ["pikhurko", "space-law", "divisibility", "lattice-examples", "lp-duality", "fpm-degrees",
         "transferral-calculus", "transferral-obstruction", "densities", "goodman", "determinism"]

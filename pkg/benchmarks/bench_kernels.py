"""Time the compiled search kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 1]
"""
import argparse
import itertools
import random
import timeit

from hyperbarrier import _kernels_py as pure
from hyperbarrier import kernels
from hyperbarrier.constructions import gen_pikhurko, gen_space_barrier
from hyperbarrier.core import clique_complex


def _workloads():
    rng = random.Random(0)
    dense = [e for e in itertools.combinations(range(21), 3) if rng.random() < 0.1]
    half = [e for e in itertools.combinations(range(18), 3) if rng.random() < 0.5]
    pik = clique_complex(gen_pikhurko(24).graph, 4).top()
    space = gen_space_barrier(18, 3, 1, 8).graph
    all30 = list(itertools.combinations(range(30), 3))
    labels = [rng.randrange(3) for _ in range(30)]
    return [
        ("exact_cover, extremal n=24 tetrahedra (none)", "exact_cover", (24, list(pik.edges))),
        ("exact_cover, random 3-graph n=21, p=0.1", "exact_cover", (21, dense)),
        ("max_matching, space barrier n=18", "max_matching", (18, list(space.edges), 6, [])),
        ("min_heavy_subset, random 3-graph n=18, |S|=6", "min_heavy_subset", (18, half, 6, 1)),
        ("index_codes, K^3_30 with 3 parts", "index_codes", (all30, labels, 4)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    print(f"{'workload':50s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, fn, call_args in _workloads():
        times = []
        for mod in (pure, kernels.compiled):
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(*call_args), number=1, repeat=args.repeat)))
        print(f"{label:50s} {times[0]:10.4f} {times[1]:11.4f} {times[0] / max(times[1], 1e-9):7.1f}x")


if __name__ == "__main__":
    main()

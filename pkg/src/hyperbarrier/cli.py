"""Command-line front end: gen, analyze, fpm, transferral, verify."""
from __future__ import annotations

import argparse
import io
import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from . import geometry, solver
from .constructions import FAMILIES, ConstructionSpec
from .core import InputError, build_allocation
from .instance import dumps, load
from .lattice import IntegerLattice
from .transferral import MatchedSystem, find_transferral, transferral_digraph

EXIT_OK, EXIT_FAIL, EXIT_BARRIER, EXIT_INCONCLUSIVE = 0, 1, 2, 3
EXIT_USAGE, EXIT_DATA = 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _vectors(text: str) -> list:
    return [_ints(chunk) for chunk in text.split(";") if chunk.strip()]


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=None, help="worker cap (default: HYPERBARRIER_JOBS or 1)")
    common.add_argument("--out", default=None, help="write the JSON result here as well")

    p = _Parser(prog="hyperbarrier", description="Perfect matchings, barriers and transferrals in hypergraphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("family")
    for name in ("n", "k", "j", "s", "r", "t", "part-size", "delta-star"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--part-sizes", type=_ints)
    g.add_argument("--lattice", type=_vectors, help="generators, e.g. --lattice=-2,2;0,1")
    g.add_argument("--seed", type=int, default=0)

    a = sub.add_parser("analyze", parents=[common], help="perfect matching or barrier certificate")
    a.add_argument("instance")
    a.add_argument("--beta", type=_fraction, default=Fraction(1, 100))
    a.add_argument("--mu", type=_fraction, default=Fraction(1, 1000))
    a.add_argument("--min-part", type=int, default=None)
    a.add_argument("--seed", type=int, default=0)

    f = sub.add_parser("fpm", parents=[common], help="fractional perfect matching or Farkas certificate")
    f.add_argument("instance")
    f.add_argument("--balanced", default=None,
                   help="nonpartite, partite_injective, or an index set such as 2,1;1,2")

    t = sub.add_parser("transferral", parents=[common], help="search a (u,v)-transferral")
    t.add_argument("instance")
    t.add_argument("--u", type=int)
    t.add_argument("--v", type=int)
    t.add_argument("--B", type=int, default=1)
    t.add_argument("--C", type=int, default=3)
    t.add_argument("--no-prune", action="store_true")
    t.add_argument("--digraph", type=int, default=None, metavar="ELL", help="emit D_ELL instead of one search")

    v = sub.add_parser("verify", parents=[common], help="run an acceptance suite")
    v.add_argument("suite", help="suite name or 'all'")
    return p


# commands --------------------------------------------------------------------

def _gen_spec(args) -> ConstructionSpec:
    fam = args.family
    if fam not in FAMILIES:
        raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    want = {"space": ("n", "k", "j", "s"), "partite_space": ("part_size", "r", "k", "j", "s"),
            "divisibility": ("part_sizes", "k", "lattice"), "pikhurko": ("n",),
            "multipartite_hs": ("k", "n", "delta_star"), "random_min_codegree": ("n", "k", "t")}[fam]
    params = {}
    for key in want:
        val = getattr(args, key)
        if val is None:
            raise UsageError(f"family {fam} needs --{key.replace('_', '-')}")
        params[key] = val
    if "lattice" in params:
        gens = params.pop("lattice")
        d = len(params["part_sizes"])
        if any(len(g) != d for g in gens):
            raise UsageError(f"lattice generators must have {d} entries")
        params["L"] = IntegerLattice(d, gens)
    seed = args.seed if fam in ("multipartite_hs", "random_min_codegree") else None
    return ConstructionSpec(fam, params, seed)


def cmd_gen(args):
    inst = _gen_spec(args).build()
    obj = inst.to_json()
    text = f"{args.family}: n={inst.n} k={inst.k} edges={len(inst.edges)}"
    return EXIT_OK, obj, text


def _load(path):
    try:
        return load(path)
    except OSError as exc:
        raise DataError(str(exc)) from None
    except InputError as exc:
        raise DataError(str(exc)) from None


def cmd_analyze(args):
    inst = _load(args.instance)
    rep = solver.analyze(inst.complex(), beta=args.beta, mu=args.mu, min_part=args.min_part, seed=args.seed)
    obj = {"command": "analyze", "instance": os.path.basename(args.instance), **rep.to_json()}
    code = {"matching": EXIT_OK, "inconclusive": EXIT_INCONCLUSIVE}.get(rep.outcome, EXIT_BARRIER)
    text = f"outcome: {rep.outcome}"
    if rep.divisibility is not None:
        text += f"\nlattice {rep.divisibility.lattice.basis}, witness {list(rep.divisibility.witness)}"
    if rep.space is not None:
        text += f"\nspace barrier: j={rep.space.j}, S={list(rep.space.S)}"
    return code, obj, text


def _allocation(spec: str, k: int, r: int):
    if spec in ("nonpartite", "partite_injective"):
        return build_allocation(spec, k, r)
    try:
        I = [tuple(v) for v in _vectors(spec)]
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    return build_allocation("from_index_set", k, r, index_set=I)


def cmd_fpm(args):
    inst = _load(args.instance)
    H = inst.graph
    params = {"balanced": args.balanced}
    obj = {"command": "fpm", "instance": os.path.basename(args.instance), "parameters": params}
    if args.balanced is not None:
        if inst.partition is None:
            raise DataError("balanced mode needs a partition block")
        F = _allocation(args.balanced, H.k, inst.partition.d)
        fm = geometry.f_balanced_fpm(H, inst.partition, F)
        if fm is not None:
            obj["weights"] = fm.to_json()["weights"]
            obj["balanced_over"] = fm.to_json()["balanced_over"]
            return EXIT_OK, obj, f"balanced fractional perfect matching on {len(fm.weights)} edges"
        cert = geometry.farkas_certificate(H)
        obj["weights"] = None
        if cert is not None:
            obj["farkas"] = cert.to_json()["a"]
        return EXIT_BARRIER, obj, "no balanced fractional perfect matching"
    fm, cert = geometry.solve_fpm(H)
    if fm is not None:
        obj["weights"] = fm.to_json()["weights"]
        return EXIT_OK, obj, f"fractional perfect matching on {len(fm.weights)} edges"
    obj["farkas"] = cert.to_json()["a"]
    return EXIT_BARRIER, obj, f"Farkas certificate a = {[str(x) for x in cert.a]}"


def cmd_transferral(args):
    inst = _load(args.instance)
    if inst.matching is None:
        raise DataError("instance has no matching block")
    try:
        sysm = MatchedSystem(inst.graph, inst.matching)
    except InputError as exc:
        raise DataError(f"invalid matching block: {exc}") from None
    name = os.path.basename(args.instance)
    if args.digraph is not None:
        D = transferral_digraph(sysm, args.digraph, jobs=args.jobs)
        obj = {"command": "transferral", "instance": name, "parameters": {"ell": args.digraph},
               "digraph": D.to_json()}
        return EXIT_OK, obj, f"D_{args.digraph}: {len(D.edges())} arcs (loops included)"
    if args.u is None or args.v is None:
        raise UsageError("transferral needs --u and --v (or --digraph)")
    for x in (args.u, args.v):
        if not 0 <= x < inst.n:
            raise UsageError(f"vertex {x} out of range")
    params = {"u": args.u, "v": args.v, "B": args.B, "C": args.C, "prune": not args.no_prune}
    t = find_transferral(sysm, args.u, args.v, args.B, args.C, prune=not args.no_prune)
    obj = {"command": "transferral", "instance": name, "parameters": params,
           "transferral": t.to_json() if t is not None else None}
    if t is None:
        return EXIT_INCONCLUSIVE, obj, "none"
    return EXIT_OK, obj, f"{t.b}-fold ({t.u},{t.v})-transferral of size {t.size}: T={list(t.T)} T'={list(t.Tprime)}"


def cmd_verify(args):
    from . import verify
    names = verify.ORDER if args.suite == "all" else [args.suite]
    for nm in names:
        if nm not in verify.SUITES:
            raise UsageError(f"unknown suite {nm!r}; choose from {', '.join(verify.ORDER)} or all")
    results = [verify.run_suite(nm) for nm in names]
    ok = all(r.passed for r in results)
    obj = {"command": "verify", "parameters": {"suite": args.suite}, "passed": ok,
           "suites": [r.to_json() for r in results]}
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite} ({r.elapsed:.2f} s)")
        lines.extend("  " + c.line() for c in r.checks)
    return (EXIT_OK if ok else EXIT_FAIL), obj, "\n".join(lines)


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "fpm": cmd_fpm, "transferral": cmd_transferral,
            "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs is not None:
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
        code, obj, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    payload = dumps(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    print(payload if args.format == "json" else text)
    return code


def run(argv) -> tuple:
    """Run in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: enumerate, family, spectrum, le, charpoly, bounds,
check-conjecture, sweep.  Trees are read in the plain edge-list format
(first line n, then n-1 lines "u v") from --in or stdin.

Exit codes: 0 = clean, 2 = a certified violation was found, 3 = a comparison
stayed undecided after refinement, 1 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from . import families
from .charpoly import char_poly
from .enumeration import EnumRange, free_trees_sharded
from .errors import TreelapError
from .spectral import eigenvalues
from .tree import (
    Tree,
    format_edge_text,
    format_pruefer_text,
    parse_edge_text,
    parse_pruefer_text,
)
from .verify import (
    RunConfig,
    SweepConfig,
    emit_report,
    run_exhaustive,
    run_family_sweep,
    KNOWN_CHECKS,
    _g15,
)


def _read_tree(args) -> Tree:
    if getattr(args, "pruefer", None) is not None:
        return parse_pruefer_text(args.pruefer)
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="ascii") as fh:
            return parse_edge_text(fh.read())
    return parse_edge_text(sys.stdin.read())


def _parse_shards(text: str) -> tuple[int, int]:
    try:
        i, k = text.split("/")
        return int(i), int(k)
    except ValueError:
        raise TreelapError(f"--shards wants i/k with 0 <= i < k, got {text!r}")


def _cmd_enumerate(args) -> int:
    i, k = _parse_shards(args.shards)
    rng = EnumRange(args.n, i, k)
    first = True
    for tree in free_trees_sharded(rng):
        if not first:
            sys.stdout.write("\n")
        first = False
        if args.emit == "edges":
            sys.stdout.write(format_edge_text(tree))
        else:
            sys.stdout.write(format_pruefer_text(tree))
    return 0


def _cmd_family(args) -> int:
    fam = args.family
    if fam == "path":
        tree = families.path(args.n)
    elif fam == "star":
        tree = families.star(args.n)
    elif fam == "double_broom3":
        tree = families.double_broom3(args.a, args.b)
    elif fam == "double_broom4":
        tree = families.double_broom4(args.a, args.b)
    elif fam == "sns":
        s = [int(tok) for tok in args.s.split(",")] if args.s else []
        tree = families.sns_tree(args.p, args.r, s)
    elif fam == "t4_spider":
        tree = families.t4_spider(args.a, args.b)
    elif fam == "t_prime":
        tree = families.t_prime(args.r, args.s1)
    else:  # t_dprime
        tree = families.t_dprime(args.r, args.s1, args.s2)
    sys.stdout.write(format_edge_text(tree))
    return 0


def _spectrum_payload(tree: Tree, tol: float) -> dict:
    spec = eigenvalues(tree, tol)
    le = spec.laplacian_energy()
    return {
        "n": tree.n,
        "eigenvalues": [float(_g15(v)) for v in spec.values],
        "sigma": spec.sigma,
        "le": float(_g15(le.value)),
        "le_err": le.err,
    }


def _cmd_spectrum(args) -> int:
    tree = _read_tree(args)
    print(json.dumps(_spectrum_payload(tree, args.tol)))
    return 0


def _cmd_le(args) -> int:
    tree = _read_tree(args)
    payload = _spectrum_payload(tree, args.tol)
    del payload["eigenvalues"]
    print(json.dumps(payload))
    return 0


def _cmd_charpoly(args) -> int:
    tree = _read_tree(args)
    print(json.dumps(list(char_poly(tree).coeffs)))
    return 0


def _bounds_reports(tree: Tree, check: str, tol: float):
    from .tree import diameter

    ids = KNOWN_CHECKS + ("conjecture", "coru", "diam4", "lemma25") if check == "all" else tuple(check.split(","))
    for cid in ids:
        if cid == "conjecture":
            yield bounds_mod.conjecture_check(tree, tol)
        elif cid == "lemma21":
            yield bounds_mod.lemma21_check(tree)
        elif cid == "lemma22":
            yield bounds_mod.brouwer_haemers_check(tree, tol)
        elif cid == "lemma26":
            yield bounds_mod.lemma26_check(tree)
        elif cid == "lemma31":
            for k in range(1, tree.n):
                yield bounds_mod.majorization_check(tree, k, tol)
        elif cid == "cor31":
            for k in range(1, tree.n):
                yield bounds_mod.cor31_check(tree, k, tol)
        elif cid == "thm31":
            if tree.n >= 3:
                yield bounds_mod.thm31_lower_bound(tree, tol)
        elif cid == "thm32" or cid == "coru":
            fn = bounds_mod.thm32_lower_bound if cid == "thm32" else bounds_mod.coru_sufficient
            for e in tree.edges:
                if tree.degrees[e[0]] > 1 and tree.degrees[e[1]] > 1:
                    yield fn(tree, e, tol)
        elif cid == "lemma25":
            for e in tree.edges:
                yield bounds_mod.interlacing_check(tree, e, tol)
        elif cid == "diam4":
            if diameter(tree) == 4:
                yield bounds_mod.diam4_energy_check(tree, tol)
        else:
            raise TreelapError(f"unknown bound id {cid!r}")


def _cmd_bounds(args) -> int:
    tree = _read_tree(args)
    worst = 0
    for rep in _bounds_reports(tree, args.check, args.tol):
        print(json.dumps(rep.to_dict()))
        if rep.holds is False:
            worst = max(worst, 2)
        elif rep.holds is None and not rep.out_of_hypothesis and not rep.note:
            worst = max(worst, 3)
    return worst


def _cmd_check_conjecture(args) -> int:
    i, k = _parse_shards(args.shards)
    config = RunConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        tol=args.tol,
        shard_index=i,
        shard_count=k,
        out=args.out,
        fmt=args.format,
        checks=("conjecture",) + (tuple(args.checks.split(",")) if args.checks else ()),
        allow_large=args.allow_large,
    )
    if config.n_max > 16:
        from .enumeration import count_free_trees

        est = sum(count_free_trees(n) for n in range(config.n_min, config.n_max + 1))
        print(f"large run: ~{est} trees up to n={config.n_max}", file=sys.stderr)
    summary = run_exhaustive(config)
    print(summary.describe())
    if args.report:
        emit_report(summary.records, config.fmt, args.report)
        print(f"report written to {args.report}")
    if summary.violations:
        return 2
    if summary.undecided:
        return 3
    return 0


def _cmd_sweep(args) -> int:
    config = SweepConfig(tol=args.tol, out=args.out, fmt=args.format, sns_random=args.sns_random)
    summary = run_family_sweep(config)
    print(summary.describe())
    if summary.violations:
        return 2
    if summary.undecided:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treelap", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", help="stream all free trees of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shards", default="0/1", help="i/k contiguous shard of the stream")
    p.add_argument("--emit", choices=("edges", "pruefer"), default="edges")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("family", help="emit one parameterized family member")
    p.add_argument("--family", required=True,
                   choices=("path", "star", "double_broom3", "double_broom4",
                            "sns", "t4_spider", "t_prime", "t_dprime"))
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", default="", help="comma-separated leaf counts for sns")
    p.add_argument("--s1", type=int, default=2)
    p.add_argument("--s2", type=int, default=2)
    p.set_defaults(fn=_cmd_family)

    for name, fn in (("spectrum", _cmd_spectrum), ("le", _cmd_le), ("charpoly", _cmd_charpoly)):
        p = sub.add_parser(name)
        p.add_argument("--in", dest="infile", default=None, help="edge-list file (default stdin)")
        p.add_argument("--pruefer", default=None, help="comma-separated Pruefer labels instead of an edge list")
        p.add_argument("--tol", type=float, default=1e-12)
        p.set_defaults(fn=fn)

    p = sub.add_parser("bounds", help="evaluate bound checks on one tree")
    p.add_argument("--check", default="all", help="all or comma-separated bound ids")
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--pruefer", default=None, help="comma-separated Pruefer labels instead of an edge list")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("check-conjecture", help="exhaustive verification over free trees")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--shards", default="0/1")
    p.add_argument("--out", default=None, help="append-only JSONL record sink (resumable)")
    p.add_argument("--report", default=None, help="deterministic sorted artifact path")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--checks", default="", help="extra per-tree checks (comma-separated)")
    p.add_argument("--allow-large", action="store_true", help="raise the ceiling from 16 to 18")
    p.set_defaults(fn=_cmd_check_conjecture)

    p = sub.add_parser("sweep", help="diameter-4 family sweeps")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--sns-random", type=int, default=0)
    p.set_defaults(fn=_cmd_sweep)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except TreelapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

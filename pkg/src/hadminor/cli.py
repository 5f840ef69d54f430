"""Command-line entry point: ``hadminor {run,verify,oracle,bounds,checkf,gen}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algorithms import DEFAULT_STEP1_BUDGET
from .bounds import TAU, check_f_properties
from .errors import HadminorError
from .experiments import (
    ExperimentSpec,
    bounds_csv,
    bounds_markdown,
    bounds_table,
    run_experiments,
    verify_report,
)
from .graph import alpha
from .io import read_graphs, serialize_dimacs, serialize_graph6
from .verify import HADWIGER_CAP, MinorCertificate, conjecture_audit, verify_minor

EXIT_OK, EXIT_AUDIT, EXIT_USAGE = 0, 1, 2


def _generator_from_args(args) -> dict:
    spec = {"kind": args.kind}
    if args.kind == "gnp":
        spec.update(n=args.n, p=args.p, seed=args.seed)
    elif args.kind == "complement_cliques":
        spec.update(sizes=args.sizes, cross_p=args.p or 0.0, seed=args.seed)
    elif args.kind == "named":
        spec.update(name=args.name, n=args.n)
    elif args.kind == "connected":
        spec.update(n=args.n)
    if args.count is not None and args.kind in ("gnp", "complement_cliques"):
        spec["count"] = args.count
    if args.alpha is not None:
        spec["alpha"] = args.alpha
    return spec


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["gnp", "complement_cliques", "named", "connected"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--sizes", type=int, nargs="+")
    p.add_argument("--name", choices=["petersen", "cycle", "complete", "edgeless", "path"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int)
    p.add_argument("--alpha", type=int, help="keep only graphs with this independence number")


def cmd_run(args) -> int:
    if args.input:
        sources = [{"kind": "g6", "code": serialize_graph6(g)} for g in read_graphs(args.input, args.format)]
    elif args.kind:
        sources = [_generator_from_args(args)]
    else:
        raise _Usage("run needs --input or --kind")
    spec = ExperimentSpec(sources, args.alg, args.audit, args.oracle, args.budget, args.workers)
    report = run_experiments(spec)
    if args.out:
        path = report.write(args.out)
        print(f"report written to {path}")
    for rec in report.records:
        tail = f"{rec.get('achieved_size', '-')} >= {rec.get('guaranteed_size', '-')}"
        print(f"#{rec['index']} {rec['algorithm']:6s} n={rec['n']:<3d} alpha={rec['alpha']:<2d} {tail:10s} {rec['status']}")
    print(json.dumps(report.summary(), sort_keys=True))
    return EXIT_OK if report.ok else EXIT_AUDIT


def cmd_verify(args) -> int:
    if args.cert:
        graphs = read_graphs(args.input, args.format)
        cert = MinorCertificate.from_json(json.loads(Path(args.cert).read_text()))
        v = verify_minor(graphs[0], cert)
        print(f"K_{cert.size} certificate: {'ok' if v.ok else 'FAIL ' + v.reason}")
        return EXIT_OK if v.ok else EXIT_AUDIT
    results = verify_report(args.input)
    bad = [r for r in results if not r[1]]
    for index, ok, reason in bad:
        print(f"record {index}: FAIL {reason}")
    print(f"{len(results) - len(bad)}/{len(results)} certificates re-verified")
    return EXIT_OK if not bad else EXIT_AUDIT


def cmd_oracle(args) -> int:
    for k, g in enumerate(read_graphs(args.input, args.format)):
        if g.n > HADWIGER_CAP:
            print(f"#{k} n={g.n}: larger than the brute-force cap {HADWIGER_CAP}")
            continue
        a = conjecture_audit(g)
        flag = "" if a.satisfied else "  <-- alpha*h < n"
        print(f"#{k} n={g.n} alpha={a.alpha} h={a.h} alpha*h={a.alpha_h_product}{flag}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    rows = bounds_table(args.alpha_max)
    text = bounds_markdown(rows) if args.table == "md" else bounds_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    first = next((r["alpha"] for r in rows if r["r_beats_2a_minus_2"]), None)
    print(f"first alpha with r < 2*alpha - 2: {first}", file=sys.stderr)
    return EXIT_OK


def cmd_checkf(args) -> int:
    tau = TAU if args.tau is None else args.tau
    report = check_f_properties(args.x_max, tau)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_AUDIT


def cmd_gen(args) -> int:
    from .experiments import expand_graphs

    if not args.kind:
        raise _Usage("gen needs --kind")
    graphs = [g for _, g in expand_graphs([_generator_from_args(args)])]
    if args.format == "dimacs":
        if len(graphs) != 1:
            raise _Usage("DIMACS output holds a single graph; drop --count")
        text = serialize_dimacs(graphs[0])
    else:
        text = "".join(serialize_graph6(g) + "\n" for g in graphs)
    if args.out:
        Path(args.out).write_text(text)
        print(f"{len(graphs)} graph(s) written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    for g in graphs if args.verbose else []:
        print(f"n={g.n} m={g.m} alpha={alpha(g)}", file=sys.stderr)
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hadminor", description="Complete-minor constructions with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run drivers with audits")
    p.add_argument("--alg", choices=["dm2", "log", "alpha5", "all"], default="all")
    p.add_argument("--input")
    p.add_argument("--format", choices=["g6", "dimacs"])
    p.add_argument("--audit", choices=["none", "fast", "full"], default="full")
    p.add_argument("--oracle", action="store_true", help="compare with the brute-force Hadwiger number (n <= 10)")
    p.add_argument("--budget", type=int, default=DEFAULT_STEP1_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    _add_generator_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="re-verify certificates")
    p.add_argument("--input", required=True, help="report.json, or a graph file with --cert")
    p.add_argument("--cert")
    p.add_argument("--format", choices=["g6", "dimacs"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force Hadwiger number and alpha*h audit")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["g6", "dimacs"])
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bounds", help="table of 2a-1, 2a-2 and r(a)")
    p.add_argument("--alpha-max", type=int, default=300)
    p.add_argument("--table", choices=["csv", "md"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("checkf", help="check the properties of the bound function")
    p.add_argument("--x-max", type=int, default=500)
    p.add_argument("--tau", type=float, help="override the base (regression control)")
    p.set_defaults(func=cmd_checkf)

    p = sub.add_parser("gen", help="write generated graphs")
    p.add_argument("--format", choices=["g6", "dimacs"], default="g6")
    p.add_argument("--out")
    p.add_argument("--verbose", action="store_true")
    _add_generator_flags(p)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_Usage, HadminorError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

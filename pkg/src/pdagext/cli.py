"""Command-line front end.

Exit codes: 0 success, 1 a ``check`` found a mismatch, 2 not extendable,
64 usage or parse error, 70 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import ALGORITHMS, bench, parse_suite, write_csv
from .edgelist import format_edgelist, parse_edgelist
from .errors import InvalidInput, InvariantBreach, UsageError
from .extension import get_extender, is_consistent_extension
from .generators import EDGE_RULES, STYLES, GeneratorConfig, generate
from .oracles import MAX_FREE_EDGES, brute_force_mpdag
from .orientation import METHODS, direct_meek, maximal_orientation_ce

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_NOT_EXTENDABLE = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edgelist(text)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _edges_arg(text: str):
    return int(text) if text.isdigit() else text


def _k_arg(text: str):
    return text if text in ("log2n", "sqrtn") else float(text)


def _range_arg(text: str):
    lo, _, hi = text.partition("..")
    try:
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(
        args.n, args.edges, args.style, args.k, args.seed, args.background_arcs
    )
    g = generate(cfg)
    _emit(format_edgelist(g, cfg.describe()), args.output)
    return EXIT_OK


def cmd_extend(args) -> int:
    g = _read(args.input)
    outcome = get_extender(args.algo)(g)
    if not outcome:
        print("not extendable", file=sys.stderr)
        return EXIT_NOT_EXTENDABLE
    _emit(format_edgelist(outcome.dag), args.output)
    return EXIT_OK


def cmd_orient(args) -> int:
    g = _read(args.input)
    try:
        if args.method == "ce":
            m, _ = maximal_orientation_ce(g, args.extender, check=args.check)
        else:
            m, _ = METHODS[args.method](g, trace=False)
    except InvalidInput as exc:
        print(f"not extendable: {exc}", file=sys.stderr)
        return EXIT_NOT_EXTENDABLE
    _emit(format_edgelist(m), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _read(args.graph)
    d = _read(args.candidate)
    if args.what == "extension":
        ok = is_consistent_extension(g, d)
        reason = "is not a consistent extension"
    else:
        if len(g.undirected_edges()) <= MAX_FREE_EDGES:
            ref = brute_force_mpdag(g)
        else:
            ref, _ = direct_meek(g, trace=False)
        ok = ref == d
        reason = "differs from the maximal orientation"
    if ok:
        print("ok")
        return EXIT_OK
    print(f"{args.candidate} {reason} of {args.graph}", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_bench(args) -> int:
    try:
        text = Path(args.suite).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.suite}: {exc.strerror}") from None
    suite = parse_suite(text, seed=args.seed)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    items = bench(suite, algos, args.reps, instances=args.instances, jobs=args.jobs)
    if args.out == "-":
        write_csv(items, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(items, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pdagext", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")

    g = sub.add_parser("gen", parents=[common], help="generate a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--edges", type=_edges_arg, default="3n",
                   help=f"one of {', '.join(EDGE_RULES)} or a number")
    g.add_argument("--style", choices=STYLES, default="uniform")
    g.add_argument("--k", type=_k_arg, default=None)
    g.add_argument("--background-arcs", type=_range_arg, default=(2, 5), metavar="LO..HI")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("extend", parents=[common], help="consistent DAG extension")
    e.add_argument("--algo", choices=("dt", "dth", "dtic", "brute"), default="dtic")
    e.add_argument("input")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_extend)

    o = sub.add_parser("orient", parents=[common], help="maximal orientation")
    o.add_argument("--method", choices=("direct", "direct-worklist", "ce"), default="ce")
    o.add_argument("--extender", choices=("dt", "dth", "dtic"), default="dtic")
    o.add_argument("--check", action="store_true",
                   help="with --method ce, compare against the direct closure")
    o.add_argument("input")
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_orient)

    c = sub.add_parser("check", parents=[common], help="validate a result against its input")
    c.add_argument("what", choices=("extension", "mpdag"))
    c.add_argument("graph")
    c.add_argument("candidate")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", parents=[common], help="run a benchmark suite")
    b.add_argument("--suite", required=True)
    b.add_argument("--out", required=True, help="CSV path or - for stdout")
    b.add_argument("--algos", default="dt,dth,dtic",
                   help=f"comma list from {', '.join(ALGORITHMS)}")
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--instances", type=int, default=10)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

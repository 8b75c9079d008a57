"""Command-line entry point: ``zitterlab <subcommand> ...``.

Exit status is 0 on success, 1 on invalid input and 2 when an invariant
suite fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

from . import checkerboard as cb
from . import checks, poset, seqlang, sequences
from .errors import ZitterError

EXIT_OK, EXIT_INVALID, EXIT_SUITE_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(v) -> str:
    return poset.fmt_number(v)


_PI_FORM = re.compile(r"^\s*(?P<num>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$")


def parse_theta(text: str) -> float:
    """Accept ``pi/2``, ``3pi/2``, ``3*pi/2`` or a plain number of radians."""
    m = _PI_FORM.match(text)
    if m:
        num = float(m.group("num") or 1.0)
        den = float(m.group("den") or 1.0)
        return num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read angle {text!r}") from None


def _emit(text: str, path: str | None, out):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


# -- enumerate --------------------------------------------------------------------


def cmd_enumerate(args, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["seq", "R", "x_final", "t_final"])
    hist = {}
    for seq in sequences.iter_sequences(args.np, args.nq, cap=args.cap):
        r = sequences.count_corners(seq)
        hist[r] = hist.get(r, 0) + 1
        x, t = sequences.endpoint(seq)
        writer.writerow([seq, r, x, t])
    _emit(buf.getvalue(), args.csv, out)
    if args.corners:
        for r in sorted(hist):
            print(f"R={r}: {hist[r]}", file=sys.stderr)
    return EXIT_OK


# -- poset --------------------------------------------------------------------------


def cmd_poset(args, out):
    if args.sequence:
        fixture = sequences.build_free_particle_poset(args.sequence)
        graph = fixture.poset
        chains = {c.name: c for c in fixture.chains}
        if args.dump_fixture:
            with open(args.dump_fixture, "w", encoding="utf-8") as fh:
                json.dump(fixture.to_dict(), fh, indent=1)
        along = args.along or "Pi"
    elif args.fixture:
        graph, chains = poset.load_fixture(args.fixture)
        along = args.along
    else:
        raise UsageError("poset: give a fixture file or --sequence")

    for name in (args.p, args.q):
        if name not in chains:
            raise ZitterError(f"fixture has no chain named {name!r}")
    chain_p, chain_q = chains[args.p], chains[args.q]

    if args.elements:
        events = chains[along].elements if along else list(graph)
        text = poset.write_element_csv(poset.element_rows([chain_p, chain_q], events))
    else:
        if along:
            if along not in chains:
                raise ZitterError(f"fixture has no chain named {along!r}")
            els = chains[along].elements
            pairs = list(zip(els, els[1:]))
        else:
            between = []
            for e in graph:
                try:
                    if poset.check_betweenness(chain_p, chain_q, e):
                        between.append(e)
                except ZitterError:
                    pass
            pairs = [(a, b) for i, a in enumerate(between) for b in between[i + 1:]]
        rows = []
        for x, y in pairs:
            try:
                rows.append(poset.interval_row(chain_p, chain_q, x, y))
            except ZitterError:
                if along:
                    raise
        text = poset.write_interval_csv(rows)
    _emit(text, args.csv, out)
    return EXIT_OK


# -- seq-eval -------------------------------------------------------------------------


def cmd_seq_eval(args, out):
    with open(args.env, encoding="utf-8") as fh:
        env = seqlang.load_env(json.load(fh))
    expr = seqlang.parse(args.expr)
    amp = seqlang.evaluate(expr, env)
    json.dump({"a1": amp.a1, "a2": amp.a2, "prob": amp.prob}, out)
    out.write("\n")
    return EXIT_OK


# -- kernel ---------------------------------------------------------------------------


def _matrices(args) -> cb.StepMatrices:
    return cb.make_step_matrices(args.b, args.theta)


def kernel_document(n: int, initial: str, m: cb.StepMatrices, method: str) -> dict:
    entries = []
    if method == "dp":
        table = cb.kernel_dp_table(n, initial, m)
        lookup = lambda x, comp: table.at(x)[comp]  # noqa: E731
    elif method == "brute":
        brute = cb.kernel_bruteforce_table(n, initial, m)
        lookup = lambda x, comp: brute[(x, comp)]  # noqa: E731
    elif method == "corners":
        lookup = lambda x, comp: cb.corner_weighted_sum(  # noqa: E731
            n, x, None, m.b, initial_state=initial, theta=m.theta, final_state=comp)
    else:
        raise ZitterError(f"unknown method {method!r}")
    for x, comp in cb.reachable_entries(n, initial):
        amp = lookup(x, comp)
        entries.append({"x": x, "comp": comp, "re": amp.a1, "im": amp.a2, "prob": amp.prob})
    return {"n": n, "b": m.b, "theta": m.theta, "initial": initial, "entries": entries}


def cmd_kernel(args, out):
    if args.steps < 0:
        raise ZitterError("--steps must be non-negative")
    doc = kernel_document(args.steps, args.initial, _matrices(args), args.method)
    _emit(json.dumps(doc, indent=1) + "\n", args.json, out)
    return EXIT_OK


# -- zitter ---------------------------------------------------------------------------


def cmd_zitter(args, out):
    if args.steps < 0:
        raise ZitterError("--steps must be non-negative")
    m = _matrices(args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "x", "prob"])
    if args.initial == "symmetric":
        slices = cb.symmetric_distribution(args.steps, m, args.mode)
    else:
        src = (1.0, 0.0) if args.initial == "P" else (0.0, 1.0)
        slices = ((tab.n, tab.sites, tab.probabilities()) for tab in cb.iter_point_source(args.steps, m, *src))
    for t, sites, probs in slices:
        for x, p in zip(sites.tolist(), probs.tolist()):
            writer.writerow([t, x, fmt(p)])
    _emit(buf.getvalue(), args.csv, out)
    return EXIT_OK


# -- check ----------------------------------------------------------------------------


def cmd_check(args, out):
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        for result in checks.SUITES[name]():
            print(result.line(), file=out)
            if not result.passed:
                print(f"{name} suite failed: {result.name} (measured {result.measured!r})", file=sys.stderr)
                return EXIT_SUITE_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zitterlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="list move sequences for given detection counts")
    p.add_argument("--np", type=int, required=True, help="number of P detections")
    p.add_argument("--nq", type=int, required=True, help="number of Q detections")
    p.add_argument("--corners", action="store_true", help="also print the corner histogram to stderr")
    p.add_argument("--cap", type=int, default=sequences.DEFAULT_CAP)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("poset", help="quantify a poset fixture and emit an interval table")
    p.add_argument("fixture", nargs="?", help="fixture JSON file")
    p.add_argument("--sequence", help="build the free-particle fixture for this move string instead")
    p.add_argument("--p", default="P", help="name of the first observer chain")
    p.add_argument("--q", default="Q", help="name of the second observer chain")
    p.add_argument("--along", help="only intervals between consecutive elements of this chain")
    p.add_argument("--elements", action="store_true", help="emit projections of single events instead")
    p.add_argument("--dump-fixture", help="write the generated fixture JSON here")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("seq-eval", help="evaluate a sequence expression")
    p.add_argument("--env", required=True, help='JSON object {"m1,m2": [a1, a2], ...}')
    p.add_argument("expr")
    p.set_defaults(func=cmd_seq_eval)

    def matrix_args(p):
        p.add_argument("--b", type=float, default=cb.DEFAULT_B)
        p.add_argument("--theta", type=parse_theta, default=cb.DEFAULT_THETA)

    p = sub.add_parser("kernel", help="propagator from a point source")
    p.add_argument("--steps", type=int, required=True)
    matrix_args(p)
    p.add_argument("--initial", choices=cb.STATES, default="P")
    p.add_argument("--method", choices=("dp", "brute", "corners"), default="dp")
    p.add_argument("--json")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("zitter", help="probability distribution per time slice")
    p.add_argument("--steps", type=int, required=True)
    matrix_args(p)
    p.add_argument("--initial", choices=("P", "Q", "symmetric"), default="symmetric")
    p.add_argument("--mode", choices=("mixture", "coherent"), default="mixture")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_zitter)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("--suite", choices=(*checks.SUITES, "all"), required=True)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except (ZitterError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"zitterlab: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

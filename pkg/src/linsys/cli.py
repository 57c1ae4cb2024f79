"""Command-line driver.

Exit codes: 0 success / pass, 2 input error, 3 budget exhausted or
inconclusive, 4 verification failure.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import _kernels, formats
from .core import stats
from .errors import BudgetExhausted, LinsysError, UnknownTheoremId
from .generators import (
    chat,
    cnn,
    example_c34,
    projective_plane,
    random_linear_system,
)
from .groups import parse_group
from .levi import export_dot, levi_graph, planarity_bound
from .solvers import DEFAULT_BUDGET, nu2_exact, tau_exact
from . import verify as harness

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FAIL = 0, 2, 3, 4

THEOREM_IDS = ("eq1", "thm21", "prop31", "prop32", "thm32", "lemma41", "lemmas4243", "cor42")


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _int_list(text: str) -> list[int]:
    """Parse "3,5,7" or "0-49" or a mix like "0-9,20"."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _stats_lines(ls) -> list[str]:
    st = stats(ls)
    degs = sorted(set(st.degree_of.values()))
    return [
        f"points {st.num_points}",
        f"lines {st.num_lines}",
        f"max_degree {st.max_degree}",
        f"rank {st.rank}",
        f"uniform {st.uniform_r if st.uniform_r is not None else 'no'}",
        f"intersecting {'yes' if st.is_intersecting else 'no'}",
        f"degrees {' '.join(map(str, degs))}",
    ]


# -- gen ------------------------------------------------------------------------------

def cmd_gen(args) -> int:
    kind = args.family
    if kind == "cnn":
        group = parse_group(args.group)
        ls = cnn(group)
        meta = {"generator": "cnn", "group": group.descriptor}
    elif kind == "pp":
        ls = projective_plane(args.q)
        meta = {"generator": "projective_plane", "q": args.q}
    elif kind == "chat":
        ls = chat()
        meta = {"generator": "chat"}
    elif kind == "c34":
        ls = example_c34()
        meta = {"generator": "example_c34"}
    else:
        ls = random_linear_system(args.seed, args.points, args.lines, args.min, args.max)
        meta = {"generator": "random", "seed": args.seed, "points": args.points,
                "lines": args.lines, "min_line": args.min, "max_line": args.max}
    text = formats.emit_instance(ls, meta)
    summary = "\n".join(_stats_lines(ls))
    if args.out and args.out != "-":
        formats.write_text(args.out, text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


# -- solve ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    ls, _ = formats.read_instance(args.file)
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.file).parent
    stem = Path(args.file).name.removesuffix(".json")
    kinds = ("tau", "nu2") if args.which == "both" else (args.which,)
    code = EXIT_OK
    for kind in kinds:
        cert = (tau_exact if kind == "tau" else nu2_exact)(ls, args.budget)
        formats.write_text(out_dir / f"{stem}.{kind}.cert.json", formats.emit_certificate(ls, cert))
        flag = "" if cert.optimal else " (budget exhausted, not proven optimal)"
        print(f"{kind} {cert.value}{flag}")
        if not cert.optimal:
            code = EXIT_BUDGET
    return code


# -- check ------------------------------------------------------------------------------

def cmd_check(args) -> int:
    try:
        ls, _ = formats.read_instance(args.file)
    except LinsysError as exc:
        print(f"invalid: {exc}")
        return EXIT_INPUT
    print("valid")
    print("\n".join(_stats_lines(ls)))
    return EXIT_OK


# -- verify ---------------------------------------------------------------------------------

def run_theorem(theorem_id: str, n_list=None, seeds=None, budget: int = DEFAULT_BUDGET):
    if theorem_id not in THEOREM_IDS:
        raise UnknownTheoremId(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREM_IDS)}")
    if theorem_id in ("eq1", "thm21"):
        corpus = harness.standard_corpus(seeds if seeds is not None else range(120))
        fn = harness.verify_eq1 if theorem_id == "eq1" else harness.verify_thm21
        return fn(corpus, node_budget=budget)
    if theorem_id in ("prop31", "prop32"):
        which = ("tau",) if theorem_id == "prop31" else ("nu2",)
        return harness.verify_props_31_32(n_list or [3, 5, 7], which=which, node_budget=budget,
                                          theorem_id=theorem_id)
    if theorem_id == "thm32":
        return harness.verify_thm32_minimality(n_list or [3, 5, 7], node_budget=budget)
    if theorem_id == "cor42":
        return harness.verify_cor42(budget)
    candidates = harness.l4_members(budget)
    if theorem_id == "lemma41":
        return harness.verify_lemma41(candidates, r=4, node_budget=budget)
    return harness.verify_lemmas_42_43(candidates, r=4, node_budget=budget)


def cmd_verify(args) -> int:
    n_list = _int_list(args.n) if args.n else None
    seeds = _int_list(args.seeds) if args.seeds else None
    report = run_theorem(args.theorem, n_list, seeds, args.budget)
    text = formats.emit_report(report)
    out = args.out or f"{args.theorem}-report.json"
    if out == "-":
        sys.stdout.write(text)
    else:
        formats.write_text(out, text)
    line = (f"{report.theorem_id}: {report.status} ({report.instances_checked} checked, "
            f"{report.inconclusive} inconclusive, {report.skipped} skipped)")
    if "members" in report.summary:
        line += f"; members {report.summary['members']}, |A| {len(report.summary['set_a'])}, " \
                f"|B| {len(report.summary['set_b'])}"
    print(line, file=sys.stderr if out == "-" else sys.stdout)
    if not report.passed:
        return EXIT_FAIL
    return EXIT_BUDGET if report.inconclusive else EXIT_OK


# -- levi --------------------------------------------------------------------------------------

def cmd_levi(args) -> int:
    ls, _ = formats.read_instance(args.file)
    g = levi_graph(ls)
    rep = planarity_bound(g)
    girth = "infinite" if rep.girth == float("inf") else str(rep.girth)
    print(f"vertices {rep.vertex_count}")
    print(f"edges {rep.edge_count}")
    print(f"girth {girth}")
    if args.bound:
        print(f"bound {rep.bound_value}")
        verdict = "non-planar certified" if rep.certified_nonplanar else "not certified"
        print(f"{rep.edge_count} {'>' if rep.certified_nonplanar else '<='} {rep.bound_value}: {verdict}")
    if args.dot:
        labels = ["{" + ",".join(ls.line_labels(j)) + "}" for j in range(ls.num_lines)]
        formats.write_text(args.dot, export_dot(g, ls.points, labels))
    return EXIT_OK


# -- entry point -------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _err(message)
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linsys", description="Finite linear systems: build, solve, verify.")
    parser.add_argument("--no-numba", action="store_true",
                        help=f"run kernels interpreted (same as {_kernels.ENV_FLAG}=1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a canonical instance file")
    gen.add_argument("-o", "--out", help="output path (default: stdout)")
    fam = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    p = fam.add_parser("cnn")
    p.add_argument("--group", required=True, help='group descriptor, e.g. "z5" or "z3xz3"')
    p = fam.add_parser("pp")
    p.add_argument("--q", type=int, required=True)
    fam.add_parser("chat")
    fam.add_parser("c34")
    p = fam.add_parser("random")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--lines", type=int, required=True)
    p.add_argument("--min", type=int, default=2)
    p.add_argument("--max", type=int, default=3)
    for p in fam.choices.values():
        p.add_argument("-o", "--out", default=argparse.SUPPRESS, help="output path")
    gen.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact tau / nu2 with certificate files")
    p.add_argument("file")
    p.add_argument("which", choices=("tau", "nu2", "both"), nargs="?", default="both")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="branch-node budget")
    p.add_argument("--out-dir", help="certificate directory (default: next to the input)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="validate an instance and print its statistics")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a theorem check")
    p.add_argument("theorem", help=", ".join(THEOREM_IDS))
    p.add_argument("--n", help='group orders, e.g. "3,5,7"')
    p.add_argument("--seeds", help='random corpus seeds, e.g. "0-119"')
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("-o", "--out", help='report path (default: <theorem>-report.json; "-" for stdout)')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("levi", help="Levi graph, girth and planarity bound")
    p.add_argument("file")
    p.add_argument("--dot", help="write Graphviz DOT here")
    p.add_argument("--bound", action="store_true", help="report the girth edge bound")
    p.set_defaults(func=cmd_levi)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.no_numba:
        os.environ[_kernels.ENV_FLAG] = "1"
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        _err(str(exc))
        return EXIT_BUDGET
    except LinsysError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except OSError as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

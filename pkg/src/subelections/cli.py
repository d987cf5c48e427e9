"""Command-line interface.

Exit codes: 0 found / optimum reported, 1 no solution (or below
``--threshold``), 2 usage or input error, 3 solver size limit exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import cultures, experiments, formats
from .core import (
    CandidateMatching,
    InvalidArgumentError,
    MatchingCase,
    SizeLimitError,
    Variant,
    VoterMatching,
)
from .hard import (
    brute_force_max_common,
    cand_subelection_isomorphism,
    max_common_cand_subelection_both,
    subelection_isomorphism,
)
from .ilp import build_ilp, write_lp
from .iso import (
    election_isomorphism,
    max_common_voter_subelection,
    voter_subelection_isomorphism,
)
from .reductions import clique_to_common_cand_instance, clique_to_subiso_instance

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | os.PathLike, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _split_models(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [x for x in out if x]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _build_case(args) -> MatchingCase:
    sigma = pi = None
    if args.case in ("cand", "both"):
        if not args.sigma:
            raise UsageError(f"--case {args.case} needs --sigma FILE")
        sigma = formats.parse_matching(_read(args.sigma), CandidateMatching)
    if args.case in ("voter", "both"):
        if not args.pi:
            raise UsageError(f"--case {args.case} needs --pi FILE")
        pi = formats.parse_matching(_read(args.pi), VoterMatching)
    return MatchingCase(sigma, pi)


def _solve(variant: Variant, e1, e2, case: MatchingCase, threshold):
    """Returns ``(witness or None, value or None)``."""
    kind = case.kind.value
    if variant is Variant.ISO:
        return election_isomorphism(e1, e2, case), None
    if variant is Variant.VOTER_SUBISO:
        return voter_subelection_isomorphism(e1, e2, case), None
    if variant is Variant.SUBISO:
        return subelection_isomorphism(e1, e2, case), None
    if variant is Variant.CAND_SUBISO:
        return cand_subelection_isomorphism(e1, e2, case), None
    if variant is Variant.MAX_COMMON_VOTER:
        w = max_common_voter_subelection(e1, e2, case, threshold)
        return w, w.value
    if variant is Variant.MAX_COMMON_CAND and kind == "both":
        w = max_common_cand_subelection_both(e1, e2, case.sigma, case.pi)
        return w, w.value
    brute_variant = "cand" if variant is Variant.MAX_COMMON_CAND else "general"
    return None, brute_force_max_common(e1, e2, brute_variant, case)


def cmd_solve(args) -> int:
    f1 = formats.parse_election_file(_read(args.first))
    f2 = formats.parse_election_file(_read(args.second))
    variant = Variant(args.variant)
    case = _build_case(args)
    witness, value = _solve(variant, f1.election, f2.election, case, args.threshold)

    out = [f"variant: {variant.value}", f"case: {case.kind.value}"]
    if variant.is_decision:
        found = witness is not None
        out.append(f"result: {'yes' if found else 'no'}")
    else:
        found = args.threshold is None or value >= args.threshold
        out.append(f"value: {value}")
        if args.threshold is not None:
            out.append(f"threshold: {args.threshold} ({'met' if found else 'not met'})")
    if witness is not None:
        if variant.is_decision:
            out.append(f"value: {witness.value}")
        out.append("sigma: " + " ".join(f"{f1.name(a)}->{f2.name(b)}" for a, b in witness.sigma))
        out.append("pi: " + " ".join(f"{a}->{b}" for a, b in witness.pi))
    print("\n".join(out))
    return EXIT_OK if found else EXIT_NO


def cmd_sample(args) -> int:
    spec = cultures.CultureSpec.parse(args.culture, args.m, args.n, args.seed)
    text = f"# CULTURE: {spec.model}\n# SEED: {spec.seed}\n" + formats.write_election(cultures.sample(spec))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        _write(args.output, text)
    return EXIT_OK


def cmd_matrix(args) -> int:
    models = _split_models(args.models) if args.models else list(experiments.DEFAULT_MODELS)
    matrix = experiments.run_similarity_matrix(
        models, args.m, args.n, args.pairs, args.seed,
        solver=args.solver, jobs=args.jobs, export_dir=args.export_dir,
    )
    with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
        experiments.write_matrix_csv(matrix, fh)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            experiments.render_svg_heatmap(matrix, fh)
    return EXIT_OK


def cmd_timing(args) -> int:
    models = _split_models(args.models) if args.models else list(experiments.TIMING_MODELS)
    rows = experiments.run_timing(models, _int_list(args.sizes), args.vary, args.fixed, args.pairs, args.seed, args.jobs)
    if args.csv == "-":
        experiments.write_timing_csv(rows, sys.stdout)
    else:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            experiments.write_timing_csv(rows, fh)
    return EXIT_OK


def cmd_reduce(args) -> int:
    graph = formats.parse_graph(_read(args.graph))
    prefix = args.output
    if args.gadget == "thm2":
        small, large = clique_to_subiso_instance(graph, args.k)
        _write(f"{prefix}_small.soc", formats.write_election(small))
        _write(f"{prefix}_large.soc", formats.write_election(large))
    else:
        e1, e2, sigma, pi = clique_to_common_cand_instance(graph)
        _write(f"{prefix}_1.soc", formats.write_election(e1))
        _write(f"{prefix}_2.soc", formats.write_election(e2))
        _write(f"{prefix}.sigma", formats.write_matching(sigma))
        _write(f"{prefix}.pi", formats.write_matching(pi))
    return EXIT_OK


def cmd_export_ilp(args) -> int:
    e1 = formats.parse_election(_read(args.first))
    e2 = formats.parse_election(_read(args.second))
    text = write_lp(build_ilp(e1, e2))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        _write(args.output, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subelections", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an isomorphism / common-subelection problem")
    p.add_argument("--variant", required=True, choices=[v.value for v in Variant])
    p.add_argument("--case", default="none", choices=["none", "voter", "cand", "both"])
    p.add_argument("--sigma", help="candidate matching file: 'left right' per line, 0-based")
    p.add_argument("--pi", help="voter matching file: 'left right' per line, 0-based")
    p.add_argument("--threshold", type=int, help="decision threshold for max-common variants")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sample", help="sample an election from a statistical culture")
    p.add_argument("--culture", required=True, help="e.g. ic, id, urn(alpha=0.1), mallows(normphi=0.5)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("experiment", help="similarity matrix or timing sweep")
    exp = p.add_subparsers(dest="experiment", required=True)
    q = exp.add_parser("matrix")
    q.add_argument("--models", help="comma-separated culture list (default: full roster)")
    q.add_argument("-m", type=int, default=10)
    q.add_argument("-n", type=int, default=50)
    q.add_argument("--pairs", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--solver", choices=["poly", "ilp-export"], default="poly")
    q.add_argument("--export-dir", help="directory for .lp files with --solver ilp-export")
    q.add_argument("--csv", required=True)
    q.add_argument("--svg")
    q.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    q.set_defaults(func=cmd_matrix)
    q = exp.add_parser("timing")
    q.add_argument("--models", help="comma-separated culture list")
    q.add_argument("--vary", choices=["n", "m"], default="n")
    q.add_argument("--sizes", default="5,10,15,20,25,30,35,40,45,50")
    q.add_argument("--fixed", type=int, default=10, help="candidates (vary n) or voters (vary m)")
    q.add_argument("--pairs", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--csv", default="-")
    q.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    q.set_defaults(func=cmd_timing)

    p = sub.add_parser("reduce", help="build a Clique reduction instance")
    p.add_argument("gadget", choices=["thm2", "thm4"])
    p.add_argument("--graph", required=True, help="edge list, 'u v' per line, 0-based")
    p.add_argument("-k", type=int, help="clique size (thm2)")
    p.add_argument("-o", "--output", required=True, help="output path prefix")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("export-ilp", help="write the voter-subelection ILP in LP format")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_export_ilp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reduce" and args.gadget == "thm2" and args.k is None:
        parser.error("reduce thm2 needs -k")
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, InvalidArgumentError, formats.FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

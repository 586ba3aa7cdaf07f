"""Command-line interface: solve / classify / verify / figure.

Exit codes: 0 all checks passed; 2 a count or bijection check failed;
3 a numerical tolerance was violated; 64 usage or input-file error.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from .pipeline import (
    EXIT_COUNT,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    __version__,
    run_classify,
    run_solve,
    run_verify,
    solutions_path,
)
from .records import RecordError, read_solutions_jsonl
from .solver import SolverConfig

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code this tool promises (64, not 2)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser, with_ell: bool) -> None:
    p.add_argument("--n", type=int, required=True, help="chain length N")
    if with_ell:
        p.add_argument("--ell", type=int, required=True,
                       help="number of Bethe roots (1..N//2)")
    p.add_argument("--j", type=float, default=1.0, help="coupling J")
    p.add_argument("--seed", type=int, default=0, help="seeding RNG seed")
    p.add_argument("--tol-newton", type=float, default=None,
                   help="Newton step/residual tolerance")
    p.add_argument("--tol-dedup", type=float, default=None,
                   help="root-set deduplication tolerance")


def _config(args: argparse.Namespace) -> SolverConfig:
    kw = {"seed": args.seed}
    if args.tol_newton is not None:
        kw["newton_tol"] = args.tol_newton
    if args.tol_dedup is not None:
        kw["dedup_tol"] = args.tol_dedup
    return SolverConfig(**kw)


def build_parser() -> _Parser:
    parser = _Parser(prog="bethe-rc", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[], help="solve one sector to JSONL")
    _add_common(p, with_ell=True)
    p.add_argument("--out", default=None,
                   help="output JSONL path (default solutions_N<N>_ell<ell>.jsonl)")

    p = sub.add_parser("classify",
                       help="classify a solved sector into rigged configurations")
    p.add_argument("--in", dest="inp", required=True,
                   help="solver JSONL for one sector")
    p.add_argument("--report", required=True, help="output report JSON path")
    p.add_argument("--csv", default=None, help="optional catalogue CSV path")

    p = sub.add_parser("verify",
                       help="solve, classify, flip-check, and match the exact "
                            "spectrum for every sector of one chain length")
    _add_common(p, with_ell=False)
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--tol-energy", type=float, default=1e-8,
                   help="spectrum match tolerance")
    p.add_argument("--max-residual", type=float, default=1e-10,
                   help="worst allowed normalized residual")

    p = sub.add_parser("figure", help="emit one SVG per solution")
    p.add_argument("--in", dest="inp", required=True,
                   help="solver JSONL for one sector")
    p.add_argument("--out", default="figures", help="output directory")
    p.add_argument("--nu", default=None,
                   help="keep only this configuration, e.g. 3,2,1")
    return parser


def _cmd_solve(args: argparse.Namespace, parser: _Parser) -> int:
    if args.ell < 1 or args.ell > args.n // 2:
        parser.error(f"--ell must lie in 1..{args.n // 2} for --n {args.n}")
    out = args.out or solutions_path(".", args.n, args.ell)
    sector, ok = run_solve(args.n, args.ell, out, _config(args))
    print(f"N={args.n} ell={args.ell}: {len(sector.solutions)} of "
          f"{sector.expected} solutions -> {out}")
    return EXIT_OK if ok else EXIT_COUNT


def _cmd_classify(args: argparse.Namespace) -> int:
    report, flip_problems = run_classify(args.inp, args.report, args.csv)
    verdict = "bijective" if report.bijective else "NOT bijective"
    print(f"N={report.N} ell={report.ell}: {len(report.classifications)} "
          f"classified, {verdict} -> {args.report}")
    for p in report.problems:
        print(f"  problem: {p}", file=sys.stderr)
    for p in flip_problems:
        print(f"  flip: {p}", file=sys.stderr)
    return EXIT_OK if report.bijective and not flip_problems else EXIT_COUNT


def _cmd_verify(args: argparse.Namespace, parser: _Parser) -> int:
    if args.n < 2:
        parser.error("--n must be at least 2")
    manifest = run_verify(args.n, args.out, _config(args), J=args.j,
                          tol_energy=args.tol_energy,
                          max_residual=args.max_residual)
    for st in manifest.stages:
        print(f"{st.name:10s} {st.status:8s} {st.detail}")
    for c in manifest.caveats:
        print(f"caveat: {c}")
    print(f"exit code {manifest.exit_code}")
    return manifest.exit_code


def _cmd_figure(args: argparse.Namespace, parser: _Parser) -> int:
    from .classify import label_solution
    from .figures import write_figures

    nu = None
    if args.nu:
        try:
            nu = tuple(int(p) for p in args.nu.split(","))
        except ValueError:
            parser.error(f"--nu must be a comma-separated partition, got {args.nu!r}")
    labeled = [label_solution(s) for s, _rec in read_solutions_jsonl(args.inp)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # the CLI prints its own message
        paths = write_figures(labeled, args.out, configuration=nu)
    if not paths:
        print("warning: selection is empty; no figures written", file=sys.stderr)
    else:
        print(f"{len(paths)} figures -> {args.out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args, parser)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "verify":
            return _cmd_verify(args, parser)
        if args.command == "figure":
            return _cmd_figure(args, parser)
    except RecordError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

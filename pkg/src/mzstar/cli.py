"""Command-line front end: ``mzstar eval | expand | verify``.

Exit codes: 0 all pass, 1 verification failure, 2 usage or parse error,
3 divergent index.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import suites
from .expander import expand
from .index import DivergentIndex, InvalidIndex, detect_two_block, parse_index
from .numeric import euler_numeric, star_numeric

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DIVERGENT = 0, 1, 2, 3

DEFAULT_TERMS = 10**6
DEFAULT_PRECISION = 128


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    index: str | None = None
    kind: str | None = None
    suite: str | None = None
    terms: int = DEFAULT_TERMS
    precision: int = DEFAULT_PRECISION
    tol: float | None = None
    jobs: int = 1
    fmt: str = "text"
    trailing_one: bool = False
    grid: suites.GridConfig = field(default_factory=suites.GridConfig)

    def validate(self) -> None:
        if self.terms < 1:
            raise UsageError(f"--terms must be at least 1, got {self.terms}")
        if self.precision < 53:
            raise UsageError(f"--precision must be at least 53, got {self.precision}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {self.jobs}")
        for z in self.grid.z_samples:
            if abs(Fraction(z)) >= 1:
                raise UsageError(f"z samples need |z| < 1, got {z}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational_list(text: str) -> tuple[str, ...]:
    try:
        return tuple(str(Fraction(x.strip())) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzstar",
        description="Multiple harmonic star sums, zeta star values and their Euler-sum expansions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--format", choices=("text", "json"), default=None, dest="fmt")
        p.add_argument("--json", action="store_const", const="json", dest="fmt",
                       help="shorthand for --format json")

    def numeric_flags(p):
        p.add_argument("--terms", "-N", type=int, default=None,
                       help=f"truncation point (env MZSTAR_TERMS, default {DEFAULT_TERMS})")
        p.add_argument("--precision", type=int, default=None,
                       help=f"MPFR bits (env MZSTAR_PRECISION, default {DEFAULT_PRECISION})")

    p_eval = sub.add_parser("eval", help="evaluate a truncated Euler sum or star sum")
    p_eval.add_argument("kind", choices=("star", "strict"))
    p_eval.add_argument("index", help='comma-separated entries, "-k" barred, "k^r" repeated')
    numeric_flags(p_eval)
    output_flags(p_eval)

    p_exp = sub.add_parser("expand", help="expand a zeta star value into Euler sums")
    p_exp.add_argument("index")
    p_exp.add_argument("--trailing-one", action="store_true",
                       help="read a final 1 as the trailing-one block")
    output_flags(p_exp)

    p_ver = sub.add_parser("verify", help="run a verification suite, JSON lines on stdout")
    p_ver.add_argument("suite", help=f"one of: {', '.join(suites.SUITES)}")
    p_ver.add_argument("--n-max", type=int)
    p_ver.add_argument("--sharp-n-max", type=int, default=40,
                       help="n bound for the sharp-sum lemma checks")
    p_ver.add_argument("--c-max", type=int, default=4,
                       help="sharp-sum depth bound for the lemma checks")
    p_ver.add_argument("--weight-max", type=int, default=14)
    p_ver.add_argument("--d-max", type=int)
    p_ver.add_argument("--a-max", type=int)
    p_ver.add_argument("--c-values", type=_int_list)
    p_ver.add_argument("--z-samples", type=_rational_list, default=suites.DEFAULT_Z)
    p_ver.add_argument("--max-m", type=int, help="twos-block length bound for closed-forms")
    p_ver.add_argument("--tol", type=float)
    p_ver.add_argument("--jobs", "-j", type=int, default=None,
                       help="worker processes (env MZSTAR_JOBS, default 1)")
    numeric_flags(p_ver)
    output_flags(p_ver)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    terms = args.terms if getattr(args, "terms", None) is not None else _env_int(
        "MZSTAR_TERMS", DEFAULT_TERMS)
    precision = args.precision if getattr(args, "precision", None) is not None else _env_int(
        "MZSTAR_PRECISION", DEFAULT_PRECISION)
    cfg = RunConfig(command=args.command, terms=terms, precision=precision)
    if args.command == "eval":
        cfg.kind, cfg.index, cfg.fmt = args.kind, args.index, args.fmt or "text"
    elif args.command == "expand":
        cfg.index, cfg.trailing_one, cfg.fmt = args.index, args.trailing_one, args.fmt or "text"
    else:
        cfg.suite = args.suite
        cfg.fmt = args.fmt or "json"
        cfg.tol = args.tol
        cfg.jobs = args.jobs if args.jobs is not None else _env_int("MZSTAR_JOBS", 1)
        cfg.grid = suites.GridConfig(
            n_max=args.n_max, sharp_n_max=args.sharp_n_max, c_max=args.c_max,
            weight_max=args.weight_max, d_max=args.d_max, a_max=args.a_max,
            c_values=args.c_values, z_samples=args.z_samples, terms=terms,
            precision=precision, tol=args.tol, extra={"max_m": args.max_m},
        )
    cfg.validate()
    return cfg


def cmd_eval(cfg: RunConfig, out) -> int:
    s = parse_index(cfg.index)
    fn = star_numeric if cfg.kind == "star" else euler_numeric
    res = fn(s, cfg.terms, cfg.precision)
    if cfg.fmt == "json":
        out.write(json.dumps({"kind": cfg.kind, "index": s.to_json(), **res.to_json()}) + "\n")
    else:
        out.write(f"value = {res.value:.{max(cfg.precision * 3 // 10, 15)}g}\n")
        out.write(f"terms_used = {res.terms_used}\n")
        out.write(f"tail_estimate = {float(res.tail_estimate):.3e}\n")
    return EXIT_OK


def cmd_expand(cfg: RunConfig, out) -> int:
    s = parse_index(cfg.index)
    t = detect_two_block(s, trailing_one=True if cfg.trailing_one else None)
    comb = expand(t)
    if cfg.fmt == "json":
        meta = {"index": s.to_json(), "a": list(t.a), "c": list(t.c),
                "trailing_one": t.trailing_one}
        out.write(json.dumps(comb.to_json(meta)) + "\n")
    else:
        out.write(comb.render() + "\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out, err) -> int:
    if cfg.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(suites.SUITES)}")
    try:
        tasks = suites.build_tasks(cfg.suite, cfg.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    passed = failed = 0
    for report in suites.run_tasks(tasks, cfg.jobs):
        if report.passed:
            passed += 1
        else:
            failed += 1
        if cfg.fmt == "json":
            line = json.dumps(report.to_json()) + "\n"
        else:
            data = report.to_json()
            name = data.get("identity") or data.get("check")
            line = f"{'PASS' if report.passed else 'FAIL'} {name} {json.dumps(data['params'])}\n"
        out.write(line)
        out.flush()
    err.write(f"{cfg.suite}: {passed} passed, {failed} failed, {passed + failed} total\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# an index such as "-2,1" starts with a dash; argparse would read it as a flag
_DASHED_INDEX = re.compile(r"^-\d[\d,^\s-]*$")


def _protect_indices(argv):
    return [" " + a if _DASHED_INDEX.match(a) else a for a in argv]


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _protect_indices(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = make_config(args)
        if cfg.command == "eval":
            return cmd_eval(cfg, out)
        if cfg.command == "expand":
            return cmd_expand(cfg, out)
        return cmd_verify(cfg, out, err)
    except DivergentIndex as exc:
        err.write(f"mzstar: divergent: {exc}\n")
        return EXIT_DIVERGENT
    except (InvalidIndex, UsageError, ValueError) as exc:
        err.write(f"mzstar: error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""``painleve-probe`` command line.

Exit codes: 0 PassesNecessary, 1 FailsPainleve, 2 Indeterminate, 3 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ._version import __version__
from .checks import FAILS, PASSES, UNDECIDED, full_verdict
from .errors import (
    ExcludedPoint,
    LinearEquation,
    NoBasePoint,
    NumericFailure,
    ParseError,
    PainleveProbeError,
)
from .parser import parse_equation
from .painleve import MAX_DEPTH
from .report import AnalysisReport, build_report, render_text
from .roots import DEFAULT_PRECISION
from .scalars import GaussRational

EXIT_PASS, EXIT_FAIL, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 3
EXIT_FOR = {PASSES: EXIT_PASS, FAILS: EXIT_FAIL, UNDECIDED: EXIT_INDETERMINATE}


class InputError(Exception):
    """Bad input; maps to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_ode_text(text: str) -> str:
    """Drop ``#`` comment lines and blank lines; what remains is one equation."""
    body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise InputError("no equation found")
    return " ".join(body)


def analyze_text(
    equation: str,
    z0=None,
    precision: int = DEFAULT_PRECISION,
    depth: int = MAX_DEPTH,
    self_check: bool = False,
    timings: bool = False,
) -> AnalysisReport:
    try:
        ode = parse_equation(equation)
    except ParseError as exc:
        d = exc.diagnostic
        raise InputError(f"parse error at byte {d.byte_offset}: {d.message}") from None
    try:
        analysis = full_verdict(ode, z0, precision=precision, depth=depth, run_self_check=self_check)
    except (LinearEquation, ExcludedPoint, NoBasePoint) as exc:
        raise InputError(str(exc)) from None
    return build_report(analysis, equation, precision, with_timings=timings)


def _emit(report: AnalysisReport, fmt: str) -> str:
    return report.to_json() + "\n" if fmt == "json" else render_text(report)


def _parse_z0(text):
    if text is None:
        return None
    try:
        return GaussRational.parse(text)
    except ValueError as exc:
        raise InputError(f"bad --z0: {exc}") from None


def cmd_analyze(args) -> int:
    if args.expr is not None:
        equation = args.expr
    elif args.path == "-":
        equation = read_ode_text(sys.stdin.read())
    elif args.path:
        try:
            equation = read_ode_text(Path(args.path).read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {args.path}: {exc}") from None
    else:
        raise InputError("give a path, '-' or --expr")
    report = analyze_text(
        equation,
        _parse_z0(args.z0),
        precision=args.precision,
        depth=args.depth,
        self_check=args.self_check,
        timings=args.timings,
    )
    sys.stdout.write(_emit(report, args.format))
    for c in report.checks:
        if c["severity"] == "internal" and c["outcome"] == "fail":
            print(f"painleve-probe: internal self-check failed: {c['detail']}", file=sys.stderr)
    return EXIT_FOR[report.verdict]


# -- corpus ------------------------------------------------------------------------------


def _analyze_file(path: str, precision: int, depth: int):
    name = os.path.basename(path)
    try:
        text = read_ode_text(Path(path).read_text(encoding="utf-8"))
        return name, analyze_text(text, precision=precision, depth=depth).to_dict(), None
    except (InputError, OSError, UnicodeDecodeError, PainleveProbeError) as exc:
        return name, None, f"{type(exc).__name__}: {exc}"


def run_corpus(directory, jobs: int | None = None, precision: int = DEFAULT_PRECISION, depth: int = MAX_DEPTH) -> dict:
    """Analyze every ``.ode`` file; the result is ordered by filename whatever ``jobs`` is."""
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"not a directory: {directory}")
    paths = sorted(str(p) for p in directory.iterdir() if p.suffix == ".ode")
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(paths))) as pool:
            results = list(pool.map(_analyze_file, paths, [precision] * len(paths), [depth] * len(paths)))
    else:
        results = [_analyze_file(p, precision, depth) for p in paths]

    reports, errors = [], []
    verdicts, failing = Counter(), Counter()
    for name, rep, err in results:
        if err is not None:
            errors.append({"file": name, "error": err})
            continue
        reports.append({"file": name, "report": rep})
        verdicts[rep["verdict"]] += 1
        for c in rep["checks"]:
            if c["outcome"] == "fail" and c["severity"] == "hard":
                failing[c["id"]] += 1
                break
    summary = {
        "files": len(results),
        "verdicts": {k: verdicts[k] for k in (PASSES, FAILS, UNDECIDED)},
        "failing_checks": dict(sorted(failing.items())),
        "errors": len(errors),
    }
    return {"version": __version__, "reports": reports, "errors": errors, "summary": summary}


def render_corpus_text(result: dict) -> str:
    out = []
    for item in result["reports"]:
        out.append(f"== {item['file']} ==")
        out.append(render_text(AnalysisReport.from_dict(item["report"])))
    for err in result["errors"]:
        out.append(f"== {err['file']} ==\nerror: {err['error']}\n")
    s = result["summary"]
    out.append("summary")
    out.append(f"  files           {s['files']}")
    for k, v in s["verdicts"].items():
        out.append(f"  {k:<15} {v}")
    for k, v in s["failing_checks"].items():
        out.append(f"  failed at {k:<21} {v}")
    out.append(f"  errors          {s['errors']}")
    return "\n".join(out) + "\n"


def cmd_corpus(args) -> int:
    result = run_corpus(args.dir, args.jobs, args.precision, args.depth)
    if args.format == "json":
        sys.stdout.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_corpus_text(result))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="painleve-probe", description="Necessary-condition Painleve test for polynomial ODEs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in bits")
        p.add_argument("--depth", type=int, default=MAX_DEPTH, help="maximum Laurent expansion depth")

    a = sub.add_parser("analyze", help="analyze one equation")
    a.add_argument("path", nargs="?", help="an .ode file, or - for standard input")
    a.add_argument("--expr", help="equation text")
    a.add_argument("--z0", help="base point, a Gaussian rational such as 1/2 or 1+i")
    a.add_argument("--self-check", action="store_true", help="re-derive H and R through the series oracle")
    a.add_argument("--timings", action="store_true", help="include per-stage timings (output is no longer reproducible)")
    common(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("corpus", help="analyze every .ode file in a directory")
    c.add_argument("dir")
    c.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    common(c)
    c.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "expr", None) is not None and args.path is not None:
        ap.error("give either a path or --expr, not both")
    if args.precision < 53:
        ap.error("--precision must be at least 53 bits")
    if args.depth < 1:
        ap.error("--depth must be positive")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"painleve-probe: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        print(f"painleve-probe: numeric failure: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 ok, 1 property failure, 2 bad parameters, 3 search exhaustion,
4 bad input file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from . import analysis, verify
from .curve import SearchExhausted, WeierstrassCurve, group_summary, is_admissible_trace, search_curve
from .funcfield import PlaceError
from .gf import FieldError
from .seqgen import DumpFormatError, Mode, build_family, dumps, loads

EXIT_OK, EXIT_PROPERTY, EXIT_PARAMS, EXIT_EXHAUSTED, EXIT_INPUT = 0, 1, 2, 3, 4


class CLIError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    p: int
    n: int
    t: int
    d: int = 2
    mode: Mode = Mode.PAPER_FAITHFUL
    include_zero_delay: bool = False
    curve_override: str | None = None
    out: str | None = None
    format: str | None = None

    @property
    def q(self):
        return self.p**self.n

    @property
    def N(self):
        return self.q + 1 + self.t

    def validate(self, need_d=True):
        if self.p is None or self.n is None or self.t is None:
            raise CLIError(EXIT_PARAMS, "--p, --n and --t are required")
        if self.p < 3 or self.n < 1:
            raise CLIError(EXIT_PARAMS, "need an odd prime p and n >= 1")
        if not is_admissible_trace(self.p, self.n, self.t):
            raise CLIError(EXIT_PARAMS, f"trace {self.t} is not admissible for q = {self.q}")
        if need_d and (self.d < 2 or math.gcd(self.d, self.N) != 1):
            raise CLIError(EXIT_PARAMS, f"need d >= 2 with gcd(d, N={self.N}) = 1, got d = {self.d}")


def _emit(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _curve_from_override(cfg):
    text = cfg.curve_override
    if os.path.exists(text):
        try:
            with open(text) as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise CLIError(EXIT_INPUT, str(exc)) from None
        if text.startswith("{"):
            text = json.loads(text)["curve"]
    try:
        curve = WeierstrassCurve.parse(text)
    except (ValueError, KeyError) as exc:
        raise CLIError(EXIT_PARAMS, f"bad curve {cfg.curve_override!r}: {exc}") from None
    F = curve.field
    if (F.p, F.n) != (cfg.p, cfg.n):
        raise CLIError(EXIT_PARAMS, "curve field differs from --p/--n")
    summary = group_summary(curve)
    if summary.t != cfg.t or not summary.cyclic:
        raise CLIError(EXIT_PARAMS, f"curve has trace {summary.t}, cyclic={summary.cyclic}; need cyclic with trace {cfg.t}")
    return curve


def _curve(cfg):
    if cfg.curve_override:
        return _curve_from_override(cfg)
    try:
        curve, _ = search_curve(cfg.p, cfg.n, cfg.t)
    except SearchExhausted as exc:
        raise CLIError(EXIT_EXHAUSTED, str(exc)) from None
    return curve


def cmd_search(cfg):
    cfg.validate(need_d=False)
    curve = _curve(cfg)
    summary = group_summary(curve)
    _emit(json.dumps(summary.to_json(curve), sort_keys=True) + "\n", cfg.out)
    return EXIT_OK


def _family(cfg):
    cfg.validate()
    curve = _curve(cfg)
    try:
        return build_family(cfg.p, cfg.n, cfg.t, cfg.d, cfg.mode, curve=curve)
    except PlaceError as exc:
        raise CLIError(EXIT_PARAMS, str(exc)) from None


def cmd_generate(cfg):
    fam = _family(cfg)
    fmt = cfg.format or "dump"
    if fmt == "dump":
        text = dumps(fam)
    elif fmt == "json":
        text = json.dumps({
            "curve": group_summary(fam.curve).to_json(fam.curve),
            "place": fam.place.to_json(),
            "v_basis": [v.serialize() for v in fam.v_basis],
            "mode": fam.mode.value,
            "sequences": ["".join(map(str, row.tolist())) for row in fam.sequences],
        }, sort_keys=True) + "\n"
    else:
        raise CLIError(EXIT_PARAMS, f"generate does not write format {fmt!r}")
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_analyze(cfg, dump_path=None):
    if dump_path:
        try:
            with open(dump_path) as fh:
                header, bits = loads(fh.read())
        except (OSError, UnicodeDecodeError, DumpFormatError) as exc:
            raise CLIError(EXIT_INPUT, f"{dump_path}: {exc}") from None
        p, n, t, d = header["p"], header["n"], header["t"], header["d"]
        mode = header.get("mode", cfg.mode.value)
        seqs = bits
    else:
        fam = _family(cfg)
        p, n, t, d, mode, seqs = cfg.p, cfg.n, cfg.t, cfg.d, fam.mode.value, fam.sequences
    report = analysis.analyze(seqs, p, n, t, d, mode, cfg.include_zero_delay)
    fmt = cfg.format or "json"
    if fmt == "json":
        text = analysis.report_json(report) + "\n"
    elif fmt == "csv":
        m = report["measured"]
        text = analysis.table_csv([
            analysis.table_row(p**n, t, d, report["bounds"]["balance"], m["delta"]),
            analysis.table_row(p**n, t, d, report["bounds"]["correlation"], m["cor"]),
        ])
    else:
        raise CLIError(EXIT_PARAMS, f"analyze does not write format {fmt!r}")
    _emit(text, cfg.out)
    return EXIT_OK if all(report["checks"].values()) else EXIT_PROPERTY


def cmd_verify(scope="quick", out=None):
    checks = verify.run_suite(scope or "quick")
    _emit("".join(c.line() + "\n" for c in checks), out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_PROPERTY


TABLE_ROWS = {
    # kind: [(q, t)], bound function
    "balance": ([(81, -1), (243, -1), (729, -1), (2187, -1)], lambda q, t, d: analysis.bound_balance_corollary(q, d)),
    "correlation": ([(81, -1), (243, -1), (729, -1), (2187, -1)],
                    lambda q, t, d: analysis.bound_correlation_corollary(q, d)),
    "correlation-trace": ([(81, 9), (243, 27), (729, 27)], analysis.bound_correlation),
}


def cmd_table(kind, d=2, measure_up_to=0, include_zero_delay=False, out=None):
    """Bound tables for p = 3; Actual is measured for q <= measure_up_to."""
    rows_spec, bound = TABLE_ROWS[kind]
    rows = []
    for q, t in rows_spec:
        actual = None
        if q <= measure_up_to:
            n = round(math.log(q, 3))
            fam = build_family(3, n, t, d)
            if kind == "balance":
                actual = analysis.balance(fam).delta
            else:
                actual = analysis.family_correlation(fam, include_zero_delay).cor
        rows.append(analysis.table_row(q, t, d, bound(q, t, d), actual))
    _emit(analysis.table_csv(rows), out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--d", type=int, default=2)
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.PAPER_FAITHFUL.value)
    common.add_argument("--include-zero-delay", action="store_true",
                        help="let delay-0 cross-correlation enter the reported maximum")
    common.add_argument("--curve", help="serialized curve p;n;mod;a2;a4;a6, or a file holding one")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=["json", "csv", "dump"])

    parser = argparse.ArgumentParser(prog="ellseq", description="Binary sequences from cyclic elliptic curves.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("search", parents=[common], help="find a cyclic curve with a given trace")
    sub.add_parser("generate", parents=[common], help="write a sequence family")
    a = sub.add_parser("analyze", parents=[common], help="measure a family against the bounds")
    a.add_argument("dump", nargs="?", help="sequence dump to analyze instead of generating")
    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--scope", choices=["quick", "full"], default="quick")
    v.add_argument("--out")
    tb = sub.add_parser("table", help="CSV bound tables (p = 3)")
    tb.add_argument("--kind", choices=sorted(TABLE_ROWS), default="correlation")
    tb.add_argument("--d", type=int, default=2)
    tb.add_argument("--measure-up-to", type=int, default=0, help="fill Actual for q up to this size")
    tb.add_argument("--include-zero-delay", action="store_true")
    tb.add_argument("--out")
    return parser


def _config(args):
    return RunConfig(args.p, args.n, args.t, args.d, Mode(args.mode), args.include_zero_delay,
                     args.curve, args.out, args.format)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "search":
            return cmd_search(_config(args))
        if args.command == "generate":
            return cmd_generate(_config(args))
        if args.command == "analyze":
            cfg = _config(args)
            if not args.dump:
                cfg.validate()
            return cmd_analyze(cfg, args.dump)
        if args.command == "verify":
            return cmd_verify(args.scope, args.out)
        if args.command == "table":
            return cmd_table(args.kind, args.d, args.measure_up_to, args.include_zero_delay, args.out)
    except CLIError as exc:
        print(f"ellseq: {exc}", file=sys.stderr)
        return exc.code
    except FieldError as exc:
        print(f"ellseq: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())

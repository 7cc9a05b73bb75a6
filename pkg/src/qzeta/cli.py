"""Command-line front end.

Subcommands:
  eval     evaluate a series (zeta, Z, T, S) at a composition
  verify   run one identity check with explicit parameters
  suite    run identity checks over their default parameter sweeps
  table    tabulate values on the (m+2, 1...1) grid
  catalog  list the identity registry

Exit codes: 0 all checks passed, 1 computational error or check failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .backend import COMPLEX, EXACT, FLOAT, BackendConfig
from .errors import QZetaError
from .identities import (list_identities, reports_to_csv, reports_to_json,
                         run_suite, suite_summary, verify)
from .qseries import QSeries
from .words import Composition, parse_composition
from .zeta import EvalParams, eval_Z, eval_zeta
from .auxseries import eval_S, eval_T


def _add_backend_flags(p: argparse.ArgumentParser):
    p.add_argument("--backend", choices=[EXACT, FLOAT, COMPLEX], default=EXACT)
    p.add_argument("--q", default=None,
                   help="q as a decimal or a fraction like 1/2 (numeric backends)")
    p.add_argument("--order", type=int, default=25,
                   help="series precision Q of the exact backend")
    p.add_argument("--trunc", type=int, default=128,
                   help="index cap N for numeric summation")
    p.add_argument("--tol", type=float, default=1e-8)


def _parse_q(text):
    if text is None:
        return None
    if "/" in text:
        return Fraction(text)
    return float(text)


def _backend_from_args(args) -> BackendConfig:
    q = _parse_q(args.q)
    if args.backend != EXACT and q is None:
        q = 0.5
    return BackendConfig(args.backend, q=q, order=args.order,
                         trunc=args.trunc, tol=args.tol)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qzeta",
        description="multiple q-zeta values: evaluation and identity checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a series")
    p_eval.add_argument("kind", choices=["zeta", "Z", "T", "S"])
    p_eval.add_argument("composition",
                        help="argument list like 2,1 or 3,{1}^4")
    p_eval.add_argument("--shift", type=int, default=0,
                        help="total shift m (kind Z only)")
    _add_backend_flags(p_eval)

    p_verify = sub.add_parser("verify", help="run one identity check")
    p_verify.add_argument("id")
    p_verify.add_argument("--param", action="append", default=[],
                          metavar="KEY=VALUE",
                          help="check parameter; repeatable")
    for flag in ("s", "t", "w", "ss", "which"):
        p_verify.add_argument(f"--{flag}")
    for flag in ("m", "n", "k", "j", "a", "M", "J", "K"):
        p_verify.add_argument(f"--{flag}", type=int)
    for flag in ("theta", "x", "y"):
        p_verify.add_argument(f"--{flag}", type=float)
    p_verify.add_argument("--blocks",
                          help="block list like 1,1;2,1 for (a,b) pairs")
    _add_backend_flags(p_verify)

    p_suite = sub.add_parser("suite", help="run checks over default sweeps")
    p_suite.add_argument("pattern", help="check id glob, or 'all'")
    p_suite.add_argument("--format", choices=["text", "json", "csv"],
                         default="text")
    p_suite.add_argument("--output", default=None)
    _add_backend_flags(p_suite)

    p_table = sub.add_parser("table", help="values on the (m+2, 1...1) grid")
    p_table.add_argument("--max-m", type=int, default=4)
    p_table.add_argument("--max-n", type=int, default=4)
    p_table.add_argument("--format", choices=["text", "json", "csv"],
                         default="text")
    p_table.add_argument("--output", default=None)
    _add_backend_flags(p_table)

    sub.add_parser("catalog", help="list the identity registry")
    return parser


def _parse_value(text: str):
    try:
        return json.loads(text)
    except (json.JSONDecodeError, ValueError):
        pass
    if ";" in text or ("," in text and all(
            tok.strip().lstrip("-").isdigit() for tok in
            text.replace(";", ",").split(","))):
        return text
    return text


def _parse_blocks(text: str):
    blocks = []
    for chunk in text.split(";"):
        a, b = chunk.split(",")
        blocks.append((int(a), int(b)))
    return tuple(blocks)


def _collect_params(args) -> dict:
    params = {}
    for item in args.param:
        if "=" not in item:
            raise QZetaError(f"--param needs KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        params[key] = _parse_value(value)
    for flag in ("s", "t", "ss"):
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = tuple(parse_composition(value).parts)
    for flag in ("w", "which"):
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = value
    for flag in ("m", "n", "k", "j", "a", "M", "J", "K", "theta", "x", "y"):
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = value
    if getattr(args, "blocks", None):
        params["blocks"] = _parse_blocks(args.blocks)
    return params


def _format_scalar(value) -> str:
    if isinstance(value, QSeries):
        return str(value)
    bound = getattr(value, "tail_bound", 0.0)
    flag = "" if getattr(value, "rigorous", True) else " (heuristic bound)"
    return f"{value.value} ± {bound:.3g}{flag}"


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        print(text)


def _cmd_eval(args) -> int:
    cfg = _backend_from_args(args)
    ep = EvalParams(cfg)
    comp = Composition(parse_composition(args.composition).parts)
    if args.kind == "zeta":
        value = eval_zeta(comp, ep)
    elif args.kind == "Z":
        value = eval_Z(comp, args.shift, ep)
    elif args.kind == "T":
        value = eval_T(comp.parts, ep)
    else:
        value = eval_S(comp.parts, ep)
    print(_format_scalar(value))
    return 0


def _cmd_verify(args) -> int:
    cfg = _backend_from_args(args)
    report = verify(args.id, _collect_params(args), cfg)
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if (report.verdict or not report.hard) else 1


def _cmd_suite(args) -> int:
    cfg = _backend_from_args(args)
    reports = run_suite(args.pattern, cfg)
    if args.format == "json":
        _emit(reports_to_json(reports), args.output)
    elif args.format == "csv":
        _emit(reports_to_csv(reports), args.output)
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.verdict else ("warn" if not r.hard else "FAIL")
            note = f"  [{r.note}]" if r.note else ""
            lines.append(f"{status:4} {r.id:20} {json.dumps({k: str(v) for k, v in r.params.items()})}"
                         f"  residual={r.residual_norm:.3g}  {r.ms:.1f}ms{note}")
        summary = suite_summary(reports)
        lines.append(f"-- {summary['passed']}/{summary['total']} passed, "
                     f"{summary['hard_failures']} hard failures, "
                     f"{summary['soft_failures']} soft warnings, "
                     f"{summary['ms']:.0f}ms total")
        _emit("\n".join(lines), args.output)
    bad = any(not r.verdict and r.hard for r in reports)
    return 1 if bad else 0


def _cmd_table(args) -> int:
    cfg = _backend_from_args(args)
    ep = EvalParams(cfg)
    rows = []
    for m in range(args.max_m + 1):
        row = []
        for n in range(args.max_n + 1):
            value = eval_zeta((m + 2,) + (1,) * n, ep)
            row.append(str(value) if isinstance(value, QSeries)
                       else f"{value.value:.12g}")
        rows.append(row)
    if args.format == "json":
        _emit(json.dumps({"grid": rows}, indent=2), args.output)
    elif args.format == "csv":
        lines = ["m\\n," + ",".join(str(n) for n in range(args.max_n + 1))]
        for m, row in enumerate(rows):
            lines.append(f"{m}," + ",".join(f'"{c}"' for c in row))
        _emit("\n".join(lines), args.output)
    else:
        lines = []
        for m, row in enumerate(rows):
            for n, cell in enumerate(row):
                lines.append(f"value({m + 2},{{1}}^{n}) = {cell}")
        _emit("\n".join(lines), args.output)
    return 0


def _cmd_catalog(_args) -> int:
    for entry in list_identities():
        kind = "hard" if entry["hard"] else "soft"
        print(f"{entry['id']:22} [{kind}] {entry['theorem_ref']}")
        for key, doc in entry["params"].items():
            print(f"    {key}: {doc}")
    return 0


_DISPATCH = {
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "suite": _cmd_suite,
    "table": _cmd_table,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except QZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

One executable, six subcommands: check, hstar, hilbert, family, stabilize,
census.  Data goes to stdout, diagnostics to stderr.  Exit codes: 0 ok,
1 domain error (not reflexive, out of range), 2 budget exceeded, 3 usage.
JSON payloads carry a schema tag and the package version, since census
artifacts tend to outlive the code that wrote them.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from typing import Optional

from ._version import __version__
from . import census as census_mod
from . import cone as cone_mod
from . import ehrhart, families, stabilization
from .errors import BudgetExceededError, NotReflexiveError, ParseError
from .idp import IdpReport, is_idp, is_reflexive, satisfies_necessary_condition
from .weights import (WeightVector, format_weights, parse_weights,
                      reflexive_context, to_support_form)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

SCHEMA_PREFIX = "wpsimplex"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; route through our own code
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Global options shared by every subcommand."""

    format: str = "text"
    workers: int = 1
    max_points: int = cone_mod.DEFAULT_MAX_POINTS
    seed: int = 0


def build_parser() -> _Parser:
    parser = _Parser(prog="wpsimplex",
                     description="Reflexivity, IDP and h*-vector tools for Delta(1,q)")
    parser.add_argument("--format", choices=["text", "json", "csv"], default="text")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--max-points", type=int, default=cone_mod.DEFAULT_MAX_POINTS,
                        help="enumeration budget for the cone oracle")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="reflexivity / necessary condition / IDP")
    p.add_argument("q")
    p.add_argument("--necessary-only", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hstar", help="h*-polynomial, optionally the ell/g factorization")
    p.add_argument("q")
    p.add_argument("--factor", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hilbert", help="Hilbert basis of cone(Delta(1,q)) by brute force")
    p.add_argument("q")
    p.add_argument("--max-points", type=int, default=None, dest="cmd_max_points")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("family", help="generate a classified reflexive family member")
    p.add_argument("kind", choices=[k.value for k in families.FamilyKind])
    p.add_argument("--x", default=None, help="multiplicities, e.g. 1,2,3")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", default=None, help="free-sum left operand")
    p.add_argument("--w", default=None, help="free-sum right operand")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("stabilize", help="reflexive stabilization rs(q, m)")
    p.add_argument("q")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--report", action="store_true",
                   help="also report the h*(rs(q, m)) shape")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("census", help="unimodality / IDP enumeration experiments")
    census_sub = p.add_subparsers(dest="census_command", required=True)

    c = census_sub.add_parser("un", help="fraction of unimodal h* at each volume")
    c.add_argument("--m-min", type=int, required=True)
    c.add_argument("--m-max", type=int, required=True)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--sample", type=int, default=None, metavar="N")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None)

    c = census_sub.add_parser("idp", help="IDP reflexives over qualifying supports")
    c.add_argument("--m-max", type=int, required=True)
    c.add_argument("--checkpoint", default=None, metavar="DIR")
    c.add_argument("--out", default=None)

    return parser


def _schema(name: str) -> str:
    return f"{SCHEMA_PREFIX}.{name}/1"


def _parse_q(text: str) -> WeightVector:
    try:
        return parse_weights(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def _witness_dict(report: IdpReport) -> Optional[dict]:
    if report.witness is None:
        return None
    if len(report.witness) == 1:
        return {"j": report.witness[0]}
    return {"j": report.witness[0], "b": report.witness[1]}


def _witness_text(report: IdpReport) -> str:
    if report.witness is None:
        return "-"
    if len(report.witness) == 1:
        return f"j={report.witness[0]}"
    return f"j={report.witness[0]} b={report.witness[1]}"


def _bool(x) -> str:
    return "undetermined" if x is None else ("true" if x else "false")


def _report_line(report: IdpReport) -> str:
    return (f"reflexive={_bool(report.reflexive)} necessary={_bool(report.necessary)} "
            f"idp={_bool(report.idp)} witness={_witness_text(report)}")


def _cmd_check(args, config: RunConfig) -> int:
    q = _parse_q(args.q)
    if args.necessary_only:
        ok, j = satisfies_necessary_condition(q)
        report = IdpReport(reflexive=is_reflexive(q), necessary=ok, idp=None,
                           witness=None if ok else (j,))
    else:
        report = is_idp(q)
    if args.json or config.format == "json":
        payload = {
            "schema": _schema("check"),
            "version": __version__,
            "q": list(q.entries),
            "reflexive": report.reflexive,
            "necessary": report.necessary,
            "idp": report.idp,
            "witness": _witness_dict(report),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"q: {format_weights(q)}")
        print(f"reflexive: {_bool(report.reflexive)}")
        print(f"necessary: {_bool(report.necessary)}")
        print(f"idp: {_bool(report.idp)}")
        print(f"witness: {_witness_text(report)}")
    return EXIT_OK


def _cmd_hstar(args, config: RunConfig) -> int:
    q = _parse_q(args.q)
    poly = ehrhart.h_star(q)
    reflexive = is_reflexive(q)
    ell = g = None
    if args.factor or reflexive:
        try:
            sf = to_support_form(q)
            ctx = reflexive_context(sf)
            ell, g = ctx.ell, ehrhart.g_poly(sf, ctx)
        except NotReflexiveError:
            if args.factor:
                raise
    factor_ok = None
    if args.factor:
        factor_ok = ehrhart.factorization_holds(q)
    if args.json or config.format == "json":
        payload = {
            "schema": _schema("hstar"),
            "version": __version__,
            "q": list(q.entries),
            "n": q.n,
            "N": q.volume,
            "hstar": list(poly.coeffs),
            "ell": ell,
            "g": None if g is None else list(g.coeffs),
            "unimodal": ehrhart.is_unimodal(poly),
            "palindromic": ehrhart.is_palindromic(poly, q.n),
        }
        if factor_ok is not None:
            payload["factorization"] = factor_ok
        print(json.dumps(payload, sort_keys=True))
    else:
        print(str(poly))
        if args.factor:
            print(f"ell: {ell}")
            print(f"g: {g}")
            print(f"factorization: {'verified' if factor_ok else 'FAILED'}")
    return EXIT_OK


def _cmd_hilbert(args, config: RunConfig) -> int:
    q = _parse_q(args.q)
    cap = args.cmd_max_points if args.cmd_max_points is not None else config.max_points
    basis = cone_mod.hilbert_basis(q, max_points=cap)
    if args.json or config.format == "json":
        payload = {
            "schema": _schema("hilbert"),
            "version": __version__,
            "q": list(q.entries),
            "count": len(basis),
            "basis": [[p.height, *p.coords] for p in basis],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for p in basis:
            print(" ".join(str(x) for x in (p.height, *p.coords)))
    return EXIT_OK


def _cmd_family(args, config: RunConfig) -> int:
    kind = families.FamilyKind(args.kind)
    x = tuple(int(v) for v in args.x.split(",")) if args.x else ()
    operands = None
    if kind is families.FamilyKind.FREE_SUM:
        if args.p is None or args.w is None:
            raise UsageError("free-sum needs --p and --w operand vectors")
        operands = (_parse_q(args.p), _parse_q(args.w))
    spec = families.FamilySpec(kind=kind, x=x, k=args.k, s=args.s, n=args.n,
                               operands=operands)
    try:
        q = families.generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = is_idp(q)
    if args.json or config.format == "json":
        payload = {
            "schema": _schema("family"),
            "version": __version__,
            "kind": kind.value,
            "q": list(q.entries),
            "reflexive": report.reflexive,
            "necessary": report.necessary,
            "idp": report.idp,
            "witness": _witness_dict(report),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(format_weights(q))
        print(_report_line(report))
    return EXIT_OK


def _cmd_stabilize(args, config: RunConfig) -> int:
    q = _parse_q(args.q)
    if args.m < 1:
        raise UsageError("m must be >= 1")
    result = stabilization.stabilize(q, args.m)
    report = None
    if args.report:
        stripped = result.base
        if not stripped:
            raise UsageError("shape report needs at least one entry >= 2")
        report = stabilization.check_large_m_shape(WeightVector(stripped), args.m)
    if args.json or config.format == "json":
        payload = {
            "schema": _schema("stabilize"),
            "version": __version__,
            "q": list(q.entries),
            "m": result.m,
            "rsn": result.rsn,
            "lcm": result.lcm,
            "stabilized": list(result.stabilized.entries),
        }
        if report is not None:
            payload["report"] = {
                "coeffs_only_1_2": report.coeffs_only_1_2,
                "unimodal": report.unimodal,
                "threshold_met": report.threshold_met,
                "ell": report.ell,
            }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"rsn: {result.rsn}")
        print(f"stabilized: {format_weights(result.stabilized)}")
        if report is not None:
            print(f"ell: {report.ell}")
            print(f"threshold_met: {_bool(report.threshold_met)}")
            print(f"coeffs_only_1_2: {_bool(report.coeffs_only_1_2)}")
            print(f"unimodal: {_bool(report.unimodal)}")
    return EXIT_OK


def _emit_table(rows: list[list], columns: list[str], fmt: str, out: Optional[str],
                schema: str, extra: Optional[dict] = None):
    if fmt == "csv":
        target = open(out, "w", newline="") if out else sys.stdout
        try:
            writer = csv.writer(target)
            writer.writerow(columns)
            writer.writerows(rows)
        finally:
            if out:
                target.close()
    elif fmt == "json":
        payload = {"schema": schema, "version": __version__,
                   "records": [dict(zip(columns, row)) for row in rows]}
        if extra:
            payload.update(extra)
        text = json.dumps(payload, sort_keys=True, indent=2)
        if out:
            with open(out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        widths = [max(len(str(c)), max((len(str(r[i])) for r in rows), default=0))
                  for i, c in enumerate(columns)]
        print("  ".join(str(c).ljust(w) for c, w in zip(columns, widths)))
        for row in rows:
            print("  ".join(str(v).ljust(w) for v, w in zip(row, widths)))


def _census_format(args, config: RunConfig) -> str:
    if args.out:
        if args.out.endswith(".json"):
            return "json"
        if args.out.endswith(".csv"):
            return "csv"
    if config.format != "text":
        return config.format
    return "csv" if args.out else "text"


def _cmd_census_un(args, config: RunConfig) -> int:
    if args.m_min < 2 or args.m_max < args.m_min:
        raise UsageError("need 2 <= m-min <= m-max")
    records = []
    for M in range(args.m_min, args.m_max + 1):
        if args.sample is not None:
            records.append(census_mod.un_sampled(M, args.sample, args.seed))
        else:
            records.append(census_mod.un_exact(M, workers=config.workers))
    fmt = _census_format(args, config)
    if fmt == "json":
        payload = {"schema": _schema("census.un"), "version": __version__,
                   "records": [r.json_dict() for r in records]}
        text = json.dumps(payload, sort_keys=True, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        rows = [r.csv_row() for r in records]
        _emit_table(rows, census_mod.CSV_COLUMNS, "csv" if fmt == "csv" else "text",
                    args.out, _schema("census.un"))
    return EXIT_OK


def _cmd_census_idp(args, config: RunConfig) -> int:
    if args.m_max < 3:
        raise UsageError("need m-max >= 3")
    record = census_mod.idp_census(args.m_max, checkpoint_dir=args.checkpoint,
                                   progress=lambda M, v: print(
                                       f"M={M} r_vectors={v[0]} idp={v[1]}",
                                       file=sys.stderr))
    fmt = _census_format(args, config)
    if fmt == "json":
        payload = {"schema": _schema("census.idp"), "version": __version__}
        payload.update(record.json_dict())
        text = json.dumps(payload, sort_keys=True, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        rows = [[m, v[0], v[1]] for m, v in sorted(record.per_m.items())]
        rows.append(["total", record.count_r_vectors, record.count_idp_reflexives])
        _emit_table(rows, ["M", "r_vectors", "idp_reflexives"],
                    "csv" if fmt == "csv" else "text", args.out, _schema("census.idp"))
    return EXIT_OK


_HANDLERS = {
    "check": _cmd_check,
    "hstar": _cmd_hstar,
    "hilbert": _cmd_hilbert,
    "family": _cmd_family,
    "stabilize": _cmd_stabilize,
}


def run(argv: list[str]) -> int:
    """Parse argv, dispatch, and map exceptions to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(format=args.format, workers=args.workers,
                           max_points=args.max_points)
        if args.command == "census":
            if args.census_command == "un":
                return _cmd_census_un(args, config)
            return _cmd_census_idp(args, config)
        return _HANDLERS[args.command](args, config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotReflexiveError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run(sys.argv[1:]))

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import bounds, curves, exactpoly, siegel
from .errors import (
    DegenerateInput,
    DomainError,
    NegativeCoefficient,
    NotOddPrime,
    OrderingViolation,
    ParseError,
)
from .plot import render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ENV_QUAD_TOL = "TRACE_ATLAS_TOL_QUAD"
ENV_ROOT_TOL = "TRACE_ATLAS_TOL_ROOT"
ENV_POINT_TOL = "TRACE_ATLAS_TOL_POINT"
DEFAULT_ROOT_TOL = 1e-15
DEFAULT_POINT_TOL = 1e-9

STATUS_CERTIFIED = "roots-certified, irreducibility-assumed"

SCHUR_CONSTANT = math.exp(0.5)
SIEGEL_REFERENCE = 1.7336


class UsageError(Exception):
    pass


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not a number") from None
    return value


@dataclass
class RunConfig:
    command: str
    quad_tol: float = curves.DEFAULT_QUAD_TOL
    root_tol: float = DEFAULT_ROOT_TOL
    point_tol: float = DEFAULT_POINT_TOL
    grid: int = 1001
    primes: list[int] = field(default_factory=list)
    inputs: list[Path] = field(default_factory=list)
    outputs: dict[str, Path] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("quad_tol", "root_tol", "point_tol"):
            if not getattr(self, name) > 0:
                raise UsageError(f"{name} must be positive")
        if self.grid < 2:
            raise UsageError("grid density must be at least 2")


def _parse_primes(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        try:
            out.append(int(tok))
        except ValueError:
            raise UsageError(f"not an integer prime: {tok!r}") from None
    return out


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc


# --------------------------------------------------------------------------
# gen


def cmd_gen(cfg: RunConfig, certify: bool = False, cap: int = siegel.DEFAULT_PRIME_CAP) -> int:
    if not cfg.primes:
        raise UsageError("no primes given")
    status = EXIT_OK
    polys, rows = [], []
    for p in sorted(set(cfg.primes)):
        try:
            sp = siegel.siegel_poly(p, cap)
        except NotOddPrime as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = EXIT_USAGE
            continue
        polys.append(sp.poly)
        rows.extend((p, pt) for pt in siegel.normalized_points(sp.poly))
        line = f"p={p} n={sp.n} A={siegel.absolute_trace(sp.poly)}"
        if certify:
            ok = exactpoly.is_totally_positive(sp.poly)
            line += f" totally_positive={'yes' if ok else 'no'}"
            if not ok and status == EXIT_OK:
                status = EXIT_FAIL
        print(line)
    if "corpus" in cfg.outputs:
        _write(cfg.outputs["corpus"], exactpoly.write_corpus(polys, "Siegel family g_p, constant term first"))
    if "points" in cfg.outputs:
        _write(cfg.outputs["points"], siegel.points_csv(rows))
    return status


# --------------------------------------------------------------------------
# curves


def read_points_csv(text: str) -> list[tuple[float, float]]:
    """(c, value) pairs from a p,n,d,c,value file; ParseError carries the line number."""
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty points file", line=1) from None
    try:
        ic, iv = header.index("c"), header.index("value")
    except ValueError:
        raise ParseError("header must contain 'c' and 'value' columns", line=1) from None
    out = []
    for row in reader:
        lineno = reader.line_num
        if not row:
            continue
        try:
            out.append((float(row[ic]), float(row[iv])))
        except (IndexError, ValueError):
            raise ParseError(f"bad row {row!r}", line=lineno) from None
    return out


def cmd_curves(cfg: RunConfig, kind: str) -> int:
    kinds = ["L", "ell"] if kind == "both" else [kind]
    grid = curves.uniform_grid(cfg.grid)
    tables = {k: curves.sample_curve(k, cfg.grid) for k in kinds}
    overlay = []
    if "overlay" in cfg.outputs:
        overlay = read_points_csv(_read(cfg.outputs["overlay"]))

    if len(kinds) == 1:
        csv_text = tables[kind].to_csv()
    else:
        lines = ["c,L,ell"]
        for c, (_, yl), (_, ye) in zip(grid, tables["L"].samples, tables["ell"].samples):
            lines.append(f"{c:.12g},{yl:.12g},{ye:.12g}")
        csv_text = "\n".join(lines) + "\n"

    wrote = False
    if "csv" in cfg.outputs:
        _write(cfg.outputs["csv"], csv_text)
        wrote = True
    if "svg" in cfg.outputs:
        title = "L(c) and ℓ(c)" if len(kinds) == 2 else STYLE_TITLES[kind]
        svg = render_svg({k: t.samples for k, t in tables.items()}, overlay, title)
        _write(cfg.outputs["svg"], svg)
        wrote = True
    if not wrote:
        _write(None, csv_text)
    return EXIT_OK


STYLE_TITLES = {"L": "Conjectured limit curve L(c)", "ell": "Lower-bound curve ℓ(c)"}


# --------------------------------------------------------------------------
# verify


def verify_polynomial(f: exactpoly.IntPoly, root_tol: float, point_tol: float) -> dict:
    """Certification record for one corpus polynomial."""
    rec: dict = {"poly": exactpoly.serialize_poly(f), "degree": f.degree, "flags": []}
    if f.degree < 1:
        rec["flags"].append("degree < 1")
        rec["verdict"] = "fail"
        return rec
    passed = True

    try:
        pts = siegel.normalized_points(f)
        margins = [pt.value - curves.lower_curve_ell(pt.c) for pt in pts]
        rec["points_above_ell"] = [m >= -point_tol for m in margins]
        rec["min_point_margin"] = min(margins)
        passed &= all(rec["points_above_ell"])
    except NegativeCoefficient as exc:
        rec["flags"].append(f"NegativeCoefficient: {exc}")
        passed = False

    report = exactpoly.positivity_report(f)
    rec["totally_positive"] = report.ok
    if not report.squarefree:
        rec["flags"].append("NonSquarefree")
    elif not report.ok:
        rec["flags"].append(f"not totally positive: {report.diagnostic}")
    passed &= report.ok

    if report.ok:
        rec["status"] = STATUS_CERTIFIED
        if f.degree >= 2:
            enc = exactpoly.positive_root_enclosures(f, root_tol)
            xs = [float((lo + hi) / 2) for lo, hi in enc]
            lower = exactpoly.certified_log_discriminant_lower(enc)
            rec["log_discriminant_lower"] = lower
            try:
                inst = bounds.TupleInstance.from_polynomial(f.viete(), xs, bounds.log_discriminant(xs))
                t2 = bounds.verify_theorem2(inst)
                rec["theorem2"] = t2.to_dict()
                passed &= t2.verdict
            except (DegenerateInput, DomainError) as exc:
                rec["flags"].append(f"{type(exc).__name__}: {exc}")
                passed = False
    rec["verdict"] = "pass" if passed else "fail"
    return rec


def parse_tuple(text: str, line: int | None = None) -> list[float]:
    out = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        try:
            out.append(float(tok))
        except ValueError:
            raise ParseError(f"not a real number: {tok!r}", offset=pos, line=line) from None
        pos += len(tok)
    return out


def verify_tuple(xs: Sequence[float]) -> dict:
    try:
        report = bounds.verify_theorem2(xs)
    except (DegenerateInput, DomainError) as exc:
        return {"tuple": list(xs), "flags": [f"{type(exc).__name__}: {exc}"], "verdict": "fail"}
    rec = {"tuple": list(xs), **report.to_dict(), "flags": []}
    return rec


def cmd_verify(cfg: RunConfig, tuples: bool) -> int:
    items = []
    status = EXIT_OK
    for path in cfg.inputs:
        for lineno, text in exactpoly.iter_corpus(_read(path).splitlines()):
            try:
                if tuples:
                    rec = verify_tuple(parse_tuple(text, lineno))
                else:
                    rec = verify_polynomial(exactpoly.parse_poly(text, lineno), cfg.root_tol, cfg.point_tol)
            except ParseError as exc:
                rec = {"flags": [f"ParseError: {exc}"], "verdict": "error"}
                print(f"trace-atlas: {path}: {exc}", file=sys.stderr)
                status = EXIT_USAGE
            rec = {"source": str(path), "line": lineno, **rec}
            items.append(rec)
            if rec["verdict"] == "fail" and status == EXIT_OK:
                status = EXIT_FAIL
    verdict = {EXIT_OK: "pass", EXIT_FAIL: "fail", EXIT_USAGE: "error"}[status]
    out = {"mode": "tuples" if tuples else "corpus", "items": items, "verdict": verdict}
    _write(cfg.outputs.get("json"), json.dumps(out, indent=2) + "\n")
    return status


# --------------------------------------------------------------------------
# constants and areas


def constants(tol: float) -> dict:
    sol = curves.solve_theta()
    area_L = curves.area_between(curves.limit_curve_L, 1.0, tol=tol)
    area_ell = curves.area_between(curves.lower_curve_ell, 1.0, tol=tol)
    return {
        "theta": sol.theta,
        "theta_residual": sol.residual,
        "ell0": curves.lower_curve_ell(0.0),
        "L0": curves.limit_curve_L(0.0),
        "area_L": area_L,
        "area_ell": area_ell,
        "coverage_ratio": area_ell / area_L,
        "schur": SCHUR_CONSTANT,
        "siegel": SIEGEL_REFERENCE,
        "tolerances": {
            "theta": "1e-6 against 0.3144808",
            "area_L": "5e-5 against 0.63917",
            "area_ell": "5e-5 against 0.38323",
            "coverage_ratio": "5e-4 against 0.5995",
            "ell0": "5e-4 against 1.7336",
            "L0": "1e-6 against 2",
            "quadrature_tol": tol,
        },
    }


def cmd_area(cfg: RunConfig, upper: str, lower: str) -> int:
    up, low = curves.CURVES[upper], curves.CURVES[lower]
    area = curves.area_between(up, low, tol=cfg.quad_tol)
    ratio = None
    if lower == "one" and upper != "L":
        ratio = area / curves.area_between(curves.limit_curve_L, 1.0, tol=cfg.quad_tol)
    report = curves.AreaReport(upper, lower, area, cfg.quad_tol, ratio)
    _write(cfg.outputs.get("json"), report.to_json() + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trace-atlas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate Siegel polynomials g_p and their normalized points")
    sel = g.add_mutually_exclusive_group(required=True)
    sel.add_argument("--primes", type=_parse_primes, help="comma separated odd primes")
    sel.add_argument("--upto", type=int, help="all odd primes up to this bound")
    g.add_argument("--cap", type=int, default=siegel.DEFAULT_PRIME_CAP, help="largest admissible prime")
    g.add_argument("--corpus", type=Path, help="write polynomials in corpus format")
    g.add_argument("--points", type=Path, help="write p,n,d,c,value CSV")
    g.add_argument("--certify", action="store_true", help="Sturm-certify total positivity")

    c = sub.add_parser("curves", help="tabulate and plot L and l")
    c.add_argument("--kind", choices=["L", "ell", "both"], default="both")
    c.add_argument("--grid", type=int, default=1001)
    c.add_argument("--csv", type=Path)
    c.add_argument("--svg", type=Path)
    c.add_argument("--overlay", type=Path, help="points CSV from gen --points")

    v = sub.add_parser("verify", help="certify a corpus or check the coefficient bound on tuples")
    v.add_argument("inputs", nargs="+", type=Path)
    v.add_argument("--tuples", action="store_true", help="inputs hold real tuples, not polynomials")
    v.add_argument("--out", type=Path, help="JSON report path (default stdout)")
    v.add_argument("--root-tol", type=float)
    v.add_argument("--point-tol", type=float)

    k = sub.add_parser("constants", help="theta, endpoint limits and areas as JSON")
    k.add_argument("--tol", type=float, help="quadrature tolerance")

    a = sub.add_parser("area", help="area between two curves as JSON")
    a.add_argument("--upper", choices=sorted(curves.CURVES), default="L")
    a.add_argument("--lower", choices=sorted(curves.CURVES), default="one")
    a.add_argument("--tol", type=float)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        quad_tol = getattr(args, "tol", None) or _env_float(ENV_QUAD_TOL, curves.DEFAULT_QUAD_TOL)
        root_tol = getattr(args, "root_tol", None) or _env_float(ENV_ROOT_TOL, DEFAULT_ROOT_TOL)
        point_tol = getattr(args, "point_tol", None) or _env_float(ENV_POINT_TOL, DEFAULT_POINT_TOL)
        cfg = RunConfig(args.command, quad_tol, root_tol, point_tol)

        if args.command == "gen":
            cfg.primes = args.primes if args.primes is not None else siegel.odd_primes_upto(args.upto)
            for key in ("corpus", "points"):
                if getattr(args, key):
                    cfg.outputs[key] = getattr(args, key)
            return cmd_gen(cfg, certify=args.certify, cap=args.cap)
        if args.command == "curves":
            cfg.grid = args.grid
            cfg.__post_init__()
            for key in ("csv", "svg", "overlay"):
                if getattr(args, key):
                    cfg.outputs[key] = getattr(args, key)
            return cmd_curves(cfg, args.kind)
        if args.command == "verify":
            cfg.inputs = list(args.inputs)
            if args.out:
                cfg.outputs["json"] = args.out
            return cmd_verify(cfg, args.tuples)
        if args.command == "constants":
            _write(None, json.dumps(constants(cfg.quad_tol), indent=2) + "\n")
            return EXIT_OK
        if args.command == "area":
            return cmd_area(cfg, args.upper, args.lower)
    except (UsageError, ParseError) as exc:
        print(f"trace-atlas: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"trace-atlas: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OrderingViolation as exc:
        print(f"trace-atlas: {exc}", file=sys.stderr)
        return EXIT_FAIL
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands::

    pseudoharmonic soliton --params FILE [--grid x0,x1,y0,y1,nx,ny] [--out CSV]
    pseudoharmonic verify [SUITE] [--suite SUITE] [--params FILE] [--grid ...]
                          [--tol-analytic T] [--tol-fd T] [--out JSON]
    pseudoharmonic plot CSV --columns A,B[,C] --out SVG
    pseudoharmonic backlund-example --signature e,d [--grid ...] [--out CSV]
    pseudoharmonic elliptic eval --u U --m M [--n N]

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 I/O error.  ``PSEUDOHARMONIC_THREADS`` caps the worker threads
used for grid evaluation.
"""

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import svg
from .backlund import example_pair
from .elliptic import complete_K, elliptic_pi, jacobi, jacobi_quotients
from .errors import DomainError, PseudoHarmonicError
from .geometry import Signature
from .harmonicmap import construct_soliton_map
from .sinegordon import SolitonParams, chart_coordinates
from .verify import (DEFAULT_K_CASE1, DEFAULT_K_CASE2, DEFAULT_RHO, DEFAULT_TAU, SUITES,
                     SolitonConfig, Tolerances, run_suite)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# grid nodes this close to a cell edge (in Jacobi-argument units) are excluded
EXCLUSION_RADIUS = 1e-3
THREADS_ENV = "PSEUDOHARMONIC_THREADS"

SOLITON_COLUMNS = ("x", "y", "X", "Y", "omega", "theta", "R", "S", "expF", "excluded")
EXAMPLE_COLUMNS = ("x", "y", "omega", "theta", "R", "S", "expF", "excluded")

PARAM_KEYS = ("rho", "tau", "c", "y0", "psi", "kn", "eps2", "delta2", "case",
              "kn_check", "r0", "s0", "x0")


class UsageError(Exception):
    """Bad arguments or configuration (exit 2)."""


class IOFailure(Exception):
    """Reading or writing a file failed (exit 3)."""


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not all(map(math.isfinite, (self.x_min, self.x_max, self.y_min, self.y_max))):
            raise UsageError("grid bounds must be finite")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise UsageError("grid needs x_min < x_max and y_min < y_max")
        if self.nx < 2 or self.ny < 2:
            raise UsageError("grid needs nx, ny >= 2")

    def nodes(self):
        """Row-major nodes: y outer, x inner."""
        xs = [self.x_min + (self.x_max - self.x_min) * i / (self.nx - 1) for i in range(self.nx)]
        ys = [self.y_min + (self.y_max - self.y_min) * j / (self.ny - 1) for j in range(self.ny)]
        return [(x, y) for y in ys for x in xs]

    def as_tuple(self):
        return (self.x_min, self.x_max, self.y_min, self.y_max, self.nx, self.ny)


def parse_grid(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise UsageError("--grid expects x0,x1,y0,y1,nx,ny")
    try:
        x0, x1, y0, y1 = (float(p) for p in parts[:4])
        nx, ny = int(parts[4]), int(parts[5])
    except ValueError as exc:
        raise UsageError(f"bad --grid value: {exc}") from None
    return GridSpec(x0, x1, y0, y1, nx, ny)


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc.strerror or exc}") from None


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc.strerror or exc}") from None


def parse_params(text):
    """key=value lines ('#' starts a comment) into a :class:`SolitonConfig`."""
    vals = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"params line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in PARAM_KEYS:
            raise UsageError(f"params line {lineno}: unknown key {key!r}")
        try:
            vals[key] = float(value)
        except ValueError:
            raise UsageError(f"params line {lineno}: {key} is not a number") from None
    e = vals.get("eps2", 1.0)
    d = vals.get("delta2", 1.0)
    if e not in (1.0, -1.0) or d not in (1.0, -1.0):
        raise UsageError("eps2 and delta2 must be 1 or -1")
    sig = Signature(int(e), int(d))
    case = vals.get("case")
    if case is None:
        case = 1.0 if vals.get("c", 1.0) > 0.0 else 2.0
    if case not in (1.0, 2.0):
        raise UsageError("case must be 1 or 2")
    if case == 2.0:
        if vals.get("c", 0.0) != 0.0:
            raise UsageError("case 2 requires c = 0")
        c = 0.0
    else:
        c = vals.get("c", 1.0)
        if c <= 0.0:
            raise UsageError("case 1 requires c > 0")
    table = DEFAULT_K_CASE1 if case == 1.0 else DEFAULT_K_CASE2
    kn = vals.get("kn", table[(sig.e, sig.d)])
    try:
        params = SolitonParams(sig, kn, vals.get("rho", DEFAULT_RHO), vals.get("tau", DEFAULT_TAU),
                               c, vals.get("y0", 0.0), vals.get("psi", 0.0))
        params.check_admissible()
    except DomainError as exc:
        raise UsageError(f"inadmissible parameters: {exc}") from None
    return SolitonConfig(params, vals.get("kn_check"), vals.get("r0", 0.0),
                         vals.get("s0", 0.0), vals.get("x0", 0.0))


def load_params(path):
    return parse_params(_read_text(path))


def thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer")
    return n


def _map_rows(fn, nodes):
    """fn over nodes with a thread pool; results keep the order of ``nodes``."""
    n = thread_count()
    if n == 1:
        return [fn(node) for node in nodes]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, nodes, chunksize=1))


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return "%.17g" % v


def _csv_text(columns, rows):
    lines = [",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


_EVAL_ERRORS = (PseudoHarmonicError, ValueError, ZeroDivisionError, OverflowError)


def soliton_rows(cfg, grid):
    hm = construct_soliton_map(cfg.params, cfg.R0, cfg.S0, cfg.X0)
    p = cfg.params

    def row(node):
        x, y = node
        X, Y = chart_coordinates(p, x, y)
        blank = (x, y, X, Y, None, None, None, None, None, 1)
        if hm.excluded(x, y, radius=EXCLUSION_RADIUS):
            return blank
        try:
            vals = (hm.omega(x, y), hm.theta(x, y), *hm.map(x, y), hm.expF_direct(x, y))
        except _EVAL_ERRORS:
            return blank
        if not all(map(math.isfinite, vals)):
            return blank
        return (x, y, X, Y, *vals, 0)

    return _map_rows(row, grid.nodes())


def example_rows(sig, grid):
    ex = example_pair(sig)

    def row(node):
        x, y = node
        blank = (x, y, None, None, None, None, None, 1)
        if not ex.in_cell(x, y):
            return blank
        try:
            R, S = ex.map(x, y)
            vals = (ex.pair.omega(x, y), ex.pair.theta(x, y), R, S, ex.metric.expF(R, S))
        except _EVAL_ERRORS:
            return blank
        if not all(map(math.isfinite, vals)):
            return blank
        return (x, y, *vals, 0)

    return _map_rows(row, grid.nodes())


# ---------------------------------------------------------------------------
# commands

def cmd_soliton(args):
    if args.params is None:
        raise UsageError("soliton needs --params")
    cfg = load_params(args.params)
    grid = parse_grid(args.grid) if args.grid else GridSpec(-1.0, 1.0, -1.0, 1.0, 21, 21)
    rows = soliton_rows(cfg, grid)
    excluded = sum(r[-1] for r in rows)
    if excluded:
        print(f"warning: {excluded} of {len(rows)} grid nodes lie on or near a pole "
              "and are marked excluded", file=sys.stderr)
    _write_text(args.out, _csv_text(SOLITON_COLUMNS, rows))
    return EXIT_OK


def cmd_backlund_example(args):
    try:
        e, d = (int(s) for s in args.signature.split(","))
        sig = Signature(e, d)
    except (ValueError, DomainError):
        raise UsageError("--signature expects e,d with entries 1 or -1") from None
    grid = parse_grid(args.grid) if args.grid else GridSpec(-0.3, 0.3, 0.3, 1.5, 13, 13)
    rows = example_rows(sig, grid)
    _write_text(args.out, _csv_text(EXAMPLE_COLUMNS, rows))
    return EXIT_OK


def _tolerance(value, default, name):
    if value is None:
        return default
    if not math.isfinite(value) or value < 0.0:
        raise UsageError(f"{name} must be finite and non-negative, got {value}")
    return value


def cmd_verify(args):
    suite = args.suite_pos or args.suite or "all"
    if args.suite_pos and args.suite and args.suite_pos != args.suite:
        raise UsageError("conflicting suite names")
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    base = Tolerances()
    tol = Tolerances(analytic=_tolerance(args.tol_analytic, base.analytic, "--tol-analytic"),
                     fd=_tolerance(args.tol_fd, base.fd, "--tol-fd"))
    configs = [load_params(args.params)] if args.params else None
    grid = parse_grid(args.grid).as_tuple() if args.grid else None
    try:
        report = run_suite(suite, tol, configs, grid)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    for c in report.checks:
        flag = "PASS" if c.passed else "FAIL"
        print(f"{flag} {c.name}: max {c.max_residual:.3e} (tol {c.tolerance:.1e})",
              file=sys.stderr)
    n_fail = len(report.failures())
    print(f"{suite}: {len(report.checks) - n_fail}/{len(report.checks)} checks passed "
          f"in {report.elapsed_ms:.0f} ms", file=sys.stderr)
    _write_text(args.out, report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _read_csv(path):
    text = _read_text(path)
    rows = list(csv.reader(text.splitlines()))
    if not rows or not rows[0] or len(rows) < 2:
        raise UsageError(f"{path} has no data rows")
    return rows[0], rows[1:]


def _num(s):
    if s == "":
        return None
    try:
        v = float(s)
    except ValueError:
        raise UsageError(f"non-numeric CSV entry {s!r}") from None
    return v


def cmd_plot(args):
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    if len(columns) not in (2, 3):
        raise UsageError("--columns takes 2 names (line plot) or 3 names (heatmap)")
    header, data = _read_csv(args.csv)
    missing = [c for c in columns if c not in header]
    if missing:
        raise UsageError(f"unknown column(s) {', '.join(missing)}; available: {', '.join(header)}")
    idx = [header.index(c) for c in columns]
    excl = header.index("excluded") if "excluded" in header else None
    records = []
    for row in data:
        if len(row) != len(header):
            raise UsageError("ragged CSV row")
        flagged = excl is not None and row[excl] not in ("", "0")
        vals = [_num(row[i]) for i in idx]
        records.append((flagged, vals))
    try:
        if len(columns) == 2:
            pts = [v for flagged, v in records if not flagged and None not in v]
            text = svg.line_plot([p[0] for p in pts], [p[1] for p in pts], *columns)
        else:
            if any(v[0] is None or v[1] is None for _, v in records):
                raise UsageError("heatmap coordinates must be present in every row")
            text = svg.heatmap([v[0] for _, v in records], [v[1] for _, v in records],
                               [None if flagged else v[2] for flagged, v in records], *columns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_text(args.out, text)
    return EXIT_OK


def cmd_elliptic_eval(args):
    u, m = args.u, args.m
    if not (math.isfinite(u) and math.isfinite(m)):
        raise UsageError("u and m must be finite")
    try:
        sn, cn, dn = jacobi(u, m)
        out = {"u": u, "m": m, "K": complete_K(m) if m < 1.0 else None,
               "sn": sn, "cn": cn, "dn": dn}
        try:
            sc, nc, dc = jacobi_quotients(u, m)
        except DomainError:
            sc = nc = dc = None
        out.update(sc=sc, nc=nc, dc=dc)
        if args.n is not None:
            out["n"] = args.n
            out["Pi"] = elliptic_pi(args.n, u, m)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    _write_text(args.out, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    ap = _Parser(prog="pseudoharmonic",
                 description="Soliton harmonic maps between pseudo-Riemannian surfaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("soliton", help="evaluate a soliton harmonic map on a grid (CSV)")
    s.add_argument("--params", help="key=value parameter file")
    s.add_argument("--grid", help="x0,x1,y0,y1,nx,ny")
    s.add_argument("--out", help="output CSV (default stdout)")
    s.set_defaults(func=cmd_soliton)

    v = sub.add_parser("verify", help="run verification suites (JSON report)")
    v.add_argument("suite_pos", nargs="?", metavar="SUITE")
    v.add_argument("--suite")
    v.add_argument("--params", help="parameter file replacing the default soliton set")
    v.add_argument("--grid", help="evaluate soliton checks on these grid nodes")
    v.add_argument("--tol-analytic", type=float)
    v.add_argument("--tol-fd", type=float)
    v.add_argument("--out", help="output JSON (default stdout)")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="SVG line plot or heatmap from a CSV")
    p.add_argument("csv")
    p.add_argument("--columns", required=True, help="A,B for a line plot, A,B,C for a heatmap")
    p.add_argument("--out", help="output SVG (default stdout)")
    p.set_defaults(func=cmd_plot)

    b = sub.add_parser("backlund-example", help="closed-form example on a grid (CSV)")
    b.add_argument("--signature", default="1,1", help="e,d with entries 1 or -1")
    b.add_argument("--grid", help="x0,x1,y0,y1,nx,ny")
    b.add_argument("--out", help="output CSV (default stdout)")
    b.set_defaults(func=cmd_backlund_example)

    e = sub.add_parser("elliptic", help="elliptic function utilities")
    esub = e.add_subparsers(dest="elliptic_command", required=True, parser_class=_Parser)
    ev = esub.add_parser("eval", help="sn, cn, dn, quotients, K and optionally Pi")
    ev.add_argument("--u", type=float, required=True)
    ev.add_argument("--m", type=float, required=True)
    ev.add_argument("--n", type=float, help="characteristic for Pi(n; u|m)")
    ev.add_argument("--out", help="output JSON (default stdout)")
    ev.set_defaults(func=cmd_elliptic_eval)
    return ap


_LIST_OPTIONS = ("--grid", "--signature")


def _join_list_values(argv):
    # "--grid -1,1,..." would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _LIST_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_list_values(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

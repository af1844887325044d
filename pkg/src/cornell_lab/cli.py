"""Command-line front end.

    cornell-lab analyze --a 1 --b 1
    cornell-lab table 1 --format csv --out table1.csv
    cornell-lab profile --a 1 --b 0.01 --r-min 0.1 --r-max 4 --steps 100
    cornell-lab sweep --b 0.01,1,100 --l 0:5

Exit codes: 0 success, 1 bad usage (flags, table id, ranges), 2 domain
error (invalid physical parameters), 3 solver failure. Numeric output is
locale-free CSV or aligned text; critical radii carry 16 significant
digits, energies 9, so every printed value re-parses to within one unit
in its last place. Identical invocations produce byte-identical output.
CORNELL_LAB_THREADS > 1 fans table/sweep rows over a thread pool; row
order in the output never changes.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import analysis
from .analysis import TABLES, Regime, analyze, reproduce_table
from .asymptotic import AsymptoticModel, delta_e_profile, f_log_deriv
from .errors import SolverError
from .params import SystemParams, effective_potential

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_SOLVER = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; the contract here is 1
    def error(self, message):
        raise _UsageError(message)


def _fmt_r(x):
    return f"{x + 0.0:.16g}"


def _fmt_e(x):
    return f"{x + 0.0:.9g}"


def _fmt(x):
    return f"{x + 0.0:.6g}"


def _read_config(path):
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, val = line.split("=", 1)
            values[key.strip().replace("_", "-")] = val.strip()
    return values


_CONFIG_KEYS = {
    "a": float, "b": float, "m": float, "N": int, "l": int,
    "format": str, "out": str, "tol": float,
    "r-min": float, "r-max": float, "steps": int,
}


def _merge_config(args, parser_defaults):
    """Fill unset flags from --config; explicit flags always win."""
    if getattr(args, "config", None) is None:
        for key, default in parser_defaults.items():
            if getattr(args, key, None) is None:
                setattr(args, key, default)
        return args
    cfg = _read_config(args.config)
    unknown = set(cfg) - set(_CONFIG_KEYS)
    if unknown:
        raise _UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, conv in _CONFIG_KEYS.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            continue
        if getattr(args, attr) is None and key in cfg:
            try:
                setattr(args, attr, conv(cfg[key]))
            except ValueError:
                raise _UsageError(f"config key '{key}': cannot parse {cfg[key]!r}")
    for key, default in parser_defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, default)
    return args


_DEFAULTS = {"m": 0.5, "N": 3, "l": 0, "format": "text", "tol": 1e-6}


def _build_parser():
    parser = _Parser(prog="cornell-lab",
                     description="Cornell potential (-a/r + b*r) spectral analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_ab=True):
        sp.add_argument("--a", type=float, default=None, help="Coulomb strength (>= 0)")
        sp.add_argument("--b", type=float, default=None, help="linear strength (> 0)")
        sp.add_argument("--m", type=float, default=None, help="mass parameter (default 0.5)")
        sp.add_argument("--N", type=int, default=None, help="spatial dimension (default 3)")
        sp.add_argument("--l", type=int, default=None, help="orbital quantum number (default 0)")
        sp.add_argument("--format", choices=("text", "csv"), default=None)
        sp.add_argument("--out", default=None, help="write output to this file")
        sp.add_argument("--config", default=None, help="key = value file mirroring the flags")
        sp.add_argument("--tol", type=float, default=None,
                        help="oracle accuracy target (default 1e-6 GeV)")

    sp = sub.add_parser("analyze", help="analyze one configuration")
    common(sp)

    sp = sub.add_parser("table", help="reproduce a built-in reference table")
    sp.add_argument("table_id", help="table number: 1, 2 or 3")
    common(sp)

    sp = sub.add_parser("profile", help="sample the correction profile on a radial grid")
    common(sp)
    sp.add_argument("--r-min", dest="r_min", type=float, default=None)
    sp.add_argument("--r-max", dest="r_max", type=float, default=None)
    sp.add_argument("--steps", type=int, default=None)

    sp = sub.add_parser("sweep", help="analyze a grid of configurations")
    sp.add_argument("--a", default=None, help="value, list (0,0.5,1) or range (0:1.9:0.1)")
    sp.add_argument("--b", default=None, help="value, list or range")
    sp.add_argument("--l", default=None, help="value, list or range (integers)")
    sp.add_argument("--m", type=float, default=None)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--format", choices=("text", "csv"), default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--config", default=None)
    sp.add_argument("--tol", type=float, default=None)
    return parser


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _row_runner():
    try:
        workers = int(os.environ.get("CORNELL_LAB_THREADS", "1"))
    except ValueError:
        workers = 1
    if workers > 1:
        pool = ThreadPoolExecutor(max_workers=workers)
        return lambda fn, items: pool.map(fn, items)
    return map


_ANALYZE_COLUMNS = (
    "a", "b", "m", "N", "l", "lambda", "e_coulomb", "e_exact", "delta_e",
    "r0_asym", "r0_coulomb", "r_delta_e", "margin", "regime",
    "multiple_roots", "pt1_delta_e",
)


def _result_csv_fields(res):
    p = res.params
    return [
        _fmt(p.a), _fmt(p.b), _fmt(p.m), str(p.n_dim), str(p.ell), _fmt(p.lam),
        _fmt_e(res.e_es), _fmt_e(res.e_exact), _fmt_e(res.delta_e),
        _fmt_r(res.r0_asym), _fmt_r(res.r0_coulomb), _fmt_r(res.r_delta_e),
        _fmt(res.margin), res.regime.value, str(int(res.multiple_roots)),
        _fmt_e(res.pt1_delta_e),
    ]


def _render_analyze_text(res):
    p = res.params
    lines = [
        f"a              = {_fmt(p.a)}",
        f"b              = {_fmt(p.b)}",
        f"m              = {_fmt(p.m)}",
        f"N              = {p.n_dim}",
        f"l              = {p.ell}",
        f"lambda         = {_fmt(p.lam)}",
        f"e_coulomb      = {_fmt_e(res.e_es)}",
        f"e_exact        = {_fmt_e(res.e_exact)} (oracle est. error {res.oracle_error:.1e})",
        f"delta_e        = {_fmt_e(res.delta_e)}",
        f"r0_asym        = {_fmt_r(res.r0_asym)}",
    ]
    if math.isfinite(res.r0_coulomb):
        lines.append(f"r0_coulomb     = {_fmt_r(res.r0_coulomb)}")
    lines.append(f"r_delta_e      = {_fmt_r(res.r_delta_e)}")
    lines.append(f"margin         = {_fmt(res.margin)}")
    lines.append(f"regime         = {res.regime.value}")
    lines.append(f"multiple_roots = {int(res.multiple_roots)}")
    if math.isfinite(res.pt1_delta_e):
        lines.append(f"pt1_delta_e    = {_fmt_e(res.pt1_delta_e)}")
    return "\n".join(lines) + "\n"


def _cmd_analyze(args):
    p = SystemParams(a=args.a, b=args.b, m=args.m, n_dim=args.N, ell=args.l)
    res = analyze(p, tol=args.tol)
    if args.format == "csv":
        text = ",".join(_ANALYZE_COLUMNS) + "\n" + ",".join(_result_csv_fields(res)) + "\n"
    else:
        text = _render_analyze_text(res)
    _emit(text, args.out)
    return EXIT_OK


_TABLE_COLUMNS = (
    "a", "b", "N", "l",
    "r0_computed", "r0_expected", "r0_absdiff",
    "r_delta_e_computed", "r_delta_e_expected", "r_delta_e_absdiff",
    "delta_e_computed", "delta_e_expected", "delta_e_absdiff",
    "verdict",
)


def _table_csv(report, spec):
    lines = [",".join(_TABLE_COLUMNS)]
    for c in report.rows:
        r = c.row
        lines.append(",".join([
            _fmt(r.a), _fmt(r.b), str(spec.n_dim), str(r.ell),
            _fmt_r(c.result.r0_asym), _fmt_r(r.r0), _fmt_e(c.diff_r0),
            _fmt_r(c.result.r_delta_e), _fmt_r(r.r_delta_e), _fmt_e(c.diff_r_delta_e),
            _fmt_e(c.result.delta_e), _fmt_e(r.delta_e), _fmt_e(c.diff_delta_e),
            c.verdict,
        ]))
    return "\n".join(lines) + "\n"


def _table_text(report, spec):
    head = (f"reference table {spec.table_id}: {spec.description}\n"
            f"{'a':>5} {'b':>7} {'l':>2}  {'r0':>10} {'(quoted)':>9}  "
            f"{'r_delta_e':>19} {'(quoted)':>19}  {'delta_e':>10} {'(quoted)':>9}  verdict\n")
    lines = [head.rstrip("\n")]
    for c in report.rows:
        r = c.row
        lines.append(
            f"{r.a:>5.2f} {r.b:>7.3g} {r.ell:>2}  "
            f"{c.result.r0_asym:>10.4f} {r.r0:>9.3f}  "
            f"{c.result.r_delta_e:>19.16f} {r.r_delta_e:>19.16f}  "
            f"{c.result.delta_e:>10.4f} {r.delta_e:>9.3f}  {c.verdict}")
        if c.row.note and c.verdict != "PASS":
            lines.append(f"      note: {c.row.note}")
    lines.append(f"rows: {len(report.rows)}  fail: {report.n_fail}  "
                 f"expected-discrepancy: {report.n_expected_discrepancy}")
    return "\n".join(lines) + "\n"


def _cmd_table(args):
    try:
        table_id = int(args.table_id)
    except ValueError:
        raise _UsageError(f"table id must be an integer, got {args.table_id!r}")
    if table_id not in TABLES:
        raise _UsageError(f"unknown table id {table_id}; choose from 1, 2, 3")
    spec = TABLES[table_id]
    report = reproduce_table(spec, tol=args.tol, row_runner=_row_runner())
    text = (_table_csv(report, spec) if args.format == "csv"
            else _table_text(report, spec))
    _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_SOLVER


def _cmd_profile(args):
    if args.r_min is None or args.r_max is None or args.steps is None:
        raise _UsageError("profile requires --r-min, --r-max and --steps")
    if not (args.r_min > 0.0) or not (args.r_max > args.r_min) or args.steps < 2:
        raise _UsageError("need 0 < r-min < r-max and steps >= 2")
    p = SystemParams(a=args.a, b=args.b, m=args.m, n_dim=args.N, ell=args.l)
    model = AsymptoticModel.from_params(p)
    lines = ["r,delta_e,f_log_deriv,v_eff"]
    step = (args.r_max - args.r_min) / (args.steps - 1)
    for i in range(args.steps):
        r = args.r_min + i * step
        lines.append(",".join([
            _fmt_r(r),
            _fmt_e(delta_e_profile(p, model, r)),
            _fmt_e(f_log_deriv(model, r)),
            _fmt_e(effective_potential(p, r)),
        ]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _parse_range(text, kind, integer=False):
    """'2' | '0.1,0.5,1' | 'start:stop[:step]' -> list of values."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(v) for v in text.split(":")]
            if len(parts) == 2:
                start, stop, step = parts[0], parts[1], 1.0
            elif len(parts) == 3:
                start, stop, step = parts
            else:
                raise ValueError
            if step <= 0.0 or not all(math.isfinite(v) for v in (start, stop, step)):
                raise ValueError
            values = []
            k = 0
            while True:
                v = start + k * step
                if v > stop + 1e-9 * max(1.0, abs(stop)):
                    break
                values.append(v)
                k += 1
        else:
            values = [float(v) for v in text.split(",") if v.strip() != ""]
        if not values or not all(math.isfinite(v) for v in values):
            raise ValueError
    except ValueError:
        raise _UsageError(f"cannot parse {kind} range {text!r}")
    if integer:
        ints = [int(round(v)) for v in values]
        if any(abs(i - v) > 1e-9 for i, v in zip(ints, values)):
            raise _UsageError(f"{kind} range must contain integers, got {text!r}")
        return ints
    return values


_SWEEP_COLUMNS = _ANALYZE_COLUMNS + ("error",)


def _cmd_sweep(args):
    if args.a is None or args.b is None:
        raise _UsageError("sweep requires --a and --b (values, lists or ranges)")
    a_values = _parse_range(str(args.a), "a")
    b_values = _parse_range(str(args.b), "b")
    l_values = _parse_range(str(args.l), "l", integer=True) if args.l is not None else [0]
    if not (a_values and b_values and l_values):
        raise _UsageError("sweep ranges are empty")
    grid = [(a, b, l) for a in a_values for b in b_values for l in l_values]

    def run_one(cell):
        a, b, l = cell
        try:
            p = SystemParams(a=a, b=b, m=args.m, n_dim=args.N, ell=l)
            return _result_csv_fields(analyze(p, tol=args.tol)) + [""]
        except (ValueError, SolverError) as exc:
            msg = str(exc).replace(",", ";").replace("\n", " ")
            return ([_fmt(a), _fmt(b), _fmt(args.m), str(args.N), str(l)]
                    + [""] * (len(_ANALYZE_COLUMNS) - 5) + [msg])

    rows = list(_row_runner()(run_one, grid))
    lines = [",".join(_SWEEP_COLUMNS)] + [",".join(row) for row in rows]
    _emit("\n".join(lines) + "\n", args.out)
    n_failed = sum(1 for row in rows if row[-1])
    return EXIT_SOLVER if rows and n_failed == len(rows) else EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _merge_config(args, _DEFAULTS)
        if args.command in ("analyze", "profile") and (args.a is None or args.b is None):
            raise _UsageError(f"{args.command} requires --a and --b")
        handler = {"analyze": _cmd_analyze, "table": _cmd_table,
                   "profile": _cmd_profile, "sweep": _cmd_sweep}[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())

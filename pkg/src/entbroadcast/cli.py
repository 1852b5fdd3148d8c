"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error (infeasible machine,
unnormalized state, parameter out of range).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any

import numpy as np

from . import analysis, broadcast, cloner, separability

SCHEMA_VERSION = 1
TOLERANCE_ENV = "ENTBROADCAST_TOLERANCE"
DEFAULT_GRID = 10001
DEFAULT_NORM_TOL = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "table"), default=argparse.SUPPRESS,
                        help="output format (default: table)")
    common.add_argument("--grid", type=int, default=argparse.SUPPRESS,
                        help=f"alpha1^2 grid size for scans (default: {DEFAULT_GRID})")
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
                        help="partial-transpose eigenvalue threshold for 'inseparable' "
                             f"(default: {separability.DEFAULT_THRESHOLD:g}, or ${TOLERANCE_ENV})")

    p = _Parser(prog="entbroadcast", parents=[common],
                description="Entanglement broadcasting with state-dependent local cloners.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("table1", parents=[common], help="machine parameter and single-copy distortion table")
    sub.add_parser("table2", parents=[common], help="broadcasting windows for the tabulated lambdas")

    b = sub.add_parser("broadcast", parents=[common], help="test one input state for broadcasting")
    b.add_argument("--state", type=_float_list, required=True,
                   help="alpha1,beta1,gamma1,delta1 for alpha1|00>+beta1|11>+gamma1|10>+delta1|01>")
    b.add_argument("--lambda", dest="lam", type=float, required=True)
    b.add_argument("--oracle", action="store_true", help="use the full simulation instead of closed forms")
    b.add_argument("--norm-tol", type=float, default=DEFAULT_NORM_TOL,
                   help=f"allowed |norm^2 - 1| of --state before rejecting (default: {DEFAULT_NORM_TOL:g})")

    o = sub.add_parser("oracle-check", parents=[common], help="compare closed forms against the simulation")
    o.add_argument("--state", type=_float_list, required=True)
    o.add_argument("--lambda", dest="lam", type=float, required=True)
    o.add_argument("--norm-tol", type=float, default=DEFAULT_NORM_TOL)

    i = sub.add_parser("intervals", parents=[common], help="closed-form alpha1^2 windows")
    i.add_argument("--lambda", dest="lam", type=float, required=True)

    f = sub.add_parser("fidelity", parents=[common], help="broadcasting fidelity and its average")
    f.add_argument("--lambda", dest="lam", type=float, required=True)
    f.add_argument("--alpha2", type=float, default=None)

    s = sub.add_parser("scan", parents=[common], help="grid scan of the broadcasting window")
    s.add_argument("--lambda", dest="lam", type=float, required=True)

    g = sub.add_parser("feasibility", parents=[common], help="is the cloner realizable at this lambda")
    g.add_argument("--lambda", dest="lam", type=float, required=True)

    sub.add_parser("dominance", parents=[common], help="lambdas beating the universal average fidelity")
    return p


def _tolerance(args) -> tuple[float, str]:
    if "tolerance" in args:
        return args.tolerance, "flag"
    env = os.environ.get(TOLERANCE_ENV)
    if env is not None:
        try:
            return float(env), f"env:{TOLERANCE_ENV}"
        except ValueError:
            raise UsageError(f"{TOLERANCE_ENV}={env!r} is not a number")
    return separability.DEFAULT_THRESHOLD, "default"


def _interval_json(iv: analysis.Interval) -> dict[str, Any]:
    if iv.empty:
        return {"lo": None, "hi": None, "empty": True}
    return {"lo": iv.lo, "hi": iv.hi, "empty": False}


def _matrix_json(m: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(m).ravel()]


def _verdict_json(v: separability.SeparabilityVerdict) -> dict[str, Any]:
    return {"verdict": v.verdict, "min_pt_eigenvalue": v.min_pt_eigenvalue,
            "w2": v.w2, "w3": v.w3, "w4": v.w4,
            "input_valid": v.input_valid, "boundary": v.boundary}


def _state(values: list[float], norm_tol: float) -> broadcast.PureTwoQubit:
    if len(values) != 4:
        raise UsageError(f"--state needs 4 amplitudes, got {len(values)}")
    norm2 = sum(v * v for v in values)
    if abs(norm2 - 1.0) > norm_tol:
        raise ValueError(f"state is not normalized: norm^2 = {norm2:.9g}")
    return broadcast.PureTwoQubit.normalized(*values)


# Each command returns (payload, rows): payload is the JSON body, rows feed csv/table.

def cmd_table1(args, meta):
    rows = []
    for r in cloner.table1():
        rows.append({
            "x": r.x,
            "lambda_alpha_reading": r.lambda_alpha_reading,
            "lambda_alpha2_reading": r.lambda_alpha2_reading,
            "d_a": r.d_a,
            "universal_d_a": r.universal_d_a,
        })
    meta["notes"] = [
        "x read as alpha reproduces the printed lambda column; x read as alpha^2 does not",
        "d_a is 2*lambda^2 of lambda rounded to 3 decimals, which is what the printed column uses",
    ]
    meta["mismatch"] = [
        {"x": r.x, "alpha2_reading_matches_printed": r.alpha2_reading_matches_printed,
         "d_a_unrounded": r.d_a_unrounded}
        for r in cloner.table1()
    ]
    return {"rows": rows}, rows


def cmd_table2(args, meta):
    rows, out = [], []
    for r in analysis.table2():
        i1, i2, c = r.nonlocal_inseparable, r.local_separable, r.broadcastable
        rows.append({"lambda": r.lam,
                     "i1_lo": i1.lo, "i1_hi": i1.hi,
                     "i2_lo": i2.lo, "i2_hi": i2.hi,
                     "common_lo": c.lo, "common_hi": c.hi,
                     "feasible": r.feasible})
        out.append({"lambda": r.lam, "i1": _interval_json(i1), "i2": _interval_json(i2),
                    "common": _interval_json(c), "feasible": r.feasible,
                    "min_gram_eigenvalue": r.min_gram_eigenvalue})
    return {"rows": out}, rows


def cmd_broadcast(args, meta):
    chi = _state(args.state, args.norm_tol)
    p = cloner.make_machine(args.lam)
    rep = broadcast.broadcast_report(chi, p, use_oracle=args.oracle, threshold=meta["tolerance"])
    meta["source"] = rep.source
    mats = (("rho_AB'", rep.rho_nonlocal, rep.verdict_nonlocal),
            ("rho_AA'", rep.rho_local_A, rep.verdict_local_A),
            ("rho_BB'", rep.rho_local_B, rep.verdict_local_B))
    payload = {"state": [chi.a00, complex(chi.a11).real, chi.a10, chi.a01], "lambda": p.lam,
               "broadcast_success": rep.broadcast_success, "matrices": {}}
    rows = []
    for name, rho, v in mats:
        payload["matrices"][name] = {"entries": _matrix_json(rho.matrix),
                                     "trace_deviation": rho.trace_deviation,
                                     "min_eigenvalue": rho.min_eigenvalue,
                                     **_verdict_json(v)}
        rows.append({"matrix": name, "verdict": v.verdict, "min_pt_eigenvalue": v.min_pt_eigenvalue,
                     "w2": v.w2, "w3": v.w3, "w4": v.w4, "trace_deviation": rho.trace_deviation,
                     "min_eigenvalue": rho.min_eigenvalue, "input_valid": v.input_valid,
                     "broadcast_success": rep.broadcast_success})
    return payload, rows


def cmd_oracle_check(args, meta):
    chi = _state(args.state, args.norm_tol)
    rows = [{"claim": c.name, "max_abs_diff": c.max_abs_diff, "agrees": c.agrees}
            for c in broadcast.compare_with_oracle(chi, cloner.make_machine(args.lam))]
    return {"comparisons": rows}, rows


def cmd_intervals(args, meta):
    r = analysis.broadcast_interval(args.lam)
    payload = {"lambda": r.lam, "i1": _interval_json(r.nonlocal_inseparable),
               "i2": _interval_json(r.local_separable), "common": _interval_json(r.broadcastable),
               "feasible": r.feasible, "min_gram_eigenvalue": r.min_gram_eigenvalue,
               "vs_universal": analysis.compare_with_universal(r.lam)}
    rows = [{"interval": name, "lo": iv.lo, "hi": iv.hi, "empty": iv.empty}
            for name, iv in (("i1", r.nonlocal_inseparable), ("i2", r.local_separable),
                             ("common", r.broadcastable))]
    return payload, rows


def cmd_fidelity(args, meta):
    payload = {"lambda": args.lam, "average": analysis.average_fidelity(args.lam),
               "universal_average": analysis.UNIVERSAL_AVERAGE_FIDELITY}
    if args.alpha2 is not None:
        if not 0.0 <= args.alpha2 <= 1.0:
            raise ValueError("--alpha2 must lie in [0, 1]")
        payload["alpha2"] = args.alpha2
        payload["fidelity"] = analysis.fidelity(args.alpha2, args.lam)
    return payload, [dict(payload)]


def cmd_scan(args, meta):
    grid = meta["grid"]
    iv = analysis.scan_interval(args.lam, grid, threshold=meta["tolerance"])
    closed = analysis.broadcast_interval(args.lam).broadcastable
    payload = {"lambda": args.lam, "grid": grid, "scan": _interval_json(iv),
               "closed_form": _interval_json(closed)}
    rows = [{"source": "scan", "lo": iv.lo, "hi": iv.hi, "empty": iv.empty},
            {"source": "closed_form", "lo": closed.lo, "hi": closed.hi, "empty": closed.empty}]
    return payload, rows


def cmd_feasibility(args, meta):
    p = cloner.make_machine(args.lam)
    g = cloner.gram_feasibility(p)
    row = {"lambda": p.lam, "mu": p.mu, "min_gram_eigenvalue": g,
           "feasible": g >= -cloner.FEASIBILITY_TOL, "universal": p.is_universal}
    return dict(row), [row]


def cmd_dominance(args, meta):
    d = analysis.dominance_range()
    payload = {"interval": _interval_json(d.interval), "roots": list(d.roots),
               "rejected": _interval_json(d.rejected),
               "crossover_lambda": analysis.crossover_lambda()}
    rows = [{"lo": d.interval.lo, "hi": d.interval.hi, "rejected_lo": d.rejected.lo,
             "rejected_hi": d.rejected.hi}]
    return payload, rows


COMMANDS = {
    "table1": cmd_table1, "table2": cmd_table2, "broadcast": cmd_broadcast,
    "oracle-check": cmd_oracle_check, "intervals": cmd_intervals, "fidelity": cmd_fidelity,
    "scan": cmd_scan, "feasibility": cmd_feasibility, "dominance": cmd_dominance,
}


def _cell(v, sig: int = 6) -> str:
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, (float, np.floating)):
        return "nan" if v != v else format(float(v), f".{sig}g")
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return None if obj != obj else float(obj)
    return obj


def render(fmt: str, command: str, payload: dict, rows: list[dict], meta: dict) -> str:
    if fmt == "json":
        body = {"schema_version": SCHEMA_VERSION, "command": command, "metadata": meta, **payload}
        return json.dumps(_jsonable(body), indent=2, sort_keys=True) + "\n"
    header = list(rows[0]) if rows else []
    table = [[_cell(r[k]) for k in header] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(table)
        return buf.getvalue()
    widths = [max(len(h), *(len(row[i]) for row in table)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in table]
    lines.append(f"# tolerance={meta['tolerance']:g} ({meta['tolerance_source']})")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "table")
    try:
        tol, src = _tolerance(args)
        grid = getattr(args, "grid", DEFAULT_GRID)
        if grid < 101:
            raise UsageError("--grid must be at least 101")
        meta = {"tolerance": tol, "tolerance_source": src, "grid": grid}
        payload, rows = COMMANDS[args.command](args, meta)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"entbroadcast: error: {exc}", file=sys.stderr)
        return 1
    except cloner.InfeasibleMachine as exc:
        print(f"entbroadcast: infeasible machine: min_gram_eigenvalue={exc.min_eigenvalue:.12g}",
              file=sys.stderr)
        print(f"entbroadcast: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"entbroadcast: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(fmt, args.command, payload, rows, meta))
    return 0


if __name__ == "__main__":
    sys.exit(main())

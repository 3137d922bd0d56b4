"""Command-line front end: wram / packing / bounds / verify.

Every command prints a deterministic report (identical flags give
byte-identical output once ``--stable`` suppresses the elapsed field) and
exits 0 on success, 2 on input or parse errors, 3 on capability errors,
and 4 on a failed certificate.  Rationals are rendered as ``p/q``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .bounds import (
    bounds_report,
    construction_blowup,
    construction_k4,
    density_coefficient,
    turan_ratio_gap,
)
from .errors import (
    CapabilityError,
    CertificateError,
    ContractViolationError,
    InputError,
)
from .graphs import format_coloring, parse_colorings, parse_graph, turan_number
from .packing import (
    SubgraphWeights,
    induced_descriptor,
    r_induced,
    r_tilde,
    tau_integral_family,
    tau_star,
)
from .weighted_ramsey import WramResult, default_jobs, wram, wram_for_colorings


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}") from exc


def format_decimal(x: Fraction, places: int = 6) -> str:
    """Exact fixed-point rendering, round-half-even, platform independent."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = round(abs(x) * 10**places)
    whole, frac = divmod(scaled, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def format_subgraph_weights(sw: SubgraphWeights) -> str:
    """Lines "v1 v2 v3 | edge-mask | p/q"; mask bits order (v1v2, v1v3, v2v3)."""
    lines = []
    for desc in sorted(sw.weights, key=lambda d: (d.vertices, d.edges)):
        a, b, c = desc.vertices
        mask = 0
        for bit, pair in enumerate(((a, b), (a, c), (b, c))):
            if pair in desc.edges:
                mask |= 1 << bit
        lines.append(f"{a} {b} {c} | {mask} | {format_rational(sw.weights[desc])}")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class RunReport:
    command: str
    inputs: dict
    result: dict
    elapsed_ms: int | None = None


def report_to_json(report: RunReport) -> str:
    payload = {
        "command": report.command,
        "inputs": report.inputs,
        "result": report.result,
    }
    if report.elapsed_ms is not None:
        payload["elapsed_ms"] = report.elapsed_ms
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> RunReport:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad report JSON: {exc}") from exc
    return RunReport(
        command=payload["command"],
        inputs=payload["inputs"],
        result=payload["result"],
        elapsed_ms=payload.get("elapsed_ms"),
    )


def _render_text(report: RunReport, out) -> None:
    out.write(f"command {report.command}\n")
    for key in sorted(report.inputs):
        out.write(f"{key} {report.inputs[key]}\n")
    for key, value in report.result.items():
        if isinstance(value, str) and "\n" in value:
            out.write(f"{key}:\n{value}")
            if not value.endswith("\n"):
                out.write("\n")
        else:
            out.write(f"{key} {value}\n")
    if report.elapsed_ms is not None:
        out.write(f"elapsed_ms {report.elapsed_ms}\n")


def _wram_payload(res: WramResult) -> dict:
    weights = {
        f"{u} {v}": format_rational(w)
        for (u, v), w in sorted(res.witness_weights.weights.items())
    }
    return {
        "value": format_rational(res.value),
        "r_value": format_rational(res.r_value),
        "classes": res.num_colorings,
        "partial": res.partial,
        "witness_coloring": format_coloring(res.witness_coloring),
        "witness_weights": weights,
    }


def _cmd_wram(args) -> RunReport:
    jobs = args.jobs if args.jobs else default_jobs()
    if args.exhaustive == (args.file is not None):
        raise InputError("choose exactly one of --exhaustive or --file")
    if args.exhaustive:
        if args.n is None:
            raise InputError("--exhaustive needs --n")
        res = wram(args.n, args.k, jobs=jobs)
        inputs = {"n": args.n, "k": args.k, "mode": "exhaustive"}
    else:
        with open(args.file, encoding="utf-8") as fh:
            colorings = parse_colorings(fh.read())
        if args.n is not None and any(c.n != args.n for c in colorings):
            raise InputError(f"file contains colorings with n != {args.n}")
        res = wram_for_colorings(colorings, args.k, jobs=jobs)
        inputs = {"n": res.n, "k": args.k, "mode": f"file {args.file}"}
    payload = _wram_payload(res)
    result = {
        "value": payload["value"],
        "r_value": payload["r_value"],
        "classes": payload["classes"],
        "partial": payload["partial"],
        "witness_coloring": payload["witness_coloring"],
    }
    if args.json:
        result = payload
    return RunReport("wram", inputs, result)


def _cmd_packing(args) -> RunReport:
    with open(args.graph, encoding="utf-8") as fh:
        g = parse_graph(fh.read())
    wanted = ["taustar", "tau", "r", "rtilde"] if args.stat == "all" else [args.stat]
    result: dict = {}
    witnesses: dict[str, SubgraphWeights] = {}
    for stat in wanted:
        if stat == "taustar":
            value, weights = tau_star(g)
            result["taustar"] = format_rational(value)
            witnesses["taustar"] = weights
        elif stat == "tau":
            family = tau_integral_family(g)
            result["tau"] = str(len(family))
            witnesses["tau"] = SubgraphWeights(
                g, {induced_descriptor(g, tri): Fraction(1) for tri in family}
            )
        elif stat == "r":
            value, weights = r_induced(g)
            result["r"] = format_rational(value)
            witnesses["r"] = weights
        else:
            value, weights = r_tilde(g)
            result["rtilde"] = format_rational(value)
            witnesses["rtilde"] = weights
    if args.witness:
        for stat in wanted:
            result[f"witness_{stat}"] = format_subgraph_weights(witnesses[stat])
    return RunReport("packing", {"graph": args.graph, "stat": args.stat}, result)


def _bounds_rows(table: str, kmax: int) -> tuple[list[str], list[list[str]]]:
    if table == "turan":
        header = ["k", "i", "t"]
        rows = [
            [str(k), str(i), str(turan_number(k, i))]
            for k in range(3, kmax + 1)
            for i in range(2, k + 1)
        ]
    elif table == "alpha":
        header = ["k", "i", "alpha", "alpha_decimal"]
        rows = []
        for k in range(3, kmax + 1):
            for i in range(3, k + 1):
                gap = turan_ratio_gap(k, i)
                rows.append([str(k), str(i), format_rational(gap), format_decimal(gap)])
    elif table == "ck":
        if kmax > 1000:
            raise InputError("ck table capped at kmax = 1000")
        header = ["k", "c_k", "c_k_decimal"]
        rows = []
        for k in range(4, kmax + 1):
            ck = density_coefficient(k)
            rows.append([str(k), format_rational(ck), format_decimal(ck)])
    elif table == "lk":
        header = ["k", "c_k", "L_k", "U_k", "L_k_decimal", "U_k_decimal"]
        rows = []
        for k in range(4, kmax + 1):
            rep = bounds_report(k)
            rows.append([
                str(k),
                format_rational(rep.c_k),
                format_rational(rep.lower_bound),
                format_rational(rep.upper_bound),
                format_decimal(rep.lower_bound),
                format_decimal(rep.upper_bound),
            ])
    else:
        raise InputError(f"unknown table {table!r}")
    return header, rows


def _cmd_bounds(args) -> RunReport:
    header, rows = _bounds_rows(args.table, args.kmax)
    csv_text = ",".join(header) + "\n"
    csv_text += "".join(",".join(row) + "\n" for row in rows)
    return RunReport(
        "bounds",
        {"table": args.table, "kmax": args.kmax},
        {"rows": len(rows), "csv": csv_text},
    )


def _cmd_verify(args) -> RunReport:
    if args.construction == "k4":
        if args.n is None:
            raise InputError("k4 construction needs --n")
        coloring, weights, total = construction_k4(args.n)
        k = 4
        cap = Fraction(24, 5)
        inputs = {"construction": "k4", "n": args.n}
    else:
        if args.n is None or args.k is None:
            raise InputError("blowup construction needs --n and --k")
        coloring, weights, total = construction_blowup(args.n, args.k)
        k = args.k
        cap = Fraction(5 * (k * k // 4), 4)
        inputs = {"construction": "blowup", "n": args.n, "k": args.k}
    pairs = Fraction(coloring.n * (coloring.n - 1), 2)
    implied = pairs / total
    if implied > cap:
        raise CertificateError(
            f"implied bound {implied} exceeds the construction cap {cap}"
        )
    return RunReport(
        "verify",
        inputs,
        {
            "feasible": True,
            "total": format_rational(total),
            "bound": format_rational(implied),
            "cap": format_rational(cap),
        },
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wramsey",
        description="Exact weighted Ramsey numbers and triangle packing invariants.",
    )
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser.add_argument(
        "--stable", action="store_true",
        help="suppress the elapsed field for byte-identical reruns",
    )
    parser.add_argument(
        "--jobs", type=int, default=0,
        help="worker count for exhaustive searches (default: WRAMSEY_JOBS or all cores)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_wram = sub.add_parser("wram", help="weighted Ramsey number")
    p_wram.add_argument("--n", type=int)
    p_wram.add_argument("--k", type=int, required=True)
    p_wram.add_argument("--exhaustive", action="store_true")
    p_wram.add_argument("--file", help="coloring file (one or more records)")

    p_pack = sub.add_parser("packing", help="triangle packing/covering invariants")
    p_pack.add_argument("--graph", required=True, help="graph file")
    p_pack.add_argument(
        "--stat", choices=["taustar", "tau", "r", "rtilde", "all"], default="all"
    )
    p_pack.add_argument("--witness", action="store_true")

    p_bounds = sub.add_parser("bounds", help="closed-form bound tables as CSV")
    p_bounds.add_argument("--table", choices=["turan", "alpha", "ck", "lk"], required=True)
    p_bounds.add_argument("--kmax", type=int, required=True)

    p_verify = sub.add_parser("verify", help="check a constructive certificate")
    p_verify.add_argument("--construction", choices=["k4", "blowup"], required=True)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--k", type=int)
    return parser


_HANDLERS = {
    "wram": _cmd_wram,
    "packing": _cmd_packing,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        report = _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (CertificateError, ContractViolationError) as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 4
    if not args.stable:
        elapsed = int((time.perf_counter() - started) * 1000)
        report = RunReport(report.command, report.inputs, report.result, elapsed)
    if args.json:
        sys.stdout.write(report_to_json(report))
    else:
        _render_text(report, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

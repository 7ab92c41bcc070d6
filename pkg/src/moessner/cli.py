"""Command-line front end.

Exit codes: 0 on success (and on every check that matches), 1 when a
requested comparison finds a genuine mismatch, 2 on usage or parameter
errors. Every computed number is printed as a decimal string, so
arbitrarily large values survive every output format.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from . import oeis, presets
from .counting import log_add_power_prefix_counted
from .engine import evaluate, evaluate_counting, evaluate_memoized, is_markov
from .errors import MoessnerError, ParameterError
from .inverse import run_inverse
from .oracles import pow_fast
from .polygonal import polygonal_closed, quotient_sum
from .process import dp_power, run_process
from .rules import InitRule


def _parse_params(text: Optional[str]) -> Dict[str, Any]:
    """Parse 'x=3,n=4,f=1:3:2,init=indicator:2:3' into a params dict.

    Integer values become ints, f becomes a tuple of ints, and anything
    else (init and rule specs) stays a string for the preset to parse.
    """
    params: Dict[str, Any] = {}
    if not text:
        return params
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParameterError(f"bad parameter assignment {chunk!r}, expected key=value")
        key, value = chunk.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key == "f":
            try:
                params[key] = tuple(int(v) for v in value.split(":"))
            except ValueError:
                raise ParameterError(f"bad table spec {value!r}, expected ints like 1:3:2") from None
        else:
            try:
                params[key] = int(value)
            except ValueError:
                params[key] = value
    return params


def _params_repr(params: Dict[str, Any]) -> str:
    parts = []
    for key in sorted(params):
        value = params[key]
        if isinstance(value, tuple):
            parts.append(f"{key}=" + ":".join(str(v) for v in value))
        else:
            parts.append(f"{key}={value}")
    return ",".join(parts)


def _json_params(params: Dict[str, Any]) -> Dict[str, Any]:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


def _eval_value(program, memoized: bool) -> int:
    if memoized:
        return evaluate_memoized(program)
    return evaluate(program)


def _cmd_eval(args: argparse.Namespace) -> int:
    base = _parse_params(args.params)
    if args.count is not None:
        assignments = []
        for n in range(args.count):
            params = dict(base)
            params["n"] = n
            assignments.append(params)
    else:
        assignments = [base]

    rows = []
    for params in assignments:
        program = presets.build(args.preset, params)
        if args.count_adds:
            report = evaluate_counting(program)
            value, additions = report.value, report.additions
            if args.memoized and evaluate_memoized(program) != value:
                raise MoessnerError("memoized value disagrees with counted evaluation")
        else:
            value = _eval_value(program, args.memoized)
            additions = None
        rows.append((params, value, additions))

    if args.format == "json":
        payload: Any = []
        for params, value, additions in rows:
            entry = {
                "preset": args.preset,
                "params": _json_params(params),
                "value": str(value),
            }
            if additions is not None:
                entry["additions"] = str(additions)
            payload.append(entry)
        if args.count is None:
            payload = payload[0]
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        header = ["preset", "params", "value"]
        if args.count_adds:
            header.append("additions")
        print(",".join(header))
        for params, value, additions in rows:
            fields = [args.preset, _params_repr(params).replace(",", ";"), str(value)]
            if additions is not None:
                fields.append(str(additions))
            print(",".join(fields))
    else:
        for params, value, additions in rows:
            if additions is not None:
                print(f"{value} {additions}")
            else:
                print(value)
    return 0


def _cmd_prefix(args: argparse.Namespace) -> int:
    if args.stop < args.start:
        raise ParameterError(f"--to {args.stop} below --from {args.start}")
    base = _parse_params(args.params)
    values: List[int] = []
    for point in range(args.start, args.stop + 1):
        params = dict(base)
        params[args.vary] = point
        program = presets.build(args.preset, params)
        values.append(evaluate_memoized(program) if is_markov(program) else evaluate(program))

    if args.format == "json":
        print(
            json.dumps(
                {
                    "preset": args.preset,
                    "params": _json_params(base),
                    "vary": args.vary,
                    "from": args.start,
                    "to": args.stop,
                    "values": [str(v) for v in values],
                },
                sort_keys=True,
            )
        )
    elif args.format == "csv":
        print(f"{args.vary},value")
        for point, value in zip(range(args.start, args.stop + 1), values):
            print(f"{point},{value}")
    else:
        print(", ".join(str(v) for v in values))
    return 0


def _compare_rows(args: argparse.Namespace) -> List[Dict[str, Any]]:
    base = _parse_params(args.params)
    if args.count is not None:
        assignments = []
        for n in range(args.count):
            params = dict(base)
            params["n"] = n
            assignments.append(params)
    else:
        assignments = [base]

    rows = []
    for params in assignments:
        if args.against == "oracle":
            report = evaluate_counting(presets.build(args.preset, params))
            reference = presets.expected(args.preset, params)
            rows.append(
                {
                    "params": params,
                    "value": report.value,
                    "reference": reference,
                    "additions": report.additions,
                    "ref_additions": None,
                    "ok": report.value == reference,
                }
            )
        elif args.against == "memoized":
            program = presets.build(args.preset, params)
            plain = evaluate(program)
            memo = evaluate_memoized(program)
            rows.append(
                {
                    "params": params,
                    "value": plain,
                    "reference": memo,
                    "additions": None,
                    "ref_additions": None,
                    "ok": plain == memo,
                }
            )
        elif args.against == "stolid":
            if args.preset != "moessner":
                raise ParameterError("--against stolid only compares the moessner preset")
            lively = evaluate_counting(presets.build("moessner", params))
            stolid = evaluate_counting(presets.build("moessner_stolid", params))
            rows.append(
                {
                    "params": params,
                    "value": lively.value,
                    "reference": stolid.value,
                    "additions": lively.additions,
                    "ref_additions": stolid.additions,
                    "ok": lively.value == stolid.value and lively.additions == stolid.additions,
                }
            )
        elif args.against == "dp":
            if args.preset != "moessner":
                raise ParameterError("--against dp only compares the moessner preset")
            report = dp_power(params.get("x", 0), params.get("n", 0))
            reference = pow_fast(params.get("x", 0) + 1, params.get("n", 0))
            rows.append(
                {
                    "params": params,
                    "value": report.value,
                    "reference": reference,
                    "additions": report.additions,
                    "ref_additions": None,
                    "ok": report.value == reference,
                }
            )
        else:  # pragma: no cover - argparse choices guard this
            raise ParameterError(f"unknown comparison target {args.against!r}")
    return rows


def _cmd_compare(args: argparse.Namespace) -> int:
    rows = _compare_rows(args)
    all_ok = all(row["ok"] for row in rows)
    for row in rows:
        pieces = [
            _params_repr(row["params"]) or "-",
            f"value {row['value']} vs {row['reference']}",
        ]
        if row["additions"] is not None:
            ref_adds = row["ref_additions"]
            pieces.append(f"additions {row['additions']} vs {ref_adds if ref_adds is not None else 'n/a'}")
        pieces.append("match" if row["ok"] else "MISMATCH")
        print(" | ".join(pieces))
    print(f"{sum(1 for r in rows if r['ok'])}/{len(rows)} match")
    return 0 if all_ok else 1


def _format_row(values, width: int) -> str:
    return " ".join(str(v).rjust(width) for v in values)


def _cmd_process(args: argparse.Namespace) -> int:
    init = InitRule.parse(args.init)
    final, trace = run_process(args.exponent, args.prefix, init)

    if args.format == "json":
        payload = trace.to_dict()
        payload["final"] = [str(v) for v in final]
        print(json.dumps(payload, sort_keys=True))
        return 0

    width = max(
        (len(str(v)) for step in trace.steps for v in step.before),
        default=1,
    )
    width = max(width, max((len(str(v)) for v in final), default=1))
    print(f"exponent {trace.exponent}, init {trace.init.spec_string()}, prefix {args.prefix}")
    for step in trace.steps:
        print(f"period {step.period}")
        print("  before   " + _format_row(step.before, width))
        print("  filtered " + _format_row(step.filtered, width))
        print("  summed   " + _format_row(step.summed, width))
    print("final " + _format_row(final, width))
    return 0


def _cmd_inverse(args: argparse.Namespace) -> int:
    chain = run_inverse(args.exponent, args.prefix)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "exponent": args.exponent,
                    "prefix": args.prefix,
                    "rows": [[str(v) for v in row] for row in chain],
                },
                sort_keys=True,
            )
        )
        return 0
    width = max((len(str(v)) for row in chain for v in row), default=1)
    for step, row in enumerate(chain):
        print(f"step {step}: " + _format_row(row, width))
    return 0


def _cmd_polygonal(args: argparse.Namespace) -> int:
    mismatches = 0
    for n in range(args.count):
        summed = quotient_sum(args.k, n)
        closed = polygonal_closed(args.k, n)
        ok = summed == closed
        mismatches += 0 if ok else 1
        print(f"n={n} sum {summed} closed {closed} {'match' if ok else 'MISMATCH'}")
    print(f"{args.count - mismatches}/{args.count} match")
    return 0 if mismatches == 0 else 1


def _cmd_oeis_check(args: argparse.Namespace) -> int:
    entries_by_sequence = None
    if args.online:
        entries_by_sequence = {}
        for row in oeis.load_manifest(args.fixtures):
            if row.preset == args.preset and row.a_number not in entries_by_sequence:
                entries_by_sequence[row.a_number] = oeis.fetch(row.a_number)
    reports = oeis.check_preset_prefix(
        args.preset, args.count, directory=args.fixtures, entries_by_sequence=entries_by_sequence
    )
    all_ok = True
    for report in reports:
        print(report.summary)
        for line in report.lines:
            if not line.ok:
                all_ok = False
                shown = "missing" if line.fixture_value is None else line.fixture_value
                print(f"  {report.vary}={line.vary_value}: engine {line.engine_value} fixture {shown}")
    return 0 if all_ok else 1


def _cmd_list_presets(args: argparse.Namespace) -> int:
    entries = presets.catalog()
    if args.json:
        print(json.dumps(entries, sort_keys=True))
        return 0
    name_width = max(len(e["name"]) for e in entries)
    for entry in entries:
        schema = ",".join(entry["params"])
        if entry["optional"]:
            schema += " [" + ",".join(entry["optional"]) + "]"
        oeis_id = entry["oeis"] or "-"
        print(f"{entry['name'].ljust(name_width)}  {oeis_id:<8} {schema:<24} {entry['computes']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moessner",
        description="Evaluate nested-summation sequence programs and the row process behind them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")

    p_eval = sub.add_parser("eval", help="evaluate a preset at one parameter point")
    p_eval.add_argument("--preset", required=True)
    p_eval.add_argument("--params", default="", help="comma list like x=3,n=4; tables as f=1:3:2")
    p_eval.add_argument("--count", type=int, default=None, metavar="M", help="evaluate n=0..M-1 instead")
    p_eval.add_argument("--memoized", action="store_true", help="use the table-folding evaluator")
    p_eval.add_argument("--count-adds", action="store_true", help="also report additions performed")
    add_format(p_eval)
    p_eval.set_defaults(handler=_cmd_eval)

    p_prefix = sub.add_parser("prefix", help="evaluate a preset along one varying parameter")
    p_prefix.add_argument("--preset", required=True)
    p_prefix.add_argument("--params", default="")
    p_prefix.add_argument("--vary", required=True, help="parameter to sweep (usually x or n)")
    p_prefix.add_argument("--from", dest="start", type=int, required=True)
    p_prefix.add_argument("--to", dest="stop", type=int, required=True)
    add_format(p_prefix)
    p_prefix.set_defaults(handler=_cmd_prefix)

    p_cmp = sub.add_parser("compare", help="check a preset against an independent path")
    p_cmp.add_argument("--preset", required=True)
    p_cmp.add_argument("--params", default="")
    p_cmp.add_argument("--count", type=int, default=None, metavar="M", help="compare n=0..M-1 instead")
    p_cmp.add_argument("--against", choices=("oracle", "memoized", "stolid", "dp"), required=True)
    p_cmp.set_defaults(handler=_cmd_compare)

    p_proc = sub.add_parser("process", help="run the drop/sum row process and print the trace")
    p_proc.add_argument("--exponent", type=int, required=True)
    p_proc.add_argument("--prefix", type=int, required=True, help="how many final values to produce")
    p_proc.add_argument("--init", default="ones", help="ones | successor | const:C | indicator:A:D")
    add_format(p_proc)
    p_proc.set_defaults(handler=_cmd_process)

    p_inv = sub.add_parser("inverse", help="run the inverse process from a power row down to ones")
    p_inv.add_argument("--exponent", type=int, required=True)
    p_inv.add_argument("--prefix", type=int, required=True, help="entries to show per row")
    add_format(p_inv)
    p_inv.set_defaults(handler=_cmd_inverse)

    p_poly = sub.add_parser("polygonal", help="check the floored-quotient sum against its closed form")
    p_poly.add_argument("--k", type=int, required=True)
    p_poly.add_argument("--count", type=int, required=True, metavar="M", help="check n=0..M-1")
    p_poly.set_defaults(handler=_cmd_polygonal)

    p_oeis = sub.add_parser("oeis-check", help="compare a preset prefix against bundled b-files")
    p_oeis.add_argument("--preset", required=True)
    p_oeis.add_argument("--count", type=int, default=8, metavar="M")
    p_oeis.add_argument("--fixtures", default=None, help="override the bundled fixtures directory")
    p_oeis.add_argument("--online", action="store_true", help="fetch the b-file instead of the bundled copy")
    p_oeis.set_defaults(handler=_cmd_oeis_check)

    p_list = sub.add_parser("list-presets", help="list available presets")
    p_list.add_argument("--json", action="store_true")
    p_list.set_defaults(handler=_cmd_list_presets)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except MoessnerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

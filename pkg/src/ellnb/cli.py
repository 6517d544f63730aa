"""Command-line front-end: params, bounds, exact, multiply, sweep."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from importlib import resources
from pathlib import Path

from .enb import DEFAULT_BUDGET_CURVES, DEFAULT_BUDGET_POINTS, params_computation
from .errors import ConsistencyError, EnbError, InvalidInput, LengthMismatch, ParameterSearchExhausted
from .tensor import CyclicVector, complexity_report, coords, tensor_multiply, uncoords

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED, EXIT_CONSISTENCY = 0, 1, 2, 3

CSV_COLUMNS = ["q", "n", "a1", "a2", "a3", "a4", "a6", "tx", "ty", "Rx", "Ry", "lower", "upper", "exact", "middle_sum"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def bundled_example(name: str) -> dict:
    text = resources.files("ellnb").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def load_overrides(source: str | None) -> dict | None:
    if source is None:
        return None
    path = Path(source)
    if path.is_file():
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"overrides file {source} is not valid JSON: {exc}") from None
    stem = path.stem
    if path.parent == Path(".") and stem.startswith("example"):
        try:
            return bundled_example(stem)
        except FileNotFoundError:
            pass
    raise InvalidInput(f"overrides file {source} not found")


def _resolve_qn(args, overrides):
    q = args.q if args.q is not None else (overrides or {}).get("q")
    n = args.n if args.n is not None else (overrides or {}).get("n")
    if q is None or n is None:
        raise UsageError("--q and --n are required unless the overrides file provides them")
    if args.budget_curves <= 0 or args.budget_points <= 0:
        raise UsageError("search budgets must be positive")
    return q, n


def _params(args):
    overrides = load_overrides(args.overrides)
    q, n = _resolve_qn(args, overrides)
    return params_computation(q, n, overrides, args.budget_curves, args.budget_points)


def _params_table(p) -> str:
    data = p.to_json()
    lines = []
    for key in ("q", "n", "curve", "t", "isogenous_curve", "a_point", "modulus", "scalar_c", "scalar_a", "scalar_b", "R", "nq", "nq_condition"):
        lines.append(f"{key:16} {json.dumps(data[key])}")
    lines.append(f"{'b':16} {json.dumps(data['b'])}")
    for k, al in enumerate(data["basis"]):
        lines.append(f"{'alpha_' + str(k):16} {json.dumps(al)}")
    return "\n".join(lines)


def cmd_params(args) -> str:
    p = _params(args)
    if args.format == "table":
        return _params_table(p)
    return json.dumps(p.to_json())


def _report(args, exact: bool) -> str:
    p = _params(args)
    report = complexity_report(p, exact=exact)
    if args.format == "table":
        return report.render_table()
    data = report.to_json()
    if not exact:
        data = {k: v for k, v in data.items() if k not in ("rows", "row_weights", "exact")}
    return json.dumps(data)


def cmd_bounds(args) -> str:
    return _report(args, exact=False)


def cmd_exact(args) -> str:
    return _report(args, exact=True)


def _parse_vector(text: str, F, n: int) -> CyclicVector:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"cannot parse vector {text!r}: {exc}") from None
    if not isinstance(values, list):
        raise InvalidInput(f"vector must be a JSON list, got {text!r}")
    if len(values) != n:
        raise LengthMismatch(f"vector has length {len(values)}, expected {n}")
    return CyclicVector(F, values)


def cmd_multiply(args) -> str:
    p = _params(args)
    F, K, n = p.base_field, p.extension, p.n
    if args.x is None and args.y is None:
        rng = random.Random(args.seed)
        x, y = coords(K.random(rng), p), coords(K.random(rng), p)
    elif args.x is None or args.y is None:
        raise UsageError("give both --x and --y, or neither for a random pair")
    else:
        x, y = _parse_vector(args.x, F, n), _parse_vector(args.y, F, n)
    product = tensor_multiply(x, y, p)
    oracle = coords(uncoords(x, p) * uncoords(y, p), p)
    if product != oracle:
        raise ConsistencyError(f"tensor product {product.to_json()} differs from field product {oracle.to_json()}")
    out = {"x": x.to_json(), "y": y.to_json(), "product": product.to_json(), "verified": True}
    if args.format == "table":
        return "\n".join(f"{k:8} {json.dumps(v)}" for k, v in out.items())
    return json.dumps(out)


def _cell(value) -> str:
    return value if isinstance(value, str) else json.dumps(value, separators=(",", ":"))


def sweep_rows(qs, n_min=2, n_max=None, budget_curves=DEFAULT_BUDGET_CURVES, budget_points=DEFAULT_BUDGET_POINTS):
    """One row per (q, n) for which the canonical search succeeds, in (q, n) order."""
    for q in qs:
        top = n_max if n_max is not None else (q + 1 + math.isqrt(4 * q)) // 2
        for n in range(max(n_min, 2), top + 1):
            try:
                p = params_computation(q, n, None, budget_curves, budget_points)
            except ParameterSearchExhausted:
                continue
            r = complexity_report(p)
            E = p.curve.coefficients_json()
            yield [q, n, *E, p.t.x.to_json(), p.t.y.to_json(), p.R.x.to_json(), p.R.y.to_json(),
                   r.lower, r.upper, r.exact, r.middle_sum]


def cmd_sweep(args) -> str:
    try:
        qs = [int(s) for s in args.qs.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--qs must be a comma-separated list of integers, got {args.qs!r}") from None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sweep_rows(qs, args.n_min, args.n_max, args.budget_curves, args.budget_points):
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue().rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellnb", description="Elliptic normal bases and their multiplication complexity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, qn=True):
        if qn:
            p.add_argument("--q", type=int, help="size of the base field (prime power)")
            p.add_argument("--n", type=int, help="extension degree")
            p.add_argument("--overrides", help="EnbParams JSON file, or example1/example2/example3")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--budget-curves", type=int, default=DEFAULT_BUDGET_CURVES)
        p.add_argument("--budget-points", type=int, default=DEFAULT_BUDGET_POINTS)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write output to this path instead of standard output")

    common(sub.add_parser("params", help="compute elliptic normal basis parameters"))
    common(sub.add_parser("bounds", help="special vectors and complexity bounds"))
    common(sub.add_parser("exact", help="full complexity report with exact complexity"))
    mp = sub.add_parser("multiply", help="multiply two vectors of coordinates")
    common(mp)
    mp.add_argument("--x", help="JSON list of coordinates; omit both --x and --y for a random pair")
    mp.add_argument("--y", help="JSON list of coordinates")
    sp = sub.add_parser("sweep", help="CSV of bounds and exact complexity over many (q, n)")
    common(sp, qn=False)
    sp.add_argument("--qs", default="7,11,13", help="comma-separated field sizes")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=None)
    return parser


COMMANDS = {"params": cmd_params, "bounds": cmd_bounds, "exact": cmd_exact, "multiply": cmd_multiply, "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterSearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except EnbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

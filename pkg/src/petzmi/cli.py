"""Command-line front end.

Subcommands:
  compute   one Renyi mutual information value at a single order
  sweep     all three variants over an alpha grid, written as CSV
  exponent  direct error exponent at a type-II rate (optionally the full curve)
  simulate  finite-blocklength universal tests versus the asymptotic exponent
  oracle    exhaustive product-state search at a single order

Exit codes: 0 success, 2 missing input file, 3 schema violation, 4 invariant
violation (state fails to be a valid density operator), 5 solver did not
converge under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import InvalidInputError, PetzmiError, UnsupportedRegimeError
from .exponents import direct_exponent, rate_curve
from .hypotest import achievability_sweep
from .oracle import brute_force_dd
from .prmi import FixedPointConfig, prmi_down_down, prmi_up_down, prmi_up_up
from .states import BipartiteState, Pmf, cc_state, pure_bipartite

EXIT_OK = 0
EXIT_MISSING_FILE = 2
EXIT_SCHEMA = 3
EXIT_INVARIANT = 4
EXIT_NOT_CONVERGED = 5


class SchemaError(Exception):
    pass


def _require(obj: dict, field: str, path: str):
    if field not in obj:
        raise SchemaError(f"{path}.{field}: missing required field")
    return obj[field]


def _complex_array(entries, path: str) -> np.ndarray:
    out = []
    for idx, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"{path}[{idx}]: expected a [re, im] pair")
        re, im = pair
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise SchemaError(f"{path}[{idx}]: entries must be numbers")
        out.append(complex(re, im))
    return np.asarray(out)


def parse_input(path: str) -> BipartiteState:
    """Load a bipartite state from a JSON file.

    Accepted shapes: {"dA", "dB", "matrix": [[re, im], ...]} (row-major,
    A-major), {"pmf": [[...]]}, or {"amplitudes": [[re, im], ...], "dA", "dB"}.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise SchemaError("$: expected a JSON object")
    if "pmf" in raw:
        table = raw["pmf"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise SchemaError("$.pmf: expected a list of rows of numbers")
        try:
            return cc_state(Pmf(np.asarray(table, dtype=float)))
        except (ValueError, TypeError) as exc:
            raise SchemaError(f"$.pmf: {exc}") from exc
    if "amplitudes" in raw:
        d_a = _require(raw, "dA", "$")
        d_b = _require(raw, "dB", "$")
        if not isinstance(d_a, int) or not isinstance(d_b, int):
            raise SchemaError("$.dA/$.dB: expected integers")
        amps = _complex_array(raw["amplitudes"], "$.amplitudes")
        if amps.size != d_a * d_b:
            raise SchemaError(
                f"$.amplitudes: length {amps.size} does not equal dA*dB = {d_a * d_b}"
            )
        return pure_bipartite(amps, d_a, d_b)
    if "matrix" in raw:
        d_a = _require(raw, "dA", "$")
        d_b = _require(raw, "dB", "$")
        if not isinstance(d_a, int) or not isinstance(d_b, int):
            raise SchemaError("$.dA/$.dB: expected integers")
        flat = _complex_array(raw["matrix"], "$.matrix")
        dim = d_a * d_b
        if flat.size != dim * dim:
            raise SchemaError(
                f"$.matrix: length {flat.size} does not equal (dA*dB)^2 = {dim * dim}"
            )
        return BipartiteState(flat.reshape(dim, dim), d_a, d_b)
    raise SchemaError("$: expected one of 'matrix', 'pmf', or 'amplitudes'")


def _fmt(x: float) -> str:
    """Deterministic 12-significant-digit formatting; inf/nan as bare literals."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def _config_from_args(args) -> FixedPointConfig:
    return FixedPointConfig(
        tol=args.tol, max_iter=args.max_iter, restarts=args.restarts, seed=args.seed
    )


def _dd_point(alpha: float, state: BipartiteState, config: FixedPointConfig):
    """(value, certified) for the doubly minimized variant, nan on unsupported
    regimes."""
    try:
        sol = prmi_down_down(alpha, state, config)
    except UnsupportedRegimeError:
        return math.nan, False, None
    return sol.as_float(), sol.certified, sol


def _emit(payload: dict, args) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key, value in payload.items():
            if isinstance(value, float):
                value = _fmt(value)
            print(f"{key}: {value}")


def cmd_compute(args) -> int:
    state = parse_input(args.state)
    config = _config_from_args(args)
    certified = True
    solution = None
    if args.which == "uu":
        value = prmi_up_up(args.alpha, state).as_float()
    elif args.which == "ud":
        value = prmi_up_down(args.alpha, state).as_float()
    else:
        value, certified, solution = _dd_point(args.alpha, state, config)
    payload = {
        "which": args.which,
        "alpha": args.alpha,
        "value": _fmt(value),
        "certified": int(certified),
    }
    if solution is not None:
        payload["residual"] = _fmt(solution.residual)
        payload["iterations"] = solution.iterations
    _emit(payload, args)
    if args.strict and solution is not None and not solution.certified:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def sweep_rows(state: BipartiteState, alphas, config: FixedPointConfig):
    rows = []
    for alpha in alphas:
        rmi0 = prmi_up_up(alpha, state).as_float()
        rmi1 = prmi_up_down(alpha, state).as_float()
        rmi2, certified, _ = _dd_point(alpha, state, config)
        rows.append((alpha, rmi0, rmi1, rmi2, int(certified)))
    return rows


def emit_sweep(state: BipartiteState, alphas, out: str, config: FixedPointConfig) -> list:
    """Write the alpha sweep of all three variants as CSV.

    Points are evaluated in grid order (the evaluation is deterministic either
    way, and the rows are written in grid order regardless).
    """
    rows = sweep_rows(state, alphas, config)
    with open(out, "w") as fh:
        fh.write("alpha,rmi0,rmi1,rmi2,certified\n")
        for alpha, rmi0, rmi1, rmi2, certified in rows:
            fh.write(
                f"{_fmt(alpha)},{_fmt(rmi0)},{_fmt(rmi1)},{_fmt(rmi2)},{certified}\n"
            )
    return rows


def cmd_sweep(args) -> int:
    state = parse_input(args.state)
    if args.alpha_min < 0 or args.alpha_max > 2.5 or args.alpha_min > args.alpha_max:
        raise InvalidInputError("sweep grid must lie inside [0, 2.5]")
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.steps)
    config = _config_from_args(args)
    rows = emit_sweep(state, alphas, args.out, config)
    if args.json:
        print(json.dumps({
            "out": args.out,
            "rows": [
                {"alpha": a, "rmi0": _fmt(r0), "rmi1": _fmt(r1),
                 "rmi2": _fmt(r2), "certified": c}
                for a, r0, r1, r2, c in rows
            ],
        }, sort_keys=True))
    else:
        print(f"wrote {len(rows)} rows to {args.out}")
    if args.strict and any(c == 0 for *_, c in rows):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_exponent(args) -> int:
    state = parse_input(args.state)
    config = _config_from_args(args)
    report = direct_exponent(state, args.rate, config)
    payload = {
        "rate": _fmt(report.rate),
        "exponent": _fmt(report.exponent),
        "s_star": _fmt(report.s_star) if report.s_star is not None else None,
        "mutual_information": _fmt(report.mutual_information),
        "r_half": _fmt(report.r_half),
        "guaranteed_exact": int(report.guaranteed_exact),
    }
    if args.curve:
        grid = np.linspace(0.5 + 1e-3, 1.0 - 1e-3, 25)
        payload["curve"] = [
            {"s": _fmt(p.s), "rate": _fmt(p.rate), "exponent": _fmt(p.exponent)}
            for p in rate_curve(state, grid, config)
        ]
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in ("rate", "exponent", "s_star", "mutual_information", "r_half",
                    "guaranteed_exact"):
            print(f"{key}: {payload[key]}")
        if args.curve:
            print("s,rate,exponent")
            for p in payload["curve"]:
                print(f"{p['s']},{p['rate']},{p['exponent']}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    state = parse_input(args.state)
    result = achievability_sweep(state, args.rate, args.n_max)
    if args.json:
        print(json.dumps(result, sort_keys=True))
    else:
        print(f"rate: {_fmt(result['rate'])}")
        print(f"asymptotic_exponent: {_fmt(result['asymptotic_exponent'])}")
        print("n,s,exponent,type_one,type_one_bound,type_two_bound")
        for row in result["per_n"]:
            print(
                f"{row['n']},{_fmt(row['s'])},{_fmt(row['exponent'])},"
                f"{_fmt(row['type_one'])},{_fmt(row['type_one_bound'])},"
                f"{_fmt(row['type_two_bound'])}"
            )
    return EXIT_OK


def cmd_oracle(args) -> int:
    state = parse_input(args.state)
    value, _, _ = brute_force_dd(args.alpha, state, resolution=args.resolution)
    _emit({"alpha": args.alpha, "value": _fmt(value), "resolution": args.resolution}, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petzmi",
        description="Renyi mutual informations of bipartite states and direct error exponents",
    )
    parser.add_argument("--tol", type=float, default=1e-12)
    parser.add_argument("--max-iter", type=int, default=10000)
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--strict", action="store_true",
                        help="exit 5 when a solver result is not certified")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="one mutual-information value")
    p.add_argument("--state", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--which", choices=("uu", "ud", "dd"), default="dd")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="alpha sweep of all three variants, as CSV")
    p.add_argument("--state", required=True)
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("exponent", help="direct error exponent at a type-II rate")
    p.add_argument("--state", required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--curve", action="store_true")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("simulate", help="finite-blocklength universal tests")
    p.add_argument("--state", required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="exhaustive product-state search")
    p.add_argument("--state", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--resolution", type=int, default=24)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: input file not found: {exc.filename}", file=sys.stderr)
        return EXIT_MISSING_FILE
    except SchemaError as exc:
        print(f"error: state file schema: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (InvalidInputError, PetzmiError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())

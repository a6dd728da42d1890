"""Command line front end: analyze, factor, verify, diagram.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 mathematical failure (resonant split, homological obstruction), 2 usage
or syntax error.  All rationals in JSON output are "num/den" strings;
nothing is ever printed as a float.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .factor import ResonanceError
from .homological import ObstructionError
from .newton import Polygon
from .parse import ExprSyntaxError, operator_from_text, operator_to_text, parse_poly
from .pseudopoly import CharPoly, char_poly
from .weyl import (
    WeylOperator,
    compose_all,
    factor_monic,
    verify_factorization,
    weyl_factor_characteristic,
    weyl_factor_slopes,
)

Q = Fraction


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylfact",
        description="Newton polygons, Poincare spectra and formal factorization "
        "of linear ODE operators written in t, D (= d/dt) and E (= t*d/dt).",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p: argparse.ArgumentParser, with_input: bool = True):
        if with_input:
            p.add_argument("expression", nargs="?", help="operator expression, e.g. 't*E^2 + E + 1'")
            p.add_argument("--file", help="JSON file with an operator instead of an expression")
        p.add_argument("-N", "--truncation", type=int, default=16, help="truncation order (default 16)")
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("analyze", help="polygon, spectrum and characteristic data")
    add_common(p)

    p = sub.add_parser("factor", help="formal factorization")
    add_common(p)
    p.add_argument("--mode", choices=("slopes", "characteristic", "monic"), default="monic")
    p.add_argument("--split", help="comma-separated pair of polynomials in l (characteristic mode)")

    p = sub.add_parser("verify", help="recompose a factor list and report the residual")
    p.add_argument("--file", required=True, help='JSON file {"operator": ..., "factors": [...]}')
    p.add_argument("-N", "--truncation", type=int, default=16)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("diagram", help="ASCII or JSON Newton diagram")
    add_common(p)
    return parser


def _load_operator(args) -> WeylOperator:
    if args.file:
        with open(args.file) as fh:
            return WeylOperator.from_json(json.load(fh))
    if not args.expression:
        raise UsageError("an expression or --file is required")
    if args.truncation < 1:
        raise UsageError("truncation must be at least 1")
    return operator_from_text(args.expression, args.truncation)


class UsageError(ValueError):
    pass


def _fractions(fr: Fraction) -> str:
    return str(fr)


def _charpoly_json(cp: CharPoly) -> dict:
    return {
        "prefix": list(cp.prefix),
        "scale": str(cp.scale),
        "sigma": [str(c) for c in cp.sigma.coeffs],
    }


def _analysis(L: WeylOperator) -> dict:
    polygon = L.newton_polygon()
    sigma_per_slope = {}
    for w in polygon.slopes() or [Q(0)]:
        cp = char_poly(L.symbol().leading_part(w))
        sigma_per_slope[str(w)] = _charpoly_json(cp)
    return {
        "order": L.order,
        "truncation": L.truncation,
        "t_shift": L.t_shift,
        "fuchsian": L.is_fuchsian(),
        "polygon": polygon.to_json(),
        "spectrum": [[str(w.numerator), str(w.denominator)] for w in polygon.slopes()],
        "sigma_per_slope": sigma_per_slope,
    }


def _emit(data: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in text_lines(data):
            print(line)


def _analyze_text(data: dict):
    yield f"order:     {data['order']}"
    yield f"t_shift:   {data['t_shift']}"
    yield f"fuchsian:  {str(data['fuchsian']).lower()}"
    yield f"polygon:   breakpoints {data['polygon']['breakpoints']}"
    spectrum = ", ".join(f"{p}/{q}" if q != "1" else p for p, q in data["spectrum"])
    yield f"spectrum:  [{spectrum}]"
    for slope, cp in sorted(data["sigma_per_slope"].items()):
        yield f"sigma[{slope}]: coefficients {cp['sigma']} scale {cp['scale']} prefix {cp['prefix']}"


def cmd_analyze(args) -> int:
    L = _load_operator(args)
    _emit(_analysis(L), args.format, _analyze_text)
    return 0


def cmd_factor(args) -> int:
    L = _load_operator(args)
    if args.mode == "slopes":
        factors = weyl_factor_slopes(L)
        characteristics = None
    elif args.mode == "characteristic":
        if not args.split:
            raise UsageError("--split s1,s2 is required in characteristic mode")
        parts = args.split.split(",")
        if len(parts) != 2:
            raise UsageError("--split takes exactly two comma-separated polynomials")
        s1, s2 = (parse_poly(p) for p in parts)
        factors = list(weyl_factor_characteristic(L, s1, s2))
        characteristics = None
    else:
        pairs = factor_monic(L)
        factors = [f for f, _ in pairs]
        characteristics = [
            {"slope": str(f.slopes()[0] if f.slopes() else Q(0)), **_charpoly_json(cp)}
            for f, cp in pairs
        ]
    residual = verify_factorization(L, factors)
    data = _analysis(L)
    data["mode"] = args.mode
    data["factors"] = [f.to_json() for f in factors]
    data["residual_zero"] = residual.is_zero()
    if characteristics is not None:
        data["characteristics"] = characteristics

    def text(d):
        yield from _analyze_text(d)
        yield f"mode:      {d['mode']}"
        for k, f in enumerate(factors):
            shift = f" (t_shift {f.t_shift})" if f.t_shift else ""
            yield f"factor {k}:  {operator_to_text(f)}{shift}"
        yield f"residual zero: {str(d['residual_zero']).lower()}"

    _emit(data, args.format, text)
    return 0


def cmd_verify(args) -> int:
    with open(args.file) as fh:
        payload = json.load(fh)
    L = WeylOperator.from_json(payload["operator"])
    factors = [WeylOperator.from_json(f) for f in payload["factors"]]
    residual = verify_factorization(L, factors)
    data = {
        "residual": residual.to_json(),
        "residual_zero": residual.is_zero(),
    }

    def text(d):
        yield f"residual zero: {str(d['residual_zero']).lower()}"
        if not d["residual_zero"]:
            yield f"residual: {operator_to_text(residual)}"

    _emit(data, args.format, text)
    return 0


def render_diagram(L: WeylOperator) -> str:
    polygon = L.newton_polygon()
    support = set(L.coeffs)
    jmax = max(
        max((j for _, j in support), default=0),
        max(j for _, j in polygon.breakpoints),
    )
    breakpoints = set(polygon.breakpoints)
    lines = []
    for j in range(jmax, -1, -1):
        cells = []
        for i in range(polygon.width + 1):
            if (i, j) in breakpoints:
                cells.append("#")
            elif (i, j) in support:
                cells.append("*")
            else:
                cells.append(".")
        lines.append(f"{j:>3} | " + " ".join(cells))
    lines.append("    +-" + "--" * (polygon.width + 1))
    lines.append("      " + " ".join(str(i % 10) for i in range(polygon.width + 1)))
    return "\n".join(lines)


def cmd_diagram(args) -> int:
    L = _load_operator(args)
    if args.format == "json":
        data = {
            "polygon": L.newton_polygon().to_json(),
            "support": [list(p) for p in sorted(L.coeffs)],
        }
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(render_diagram(L))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    commands = {
        "analyze": cmd_analyze,
        "factor": cmd_factor,
        "verify": cmd_verify,
        "diagram": cmd_diagram,
    }
    try:
        return commands[args.verb](args)
    except (ExprSyntaxError, UsageError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ObstructionError, ResonanceError, ValueError) as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

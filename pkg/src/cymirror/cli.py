"""Command-line orchestrator with machine-readable exact output.

Subcommands:

    pf      recover the pole-six relation over several primes and assemble
            the differential operator (multi-modular, exact)
    yukawa  coupling series and integer curve counts for a family
    lines   Schubert-calculus line count for a family
    euler   Euler characteristics, fixed-locus census, orbifold total

Reports are JSON documents whose numeric payloads are decimal strings
(rationals as "num/den"); identical flags and seed produce byte-identical
reports.  Wall-clock timing goes to stderr, or into the report with
--with-timing.  Exit status is nonzero with an error object on any failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .exactnum import VETTED_PRIMES
from .mirrorseries import PRESETS, HGParams, instanton_table
from . import enumgeo
from .gdreduce import run_relation_pipeline


@dataclass(frozen=True)
class FamilySpec:
    """A complete-intersection family selected on the command line."""

    degrees: tuple[int, ...]
    ambient_dim: int
    label: str

    @classmethod
    def from_args(cls, family: str | None, degrees: str | None) -> "FamilySpec":
        if degrees:
            degs = tuple(sorted(int(d) for d in degrees.split(",")))
            params = HGParams.from_degrees(degs)
            return cls(degs, params.ambient_dim, params.label)
        if family is None:
            raise ValueError("pick a family with --family or --degrees")
        key = family.strip().lower()
        if key in ("quintic",):
            key = "5"
        if key not in PRESETS:
            raise ValueError(f"unknown family {family!r}; presets: {', '.join(PRESETS)}")
        params = PRESETS[key]
        return cls(params.degrees, params.ambient_dim, params.label)

    def params(self) -> HGParams:
        return HGParams.from_degrees(self.degrees)


def _rat(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _int(x) -> str:
    return str(int(x))


def _operator_payload(op) -> dict:
    by_z: dict[int, list[str]] = {}
    deg_t = op.theta_degree
    for j in range(op.z_degree + 1):
        by_z[j] = [_rat(op.coefficients.get((k, j), 0)) for k in range(deg_t + 1)]
    return {f"z^{j} theta coefficients": by_z[j] for j in sorted(by_z)}


def cmd_pf(primes: list[int], lambda_count: int, seed: int) -> dict:
    result = run_relation_pipeline(primes, lambda_count=lambda_count, seed=seed)
    rel = result.relation
    return {
        "relation": {
            "a": {str(i): _rat(rel.a[i]) for i in sorted(rel.a)},
            "b": {str(i): _rat(rel.b[i]) for i in sorted(rel.b)},
            "form": "h_i(z) = (a_i z + b_i) / (z - 1)",
        },
        "operator": _operator_payload(result.operator),
        "indicial_exponents": [_rat(x) for x in result.exponents],
        "maximally_unipotent": result.maximally_unipotent,
        "fibers": [
            {"prime": f.prime, "lambda0": f.lam0, "z0": f.z0, "role": f.role}
            for f in result.fibers
        ],
    }


def cmd_yukawa(family: FamilySpec, d_max: int) -> dict:
    params = family.params()
    kappa, table = instanton_table(params, d_max)
    return {
        "family": family.label,
        "leading_coefficient": _int(params.D),
        "mirror_map_scale": _int(params.C),
        "hypergeometric_parameters": [_rat(a) for a in params.a],
        "kappa_q_coefficients": [_rat(kappa[m]) for m in range(d_max + 1)],
        "instanton_numbers": {str(d): _int(table.counts[d]) for d in sorted(table.counts)},
    }


def cmd_lines(family: FamilySpec) -> dict:
    n = family.ambient_dim
    count = enumgeo.line_count(family.degrees, n)
    classes = []
    for d in family.degrees:
        cls = enumgeo.lines_incidence_class(d, n + 1)
        classes.append(
            {
                "degree": d,
                "schubert": {f"sigma_{a},{b}": c for (a, b), c in cls.coeffs},
                "incidence_cycles": {
                    "Omega_{%d,%d}" % enumgeo.sigma_to_omega(a, b, n): c
                    for (a, b), c in cls.coeffs
                },
            }
        )
    return {"family": family.label, "ambient": f"P^{n}", "line_count": _int(count),
            "incidence_classes": classes}


def cmd_euler() -> dict:
    c = enumgeo.census()
    chi_v = enumgeo.ci_euler((3, 3), 5)
    return {
        "chi_family": _int(chi_v),
        "chi_fixed_curve": _int(enumgeo.ci_euler((3, 3), 3)),
        "orbifold_chi": _int(c.orbifold_chi),
        "mirror_test": c.orbifold_chi == -chi_v,
        "census": {
            "curve_elements": c.curve_elements,
            "six_point_elements": c.six_point_elements,
            "eighteen_point_elements": c.eighteen_point_elements,
            "empty_elements": c.empty_elements,
            "point_element_units": c.point_element_units,
            "zero_dim_chi_total": c.zero_dim_chi,
            "zero_dim_orbit_total": c.zero_dim_orbits,
        },
        "identity_quotient_term": _int(c.identity_term),
    }


def _emit(report: dict, args, fmt_csv_rows=None) -> None:
    out_path = args.out
    if out_path and not os.path.isabs(out_path):
        out_dir = os.environ.get("CYMIRROR_OUT_DIR")
        if out_dir:
            out_path = os.path.join(out_dir, out_path)
    if getattr(args, "format", "json") == "csv":
        if fmt_csv_rows is None:
            raise ValueError("csv format is only available for the yukawa instanton table")
        text = "\n".join(",".join(str(x) for x in row) for row in fmt_csv_rows) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cymirror",
        description="Exact computations for complete-intersection Calabi-Yau families",
    )
    parser.add_argument("--version", action="version", version=f"cymirror {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_pf = sub.add_parser("pf", help="recover the relation and the differential operator")
    p_pf.add_argument("--primes", default=f"{VETTED_PRIMES[0]},{VETTED_PRIMES[1]}",
                      help="comma-separated primes from the vetted list (>= 2)")
    p_pf.add_argument("--lambda-count", type=int, default=4,
                      help="parameter samples per prime (>= 4; fitted plus held-out checks)")
    p_pf.add_argument("--seed", type=int, default=0)

    p_yuk = sub.add_parser("yukawa", help="coupling series and curve counts")
    p_yuk.add_argument("--family", help="preset label, e.g. 3,3 or quintic")
    p_yuk.add_argument("--degrees", help="custom degrees, e.g. 2,2,3")
    p_yuk.add_argument("--d-max", type=int, default=10)

    p_lines = sub.add_parser("lines", help="Schubert-calculus line count")
    p_lines.add_argument("--family", help="preset label")
    p_lines.add_argument("--degrees", help="custom degrees")

    sub.add_parser("euler", help="Euler characteristics and the orbifold census")

    for p in (p_pf, p_yuk, p_lines, sub.choices["euler"]):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--with-timing", action="store_true",
                       help="include wall-clock timing in the report (breaks byte determinism)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        csv_rows = None
        if args.command == "pf":
            primes = [int(p) for p in args.primes.split(",") if p.strip()]
            if len(primes) < 2:
                raise ValueError("pf needs at least 2 primes")
            if args.lambda_count < 4:
                raise ValueError("pf needs at least 4 lambda samples per prime")
            outputs = cmd_pf(primes, args.lambda_count, args.seed)
            inputs = {"primes": primes, "lambda_count": args.lambda_count, "seed": args.seed}
        elif args.command == "yukawa":
            family = FamilySpec.from_args(args.family, args.degrees)
            if args.d_max < 1:
                raise ValueError("--d-max must be >= 1")
            outputs = cmd_yukawa(family, args.d_max)
            inputs = {"family": family.label, "d_max": args.d_max}
            csv_rows = [("degree", "count")] + [
                (d, outputs["instanton_numbers"][str(d)]) for d in range(1, args.d_max + 1)
            ]
        elif args.command == "lines":
            family = FamilySpec.from_args(args.family, args.degrees)
            outputs = cmd_lines(family)
            inputs = {"family": family.label}
        else:
            outputs = cmd_euler()
            inputs = {}
        elapsed = time.perf_counter() - started
        report = {"command": args.command, "inputs": inputs, "outputs": outputs}
        if args.with_timing:
            report["timing_seconds"] = round(elapsed, 3)
        print(f"[cymirror] {args.command} finished in {elapsed:.2f}s", file=sys.stderr)
        _emit(report, args, csv_rows)
        return 0
    except Exception as exc:  # surface every failure as a machine-readable object
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(json.dumps(error, indent=2, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

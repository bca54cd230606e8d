#!/usr/bin/env python3
"""
Factoriality toolkit for threefolds in P^4 with ordinary multiple points.
Command-line entry point.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from algebra.parsing import parse_polynomial, read_poly_file, write_poly_file
from constructions.families import (
    ConstructionResult,
    cone_over_surface,
    example52,
    fermat_form,
    kollar_quartic,
    prop61,
)
from criteria.engine import decide_with_nodes, strict_transform_class
from criteria.verdict import BlowupClass, MultiplicityProfile, Position
from invariants.defect import coplanar, defect
from invariants.intersection import intersection_number, verify_sign_convention
from singularity.analyzer import HypersurfaceSpec, analyze_two_primes
from utils.config import RunConfig, load_config
from utils.errors import InputError, ToolkitError
from utils.logging_setup import setup_logging
from utils.points import read_points_file
from utils.reports import (
    format_analysis_report,
    format_construction_report,
    format_defect_report,
    format_intersection_report,
    format_verdict_report,
    render,
)

logger = logging.getLogger(__name__)

FAMILIES = ("example52", "prop61", "kollar", "cone")


def parse_int_list(text: Optional[str]) -> List[int]:
    """'2,2,3' -> [2, 2, 3]; empty text is the empty list."""
    if text is None or not text.strip():
        return []
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise InputError(f"Expected a comma-separated list of integers, got {text!r}") from e


class Toolkit:
    """Dispatches one subcommand under a validated run configuration."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.handlers = {
            "check": self.cmd_check,
            "analyze": self.cmd_analyze,
            "construct": self.cmd_construct,
            "defect": self.cmd_defect,
            "intersect": self.cmd_intersect,
        }

    def run(self, args: argparse.Namespace) -> str:
        """Run the configured command and return its rendered report."""
        verify_sign_convention()
        handler = self.handlers[self.config.command]
        logger.debug(f"Running {self.config.command} with {self.config}")
        return handler(args)

    def _render(self, data: Dict[str, Any], formatter) -> str:
        return render(data, self.config.output_format, formatter)

    def cmd_check(self, args: argparse.Namespace) -> str:
        profile = MultiplicityProfile(args.d, tuple(parse_int_list(args.mults)), Position.parse(args.position), args.n)
        points = read_points_file(args.points) if args.points else None
        verdict = decide_with_nodes(profile, points)
        data = verdict.to_dict()
        data["profile"] = profile.to_dict()
        cls = strict_transform_class(profile)
        data["strict_transform"] = cls.to_dict()
        data["self_intersection"] = intersection_number(cls)
        return self._render(data, format_verdict_report)

    def cmd_analyze(self, args: argparse.Namespace) -> str:
        f = read_poly_file(args.file)
        if f.nvars != 5:
            raise InputError(f"analyze expects a hypersurface of P^4 (5 variables), got {f.nvars}")
        spec = HypersurfaceSpec.from_polynomial(f)
        result = analyze_two_primes(spec, self.config)
        data = result.to_dict()
        data["file"] = args.file
        return self._render(data, format_analysis_report)

    def _surface_form(self, text: str):
        if text.startswith("fermat"):
            try:
                degree = int(text[len("fermat"):])
            except ValueError as e:
                raise InputError(f"Unknown surface {text!r}; use fermat<d> or a form in x0..x3") from e
            return fermat_form(4, degree)
        return parse_polynomial(text, 4)

    def _build(self, args: argparse.Namespace) -> ConstructionResult:
        family = args.family
        if family == "example52":
            if args.d is None or args.m is None:
                raise InputError("example52 needs --d and --m")
            f_m = self._surface_form(args.g) if args.g else None
            return example52(args.d, args.m, f_m, self.config)
        if family == "prop61":
            if args.t is None or args.delta is None:
                raise InputError("prop61 needs --t and --delta")
            return prop61(args.t, args.delta, self.config)
        if family == "kollar":
            return kollar_quartic(self.config)
        if not args.g:
            raise InputError("cone needs --g")
        return cone_over_surface(self._surface_form(args.g), args.pic_z, self.config)

    def cmd_construct(self, args: argparse.Namespace) -> str:
        result = self._build(args)
        poly_path = Path(args.out) if args.out else Path(f"{args.family}.poly")
        sidecar_path = poly_path.with_suffix(".json")
        sidecar = result.to_dict()
        write_poly_file(str(poly_path), result.spec.f)
        sidecar_path.write_text(render(sidecar, "json", format_construction_report) + "\n")
        logger.info(f"Wrote {poly_path} and {sidecar_path}")

        data = dict(sidecar)
        data["poly_file"] = str(poly_path)
        data["sidecar_file"] = str(sidecar_path)
        return self._render(data, format_construction_report)

    def cmd_defect(self, args: argparse.Namespace) -> str:
        points = read_points_file(args.file)
        report = defect(points, args.d)
        data = report.to_dict()
        if points and points[0].nvars == 5:
            data["coplanar"] = coplanar(points)
        return self._render(data, format_defect_report)

    def cmd_intersect(self, args: argparse.Namespace) -> str:
        cls = BlowupClass(args.n, args.a, tuple(parse_int_list(args.bs)))
        data = {"n": cls.n, "a": cls.a, "bs": list(cls.bs), "intersection_number": intersection_number(cls)}
        return self._render(data, format_intersection_report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Factoriality criteria, singularity analysis and constructions for threefolds in P^4'
    )
    parser.add_argument('--config', type=str, default='config.yaml',
                        help='Path to configuration file (default: config.yaml)')
    parser.add_argument('--format', dest='output_format', choices=('text', 'json'),
                        help='Output format')
    parser.add_argument('--prime', type=int, help='Working prime')
    parser.add_argument('--prime2', dest='second_prime', type=int, help='Second prime for the agreement check')
    parser.add_argument('--emax', dest='e_max', type=int, help='Largest extension degree to enumerate')
    parser.add_argument('--seed', type=int, help='Seed for general coefficients')
    parser.add_argument('--groebner-budget', dest='groebner_budget', type=int,
                        help='Reduction step budget for Groebner computations')
    parser.add_argument('--retries', type=int, help='Re-draws allowed per construction')
    parser.add_argument('--strict-primes', dest='strict_primes', action='store_true', default=None,
                        help='Fail when the two primes disagree')
    parser.add_argument('--log-level', dest='log_level', type=str.upper,
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), help='Logging level')

    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='Apply the factoriality criteria to a multiplicity profile')
    check.add_argument('--d', type=int, required=True, help='Degree')
    check.add_argument('--mults', type=str, default='', help='Comma-separated multiplicities')
    check.add_argument('--position', type=str, default='unknown', help='general, plane or unknown')
    check.add_argument('--n', type=int, default=4, help='Ambient dimension (default: 4)')
    check.add_argument('--points', type=str, help='Points file with the node coordinates')

    analyze = commands.add_parser('analyze', help='Find and classify the singular points of a .poly file')
    analyze.add_argument('file', type=str)

    construct = commands.add_parser('construct', help='Build a hypersurface with prescribed singularities')
    construct.add_argument('family', choices=FAMILIES)
    construct.add_argument('--d', type=int)
    construct.add_argument('--m', type=int)
    construct.add_argument('--t', type=int)
    construct.add_argument('--delta', type=int)
    construct.add_argument('--g', type=str, help='fermat<d> or a form in x0..x3')
    construct.add_argument('--pic-z', dest='pic_z', action='store_true',
                           help='Assert Pic V(g) = Z for the cone')
    construct.add_argument('--out', type=str, help='Output .poly path (sidecar gets .json)')

    defect_cmd = commands.add_parser('defect', help='Defect and b4 of a set of nodes')
    defect_cmd.add_argument('file', type=str)
    defect_cmd.add_argument('--d', type=int, required=True)

    intersect = commands.add_parser('intersect', help='Top self-intersection of aH - sum b_i E_i')
    intersect.add_argument('--a', type=int, required=True)
    intersect.add_argument('--bs', type=str, default='')
    intersect.add_argument('--n', type=int, default=4)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = RunConfig.from_config(load_config(args.config)).with_overrides(
            command=args.command,
            output_format=args.output_format,
            prime=args.prime,
            second_prime=args.second_prime,
            e_max=args.e_max,
            seed=args.seed,
            groebner_budget=args.groebner_budget,
            retries=args.retries,
            strict_primes=args.strict_primes,
            log_level=args.log_level,
        )
        setup_logging(config.log_level, config.log_file)
        print(Toolkit(config).run(args))
    except ToolkitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main())

# -*- coding: utf-8 -*-
"""
Command-line front end.

Exit codes: 0 ok, 1 artifact failure or failed selftest, 2 configuration error,
3 numerical failure, 4 statistical floor violated.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .config import RunConfig, Subcommand
from .core import CompositionLab
from .exceptions import (
    CompositionLabError,
    ConfigurationError,
    DomainError,
    NumericalError,
    SolverUnavailableError,
    StatisticalFloorError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_FLOOR = 4


def exit_code(error: CompositionLabError) -> int:
    """Exit status for a library error."""
    if isinstance(error, (ConfigurationError, SolverUnavailableError, DomainError)):
        return EXIT_CONFIG
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(error, StatisticalFloorError):
        return EXIT_FLOOR
    return EXIT_FAILURE


def _floats(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _count(text: str) -> int:
    """Positive integer, also written as 1e5."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a count, got '{text}'")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected a whole number, got '{text}'")
    return int(value)


def _options(parser: argparse.ArgumentParser, *names: str) -> None:
    """Add the named shared options; unset options stay out of the namespace."""
    spec = {
        "symbol": (("--symbol",), dict(help="symbol spec JSON file")),
        "psi": (("--psi",), dict(help="Orlicz spec JSON file")),
        "samples": (("--samples",), dict(type=_count, help="pull-back sample size M, a power of two")),
        "paths": (("--paths",), dict(type=_count, help="walk-on-spheres paths")),
        "depth": (("--depth",), dict(type=int, help="slow Blaschke depth or integral depth")),
        "h_grid": (("--h", "--h-list", "--h-grid"), dict(dest="h_grid", help="h list or geometric:start:ratio:count")),
        "p": (("--p",), dict(type=_floats, help="Schatten exponents, comma-separated")),
        "level": (("--nmax", "--n"), dict(dest="level", type=int, help="deepest level")),
        "levels": (("--n",), dict(dest="levels", help="calibration levels 1..n_max")),
        "domain": (("--domain",), dict(help="disk, cut_disk, slit_disk, half_plane, regionR, omega_n or omega")),
        "a": (("--a",), dict(help="start point, e.g. 0.5+3.0i")),
        "target": (("--target",), dict(help="exit label to estimate")),
        "eps_scheme": (("--eps-scheme",), dict(dest="eps_scheme", choices=["exp", "psi", "fixed"])),
        "eps": (("--eps",), dict(type=float, help="constant ε, implies --eps-scheme fixed")),
        "tol": (("--tol",), dict(type=float, help="walk absorption tolerance")),
        "grid": (("--grid",), dict(type=int, help="grid size")),
        "barriers": (("--barriers",), dict(help="calibrate output JSON")),
        "pdf": (("--pdf",), dict(help="also render the report to this PDF")),
    }
    for name in names:
        flags, kwargs = spec[name]
        parser.add_argument(*flags, default=argparse.SUPPRESS, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="RunConfig JSON; flags override it")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output file (directory for selftest)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="threads; results do not depend on it")
    common.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    parser = argparse.ArgumentParser(prog="composition-lab", description="Composition operators on Orlicz-Hardy spaces")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(command: Subcommand, *names: str, help_text: str) -> None:
        _options(sub.add_parser(command.value, parents=[common], help=help_text), *names)

    add(Subcommand.BUILD_BLASCHKE, "psi", "depth", help_text="build a slow Blaschke product spec")
    add(Subcommand.RHO, "symbol", "h_grid", "samples", help_text="ρ_φ(h) over an h sweep (CSV)")
    add(Subcommand.LUECKING, "symbol", "p", "level", "samples", help_text="Luecking window sums (CSV)")
    add(Subcommand.LUECKING_A, "symbol", "p", "depth", help_text="Luecking area integrals (CSV)")
    add(Subcommand.NEVANLINNA, "symbol", "grid", help_text="Nevanlinna counting function on a grid (CSV)")
    add(Subcommand.CLOSED_RANGE, "symbol", "h_grid", "samples", help_text="closed-range test (JSON)")
    add(Subcommand.HARMONIC, "domain", "level", "a", "paths", "target", "tol", "barriers",
        help_text="harmonic measure by walk-on-spheres (JSON)")
    add(Subcommand.CALIBRATE, "levels", "eps_scheme", "eps", "psi", "a", "paths", "tol",
        help_text="calibrate barrier holes (JSON)")
    add(Subcommand.RHO_BOUND, "barriers", "h_grid", "levels", "eps_scheme", "eps", "psi", "a", "paths", "tol",
        help_text="bound ρ_φ(h) by calibrated ε_n (JSON)")
    add(Subcommand.REPORT, "symbol", "psi", "h_grid", "samples", "p", "pdf",
        help_text="full compactness/Schatten report (JSON + CSV)")
    add(Subcommand.SELFTEST, help_text="run the acceptance suite")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Merge a --config file with the given flags into a RunConfig.

    Raises:
        ConfigurationError: If the file cannot be read or the result is invalid
    """
    values = vars(args).copy()
    values.pop("log_level", None)
    merged = {}
    path = values.pop("config", None)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as handle:
                merged = json.load(handle)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Failed to read config '{path}': {str(e)}") from e
        if not isinstance(merged, dict):
            raise ConfigurationError(f"config '{path}' must hold a JSON object")
    merged.update(values)
    if "eps" in values and "eps_scheme" not in values:
        merged["eps_scheme"] = "fixed"
    if merged.get("subcommand") == Subcommand.SELFTEST.value:
        merged.setdefault("out", "selftest")
        merged.setdefault("seed", 7)
    if "out" not in merged:
        raise ConfigurationError("--out is required")
    return RunConfig.from_dict(merged)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the composition-lab command.

    Returns:
        int: Exit status
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(args)
        result = CompositionLab(config).run()
    except CompositionLabError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return exit_code(e)
    except OSError as e:
        logger.error("I/O failure: %s", e)
        return EXIT_FAILURE

    if config.subcommand is Subcommand.REPORT:
        print(result["headline"])
    if config.subcommand is Subcommand.SELFTEST:
        failed = [r["id"] for r in result["records"] if not r["passed"]]
        print(f"selftest: {len(result['records']) - len(failed)} passed, {len(failed)} failed")
        return EXIT_OK if not failed else EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

# -*- coding: utf-8 -*-
"""
Run configuration with Builder pattern, and parsers for symbol and Orlicz specs.
"""

import json
import os
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from .exceptions import ConfigurationError
from .orlicz import OrliczFunction, delta_from_psi, load_orlicz_table, make_orlicz


class Subcommand(Enum):
    """CLI subcommands."""
    BUILD_BLASCHKE = "build-blaschke"
    RHO = "rho"
    LUECKING = "luecking"
    LUECKING_A = "luecking-a"
    NEVANLINNA = "nevanlinna"
    CLOSED_RANGE = "closed-range"
    HARMONIC = "harmonic"
    CALIBRATE = "calibrate"
    RHO_BOUND = "rho-bound"
    REPORT = "report"
    SELFTEST = "selftest"


def parse_h_grid(text: str) -> List[float]:
    """
    Parse "geometric:start:ratio:count" or a comma-separated list of sizes.

    Raises:
        ConfigurationError: If the text is malformed
    """
    try:
        if text.startswith("geometric:"):
            _, start, ratio, count = text.split(":")
            start, ratio, count = float(start), float(ratio), int(count)
            if not 0 < start < 1 or ratio <= 1 or count < 1:
                raise ValueError("need 0 < start < 1, ratio > 1, count >= 1")
            return [start / ratio ** k for k in range(count)]
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigurationError(f"Malformed h grid '{text}': {str(e)}") from e
    if not values:
        raise ConfigurationError(f"Malformed h grid '{text}': no values")
    return values


def parse_complex(text: Union[str, complex, Sequence[float]]) -> complex:
    """Parse "0.5+3.0i", a Python complex, or a [re, im] pair."""
    if isinstance(text, complex):
        return text
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise ConfigurationError(f"complex pair must have 2 entries, got {text}")
        return complex(float(text[0]), float(text[1]))
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError as e:
        raise ConfigurationError(f"Malformed complex number '{text}'") from e


def parse_range(text: Union[str, int]) -> Tuple[int, int]:
    """Parse "1..8" or a single level "3"."""
    try:
        if isinstance(text, int):
            return text, text
        if ".." in text:
            low, high = text.split("..")
            low, high = int(low), int(high)
        else:
            low = high = int(text)
    except ValueError as e:
        raise ConfigurationError(f"Malformed level range '{text}'") from e
    if not 1 <= low <= high:
        raise ConfigurationError(f"Level range must satisfy 1 <= low <= high, got {text}")
    return low, high


def _read_json(source: Union[str, dict], what: str) -> Tuple[dict, Optional[str]]:
    if isinstance(source, dict):
        return source, None
    if not os.path.exists(source):
        raise ConfigurationError(f"{what} file does not exist: {source}")
    try:
        with open(source, encoding="utf-8") as handle:
            return json.load(handle), source
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"Failed to read {what} '{source}': {str(e)}") from e


def _check_keys(data: dict, allowed: set, what: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigurationError(f"Unknown {what} keys: {sorted(unknown)}")


def load_orlicz_spec(source: Union[str, dict]) -> OrliczFunction:
    """
    Build an Orlicz function from its JSON spec or a path to one.

    Specs: {"family": "power", "p": 2}, {"family": "exp", "a": 1},
    {"family": "table", "path": "psi.csv"} or {"family": "table", "x": [...], "y": [...]}.

    Raises:
        ConfigurationError: If the spec is malformed or has unknown keys
    """
    data, _ = _read_json(source, "Orlicz spec")
    family = data.get("family")
    if family == "power":
        _check_keys(data, {"family", "p"}, "Orlicz spec")
        return make_orlicz("power", _number(data, "p"))
    if family == "exp":
        _check_keys(data, {"family", "a"}, "Orlicz spec")
        return make_orlicz("exp", _number(data, "a"))
    if family == "table":
        _check_keys(data, {"family", "path", "x", "y"}, "Orlicz spec")
        if "path" in data:
            return load_orlicz_table(data["path"])
        if "x" not in data or "y" not in data:
            raise ConfigurationError("table Orlicz spec needs 'path' or both 'x' and 'y'")
        return make_orlicz("table", table=(data["x"], data["y"]))
    raise ConfigurationError(f"Unknown Orlicz family: {family!r}")


def _number(data: dict, key: str) -> float:
    try:
        return float(data[key])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"'{key}' is required and must be a number") from e


def load_symbol_spec(source: Union[str, dict]):
    """
    Build a symbol from its JSON spec or a path to one.

    Specs: {"kind": "identity"}, {"kind": "scaling", "s": 0.5}, {"kind": "monomial", "k": 2},
    {"kind": "lft", "a": [re, im], ...}, {"kind": "blaschke", "factors": [{"p", "r"}], "rotation"},
    {"kind": "slow", "spec": path-or-dict} or {"kind": "slow", "psi": {...}, "depth": 10},
    {"kind": "punctured"}, {"kind": "squared_automorphism", "base": {...}, "alpha": [re, im]}.

    Returns:
        SymbolMap

    Raises:
        ConfigurationError: If the spec is malformed or has unknown keys
    """
    from .blaschke import EquidistributedFactor, SlowBlaschkeSpec, build_slow_blaschke
    from .symbols import (
        FiniteBlaschkeSymbol,
        IdentitySymbol,
        LinearFractionalSymbol,
        MonomialSymbol,
        PuncturedDiskSymbol,
        ScalingSymbol,
        SlowBlaschkeSymbol,
        SquaredAutomorphismSymbol,
    )

    data, _ = _read_json(source, "symbol spec")
    kind = data.get("kind")
    try:
        if kind == "identity":
            _check_keys(data, {"kind"}, "symbol spec")
            return IdentitySymbol()
        if kind == "punctured":
            _check_keys(data, {"kind"}, "symbol spec")
            return PuncturedDiskSymbol()
        if kind == "scaling":
            _check_keys(data, {"kind", "s"}, "symbol spec")
            return ScalingSymbol(_number(data, "s"))
        if kind == "monomial":
            _check_keys(data, {"kind", "k"}, "symbol spec")
            return MonomialSymbol(int(data["k"]))
        if kind == "lft":
            _check_keys(data, {"kind", "a", "b", "c", "d"}, "symbol spec")
            return LinearFractionalSymbol(*(parse_complex(data[name]) for name in "abcd"))
        if kind == "blaschke":
            _check_keys(data, {"kind", "factors", "rotation"}, "symbol spec")
            factors = []
            for item in data["factors"]:
                _check_keys(item, {"p", "r"}, "factor")
                factors.append(EquidistributedFactor(int(item["p"]), float(item["r"])))
            return FiniteBlaschkeSymbol(factors, float(data.get("rotation", 0.0)))
        if kind == "slow":
            _check_keys(data, {"kind", "spec", "psi", "depth"}, "symbol spec")
            if "spec" in data:
                spec_data, path = _read_json(data["spec"], "slow Blaschke spec")
                return SlowBlaschkeSymbol(SlowBlaschkeSpec.from_dict(spec_data), source=path)
            if "psi" not in data:
                raise ConfigurationError("slow symbol spec needs 'spec' or 'psi'")
            delta = delta_from_psi(load_orlicz_spec(data["psi"]))
            return SlowBlaschkeSymbol(build_slow_blaschke(delta, int(data.get("depth", 10))))
        if kind == "squared_automorphism":
            _check_keys(data, {"kind", "base", "alpha"}, "symbol spec")
            return SquaredAutomorphismSymbol(load_symbol_spec(data["base"]), parse_complex(data["alpha"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"Malformed {kind} symbol spec: {str(e)}") from e
    raise ConfigurationError(f"Unknown symbol kind: {kind!r}")


class RunConfig:
    """
    Configuration of one CLI run.

    Every run is reproducible from (RunConfig, seed). All parameters are validated
    during initialization.
    """

    def __init__(
        self,
        subcommand: Union[str, Subcommand],
        out: str,
        symbol: Optional[Union[str, dict]] = None,
        psi: Optional[Union[str, dict]] = None,
        samples: int = 2 ** 14,
        paths: int = 10 ** 5,
        depth: int = 24,
        h_grid: str = "geometric:0.25:2:8",
        p: Sequence[float] = (2.0,),
        seed: int = 0,
        level: int = 6,
        levels: str = "1..4",
        domain: str = "disk",
        a: Optional[str] = None,
        target: Optional[str] = None,
        eps_scheme: str = "exp",
        eps: Optional[float] = None,
        tol: float = 1e-4,
        workers: int = 1,
        grid: int = 64,
        barriers: Optional[str] = None,
        pdf: Optional[str] = None,
    ):
        """
        Initialize run configuration.

        Args:
            subcommand: Subcommand to run
            out (str): Output file (a directory for selftest)
            symbol: Symbol spec or path to one
            psi: Orlicz spec or path to one
            samples (int): M for pull-back samples, a power of two >= 2^10
            paths (int): Walks for harmonic-measure estimates
            depth (int): Slow Blaschke depth M, or Luecking integral depth
            h_grid (str): "geometric:start:ratio:count" or a comma-separated list
            p (list): Schatten exponents
            seed (int): Seed
            level (int): Luecking level n, or the Ω_n index for harmonic
            levels (str): Calibration levels "1..n_max"
            domain (str): disk, cut_disk, slit_disk, half_plane, regionR, omega_n or omega
            a (str, optional): Start point, e.g. "0.5+3.0i"; defaults per domain
            target (str, optional): Exit label for harmonic
            eps_scheme (str): exp, psi or fixed
            eps (float, optional): ε for the fixed scheme
            tol (float): Walk absorption tolerance
            workers (int): Threads; results do not depend on it
            grid (int): Grid size for nevanlinna
            barriers (str, optional): Calibrated barrier JSON for rho-bound and omega domains
            pdf (str, optional): PDF path for report

        Raises:
            ConfigurationError: If required parameters are missing or invalid
        """
        self._validate_required_params(subcommand, out, samples, paths, seed, workers)
        self.subcommand = Subcommand(subcommand)
        self.out = out.strip()
        self.symbol = symbol
        self.psi = psi
        self.samples = int(samples)
        self.paths = int(paths)
        self.depth = int(depth)
        self.h_grid = h_grid
        self.p = [float(x) for x in p]
        self.seed = int(seed)
        self.level = int(level)
        self.levels = levels
        self.domain = domain
        self.a = a
        self.target = target
        self.eps_scheme = eps_scheme
        self.eps = eps
        self.tol = float(tol)
        self.workers = int(workers)
        self.grid = int(grid)
        self.barriers = barriers
        self.pdf = pdf
        self.validate()

    def _validate_required_params(self, subcommand, out, samples, paths, seed, workers) -> None:
        """Validate all required parameters."""
        try:
            Subcommand(subcommand)
        except ValueError:
            raise ConfigurationError(f"Unknown subcommand: {subcommand!r}")
        if not out or not isinstance(out, str):
            raise ConfigurationError("out is required and must be a string")
        for name, value in (("samples", samples), ("paths", paths), ("workers", workers)):
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ConfigurationError(f"{name} must be a positive integer")
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigurationError("seed must be a non-negative integer")

    def validate(self) -> None:
        """
        Validate the configuration parameters.

        Raises:
            ConfigurationError: If any parameter is invalid
        """
        needs_symbol = {Subcommand.RHO, Subcommand.LUECKING, Subcommand.LUECKING_A, Subcommand.NEVANLINNA,
                        Subcommand.CLOSED_RANGE, Subcommand.REPORT}
        if self.subcommand in needs_symbol and self.symbol is None:
            raise ConfigurationError(f"{self.subcommand.value} needs a symbol spec")
        needs_psi = {Subcommand.BUILD_BLASCHKE, Subcommand.REPORT}
        if self.subcommand in needs_psi and self.psi is None:
            raise ConfigurationError(f"{self.subcommand.value} needs an Orlicz spec")
        if self.samples & (self.samples - 1):
            raise ConfigurationError(f"samples must be a power of two, got {self.samples}")
        if not self.p or any(x <= 0 for x in self.p):
            raise ConfigurationError("Schatten exponents must be positive")
        parse_h_grid(self.h_grid)
        parse_range(self.levels)
        if self.a is not None:
            parse_complex(self.a)
        if self.eps_scheme not in ("exp", "psi", "fixed"):
            raise ConfigurationError(f"Unknown ε scheme: {self.eps_scheme!r}")

    @property
    def hs(self) -> List[float]:
        return parse_h_grid(self.h_grid)

    def to_dict(self) -> dict:
        """
        Convert configuration to dictionary.

        Returns:
            dict: Configuration as dictionary, JSON-ready
        """
        return {
            "subcommand": self.subcommand.value,
            "out": self.out,
            "symbol": self.symbol,
            "psi": self.psi,
            "samples": self.samples,
            "paths": self.paths,
            "depth": self.depth,
            "h_grid": self.h_grid,
            "p": list(self.p),
            "seed": self.seed,
            "level": self.level,
            "levels": self.levels,
            "domain": self.domain,
            "a": self.a,
            "target": self.target,
            "eps_scheme": self.eps_scheme,
            "eps": self.eps,
            "tol": self.tol,
            "workers": self.workers,
            "grid": self.grid,
            "barriers": self.barriers,
            "pdf": self.pdf,
        }

    @classmethod
    def from_dict(cls, config_dict: dict) -> 'RunConfig':
        """
        Create RunConfig from dictionary; unknown keys are rejected.

        Args:
            config_dict (dict): Configuration dictionary

        Returns:
            RunConfig: New configuration instance

        Raises:
            ConfigurationError: On unknown or missing keys
        """
        allowed = set(cls(subcommand="selftest", out=".").to_dict())
        _check_keys(config_dict, allowed, "config")
        if "subcommand" not in config_dict or "out" not in config_dict:
            raise ConfigurationError("config needs 'subcommand' and 'out'")
        return cls(**config_dict)


class RunConfigBuilder:
    """
    Builder pattern for creating RunConfig instances.

    Provides a fluent interface for setting configuration parameters.
    """

    def __init__(self):
        """Initialize builder with no values."""
        self._values: dict = {}

    def _set(self, key: str, value) -> 'RunConfigBuilder':
        self._values[key] = value
        return self

    def subcommand(self, name: Union[str, Subcommand]) -> 'RunConfigBuilder':
        """
        Set the subcommand.

        Args:
            name: Subcommand or its CLI name

        Returns:
            RunConfigBuilder: Self for chaining
        """
        return self._set("subcommand", Subcommand(name).value if isinstance(name, Subcommand) else name)

    def out(self, path: str) -> 'RunConfigBuilder':
        """Set the output path."""
        return self._set("out", path)

    def symbol(self, spec: Union[str, dict]) -> 'RunConfigBuilder':
        """Set the symbol spec or its path."""
        return self._set("symbol", spec)

    def psi(self, spec: Union[str, dict]) -> 'RunConfigBuilder':
        """Set the Orlicz spec or its path."""
        return self._set("psi", spec)

    def samples(self, count: int) -> 'RunConfigBuilder':
        return self._set("samples", count)

    def paths(self, count: int) -> 'RunConfigBuilder':
        return self._set("paths", count)

    def depth(self, depth: int) -> 'RunConfigBuilder':
        return self._set("depth", depth)

    def h_grid(self, grid: str) -> 'RunConfigBuilder':
        return self._set("h_grid", grid)

    def p(self, values: Sequence[float]) -> 'RunConfigBuilder':
        return self._set("p", list(values))

    def seed(self, seed: int) -> 'RunConfigBuilder':
        return self._set("seed", seed)

    def option(self, key: str, value) -> 'RunConfigBuilder':
        """
        Set any other RunConfig parameter by name.

        Args:
            key (str): Parameter name
            value: Parameter value

        Returns:
            RunConfigBuilder: Self for chaining
        """
        return self._set(key, value)

    def build(self) -> RunConfig:
        """
        Build the RunConfig instance.

        Returns:
            RunConfig: Configured run

        Raises:
            ConfigurationError: If required parameters are missing
        """
        required_fields = {
            "subcommand": "Subcommand is required. Use .subcommand(name)",
            "out": "Output path is required. Use .out(path)",
        }
        for key, message in required_fields.items():
            if self._values.get(key) is None:
                raise ConfigurationError(message)
        return RunConfig.from_dict(self._values)

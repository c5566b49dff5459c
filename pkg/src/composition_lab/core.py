# -*- coding: utf-8 -*-
"""
Main CompositionLab class - runs one configured subcommand and writes its artifacts.
"""

import json
import logging
import os
import time
from typing import Dict, List, Optional

from .blaschke import build_slow_blaschke
from .carleson import build_pullback, closed_range_test, luecking_sum, rho_table
from .compactness import build_report
from .config import (
    RunConfig,
    RunConfigBuilder,
    Subcommand,
    load_orlicz_spec,
    load_symbol_spec,
    parse_complex,
    parse_range,
)
from .domains import (
    PlanarDomain,
    cut_disk_domain,
    disk_domain,
    half_plane_domain,
    max_hole_width,
    omega_domain,
    omega_n_domain,
    region_r_domain,
    slit_disk_domain,
)
from .exceptions import ArtifactError, CompositionLabError, ConfigurationError
from .harmonic import (
    DEFAULT_START,
    BarrierRun,
    brownian_exits,
    calibrate_barriers,
    check_termination,
    nominal_barriers,
    rho_bound_report,
)
from .internal.acceptance import SelftestSettings, run_selftest
from .internal.pdf_report import render_report_pdf
from .internal.serialization import write_csv, write_json, write_manifest
from .nevanlinna import counting_grid, luecking_integral
from .orlicz import delta_from_psi

logger = logging.getLogger(__name__)

# default start point per domain
DOMAINS = {
    "disk": 0j,
    "cut_disk": 0j,
    "slit_disk": 0j,
    "half_plane": complex(1.0, 0.0),
    "regionR": DEFAULT_START,
    "omega_n": DEFAULT_START,
    "omega": DEFAULT_START,
}
SELFTEST_FILE = "selftest.json"


class CompositionLab:
    """
    Runs one subcommand of a RunConfig.

    Each run writes its outputs and a manifest "<out>.manifest.json" (for selftest,
    "manifest.json" inside the output directory) listing every output with its SHA-256.
    """

    @staticmethod
    def builder() -> RunConfigBuilder:
        """
        Create a new RunConfigBuilder for fluent configuration.

        Returns:
            RunConfigBuilder: Builder instance for creating configuration
        """
        return RunConfigBuilder()

    def __init__(self, config: RunConfig):
        """
        Initialize the runner.

        Args:
            config (RunConfig): Run configuration

        Raises:
            ConfigurationError: If config is not a RunConfig
        """
        if not isinstance(config, RunConfig):
            raise ConfigurationError("config must be an instance of RunConfig")
        self.config = config
        self.outputs: List[str] = []
        self.result: Optional[dict] = None

    def run(self) -> dict:
        """
        Run the configured subcommand.

        Returns:
            dict: The subcommand's JSON-ready result

        Raises:
            CompositionLabError: Any library error, unchanged, so callers can map it
            ArtifactError: If an unexpected I/O failure occurs while writing outputs
        """
        started = time.perf_counter()
        handler = getattr(self, "_run_" + self.config.subcommand.value.replace("-", "_"))
        try:
            self.result = handler()
        except CompositionLabError:
            raise
        except OSError as e:
            raise ArtifactError(f"Failed to write outputs of {self.config.subcommand.value}: {str(e)}")
        wall_time = time.perf_counter() - started
        write_manifest(self.manifest_path, self.config.to_dict(), self.config.seed, self.outputs, wall_time)
        logger.info("%s finished in %.2fs, %d outputs", self.config.subcommand.value, wall_time, len(self.outputs))
        return self.result

    @property
    def manifest_path(self) -> str:
        if self.config.subcommand is Subcommand.SELFTEST:
            return os.path.join(self.config.out, "manifest.json")
        return self.config.out + ".manifest.json"

    def _emit_json(self, path: str, payload) -> None:
        write_json(path, payload)
        self.outputs.append(path)

    def _emit_csv(self, path: str, rows: List[dict], columns: List[str]) -> None:
        write_csv(path, rows, columns)
        self.outputs.append(path)

    def _symbol(self):
        return load_symbol_spec(self.config.symbol)

    def _psi(self):
        return load_orlicz_spec(self.config.psi) if self.config.psi is not None else None

    def _sample(self, symbol):
        return build_pullback(symbol, self.config.samples)

    def _barrier_run(self) -> Optional[BarrierRun]:
        if self.config.barriers is None:
            return None
        if not os.path.exists(self.config.barriers):
            raise ConfigurationError(f"barrier file does not exist: {self.config.barriers}")
        try:
            with open(self.config.barriers, encoding="utf-8") as handle:
                return BarrierRun.from_dict(json.load(handle))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Failed to read barrier file: {str(e)}") from e

    # Subcommands

    def _run_build_blaschke(self) -> dict:
        spec = build_slow_blaschke(delta_from_psi(self._psi()), self.config.depth)
        spec.check_invariants()
        payload = spec.to_dict()
        self._emit_json(self.config.out, payload)
        return payload

    def _run_rho(self) -> dict:
        rows = rho_table(self._sample(self._symbol()), self.config.hs)
        self._emit_csv(self.config.out, rows, ["h", "rho", "stderr"])
        return {"rows": rows}

    def _run_luecking(self) -> dict:
        sample = self._sample(self._symbol())
        sums = [luecking_sum(sample, p, self.config.level) for p in self.config.p]
        rows = [
            {"p": s.p, "n": n, "partial_sum": total, "verdict": s.verdict.value}
            for s in sums for n, total in zip(s.levels, s.partial_sums)
        ]
        self._emit_csv(self.config.out, rows, ["p", "n", "partial_sum", "verdict"])
        return {"sums": [s.to_dict() for s in sums]}

    def _run_luecking_a(self) -> dict:
        symbol = self._symbol()
        integrals = [luecking_integral(symbol, p, self.config.depth) for p in self.config.p]
        rows = [
            {"p": i.p, "depth": k, "lambda_form": lam, "proof_form": proof,
             "lambda_verdict": i.lambda_verdict.value, "proof_verdict": i.proof_verdict.value}
            for i in integrals for k, lam, proof in zip(i.depths, i.lambda_form, i.proof_form)
        ]
        self._emit_csv(self.config.out, rows,
                       ["p", "depth", "lambda_form", "proof_form", "lambda_verdict", "proof_verdict"])
        return {"integrals": [i.to_dict() for i in integrals]}

    def _run_nevanlinna(self) -> dict:
        rows = counting_grid(self._symbol(), self.config.grid)
        self._emit_csv(self.config.out, rows, ["x", "y", "N"])
        return {"points": len(rows)}

    def _run_closed_range(self) -> dict:
        symbol = self._symbol()
        result = closed_range_test(self._sample(symbol), self.config.hs)
        payload = dict(result.to_dict(), symbol=symbol.to_dict())
        self._emit_json(self.config.out, payload)
        return payload

    def _start(self, domain: str) -> complex:
        return parse_complex(self.config.a) if self.config.a is not None else DOMAINS.get(domain, 0j)

    def _domain(self) -> PlanarDomain:
        name = self.config.domain
        if name == "disk":
            return disk_domain()
        if name == "cut_disk":
            return cut_disk_domain()
        if name == "slit_disk":
            return slit_disk_domain()
        if name == "half_plane":
            return half_plane_domain()
        if name == "regionR":
            return region_r_domain()
        if name not in ("omega_n", "omega"):
            raise ConfigurationError(f"Unknown domain '{name}', expected one of {sorted(DOMAINS)}")
        run = self._barrier_run()
        n = self.config.level
        barriers = run.barriers if run is not None else nominal_barriers(n)
        if name == "omega":
            return omega_domain(barriers)
        lower = {j: b for j, b in barriers.items() if j < n}
        delta = barriers[n].delta if n in barriers else max_hole_width(n) / 2
        return omega_n_domain(n, delta, lower)

    def _run_harmonic(self) -> dict:
        domain = self._domain()
        a = self._start(self.config.domain)
        batch = brownian_exits(domain, a, self.config.paths, self.config.seed, self.config.tol, self.config.workers)
        check_termination(batch, domain)
        payload: Dict[str, object] = {
            "domain": domain.to_dict(),
            "a": a,
            "paths": batch.paths,
            "seed": self.config.seed,
            "tol": self.config.tol,
            "distribution": batch.distribution(),
            "mean_steps": float(batch.steps.mean()),
        }
        if self.config.target is not None:
            if self.config.target not in domain.labels:
                raise ConfigurationError(f"target '{self.config.target}' is not one of {domain.labels}")
            estimate, stderr = batch.fraction((batch.labels == self.config.target) & ~batch.nonterminating)
            payload["target"] = {"label": self.config.target, "estimate": estimate, "stderr": stderr}
        self._emit_json(self.config.out, payload)
        return payload

    def _calibrate(self) -> BarrierRun:
        low, high = parse_range(self.config.levels)
        if low != 1:
            raise ConfigurationError("calibration levels must start at 1")
        return calibrate_barriers(
            high,
            self.config.eps_scheme,
            self._start("omega_n"),
            self.config.paths,
            self.config.seed,
            psi=self._psi(),
            epsilon=self.config.eps,
            tol=self.config.tol,
            workers=self.config.workers,
        )

    def _run_calibrate(self) -> dict:
        payload = self._calibrate().to_dict()
        self._emit_json(self.config.out, payload)
        return payload

    def _run_rho_bound(self) -> dict:
        run = self._barrier_run() or self._calibrate()
        report = rho_bound_report(run, self.config.hs, chain_paths=self.config.paths,
                                  seed=self.config.seed, tol=self.config.tol)
        payload = dict(report.to_dict(), calibration=run.to_dict())
        self._emit_json(self.config.out, payload)
        return payload

    def _run_report(self) -> dict:
        report = build_report(self._symbol(), self._psi(), self.config.hs, samples=self.config.samples,
                              p_list=self.config.p)
        payload = report.to_dict()
        self._emit_json(self.config.out, payload)
        stem, _ = os.path.splitext(self.config.out)
        self._emit_csv(stem + ".csv", report.csv_rows(), ["h", "rho", "stderr", "delta"])
        if self.config.pdf:
            self.outputs.append(render_report_pdf(report, self.config.pdf))
        return payload

    def _run_selftest(self) -> dict:
        payload = run_selftest(SelftestSettings(seed=self.config.seed))
        self._emit_json(os.path.join(self.config.out, SELFTEST_FILE), payload)
        return payload

# -*- coding: utf-8 -*-
"""
Acceptance suite run by the selftest subcommand.

Each check returns (passed, details); run_selftest collects one record per check.
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np

from .. import carleson
from ..blaschke import (
    EquidistributedFactor,
    build_slow_blaschke,
    certify_slow_blaschke,
    eval_factor,
    eval_factor_product,
    factor_circle_bound,
    minimal_zero_count,
    near_boundary_bound,
    strong_triangle_gap,
)
from ..compactness import delta_ratio, pointwise_ratios
from ..domains import disk_domain
from ..harmonic import (
    EpsilonScheme,
    arc_target,
    brownian_exits,
    calibrate_barriers,
    hole_principle_check,
    hole_triples,
    poisson_arc_measure,
    rho_bound_report,
)
from ..nevanlinna import counting_function, luecking_integral
from ..orlicz import delta_from_psi, make_orlicz
from ..symbols import IdentitySymbol, MonomialSymbol, ScalingSymbol, SlowBlaschkeSymbol
from .serialization import dumps

logger = logging.getLogger(__name__)

Check = Callable[["SelftestSettings"], Tuple[bool, dict]]


@dataclass(frozen=True)
class SelftestSettings:
    """Sizes used by the acceptance checks."""
    seed: int = 7
    samples: int = 2 ** 14
    disk_paths: int = 10 ** 5
    triple_paths: int = 10 ** 4
    calibration_paths: int = 2 * 10 ** 4
    calibration_levels: int = 4
    certificate_points: int = 10 ** 4
    slow_depth: int = 10

    @classmethod
    def quick(cls, seed: int = 7) -> 'SelftestSettings':
        """Reduced sizes for smoke runs."""
        return cls(seed=seed, disk_paths=2 * 10 ** 4, triple_paths=4000, calibration_paths=8000,
                   calibration_levels=3, certificate_points=2000)


def check_factor_bounds(settings: SelftestSettings) -> Tuple[bool, dict]:
    rng = np.random.default_rng(settings.seed)
    worst, equality_gap, part_b = -math.inf, 0.0, True
    for _ in range(500):
        p = int(rng.integers(1, 21))
        r = float(rng.uniform(0.05, 0.95))
        factor = EquidistributedFactor(p, r)
        z = r * np.exp(2j * np.pi * rng.uniform())
        bound = factor_circle_bound(p, r)
        worst = max(worst, abs(eval_factor(factor, z)) - bound)
        extremal = r * np.exp(1j * np.pi / p)
        equality_gap = max(equality_gap, abs(abs(eval_factor(factor, extremal)) - bound))
        h = 1.0 - r
        if p * h <= 0.5:
            part_b &= bound <= near_boundary_bound(p, h) + 1e-12
    passed = worst <= 1e-12 and equality_gap <= 1e-10 and part_b
    return passed, {"max_excess": worst, "equality_gap": equality_gap, "near_boundary_ok": part_b}


def check_closed_form(settings: SelftestSettings) -> Tuple[bool, dict]:
    rng = np.random.default_rng(settings.seed + 1)
    deviation = 0.0
    for _ in range(200):
        factor = EquidistributedFactor(int(rng.integers(1, 51)), float(rng.uniform(0.05, 0.95)))
        z = np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        deviation = max(deviation, abs(eval_factor(factor, z) - eval_factor_product(factor, z)))
    return deviation <= 1e-9, {"max_deviation": deviation}


def check_certificate(settings: SelftestSettings) -> Tuple[bool, dict]:
    delta = delta_from_psi(make_orlicz("power", 2.0))
    spec = build_slow_blaschke(delta, 24)
    spec.check_invariants()
    rng = np.random.default_rng(settings.seed + 2)
    gap = 2.0 ** -rng.uniform(1.0, 23.0, settings.certificate_points)
    z = (1.0 - gap) * np.exp(2j * np.pi * rng.uniform(size=gap.size))
    margins, covered = certify_slow_blaschke(spec, z)
    p7 = minimal_zero_count(2.0 ** -14, 7)
    worst = float(np.min(margins[covered]))
    return worst >= -1e-12 and p7 == 3377, {"min_margin": worst, "covered": int(covered.sum()), "p_7": p7}


def check_strong_triangle(settings: SelftestSettings) -> Tuple[bool, dict]:
    rng = np.random.default_rng(settings.seed + 3)

    def points(n):
        return np.sqrt(rng.uniform(0, 0.999, n)) * np.exp(2j * np.pi * rng.uniform(size=n))

    gaps = strong_triangle_gap(points(10 ** 4), points(10 ** 4), points(10 ** 4))
    return bool(np.min(gaps) >= -1e-12), {"min_gap": float(np.min(gaps))}


def check_identity_pullback(settings: SelftestSettings) -> Tuple[bool, dict]:
    sample = carleson.build_pullback(IdentitySymbol(), settings.samples)
    rows = carleson.rho_table(sample, [0.2, 0.1, 0.05])
    ok = all(abs(row["rho"] - row["h"] / math.pi) <= 3 * row["stderr"] + 1.0 / sample.size for row in rows)
    return ok, {"rows": rows}


def check_nevanlinna_monomials(settings: SelftestSettings) -> Tuple[bool, dict]:
    rng = np.random.default_rng(settings.seed + 4)
    w = np.sqrt(rng.uniform(0.01, 0.98, 100)) * np.exp(2j * np.pi * rng.uniform(size=100))
    error = 0.0
    for k in (1, 2, 3):
        symbol = MonomialSymbol(k)
        for point in w:
            error = max(error, abs(counting_function(symbol, point).value + math.log(abs(point))))
    return error <= 1e-10, {"max_error": error}


def check_closed_range(settings: SelftestSettings) -> Tuple[bool, dict]:
    sizes = [0.2, 0.1, 0.05]
    results = {}
    for symbol in (IdentitySymbol(), MonomialSymbol(2), ScalingSymbol(0.5)):
        sample = carleson.build_pullback(symbol, settings.samples)
        results[symbol.label] = carleson.closed_range_test(sample, sizes)
    inner_ok = all(
        results[name].consistent and 0.9 / math.pi <= results[name].c_est <= 1.1 / math.pi
        for name in ("identity", "monomial:2")
    )
    scaling = results["scaling:0.5"]
    return inner_ok and not scaling.consistent, {
        name: result.to_dict() for name, result in results.items()
    }


def check_wallis(settings: SelftestSettings) -> Tuple[bool, dict]:
    deviation = max(
        abs(carleson.test_function_norm(n, 2.0) - 2 * math.pi * math.comb(2 * n, n) / 4 ** n)
        for n in range(1, 31)
    )
    scaled = {n: carleson.wallis_closed_form(n, 2.0) * math.sqrt(n) for n in range(1, 1001)}
    floor_large = min(v for n, v in scaled.items() if n >= 10)
    floor_small = min(v for n, v in scaled.items() if n < 10)
    passed = deviation <= 1e-8 and floor_large >= 3.5 and floor_small >= math.pi - 1e-12
    return passed, {"max_deviation": deviation, "min_scaled_n_ge_10": floor_large, "min_scaled_n_lt_10": floor_small}


def check_luecking_agreement(settings: SelftestSettings) -> Tuple[bool, dict]:
    cases = {}
    for symbol in (ScalingSymbol(0.5), IdentitySymbol(), MonomialSymbol(2)):
        sample = carleson.build_pullback(symbol, settings.samples)
        for p in (1.0, 2.0, 4.0):
            s = carleson.luecking_sum(sample, p, 8).verdict
            i = luecking_integral(symbol, p, 8).verdict
            cases[f"{symbol.label}@p={p:g}"] = {"sum": s.value, "integral": i.value, "agree": s is i}
    return all(case["agree"] for case in cases.values()), cases


def check_disk_harmonic(settings: SelftestSettings) -> Tuple[bool, dict]:
    disk = disk_domain()
    center = brownian_exits(disk, 0j, settings.disk_paths, settings.seed)
    arcs = []
    for k in range(10):
        theta0 = 0.6 * k
        length = 0.2 + 0.25 * k
        estimate, stderr = center.fraction(arc_target(theta0, theta0 + length)(center.points))
        arcs.append({"theta0": theta0, "length": length, "estimate": estimate, "stderr": stderr,
                     "ok": abs(estimate - length / (2 * math.pi)) <= 3 * stderr})
    off = brownian_exits(disk, 0.5, settings.disk_paths, settings.seed + 1)
    estimate, stderr = off.fraction(arc_target(-math.pi / 2, math.pi / 2)(off.points))
    oracle = poisson_arc_measure(0.5, -math.pi / 2, math.pi / 2)
    poisson_ok = abs(estimate - oracle) <= 3 * stderr
    return all(a["ok"] for a in arcs) and poisson_ok, {
        "arcs": arcs, "poisson": {"estimate": estimate, "stderr": stderr, "oracle": oracle}
    }


def check_hole_principle(settings: SelftestSettings) -> Tuple[bool, dict]:
    results = {}
    for name, inner, outer, hole, a in hole_triples():
        result = hole_principle_check(inner, outer, hole, a, settings.triple_paths, settings.seed)
        results[name] = result.to_dict()
    return all(r["pass"] for r in results.values()), results


def check_calibration_chain(settings: SelftestSettings) -> Tuple[bool, dict]:
    levels = settings.calibration_levels
    run = calibrate_barriers(levels, EpsilonScheme.EXP, paths=settings.calibration_paths, seed=settings.seed)
    low = 1.0 / (4 * math.pi * (levels + 1)) / 2
    hs = list(np.geomspace(1.0 / (8 * math.pi), low * 1.001, 12))
    report = rho_bound_report(run, hs)
    c_ok = report.fitted_c is not None and 0.8 / (8 * math.pi) <= report.fitted_c <= 1.2 / (4 * math.pi)

    psi = make_orlicz("power", 2.0)
    psi_run = calibrate_barriers(levels, EpsilonScheme.PSI, paths=settings.calibration_paths,
                                 seed=settings.seed, psi=psi)
    psi_report = rho_bound_report(psi_run, hs)
    delta_ok = all(row["delta_bound_ok"] for row in psi_report.rows)
    return c_ok and delta_ok, {"fitted_c": report.fitted_c, "exp": report.to_dict(), "psi": psi_report.to_dict()}


def check_headline_separation(settings: SelftestSettings) -> Tuple[bool, dict]:
    psi = make_orlicz("power", 2.0)
    symbol = SlowBlaschkeSymbol(build_slow_blaschke(delta_from_psi(psi), settings.slow_depth))
    sample = carleson.build_pullback(symbol, settings.samples)
    hs = [0.25 / 2 ** k for k in range(8)]
    rows = carleson.rho_table(sample, hs)
    deltas = delta_ratio(psi, [row["rho"] for row in rows], hs)
    ratios = pointwise_ratios(symbol, psi, [1.0 - 2.0 ** -k for k in range(2, 10)])
    passed = ratios["orlicz_trend"].value == "to-zero" and deltas["trend"].value == "bounded-away"
    return passed, {"orlicz_trend": ratios["orlicz_trend"], "delta_trend": deltas["trend"],
                    "orlicz": ratios["orlicz"], "delta_rows": deltas["rows"]}


def _determinism_payload(settings: SelftestSettings) -> str:
    sample = carleson.build_pullback(MonomialSymbol(2), 2 ** 12)
    batch = brownian_exits(disk_domain(), 0.3, 5000, settings.seed, workers=2)
    return dumps({
        "rho": carleson.rho_table(sample, [0.2, 0.1]),
        "exits": batch.points[:64],
        "distribution": batch.distribution(),
    })


def check_determinism(settings: SelftestSettings) -> Tuple[bool, dict]:
    first = _determinism_payload(settings)
    second = _determinism_payload(settings)
    return first == second, {"bytes": len(first)}


CHECKS: List[Tuple[int, str, Check]] = [
    (1, "finite factor bounds", check_factor_bounds),
    (2, "closed form against product", check_closed_form),
    (3, "slow Blaschke certificate", check_certificate),
    (4, "strong triangle inequality", check_strong_triangle),
    (5, "identity pull-back exactness", check_identity_pullback),
    (6, "Nevanlinna counting of monomials", check_nevanlinna_monomials),
    (7, "closed-range test", check_closed_range),
    (8, "f_N norms", check_wallis),
    (9, "Luecking sum and integral agreement", check_luecking_agreement),
    (10, "disk harmonic measure", check_disk_harmonic),
    (11, "hole principle", check_hole_principle),
    (12, "calibration and decay chain", check_calibration_chain),
    (13, "headline separation", check_headline_separation),
    (14, "determinism", check_determinism),
]


def run_selftest(settings: SelftestSettings = SelftestSettings(), only: List[int] = None) -> Dict[str, object]:
    """
    Run the acceptance checks.

    Args:
        settings (SelftestSettings): Sizes and seed
        only (list, optional): Check ids to run

    Returns:
        dict with "records" (id, name, passed, details, seconds) and "all_passed"
    """
    records = []
    for number, name, check in CHECKS:
        if only and number not in only:
            continue
        started = time.perf_counter()
        passed, details = check(settings)
        elapsed = time.perf_counter() - started
        logger.info("selftest %d (%s): %s in %.1fs", number, name, "pass" if passed else "FAIL", elapsed)
        records.append({"id": number, "name": name, "passed": bool(passed), "details": details})
    return {"seed": settings.seed, "records": records, "all_passed": all(r["passed"] for r in records)}

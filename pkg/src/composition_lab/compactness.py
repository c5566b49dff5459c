# -*- coding: utf-8 -*-
"""
Compactness and Schatten diagnostics built from Orlicz ratios, Carleson data and
Nevanlinna data.

Verdicts are read off finite sweeps and are numerical evidence, not proof; every
report carries that banner.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .carleson import LueckingSums, PullbackSample, build_pullback, luecking_sum, rho_table
from .exceptions import ConfigurationError
from .internal.trends import GrowthVerdict, Trend, thirds_trend
from .nevanlinna import LueckingIntegral, luecking_integral
from .orlicz import OrliczFunction, psi_inverse
from .symbols import SymbolMap, eval_symbol

logger = logging.getLogger(__name__)

BANNER = "numerical evidence, not proof"
MIN_R2 = 0.9
# power fits with exponent at most this are treated as ρ ~ h
LINEAR_EXPONENT = 1.1
DEFAULT_P_LIST = (1.0, 2.0, 4.0)
DEFAULT_SAMPLES = 2 ** 17
DEFAULT_ANGLES = 256
DEFAULT_INTEGRAL_DEPTH = 8
MAX_SUM_LEVEL = 10


def geometric_grid(start: float, ratio: float, count: int) -> List[float]:
    """start, start/ratio, start/ratio², ... (count values)."""
    if not 0 < start < 1 or ratio <= 1 or count < 1:
        raise ConfigurationError(f"bad geometric grid {start}:{ratio}:{count}")
    return [start / ratio ** k for k in range(count)]


def delta_ratio(psi: OrliczFunction, rho_values: Sequence[float], hs: Sequence[float]) -> Dict[str, object]:
    """
    Δ(h) = Ψ^{-1}(1/h)/Ψ^{-1}(1/ρ(h)), with Δ = 0 when ρ(h) = 0.

    Args:
        psi (OrliczFunction): Orlicz function
        rho_values: ρ_φ on the same grid
        hs: Window sizes

    Returns:
        dict with "rows" ({"h", "rho", "delta"}, h decreasing) and "trend"
    """
    if len(rho_values) != len(hs):
        raise ConfigurationError("ρ values and h grid differ in length")
    order = np.argsort(-np.asarray(hs, dtype=float))
    h_arr = np.asarray(hs, dtype=float)[order]
    rho_arr = np.asarray(rho_values, dtype=float)[order]
    delta = np.zeros_like(h_arr)
    positive = rho_arr > 0
    if positive.any():
        delta[positive] = psi_inverse(psi, 1.0 / h_arr[positive]) / psi_inverse(psi, 1.0 / rho_arr[positive])
    rows = [{"h": float(h), "rho": float(r), "delta": float(d)} for h, r, d in zip(h_arr, rho_arr, delta)]
    return {"rows": rows, "trend": thirds_trend(delta)}


def pointwise_ratios(symbol: SymbolMap, psi: OrliczFunction, radii: Sequence[float],
                     angles: int = DEFAULT_ANGLES) -> Dict[str, object]:
    """
    Per radius r, the maxima over |z| = r of (1-|z|)/(1-|φ(z)|) and of
    Ψ^{-1}(1/(1-|φ(z)|))/Ψ^{-1}(1/(1-|z|)).

    Args:
        symbol (SymbolMap): Symbol
        psi (OrliczFunction): Orlicz function
        radii: Increasing radii in (0, 1)
        angles (int): Angular grid size

    Returns:
        dict with "angular" and "orlicz" row lists and their trends
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0) or np.any(radii >= 1) or np.any(np.diff(radii) <= 0):
        raise ConfigurationError("radii must increase inside (0, 1)")
    theta = 2.0 * np.pi * np.arange(angles) / angles
    angular, orlicz = [], []
    for r in radii:
        gap = 1.0 - np.abs(eval_symbol(symbol, r * np.exp(1j * theta)))
        gap = np.maximum(gap, np.finfo(float).tiny)
        angular.append({"r": float(r), "ratio": float(np.max((1.0 - r) / gap))})
        ratio = psi_inverse(psi, 1.0 / gap) / psi_inverse(psi, 1.0 / (1.0 - r))
        orlicz.append({"r": float(r), "ratio": float(np.max(ratio))})
    return {
        "angular": angular,
        "angular_trend": thirds_trend([row["ratio"] for row in angular]),
        "orlicz": orlicz,
        "orlicz_trend": thirds_trend([row["ratio"] for row in orlicz]),
    }


def _fit(x: np.ndarray, y: np.ndarray) -> Dict[str, float]:
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    spread = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - float(np.sum(residual ** 2)) / spread if spread > 0 else 1.0
    return {"slope": float(slope), "intercept": float(intercept), "r2": r2}


@dataclass
class SchattenReport:
    """Fits of ρ against h and the Schatten verdict they support."""
    verdict: str
    reason: str
    alpha: Optional[float] = None
    c: Optional[float] = None
    power_r2: Optional[float] = None
    exp_r2: Optional[float] = None
    per_p: Dict[str, str] = field(default_factory=dict)
    cited_h: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "alpha": self.alpha,
            "c": self.c,
            "power_r2": self.power_r2,
            "exp_r2": self.exp_r2,
            "per_p": dict(self.per_p),
            "cited_h": list(self.cited_h),
        }


def _luecking_sums(sample: PullbackSample, p_list: Sequence[float]) -> List[LueckingSums]:
    n_max = min(MAX_SUM_LEVEL, int(math.log2(sample.size)) - 4)
    return [luecking_sum(sample, p, n_max) for p in p_list]


def schatten_report(
    rho_rows: Sequence[dict],
    sums: Sequence[LueckingSums] = (),
    sample: Optional[PullbackSample] = None,
    p_list: Sequence[float] = (),
) -> SchattenReport:
    """
    Fit log ρ against log h (ρ <= C h^α) and against 1/h (ρ <= e^{-c/h}), and combine
    with Luecking sums per p.

    The sums are either passed in, or computed here from a pull-back sample and a p list.

    Args:
        rho_rows: Rows with "h" and "rho" (or "bound"), geometric in h
        sums: Luecking sums for several p
        sample (PullbackSample, optional): Sample to compute the sums from
        p_list: Schatten exponents for the sums computed from sample

    Returns:
        SchattenReport with verdict "all S_p", "no S_p", "S_p for p >= ..." or "inconclusive"

    Raises:
        ConfigurationError: If fewer than 3 rows are given, or the sum sources conflict
    """
    if p_list:
        if sample is None or sums:
            raise ConfigurationError("a p list needs a pull-back sample and no precomputed sums")
        sums = _luecking_sums(sample, p_list)
    if len(rho_rows) < 3:
        raise ConfigurationError("a Schatten fit needs at least 3 rows")
    rows = sorted(rho_rows, key=lambda row: -row["h"])
    h = np.array([row["h"] for row in rows], dtype=float)
    rho = np.array([row.get("rho", row.get("bound")) for row in rows], dtype=float)
    per_p = {format(s.p, "g"): ("S_p" if s.verdict is GrowthVerdict.STABILIZING else "not S_p") for s in sums}
    cited = [float(x) for x in h]

    tail = rho[-max(1, len(rho) // 3):]
    if np.all(tail == 0):
        return SchattenReport("all S_p", "ρ vanishes for small h", per_p=per_p, cited_h=cited)

    positive = rho > 0
    if np.count_nonzero(positive) < 3:
        return SchattenReport("inconclusive", "fewer than 3 positive ρ values", per_p=per_p, cited_h=cited)
    power = _fit(np.log(h[positive]), np.log(rho[positive]))
    expo = _fit(1.0 / h[positive], np.log(rho[positive]))
    report = SchattenReport("inconclusive", "", alpha=power["slope"], c=-expo["slope"],
                            power_r2=power["r2"], exp_r2=expo["r2"], per_p=per_p,
                            cited_h=[float(x) for x in h[positive]])

    if max(power["r2"], expo["r2"]) < MIN_R2:
        report.reason = f"no fit reaches R² >= {MIN_R2}"
    elif expo["r2"] > power["r2"] and expo["slope"] < 0:
        report.verdict = "all S_p"
        report.reason = f"ρ(h) <= e^(-c/h) with c ≈ {-expo['slope']:.3g}"
    elif power["slope"] <= LINEAR_EXPONENT:
        report.verdict = "no S_p"
        report.reason = f"ρ(h) ≈ C h^{power['slope']:.3g}, not o(h)"
    else:
        good = sorted(s.p for s in sums if s.verdict is GrowthVerdict.STABILIZING)
        if good:
            report.verdict = f"S_p for p >= {good[0]:g}"
            report.reason = f"ρ(h) ≈ C h^{power['slope']:.3g}; Luecking sums stabilize from p = {good[0]:g}"
        else:
            report.reason = f"ρ(h) ≈ C h^{power['slope']:.3g} without stabilizing Luecking sums"
    return report


@dataclass
class DiagnosticReport:
    """
    Full diagnostics for one symbol and one Orlicz function.

    Attributes:
        symbol: Symbol identifier
        psi: Orlicz function identifier
        rows: Table h ↦ (ρ, stderr, Δ)
        delta_trend: Trend of Δ as h → 0
        pointwise: Angular and Orlicz ratio tables with trends
        sums: Luecking partial sums per p
        integrals: Luecking integrals per p, empty without a preimage solver
        schatten: Schatten verdict
    """
    symbol: str
    psi: str
    rows: List[dict]
    delta_trend: Trend
    pointwise: Dict[str, object]
    sums: List[LueckingSums]
    integrals: List[LueckingIntegral]
    schatten: SchattenReport
    banner: str = BANNER

    @property
    def compactness(self) -> str:
        return {
            Trend.TO_ZERO: "compact",
            Trend.BOUNDED_AWAY: "not compact",
            Trend.INCONCLUSIVE: "inconclusive",
        }[self.delta_trend]

    @property
    def headline(self) -> str:
        return f"{self.compactness}, {self.schatten.verdict}"

    def csv_rows(self) -> List[dict]:
        """Plot-ready rows h, rho, stderr, delta."""
        return [dict(row) for row in self.rows]

    def to_dict(self) -> dict:
        return {
            "banner": self.banner,
            "symbol": self.symbol,
            "psi": self.psi,
            "headline": self.headline,
            "compactness": {"verdict": self.compactness, "delta_trend": self.delta_trend.value,
                            "cited_h": [row["h"] for row in self.rows]},
            "rows": self.rows,
            "pointwise": {
                "angular": self.pointwise["angular"],
                "angular_trend": self.pointwise["angular_trend"].value,
                "orlicz": self.pointwise["orlicz"],
                "orlicz_trend": self.pointwise["orlicz_trend"].value,
            },
            "luecking_sums": [s.to_dict() for s in self.sums],
            "luecking_integrals": [i.to_dict() for i in self.integrals],
            "schatten": self.schatten.to_dict(),
        }


def build_report(
    symbol: SymbolMap,
    psi: OrliczFunction,
    hs: Sequence[float],
    samples: int = DEFAULT_SAMPLES,
    p_list: Sequence[float] = DEFAULT_P_LIST,
    radii: Optional[Sequence[float]] = None,
    integral_depth: int = DEFAULT_INTEGRAL_DEPTH,
    sample: Optional[PullbackSample] = None,
) -> DiagnosticReport:
    """
    Assemble the DiagnosticReport of a symbol.

    Args:
        symbol (SymbolMap): Symbol
        psi (OrliczFunction): Orlicz function for Δ and the Orlicz ratios
        hs: Window sizes, each >= 10/M
        samples (int): M for the pull-back sample
        p_list: Schatten exponents
        radii: Radii for pointwise ratios, default 1 - 2^-k, k = 2..9
        integral_depth (int): Annulus depth of the Luecking integrals
        sample (PullbackSample, optional): Reuse an existing sample

    Returns:
        DiagnosticReport
    """
    if sample is None:
        sample = build_pullback(symbol, samples)
    if radii is None:
        radii = [1.0 - 2.0 ** -k for k in range(2, 10)]

    table = rho_table(sample, hs)
    deltas = delta_ratio(psi, [row["rho"] for row in table], [row["h"] for row in table])
    stderr = {row["h"]: row["stderr"] for row in table}
    rows = [dict(row, stderr=stderr[row["h"]]) for row in deltas["rows"]]

    sums = _luecking_sums(sample, p_list)
    integrals = [luecking_integral(symbol, p, integral_depth) for p in p_list] if symbol.has_preimages else []

    report = DiagnosticReport(
        symbol=symbol.label,
        psi=psi.label,
        rows=rows,
        delta_trend=deltas["trend"],
        pointwise=pointwise_ratios(symbol, psi, radii),
        sums=sums,
        integrals=integrals,
        schatten=schatten_report(rows, sums),
    )
    logger.info("report for %s with %s: %s", symbol.label, psi.label, report.headline)
    return report


def _side(verdict) -> Optional[str]:
    if verdict in (Trend.TO_ZERO, GrowthVerdict.STABILIZING):
        return "compact"
    if verdict in (Trend.BOUNDED_AWAY, GrowthVerdict.DIVERGING):
        return "non-compact"
    return None


def verdicts_agree(report: DiagnosticReport, p: float = 2.0) -> bool:
    """
    The Δ trend, the Luecking sum and the Luecking integral at p never sit on opposite
    sides (compact against non-compact); inconclusive verdicts are ignored.
    """
    verdicts = [report.delta_trend]
    verdicts += [s.verdict for s in report.sums if s.p == p]
    verdicts += [i.verdict for i in report.integrals if i.p == p]
    sides = {_side(v) for v in verdicts} - {None}
    return len(sides) <= 1

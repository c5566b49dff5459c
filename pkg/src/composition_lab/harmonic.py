# -*- coding: utf-8 -*-
"""
Monte Carlo harmonic measure by walk-on-spheres.

Exits are simulated in blocks of BLOCK_SIZE paths, each block driven by its own
counter-based Philox stream keyed on (seed, stream, block), so results do not depend
on the worker count. Hosts the hole principle check, hole-width calibration of the
barrier domains Ω_n and the decay report for ρ_φ.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate

from .domains import (
    HOLE,
    BarrierSpec,
    PlanarDomain,
    b_value,
    check_containment,
    cut_disk_domain,
    disk_domain,
    make_barrier,
    max_hole_width,
    omega_domain,
    omega_n_domain,
    slit_disk_domain,
)
from .exceptions import ConfigurationError, NonterminatingWalkError, NumericalError, StatisticalFloorError
from .orlicz import OrliczFunction, psi_inverse

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-4
MIN_TOL = 1e-6
MAX_TOL = 1e-3
MAX_STEPS = 10 ** 6
BLOCK_SIZE = 4096
NONTERMINATING = "nonterminating"
MAX_NONTERMINATING = 1e-3
# a G1 exit farther than this many tolerances from ∂G0 is off ∂G0
OFF_BOUNDARY_FACTOR = 4.0
FLOOR_PATHS = 10.0
MAX_HALVINGS = 60
DEFAULT_START = complex(1.0, 2.0)

Target = Union[str, Sequence[str], Callable[[np.ndarray], np.ndarray]]


class EpsilonScheme(Enum):
    """Choices of the targets ε_n for the calibrated holes."""
    EXP = "exp"
    PSI = "psi"
    FIXED = "fixed"


@dataclass(frozen=True, eq=False)
class ExitBatch:
    """
    Exit points of a batch of walks.

    Attributes:
        points (np.ndarray): Absorption points, within tol of the boundary
        labels (np.ndarray): Label of the closest boundary piece, or "nonterminating"
        steps (np.ndarray): Jumps taken per path
    """
    points: np.ndarray
    labels: np.ndarray
    steps: np.ndarray

    @property
    def paths(self) -> int:
        return int(self.points.size)

    @property
    def nonterminating(self) -> np.ndarray:
        return self.labels == NONTERMINATING

    def fraction(self, mask: np.ndarray) -> Tuple[float, float]:
        """Fraction of paths in a mask and its binomial standard error."""
        p = float(np.count_nonzero(mask)) / self.paths
        return p, math.sqrt(p * (1.0 - p) / self.paths)

    def distribution(self) -> Dict[str, float]:
        """Fraction of paths per label; the values sum to 1."""
        names, counts = np.unique(self.labels.astype(str), return_counts=True)
        return {str(name): int(count) / self.paths for name, count in zip(names, counts)}


def _check_tol(tol: float) -> float:
    if not MIN_TOL <= tol <= MAX_TOL:
        raise ConfigurationError(f"absorption tolerance must lie in [{MIN_TOL}, {MAX_TOL}], got {tol}")
    return float(tol)


def _walk(domain: PlanarDomain, starts: np.ndarray, tol: float, rng: np.random.Generator,
          max_steps: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    position = np.array(starts, dtype=complex)
    steps = np.zeros(position.size, dtype=np.int64)
    active = np.arange(position.size)
    for _ in range(max_steps):
        radius = domain.distance(position[active])
        moving = radius >= tol
        active, radius = active[moving], radius[moving]
        if active.size == 0:
            break
        position[active] += radius * np.exp(2j * math.pi * rng.random(active.size))
        steps[active] += 1
    labels = domain.label(position).astype(object)
    if active.size:
        labels[active] = NONTERMINATING
    return position, labels, steps


def _block_rng(seed: int, stream: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream, block))))


def _run_blocks(domain: PlanarDomain, starts: np.ndarray, tol: float, seed: int, stream: int,
                workers: int, max_steps: int) -> ExitBatch:
    blocks = [starts[i:i + BLOCK_SIZE] for i in range(0, starts.size, BLOCK_SIZE)]

    def run(indexed):
        block, chunk = indexed
        return _walk(domain, chunk, tol, _block_rng(seed, stream, block), max_steps)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, enumerate(blocks)))
    else:
        results = [run(item) for item in enumerate(blocks)]
    return ExitBatch(
        points=np.concatenate([r[0] for r in results]),
        labels=np.concatenate([r[1] for r in results]),
        steps=np.concatenate([r[2] for r in results]),
    )


def brownian_exits(
    domain: PlanarDomain,
    a: complex,
    paths: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
    stream: int = 0,
    max_steps: int = MAX_STEPS,
) -> ExitBatch:
    """
    Simulate Brownian exits from a domain by walk-on-spheres.

    Each path jumps to a uniform point on the circle whose radius is the distance bound
    to the boundary, and is absorbed once that bound drops below tol.

    Args:
        domain (PlanarDomain): Domain
        a (complex): Start point inside the domain
        paths (int): Number of paths
        seed (int): Base seed
        tol (float): Absorption tolerance in [1e-6, 1e-3]
        workers (int): Threads; results do not depend on it
        stream (int): Independent stream index for the same seed
        max_steps (int): Step cap, past which a path is labelled "nonterminating"

    Returns:
        ExitBatch

    Raises:
        DomainError: If a is not inside the domain
        ConfigurationError: If tol or paths are out of range
    """
    tol = _check_tol(tol)
    if paths < 1:
        raise ConfigurationError(f"paths must be positive, got {paths}")
    domain.require_inside(complex(a))
    batch = _run_blocks(domain, np.full(int(paths), complex(a)), tol, seed, stream, workers, max_steps)
    stuck = int(np.count_nonzero(batch.nonterminating))
    if stuck:
        logger.warning("%s: %d of %d walks hit the step cap", domain.kind, stuck, batch.paths)
    logger.debug("%s: %d walks, mean %.1f steps", domain.kind, batch.paths, float(np.mean(batch.steps)))
    return batch


def brownian_exit(domain: PlanarDomain, a: complex, tol: float = DEFAULT_TOL, seed: int = 0) -> Tuple[complex, str, int]:
    """Single walk: (exit point, label, steps)."""
    batch = brownian_exits(domain, a, 1, seed, tol)
    return complex(batch.points[0]), str(batch.labels[0]), int(batch.steps[0])


def arc_target(theta0: float, theta1: float, center: complex = 0j) -> Callable[[np.ndarray], np.ndarray]:
    """Predicate for exit points whose angle about center lies in [θ0, θ1] (counterclockwise)."""
    span = theta1 - theta0
    if not 0 < span <= 2 * math.pi:
        raise ConfigurationError(f"arc [{theta0}, {theta1}] must have length in (0, 2π]")

    def target(points: np.ndarray) -> np.ndarray:
        return np.mod(np.angle(points - center) - theta0, 2 * math.pi) <= span

    return target


def _target_mask(batch: ExitBatch, target: Target) -> np.ndarray:
    if callable(target):
        mask = np.asarray(target(batch.points), dtype=bool)
    elif isinstance(target, str):
        mask = batch.labels == target
    else:
        mask = np.isin(batch.labels.astype(str), list(target))
    return mask & ~batch.nonterminating


def harmonic_measure(
    domain: PlanarDomain,
    a: complex,
    target: Target,
    paths: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> Tuple[float, float]:
    """
    Estimate ω_G(a, A) as the fraction of walks exiting through A.

    Args:
        domain (PlanarDomain): Domain G
        a (complex): Start point
        target: A label, a list of labels, or a predicate on exit points
        paths (int): Number of walks
        seed (int): Seed

    Returns:
        (estimate, stderr) with stderr = √(p(1-p)/paths)

    Raises:
        NonterminatingWalkError: If more than 0.1% of walks hit the step cap
    """
    batch = brownian_exits(domain, a, paths, seed, tol, workers)
    check_termination(batch, domain)
    return batch.fraction(_target_mask(batch, target))


def check_termination(batch: ExitBatch, domain: PlanarDomain) -> None:
    """
    Raises:
        NonterminatingWalkError: If more than 0.1% of the batch hit the step cap
    """
    stuck = float(np.mean(batch.nonterminating))
    if stuck > MAX_NONTERMINATING:
        raise NonterminatingWalkError(f"{domain.kind}: {stuck:.3%} of walks did not terminate")


def poisson_arc_measure(a: complex, theta0: float, theta1: float) -> float:
    """
    Harmonic measure of the arc [θ0, θ1] of the unit circle seen from a, by quadrature
    of the Poisson kernel (1 - |a|²)/|e^{it} - a|² / 2π.

    Raises:
        ConfigurationError: If |a| >= 1
    """
    a = complex(a)
    if abs(a) >= 1:
        raise ConfigurationError(f"Poisson kernel needs |a| < 1, got {a}")
    weight = 1.0 - abs(a) ** 2

    def kernel(t):
        return weight / abs(complex(math.cos(t), math.sin(t)) - a) ** 2

    peak = math.atan2(a.imag, a.real)
    points = [t for t in (peak, peak + 2 * math.pi, peak - 2 * math.pi) if theta0 < t < theta1]
    value, _ = integrate.quad(kernel, theta0, theta1, points=points or None, limit=200, epsabs=1e-12)
    return value / (2 * math.pi)


@dataclass(frozen=True)
class HolePrincipleResult:
    """
    Estimates of ω_{G1}(a, ∂G1 minus ∂G0) (lhs) and ω_{G0}(a, H) (rhs).

    pathwise is None for uncoupled runs.
    """
    lhs: float
    lhs_stderr: float
    rhs: float
    rhs_stderr: float
    coupled: bool
    pathwise: Optional[bool]

    @property
    def passed(self) -> bool:
        within = self.lhs <= self.rhs + 3.0 * math.hypot(self.lhs_stderr, self.rhs_stderr)
        return within and self.pathwise is not False

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs, "lhs_stderr": self.lhs_stderr,
            "rhs": self.rhs, "rhs_stderr": self.rhs_stderr,
            "coupled": self.coupled, "pathwise": self.pathwise, "pass": self.passed,
        }


def hole_principle_check(
    inner: PlanarDomain,
    outer: PlanarDomain,
    hole_label: Optional[str],
    a: complex,
    paths: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    coupled: bool = True,
    workers: int = 1,
) -> HolePrincipleResult:
    """
    Check ω_{G1}(a, ∂G1 minus ∂G0) <= ω_{G0}(a, H) for G0 ⊆ G1 with ∂G0 ⊆ ∂G1 ∪ H.

    In the coupled run every walk first exits G0; walks leaving through H continue in
    G1 from their exit point. The event "G1 exit off ∂G0" then implies "G0 exit in H"
    path by path, which is checked along with the estimates.

    Args:
        inner (PlanarDomain): G0
        outer (PlanarDomain): G1
        hole_label (str, optional): Label of H on ∂G0, None for an empty hole
        a (complex): Start point in G0
        paths (int): Number of walks
        seed (int): Seed
        coupled (bool): Share walks between both exits

    Returns:
        HolePrincipleResult

    Raises:
        DomainError: If the sampled containment checks fail
    """
    check_containment(inner, outer, hole_label, seed=seed)
    first = brownian_exits(inner, a, paths, seed, tol, workers)
    check_termination(first, inner)
    through_hole = (first.labels == hole_label) & ~first.nonterminating
    rhs, rhs_se = first.fraction(through_hole)

    if coupled:
        final = first.points.copy()
        lost = first.nonterminating.copy()
        if through_hole.any():
            resumed = _run_blocks(outer, first.points[through_hole], tol, seed, 1, workers, MAX_STEPS)
            final[through_hole] = resumed.points
            lost[through_hole] |= resumed.nonterminating
        off_inner = (inner.distance(final) > OFF_BOUNDARY_FACTOR * tol) & ~lost
        pathwise = not bool(np.any(off_inner & ~through_hole))
        lhs, lhs_se = first.fraction(off_inner)
        result = HolePrincipleResult(lhs, lhs_se, rhs, rhs_se, True, pathwise)
    else:
        second = _run_blocks(outer, np.full(int(paths), complex(a)), tol, seed, 2, workers, MAX_STEPS)
        check_termination(second, outer)
        off_inner = (inner.distance(second.points) > OFF_BOUNDARY_FACTOR * tol) & ~second.nonterminating
        lhs, lhs_se = second.fraction(off_inner)
        result = HolePrincipleResult(lhs, lhs_se, rhs, rhs_se, False, None)

    logger.info("hole principle %s ⊆ %s: lhs %.4g, rhs %.4g, pass %s",
                inner.kind, outer.kind, result.lhs, result.rhs, result.passed)
    return result


def nominal_barriers(n_max: int) -> Dict[int, BarrierSpec]:
    """Barriers 1..n_max with half the largest admissible hole."""
    return {n: make_barrier(n, max_hole_width(n) / 2) for n in range(1, n_max + 1)}


def hole_triples(barriers: Optional[Dict[int, BarrierSpec]] = None, level: int = 3
                 ) -> List[Tuple[str, PlanarDomain, PlanarDomain, Optional[str], complex]]:
    """
    The configured (name, G0, G1, H, a) triples: slit disk in the disk, cut disk in the
    disk, and Ω_level in Ω.
    """
    if barriers is None:
        barriers = nominal_barriers(level)
    if level not in barriers:
        raise ConfigurationError(f"Ω triple needs barrier {level}")
    return [
        ("slit-disk", slit_disk_domain(0.5), disk_domain(), "slit", complex(0.0, 0.3)),
        ("cut-disk", cut_disk_domain(0.5), disk_domain(), "chord", complex(-0.2, 0.1)),
        (f"omega-{level}", omega_n_domain(level, barriers[level].delta, barriers), omega_domain(barriers),
         HOLE, DEFAULT_START),
    ]


@dataclass(frozen=True)
class HoleCalibration:
    """Accepted hole half-width for level n and the halving trace [(δ, estimate, stderr)]."""
    n: int
    epsilon: float
    delta: float
    estimate: float
    stderr: float
    trace: Tuple[Tuple[float, float, float], ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n, "epsilon": self.epsilon, "delta": self.delta,
            "estimate": self.estimate, "stderr": self.stderr,
            "trace": [list(row) for row in self.trace],
        }


def calibrate_hole(
    n: int,
    barriers: Dict[int, BarrierSpec],
    epsilon: float,
    paths: int,
    seed: int,
    a: complex = DEFAULT_START,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> HoleCalibration:
    """
    Shrink H_n until ω_{Ω_n}(a, H_n) + 3·stderr <= ε_n.

    The hole only relabels part of the top edge of Ω_n, so a single batch of walks is
    relabelled for every δ: the trace uses common random numbers and must not increase.

    Args:
        n (int): Level
        barriers (dict): Barriers j < n
        epsilon (float): Target ε_n
        paths (int): Walks
        seed (int): Seed
        a (complex): Start point, Im a < 4π

    Returns:
        HoleCalibration

    Raises:
        StatisticalFloorError: If ε_n <= 10/paths
        NumericalError: If the trace increases or δ cannot be made small enough
    """
    floor = FLOOR_PATHS / paths
    if epsilon <= floor:
        raise StatisticalFloorError(
            f"ε_{n} = {epsilon:.3g} is below the resolvability floor 10/paths = {floor:.3g}"
        )
    if not complex(a).imag < 4 * math.pi:
        raise ConfigurationError(f"start point must satisfy Im a < 4π, got {a}")
    widest = max_hole_width(n)
    batch = brownian_exits(omega_n_domain(n, widest, barriers), a, paths, seed, tol, workers, stream=n)
    check_termination(batch, omega_n_domain(n, widest, barriers))

    trace: List[Tuple[float, float, float]] = []
    delta = widest / 2
    for _ in range(MAX_HALVINGS):
        relabel = omega_n_domain(n, delta, barriers).label(batch.points)
        estimate, stderr = batch.fraction((relabel == HOLE) & ~batch.nonterminating)
        if trace and estimate > trace[-1][1]:
            raise NumericalError(f"hole calibration {n}: estimate grew from {trace[-1][1]} to {estimate}")
        trace.append((delta, estimate, stderr))
        logger.debug("level %d: δ = %.3g gives ω = %.4g ± %.2g", n, delta, estimate, stderr)
        if estimate + 3.0 * stderr <= epsilon:
            logger.info("level %d calibrated: δ = %.3g, ω = %.4g <= ε = %.3g", n, delta, estimate, epsilon)
            return HoleCalibration(n, epsilon, delta, estimate, stderr, tuple(trace))
        delta /= 2
    raise NumericalError(f"hole calibration {n}: no δ reached ε = {epsilon}")


def epsilon_target(scheme: Union[str, EpsilonScheme], n: int, psi: Optional[OrliczFunction] = None,
                   fixed: Optional[float] = None) -> float:
    """
    ε_n for a scheme: e^{-n}, 1/Ψ(n·Ψ^{-1}(2/b_{n+1})), or a constant.

    Raises:
        ConfigurationError: If the scheme is unknown or its parameter is missing
    """
    try:
        scheme = EpsilonScheme(scheme)
    except ValueError:
        raise ConfigurationError(f"unknown ε scheme '{scheme}'")
    if scheme is EpsilonScheme.EXP:
        return math.exp(-n)
    if scheme is EpsilonScheme.PSI:
        if psi is None:
            raise ConfigurationError("the psi ε scheme needs an Orlicz function")
        return 1.0 / float(psi(n * float(psi_inverse(psi, 2.0 / b_value(n + 1)))))
    if fixed is None or not 0 < fixed < 1:
        raise ConfigurationError(f"the fixed ε scheme needs ε in (0, 1), got {fixed}")
    return float(fixed)


@dataclass
class BarrierRun:
    """Inductively calibrated barriers 1..n_max."""
    scheme: EpsilonScheme
    a: complex
    paths: int
    seed: int
    calibrations: List[HoleCalibration] = field(default_factory=list)
    psi: Optional[OrliczFunction] = None

    @property
    def n_max(self) -> int:
        return len(self.calibrations)

    @property
    def epsilons(self) -> Dict[int, float]:
        return {c.n: c.epsilon for c in self.calibrations}

    @property
    def barriers(self) -> Dict[int, BarrierSpec]:
        return {c.n: make_barrier(c.n, c.delta) for c in self.calibrations}

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "a": [self.a.real, self.a.imag],
            "paths": self.paths,
            "seed": self.seed,
            "psi": self.psi.to_dict() if self.psi is not None else None,
            "levels": [c.to_dict() for c in self.calibrations],
            "barriers": [b.to_dict() for b in self.barriers.values()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'BarrierRun':
        """
        Rebuild a run from the calibrate output; barrier geometry is re-derived from (n, δ).

        Raises:
            ConfigurationError: If the levels are malformed or not 1..n_max in order
        """
        from .config import load_orlicz_spec

        try:
            levels = [
                HoleCalibration(int(row["n"]), float(row["epsilon"]), float(row["delta"]),
                                float(row["estimate"]), float(row["stderr"]),
                                tuple(tuple(float(v) for v in step) for step in row["trace"]))
                for row in data["levels"]
            ]
            psi = load_orlicz_spec(data["psi"]) if data.get("psi") else None
            run = cls(EpsilonScheme(data["scheme"]), complex(*data["a"]), int(data["paths"]),
                      int(data["seed"]), levels, psi)
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Malformed barrier run: {str(e)}") from e
        if [c.n for c in levels] != list(range(1, len(levels) + 1)):
            raise ConfigurationError("barrier run levels must be 1..n_max in order")
        return run


def calibrate_barriers(
    n_max: int,
    scheme: Union[str, EpsilonScheme] = EpsilonScheme.EXP,
    a: complex = DEFAULT_START,
    paths: int = 10 ** 5,
    seed: int = 0,
    psi: Optional[OrliczFunction] = None,
    epsilon: Optional[float] = None,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> BarrierRun:
    """
    Calibrate H_1, ..., H_{n_max} in order; Ω_n uses the barriers already fixed below it.

    Args:
        n_max (int): Highest level
        scheme: "exp", "psi" or "fixed"
        psi (OrliczFunction, optional): Needed by the psi scheme
        epsilon (float, optional): Needed by the fixed scheme

    Returns:
        BarrierRun
    """
    if n_max < 1:
        raise ConfigurationError(f"n_max must be >= 1, got {n_max}")
    run = BarrierRun(EpsilonScheme(scheme), complex(a), paths, seed, psi=psi)
    for n in range(1, n_max + 1):
        target = epsilon_target(run.scheme, n, psi, epsilon)
        run.calibrations.append(calibrate_hole(n, run.barriers, target, paths, seed, a, tol, workers))
    return run


def bracket_index(h: float) -> int:
    """The n with b_{n+1} < 2h <= b_n."""
    if not 0 < h <= b_value(1) / 2:
        raise ConfigurationError(f"h = {h} is outside the bracketing range (0, 1/(8π)]")
    n = max(1, int(math.floor(1.0 / (8 * math.pi * h))))
    while not b_value(n + 1) < 2 * h:
        n += 1
    while not 2 * h <= b_value(n):
        n -= 1
    return n


@dataclass(frozen=True)
class RhoBoundReport:
    """
    Bounds ρ_φ(h) <= ε_n per h, the fitted c of e^{-c/h} for the exp scheme, and the
    Δ bounds of the psi scheme.
    """
    scheme: EpsilonScheme
    rows: Tuple[dict, ...]
    fitted_c: Optional[float]

    def to_dict(self) -> dict:
        return {"scheme": self.scheme.value, "rows": list(self.rows), "fitted_c": self.fitted_c}


def rho_bound_report(
    run: BarrierRun,
    hs: Sequence[float],
    chain_paths: int = 0,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> RhoBoundReport:
    """
    Bound ρ_φ(h) by ε_n with b_{n+1} < 2h <= b_n.

    With chain_paths > 0 the intermediate link ω_Ω(a, {Re w <= b_n}) is estimated in Ω
    and checked against ε_n.

    Args:
        run (BarrierRun): Calibrated barriers
        hs (list): Window sizes
        chain_paths (int): Walks for the chain check, 0 to skip

    Returns:
        RhoBoundReport

    Raises:
        ConfigurationError: If some h brackets a level that was not calibrated
    """
    epsilons = run.epsilons
    chain = None
    if chain_paths:
        chain = brownian_exits(omega_domain(run.barriers), run.a, chain_paths, seed, tol)
        check_termination(chain, omega_domain(run.barriers))

    rows = []
    for h in hs:
        n = bracket_index(h)
        if n not in epsilons:
            raise ConfigurationError(f"h = {h} brackets level {n}, beyond the calibrated n_max = {run.n_max}")
        row = {"h": float(h), "n": n, "bound": epsilons[n]}
        if run.psi is not None:
            delta_bound = float(psi_inverse(run.psi, 2.0 / b_value(n + 1)) / psi_inverse(run.psi, 1.0 / epsilons[n]))
            row["delta_bound"] = delta_bound
            row["delta_bound_ok"] = bool(delta_bound <= (1.0 + 1e-9) / n)
        if chain is not None:
            estimate, stderr = chain.fraction((chain.points.real <= b_value(n)) & ~chain.nonterminating)
            row["chain"] = estimate
            row["chain_stderr"] = stderr
            row["chain_ok"] = bool(estimate <= epsilons[n] + 3.0 * stderr)
        rows.append(row)

    fitted_c = None
    if run.scheme is EpsilonScheme.EXP and len({row["n"] for row in rows}) >= 2:
        slope, _ = np.polyfit([1.0 / row["h"] for row in rows], [math.log(row["bound"]) for row in rows], 1)
        fitted_c = float(-slope)
    return RhoBoundReport(run.scheme, tuple(rows), fitted_c)


def omega_n_infimum(n: int, barriers: Dict[int, BarrierSpec]) -> float:
    """inf of Re w over ∂Ω_n, from the boundary pieces' boxes; equals b_n."""
    domain = omega_n_domain(n, max_hole_width(n) / 2, barriers)
    return float(min(piece.box[0] for piece in domain.pieces))

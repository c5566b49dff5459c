# -*- coding: utf-8 -*-
"""
Planar domains for walk-on-spheres: boundary pieces with conservative distance
bounds, inside tests and exit labels.

Supported domains: disks, slit and cut disks, the right half-plane, the region
R = {x > 0, 1/x < y < 1/x + 4π}, the barrier domains Ω_n and their union Ω.
Unbounded ends are closed by "far" caps.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ConfigurationError, DomainError

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * math.pi
Y_CAP = 1e3
X_CAP = 200.0
FAR = "far"
HOLE = "hole"
BARRIER = "barrier"
SLANT_SLOPE = 2.0
HOLE_MARGIN = 0.9


def _rect_distance(z: np.ndarray, box: Tuple[float, float, float, float]) -> np.ndarray:
    xmin, xmax, ymin, ymax = box
    dx = np.maximum(np.maximum(xmin - z.real, 0.0), z.real - xmax)
    dy = np.maximum(np.maximum(ymin - z.imag, 0.0), z.imag - ymax)
    return np.hypot(dx, dy)


class BoundaryPiece:
    """A labelled piece of boundary; distance() never exceeds the true distance."""

    label: str
    box: Tuple[float, float, float, float]

    def distance(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def points(self, count: int) -> np.ndarray:
        """Points on the piece, for boundary inclusion checks."""
        raise NotImplementedError


class Segment(BoundaryPiece):
    """Straight segment [start, end], exact distance."""

    def __init__(self, start: complex, end: complex, label: str):
        self.start, self.end, self.label = complex(start), complex(end), label
        self.box = (min(self.start.real, self.end.real), max(self.start.real, self.end.real),
                    min(self.start.imag, self.end.imag), max(self.start.imag, self.end.imag))

    def distance(self, z):
        direction = self.end - self.start
        length2 = abs(direction) ** 2
        if length2 == 0:
            return np.abs(z - self.start)
        t = np.clip(((z - self.start) * np.conj(direction)).real / length2, 0.0, 1.0)
        return np.abs(z - (self.start + t * direction))

    def points(self, count):
        t = (np.arange(count) + 0.5) / count
        return self.start + t * (self.end - self.start)


class CircleArc(BoundaryPiece):
    """Arc of the circle |z - center| = radius from angle start counterclockwise by span."""

    def __init__(self, center: complex, radius: float, start: float = 0.0, span: float = 2 * math.pi,
                 label: str = "circle"):
        self.center, self.radius, self.label = complex(center), float(radius), label
        self.start, self.span = float(start), float(span)
        self.full = span >= 2 * math.pi
        self.box = (self.center.real - radius, self.center.real + radius,
                    self.center.imag - radius, self.center.imag + radius)

    def distance(self, z):
        rel = z - self.center
        radial = np.abs(np.abs(rel) - self.radius)
        if self.full:
            return radial
        on_arc = np.mod(np.angle(rel) - self.start, 2 * math.pi) <= self.span
        ends = self.center + self.radius * np.exp(1j * np.array([self.start, self.start + self.span]))
        to_ends = np.minimum(np.abs(z - ends[0]), np.abs(z - ends[1]))
        return np.where(on_arc, radial, to_ends)

    def points(self, count):
        t = self.start + self.span * (np.arange(count) + 0.5) / count
        return self.center + self.radius * np.exp(1j * t)


class HyperbolaArc(BoundaryPiece):
    """
    Arc of y = 1/x + shift over [x0, x1], with a conservative distance bound.

    The bound is the largest of the box distance, the vertical gap over the local
    Lipschitz factor of the graph, and the horizontal gap over the local Lipschitz
    factor of its inverse x = 1/(y - shift).
    """

    def __init__(self, shift: float, x0: float, x1: float, label: str):
        if not 0 < x0 < x1 < math.inf:
            raise ConfigurationError(f"hyperbola arc needs 0 < x0 < x1 < inf, got [{x0}, {x1}]")
        self.shift, self.x0, self.x1, self.label = float(shift), float(x0), float(x1), label
        self.y0, self.y1 = 1.0 / self.x1 + self.shift, 1.0 / self.x0 + self.shift
        self.box = (self.x0, self.x1, self.y0, self.y1)

    def distance(self, z):
        px, py = z.real, z.imag
        bound = _rect_distance(z, self.box)

        in_x = (px >= self.x0) & (px <= self.x1)
        safe_px = np.where(in_x, px, self.x0)
        vgap = np.abs(py - (1.0 / safe_px + self.shift))
        low = np.maximum(self.x0, safe_px - vgap)
        vertical = vgap / np.sqrt(1.0 + low ** -4)
        bound = np.where(in_x, np.maximum(bound, vertical), bound)

        in_y = (py >= self.y0) & (py <= self.y1)
        safe_py = np.where(in_y, py, self.y1)
        hgap = np.abs(px - 1.0 / (safe_py - self.shift))
        y_low = np.maximum(self.y0, safe_py - hgap)
        high = np.minimum(self.x1, 1.0 / (y_low - self.shift))
        horizontal = hgap / np.sqrt(1.0 + high ** 4)
        return np.where(in_y, np.maximum(bound, horizontal), bound)

    def points(self, count):
        x = np.geomspace(self.x0, self.x1, count + 2)[1:-1]
        return x + 1j * (1.0 / x + self.shift)


class PlanarDomain:
    """
    A hyperbolic domain given by boundary pieces and an inside test.

    distance() is the minimum over pieces (exact for segments and arcs, a lower
    bound for hyperbolas); label() names the closest piece.
    """

    def __init__(self, kind: str, pieces: Sequence[BoundaryPiece], inside: Callable[[np.ndarray], np.ndarray],
                 description: Optional[dict] = None):
        if not pieces:
            raise ConfigurationError("a planar domain needs boundary pieces")
        self.kind = kind
        self.pieces = list(pieces)
        self._inside = inside
        self.description = description or {"kind": kind}
        self.labels = sorted({piece.label for piece in self.pieces})
        boxes = np.array([piece.box for piece in self.pieces])
        self.bounds = (boxes[:, 0].min(), boxes[:, 1].max(), boxes[:, 2].min(), boxes[:, 3].max())

    def inside(self, z) -> np.ndarray:
        return self._inside(np.asarray(z, dtype=complex))

    def nearest(self, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Distance bound and index of the closest piece.

        Pieces whose bounding box is already farther than the running minimum are skipped.
        """
        z = np.asarray(z, dtype=complex)
        best = np.full(z.shape, np.inf)
        which = np.zeros(z.shape, dtype=np.int64)
        for index, piece in enumerate(self.pieces):
            candidates = _rect_distance(z, piece.box) < best
            if not candidates.any():
                continue
            d = piece.distance(z[candidates])
            closer = d < best[candidates]
            spots = np.flatnonzero(candidates)[closer]
            best.flat[spots] = d[closer]
            which.flat[spots] = index
        return best, which

    def distance(self, z) -> np.ndarray:
        return self.nearest(z)[0]

    def label(self, z) -> np.ndarray:
        """Label of the closest boundary piece."""
        _, which = self.nearest(z)
        names = np.array([piece.label for piece in self.pieces])
        return names[which]

    def require_inside(self, a: complex) -> None:
        """
        Raises:
            DomainError: If a is not an interior point
        """
        if not bool(self.inside(np.asarray([a]))[0]) or not self.distance(np.asarray([a]))[0] > 0:
            raise DomainError(f"start point {a} is not inside the {self.kind} domain")

    def to_dict(self) -> dict:
        return dict(self.description)

    def __repr__(self) -> str:
        return f"PlanarDomain({self.description})"


def disk_domain(center: complex = 0j, radius: float = 1.0) -> PlanarDomain:
    """Open disk; boundary label "circle"."""
    center = complex(center)
    if radius <= 0:
        raise ConfigurationError(f"disk radius must be positive, got {radius}")
    return PlanarDomain(
        "disk", [CircleArc(center, radius)],
        lambda z: np.abs(z - center) < radius,
        {"kind": "disk", "center": [center.real, center.imag], "radius": radius},
    )


def slit_disk_domain(start: float = 0.5, angle: float = 0.0) -> PlanarDomain:
    """Unit disk minus the radial slit [start·e^{iα}, e^{iα}]; labels "circle" and "slit"."""
    if not 0 < start < 1:
        raise ConfigurationError(f"slit must start inside the disk, got {start}")
    unit = complex(math.cos(angle), math.sin(angle))
    slit = Segment(start * unit, unit, "slit")
    return PlanarDomain(
        "slit_disk", [CircleArc(0j, 1.0), slit],
        lambda z: (np.abs(z) < 1.0) & (slit.distance(z) > 0),
        {"kind": "slit_disk", "start": start, "angle": angle},
    )


def cut_disk_domain(cut: float = 0.5) -> PlanarDomain:
    """{|z| < 1, Re z < c}; labels "arc" and "chord"."""
    if not -1 < cut < 1:
        raise ConfigurationError(f"cut must lie in (-1, 1), got {cut}")
    opening = math.acos(cut)
    height = math.sqrt(1.0 - cut * cut)
    pieces = [
        CircleArc(0j, 1.0, opening, 2 * math.pi - 2 * opening, "arc"),
        Segment(complex(cut, -height), complex(cut, height), "chord"),
    ]
    return PlanarDomain(
        "cut_disk", pieces,
        lambda z: (np.abs(z) < 1.0) & (z.real < cut),
        {"kind": "cut_disk", "cut": cut},
    )


def half_plane_domain(radius: float = 1e4) -> PlanarDomain:
    """Right half-plane capped by |z| = radius; labels "axis" and "far"."""
    pieces = [
        Segment(complex(0, -radius), complex(0, radius), "axis"),
        CircleArc(0j, radius, -math.pi / 2, math.pi, FAR),
    ]
    return PlanarDomain(
        "half_plane", pieces,
        lambda z: z.real > 0,
        {"kind": "half_plane", "radius": radius},
    )


def in_region_r(z: np.ndarray) -> np.ndarray:
    """x > 0 and 1/x < y < 1/x + 4π."""
    x, y = z.real, z.imag
    safe = np.where(x > 0, x, 1.0)
    return (x > 0) & (y > 1.0 / safe) & (y < 1.0 / safe + FOUR_PI)


def region_r_domain(y_cap: float = Y_CAP, x_cap: float = X_CAP) -> PlanarDomain:
    """Region R with far caps at Im z = y_cap and Re z = x_cap."""
    pieces = [
        HyperbolaArc(0.0, 1.0 / y_cap, x_cap, "lower"),
        HyperbolaArc(FOUR_PI, 1.0 / (y_cap - FOUR_PI), x_cap, "upper"),
        Segment(complex(1.0 / y_cap, y_cap), complex(1.0 / (y_cap - FOUR_PI), y_cap), FAR),
        Segment(complex(x_cap, 1.0 / x_cap), complex(x_cap, 1.0 / x_cap + FOUR_PI), FAR),
    ]
    return PlanarDomain("regionR", pieces, in_region_r,
                        {"kind": "regionR", "y_cap": y_cap, "x_cap": x_cap})


def b_value(n: int) -> float:
    """b_n = 1/(4nπ), with b_0 = inf."""
    return math.inf if n == 0 else 1.0 / (FOUR_PI * n)


def hole_center(n: int) -> complex:
    """M_n = 1/(4πn - 2π) + 4πn·i, on the hyperbola y = 1/x + 2π."""
    return complex(1.0 / (FOUR_PI * n - 2.0 * math.pi), FOUR_PI * n)


def max_hole_width(n: int) -> float:
    """Largest admissible hole half-width: 0.9 × the room between M_n and b_n, b_{n-1}."""
    m = hole_center(n).real
    return HOLE_MARGIN * min(m - b_value(n), b_value(n - 1) - m)


@dataclass(frozen=True)
class BarrierSpec:
    """
    Barrier pair P_n^± at altitude 4nπ around the hole H_n = [M_n - δ, M_n + δ].

    P_n^+ is the horizontal segment [b_n, M_n - δ] plus a slant of slope -2 up to c_n^+ on
    y = 1/x; P_n^- is [M_n + δ, b_{n-1}] plus a slant of slope +2 up to c_n^- on
    y = 1/x + 4π.
    """
    n: int
    delta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ConfigurationError(f"barrier index must be a positive integer, got {self.n}")
        if not 0 < self.delta <= max_hole_width(self.n) / HOLE_MARGIN:
            raise ConfigurationError(f"hole half-width {self.delta} does not fit between the barriers")

    @property
    def altitude(self) -> float:
        return FOUR_PI * self.n

    @property
    def foot_plus(self) -> float:
        return hole_center(self.n).real - self.delta

    @property
    def foot_minus(self) -> float:
        return hole_center(self.n).real + self.delta

    @property
    def tip_plus(self) -> complex:
        """c_n^+: slant y = 4nπ - 2(x - x_f) meets y = 1/x, smaller root."""
        big = self.altitude + SLANT_SLOPE * self.foot_plus
        x = 2.0 / (big + math.sqrt(big * big - 8.0))
        return complex(x, 1.0 / x)

    @property
    def tip_minus(self) -> complex:
        """c_n^-: slant y = 4nπ + 2(x - x_f) meets y = 1/x + 4π."""
        b = FOUR_PI * (self.n - 1) - SLANT_SLOPE * self.foot_minus
        root = math.sqrt(b * b + 8.0)
        x = 2.0 / (b + root) if b >= 0 else (root - b) / 4.0
        return complex(x, 1.0 / x + FOUR_PI)

    def check(self) -> None:
        """
        Raises:
            ConfigurationError: If a slant rises 2π or more, or the hole leaves the segment
        """
        for tip in (self.tip_plus, self.tip_minus):
            if not FOUR_PI * (self.n + 1) - tip.imag > 2 * math.pi:
                raise ConfigurationError(f"barrier {self.n}: slant tip {tip} rises too high")
        if not b_value(self.n) < self.foot_plus < self.foot_minus < b_value(self.n - 1):
            raise ConfigurationError(f"barrier {self.n}: hole leaves the altitude segment")

    def pieces(self, x_cap: float = X_CAP) -> List[BoundaryPiece]:
        y = self.altitude
        right = min(b_value(self.n - 1), x_cap)
        return [
            Segment(complex(b_value(self.n), y), complex(self.foot_plus, y), BARRIER),
            Segment(complex(self.foot_plus, y), self.tip_plus, BARRIER),
            Segment(complex(self.foot_minus, y), complex(right, y), BARRIER),
            Segment(complex(self.foot_minus, y), self.tip_minus, BARRIER),
        ]

    def contains(self, z: np.ndarray) -> np.ndarray:
        """Closed barrier regions (inside R)."""
        x, y = z.real, z.imag
        above = y >= self.altitude
        plus = above & (x <= self.foot_plus) & (y <= self.altitude - SLANT_SLOPE * (x - self.foot_plus))
        minus = above & (x >= self.foot_minus) & (y <= self.altitude + SLANT_SLOPE * (x - self.foot_minus))
        return plus | minus

    def to_dict(self) -> dict:
        m = hole_center(self.n)
        return {
            "n": self.n,
            "delta": self.delta,
            "b_n": {"expr": f"1/(4*pi*{self.n})", "value": b_value(self.n)},
            "M_n": {"expr": f"1/(4*pi*{self.n} - 2*pi) + 4*pi*{self.n}*i", "value": [m.real, m.imag]},
            "c_plus": [self.tip_plus.real, self.tip_plus.imag],
            "c_minus": [self.tip_minus.real, self.tip_minus.imag],
        }


def make_barrier(n: int, delta: float) -> BarrierSpec:
    barrier = BarrierSpec(n, delta)
    barrier.check()
    return barrier


def omega_n_domain(n: int, delta: float, barriers: Dict[int, BarrierSpec], x_cap: float = X_CAP) -> PlanarDomain:
    """
    Ω_n = {z in R minus the barriers j < n : Im z < 4nπ}.

    The top edge [b_n, b_{n-1}] at altitude 4nπ is labelled "barrier", "hole", "barrier"
    around H_n = [M_n - δ, M_n + δ].

    Args:
        n (int): Level >= 1
        delta (float): Hole half-width used for labelling
        barriers (dict): Calibrated barriers for every j < n

    Returns:
        PlanarDomain of kind "omega_n"
    """
    missing = [j for j in range(1, n) if j not in barriers]
    if missing:
        raise ConfigurationError(f"Ω_{n} needs barriers {missing}")
    top = make_barrier(n, delta)
    y = top.altitude
    right = min(b_value(n - 1), x_cap)
    pieces: List[BoundaryPiece] = [
        HyperbolaArc(0.0, b_value(n), x_cap, "lower"),
        Segment(complex(b_value(n), y), complex(top.foot_plus, y), BARRIER),
        Segment(complex(top.foot_plus, y), complex(top.foot_minus, y), HOLE),
        Segment(complex(top.foot_minus, y), complex(right, y), BARRIER),
        Segment(complex(x_cap, 1.0 / x_cap), complex(x_cap, min(y, 1.0 / x_cap + FOUR_PI)), FAR),
    ]
    if n >= 2:
        pieces.insert(1, HyperbolaArc(FOUR_PI, b_value(n - 1), x_cap, "upper"))
    lower_barriers = [barriers[j] for j in range(1, n)]
    for barrier in lower_barriers:
        pieces.extend(barrier.pieces(x_cap))

    def inside(z):
        ok = in_region_r(z) & (z.imag < y) & (z.real < x_cap)
        for barrier in lower_barriers:
            ok &= ~barrier.contains(z)
        return ok

    return PlanarDomain("omega_n", pieces, inside, {"kind": "omega_n", "n": n, "delta": delta})


def omega_domain(barriers: Dict[int, BarrierSpec], y_cap: float = Y_CAP, x_cap: float = X_CAP) -> PlanarDomain:
    """
    Ω = R minus the barriers P_n^±, n = 1..n_max, with far caps.

    Args:
        barriers (dict): n -> BarrierSpec for n = 1..n_max

    Returns:
        PlanarDomain of kind "omega"
    """
    if not barriers or sorted(barriers) != list(range(1, max(barriers) + 1)):
        raise ConfigurationError("Ω needs barriers 1..n_max without gaps")
    pieces: List[BoundaryPiece] = [
        HyperbolaArc(0.0, 1.0 / y_cap, x_cap, "lower"),
        HyperbolaArc(FOUR_PI, 1.0 / (y_cap - FOUR_PI), x_cap, "upper"),
        Segment(complex(1.0 / y_cap, y_cap), complex(1.0 / (y_cap - FOUR_PI), y_cap), FAR),
        Segment(complex(x_cap, 1.0 / x_cap), complex(x_cap, 1.0 / x_cap + FOUR_PI), FAR),
    ]
    ordered = [barriers[n] for n in sorted(barriers)]
    for barrier in ordered:
        pieces.extend(barrier.pieces(x_cap))

    def inside(z):
        ok = in_region_r(z) & (z.imag < y_cap) & (z.real < x_cap)
        for barrier in ordered:
            ok &= ~barrier.contains(z)
        return ok

    return PlanarDomain(
        "omega", pieces, inside,
        {"kind": "omega", "barriers": [b.to_dict() for b in ordered], "y_cap": y_cap, "x_cap": x_cap},
    )


def check_containment(inner: PlanarDomain, outer: PlanarDomain, hole_label: Optional[str],
                      samples: int = 10_000, seed: int = 0) -> None:
    """
    Sampled checks of inner ⊆ outer and ∂inner ⊆ ∂outer ∪ H.

    Raises:
        DomainError: If a sampled point of inner (or of its non-hole boundary) is not
            in outer (or on its boundary)
    """
    rng = np.random.default_rng(seed)
    xmin, xmax, ymin, ymax = inner.bounds
    z = rng.uniform(xmin, xmax, samples) + 1j * rng.uniform(ymin, ymax, samples)
    leaked = inner.inside(z) & ~outer.inside(z)
    if leaked.any():
        raise DomainError(f"{int(leaked.sum())} sampled points of {inner.kind} lie outside {outer.kind}")
    for piece in inner.pieces:
        if piece.label == hole_label:
            continue
        points = piece.points(64)
        points = points[inner.inside(points) | (inner.distance(points) < 1e-9)]
        if points.size and np.max(outer.distance(points)) > 1e-9:
            raise DomainError(f"boundary piece '{piece.label}' of {inner.kind} is not on ∂{outer.kind}")

"""Declarative external-field sources and local field evaluation."""

from dataclasses import dataclass, field

import numpy as np

from ..core.vectors import vec3
from ..errors import SingularPoint
from ..units import PHI0


def _unit(v):
    v = vec3(v)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("direction vector must be nonzero")
    return v / n


def _axial_split(x, point, direction):
    """Axial coordinate and perpendicular offset of points ``x`` from a line."""
    rel = np.atleast_2d(x) - point
    z = rel @ direction
    perp = rel - z[:, None] * direction
    return z, perp


@dataclass(frozen=True)
class CylinderRegion:
    """Cylinder centred at ``axis_point``; ``half_length=None`` means infinite."""

    axis_point: np.ndarray
    axis_dir: np.ndarray
    radius: float
    half_length: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "axis_point", vec3(self.axis_point))
        object.__setattr__(self, "axis_dir", _unit(self.axis_dir))
        if not self.radius > 0:
            raise ValueError("cylinder radius must be > 0")
        if self.half_length is not None and not self.half_length > 0:
            raise ValueError("half_length must be > 0")

    def contains(self, x):
        z, perp = _axial_split(x, self.axis_point, self.axis_dir)
        inside = np.linalg.norm(perp, axis=1) < self.radius
        if self.half_length is not None:
            inside &= np.abs(z) < self.half_length
        return inside

    def segment_clearance(self, a, b):
        """Smallest distance from segment [a, b] to the axis, minus the radius."""
        return _segment_line_distance(a, b, self.axis_point, self.axis_dir) - self.radius

    def to_dict(self):
        return {"shape": "cylinder", "axis_point": self.axis_point.tolist(),
                "axis_dir": self.axis_dir.tolist(), "radius": self.radius,
                "half_length": self.half_length}


@dataclass(frozen=True)
class BoxRegion:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo, hi = vec3(self.lo), vec3(self.hi)
        if np.any(hi <= lo):
            raise ValueError("box needs hi > lo on every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, x):
        x = np.atleast_2d(x)
        return np.all((x > self.lo) & (x < self.hi), axis=1)

    def segment_clearance(self, a, b):
        # slab test: negative when the segment enters the box
        d = b - a
        t0, t1 = 0.0, 1.0
        for k in range(3):
            if d[k] == 0.0:
                if not self.lo[k] <= a[k] <= self.hi[k]:
                    return 1.0
                continue
            ta, tb = sorted(((self.lo[k] - a[k]) / d[k], (self.hi[k] - a[k]) / d[k]))
            t0, t1 = max(t0, ta), min(t1, tb)
            if t0 > t1:
                return 1.0
        return -1.0

    def to_dict(self):
        return {"shape": "box", "lo": self.lo.tolist(), "hi": self.hi.tolist()}


def _segment_line_distance(a, b, p, u):
    # distance between segment a->b and the infinite line p + s u
    a, b = vec3(a), vec3(b)
    ts = np.linspace(0.0, 1.0, 2)
    d = b - a
    w0 = a - p
    dd, du, uu = d @ d, d @ u, u @ u
    denom = dd * uu - du * du
    if denom > 1e-300:
        t = (du * (w0 @ u) - uu * (w0 @ d)) / denom
        ts = np.append(ts, np.clip(t, 0.0, 1.0))
    best = np.inf
    for t in ts:
        q = a + t * d - p
        best = min(best, np.linalg.norm(q - (q @ u) * u))
    return best


@dataclass(frozen=True)
class IdealSolenoid:
    """Infinite solenoid; ``flux`` is in units of PHI0."""

    axis_point: np.ndarray
    axis_dir: np.ndarray
    radius: float
    flux: float

    def __post_init__(self):
        object.__setattr__(self, "axis_point", vec3(self.axis_point))
        object.__setattr__(self, "axis_dir", _unit(self.axis_dir))
        if not self.radius > 0:
            raise ValueError("solenoid radius must be > 0")
        if not np.isfinite(self.flux):
            raise ValueError("flux must be finite")

    @property
    def region(self):
        return CylinderRegion(self.axis_point, self.axis_dir, self.radius)

    @property
    def b_interior(self):
        return self.flux * PHI0 / (np.pi * self.radius ** 2) * self.axis_dir

    def E(self, x):
        return np.zeros_like(np.atleast_2d(x), dtype=float)

    def B(self, x):
        inside = self.region.contains(x)
        return np.where(inside[:, None], self.b_interior, 0.0)

    def to_dict(self):
        return {"type": "solenoid", "axis_point": self.axis_point.tolist(),
                "axis_dir": self.axis_dir.tolist(), "radius": self.radius,
                "flux_over_phi0": self.flux}


@dataclass(frozen=True)
class UniformBRegion:
    B_field: np.ndarray
    region: CylinderRegion | BoxRegion

    def __post_init__(self):
        object.__setattr__(self, "B_field", vec3(self.B_field))

    def E(self, x):
        return np.zeros_like(np.atleast_2d(x), dtype=float)

    def B(self, x):
        inside = self.region.contains(x)
        return np.where(inside[:, None], self.B_field, 0.0)

    def to_dict(self):
        return {"type": "uniform_b", "B": self.B_field.tolist(), "region": self.region.to_dict()}


@dataclass(frozen=True)
class PointCharge:
    q: float
    position: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", vec3(self.position))

    def E(self, x):
        rel = np.atleast_2d(x) - self.position
        r = np.linalg.norm(rel, axis=1)
        if np.any(r == 0.0):
            raise SingularPoint(f"field evaluated on point charge at {self.position}")
        return self.q * rel / r[:, None] ** 3

    def B(self, x):
        return np.zeros_like(np.atleast_2d(x), dtype=float)

    def to_dict(self):
        return {"type": "point_charge", "q": self.q, "position": self.position.tolist()}


@dataclass(frozen=True)
class FieldSample:
    E: np.ndarray
    B: np.ndarray
    position: np.ndarray


@dataclass(frozen=True)
class FieldConfiguration:
    sources: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))

    def __add__(self, other):
        return FieldConfiguration(self.sources + other.sources)

    def E(self, x):
        out = np.zeros_like(np.atleast_2d(x), dtype=float)
        for s in self.sources:
            out = out + s.E(x)
        return out

    def B(self, x):
        out = np.zeros_like(np.atleast_2d(x), dtype=float)
        for s in self.sources:
            out = out + s.B(x)
        return out

    def magnetic_sources(self):
        return [s for s in self.sources if not isinstance(s, PointCharge)]

    def to_dict(self):
        return {"sources": [s.to_dict() for s in self.sources]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(_source_from_dict(s) for s in data.get("sources", [])))


def _region_from_dict(d):
    if d["shape"] == "cylinder":
        return CylinderRegion(d["axis_point"], d.get("axis_dir", [0, 0, 1]), d["radius"], d.get("half_length"))
    if d["shape"] == "box":
        return BoxRegion(d["lo"], d["hi"])
    raise ValueError(f"unknown region shape {d['shape']!r}")


def _source_from_dict(d):
    kind = d["type"]
    if kind == "solenoid":
        return IdealSolenoid(d["axis_point"], d.get("axis_dir", [0, 0, 1]), d["radius"],
                             d["flux_over_phi0"])
    if kind == "uniform_b":
        return UniformBRegion(d["B"], _region_from_dict(d["region"]))
    if kind == "point_charge":
        return PointCharge(d["q"], d["position"])
    raise ValueError(f"unknown source type {kind!r}")


def eval_fields(config, r):
    """Superposed E and B of ``config`` at a single point ``r``."""
    r = vec3(r)
    return FieldSample(config.E(r)[0], config.B(r)[0], r)

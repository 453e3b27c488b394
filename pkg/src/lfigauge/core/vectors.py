from dataclasses import dataclass

import numpy as np


def vec3(value) -> np.ndarray:
    """Return ``value`` as a finite float array of shape (3,)."""
    arr = np.asarray(value, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"non-finite vector component in {arr}")
    return arr


@dataclass(frozen=True)
class FourVector:
    """Time component plus spatial part, metric (-, +, +, +)."""

    t_component: float
    spatial: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.t_component):
            raise ValueError("non-finite time component")
        object.__setattr__(self, "spatial", vec3(self.spatial))

    def lower(self) -> "FourVector":
        return FourVector(-self.t_component, self.spatial.copy())

    def dot(self, other: "FourVector") -> float:
        return float(-self.t_component * other.t_component + self.spatial @ other.spatial)

    def as_array(self) -> np.ndarray:
        return np.concatenate([[self.t_component], self.spatial])


@dataclass(frozen=True)
class ToleranceSpec:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_iterations: int = 10_000

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            val = getattr(self, name)
            if not 0.0 < val < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {val}")
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be >= 1")

    def target(self, value_norm: float) -> float:
        return max(self.abs_tol, self.rel_tol * value_norm)

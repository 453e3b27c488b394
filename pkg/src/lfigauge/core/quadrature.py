"""Adaptive 3-D cubature over boxes, cylinders and balls.

Each cell is integrated with a tensor-product Gauss-Kronrod (7, 15) rule.
The Gauss/Kronrod difference along each axis gives a per-axis error
indicator; the cell with the largest error is bisected along its worst
axis. Cells are processed in a deterministic order (error, then creation
index) so results are bit-reproducible.
"""

import heapq
from dataclasses import dataclass

import numpy as np

from ..errors import NonConvergence
from .vectors import ToleranceSpec, vec3

# QUADPACK qk15 abscissae/weights (non-negative half).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes of the half rule.
_wg_half = np.zeros(8)
_wg_half[1::2] = _WG
GAUSS_WEIGHTS = np.concatenate([_wg_half[:-1], _wg_half[::-1]])


def _frame(axis):
    e3 = vec3(axis)
    e3 = e3 / np.linalg.norm(e3)
    trial = np.array([1.0, 0.0, 0.0]) if abs(e3[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = trial - (trial @ e3) * e3
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(e3, e1)
    return e1, e2, e3


@dataclass(frozen=True)
class Box:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo, hi = vec3(self.lo), vec3(self.hi)
        if np.any(hi <= lo):
            raise ValueError("box needs hi > lo on every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def coord_bounds(self):
        return self.lo, self.hi

    def to_cartesian(self, u):
        return u, np.ones(len(u))

    def contains(self, x):
        x = np.atleast_2d(x)
        return np.all((x >= self.lo) & (x <= self.hi), axis=1)


@dataclass(frozen=True)
class Cylinder:
    """Cylinder in coordinates (s, phi, z) about ``axis_dir`` through ``axis_point``."""

    axis_point: np.ndarray
    axis_dir: np.ndarray
    radius: float
    z_min: float
    z_max: float
    inner_radius: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "axis_point", vec3(self.axis_point))
        d = vec3(self.axis_dir)
        object.__setattr__(self, "axis_dir", d / np.linalg.norm(d))
        if not 0.0 <= self.inner_radius < self.radius:
            raise ValueError("need 0 <= inner_radius < radius")
        if not self.z_max > self.z_min:
            raise ValueError("need z_max > z_min")

    def coord_bounds(self):
        return (np.array([self.inner_radius, 0.0, self.z_min]),
                np.array([self.radius, 2 * np.pi, self.z_max]))

    def to_cartesian(self, u):
        e1, e2, e3 = _frame(self.axis_dir)
        s, phi, z = u[:, 0], u[:, 1], u[:, 2]
        pts = (self.axis_point
               + (s * np.cos(phi))[:, None] * e1
               + (s * np.sin(phi))[:, None] * e2
               + z[:, None] * e3)
        return pts, s


@dataclass(frozen=True)
class Ball:
    """Spherical shell in (r, theta, phi) around ``center``.

    ``radius=inf`` compactifies the radial coordinate as
    r = radial_scale * t / (1 - t), t in [t_in, 1).
    """

    center: np.ndarray
    radius: float
    inner_radius: float = 0.0
    polar_axis: tuple = (0.0, 0.0, 1.0)
    radial_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", vec3(self.center))
        if not 0.0 <= self.inner_radius < self.radius:
            raise ValueError("need 0 <= inner_radius < radius")
        if self.radial_scale <= 0:
            raise ValueError("radial_scale must be positive")

    @property
    def unbounded(self):
        return np.isinf(self.radius)

    def coord_bounds(self):
        if self.unbounded:
            r0 = self.inner_radius
            t_in = r0 / (r0 + self.radial_scale)
            return np.array([t_in, 0.0, 0.0]), np.array([1.0, np.pi, 2 * np.pi])
        return (np.array([self.inner_radius, 0.0, 0.0]),
                np.array([self.radius, np.pi, 2 * np.pi]))

    def to_cartesian(self, u):
        e1, e2, e3 = _frame(self.polar_axis)
        t, theta, phi = u[:, 0], u[:, 1], u[:, 2]
        if self.unbounded:
            r = self.radial_scale * t / (1.0 - t)
            dr = self.radial_scale / (1.0 - t) ** 2
        else:
            r, dr = t, 1.0
        st = np.sin(theta)
        pts = (self.center
               + (r * st * np.cos(phi))[:, None] * e1
               + (r * st * np.sin(phi))[:, None] * e2
               + (r * np.cos(theta))[:, None] * e3)
        return pts, r * r * st * dr


@dataclass(frozen=True)
class QuadResult:
    value: object
    error: float
    n_cells: int
    n_evals: int


def _cell_rule(f, domain, lo, hi, mask):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    axes = [mid[a] + half[a] * NODES for a in range(3)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    pts, jac = domain.to_cartesian(grid)
    vals = np.asarray(f(pts), dtype=float)
    scalar = vals.ndim == 1
    vals = vals.reshape(len(pts), -1) * jac[:, None]
    if mask is not None:
        center, eps = mask
        inside = np.einsum("ij,ij->i", pts - center, pts - center) < eps * eps
        vals[inside] = 0.0
    vals = vals.reshape(15, 15, 15, -1)
    scale = np.prod(half)
    wk, wg = KRONROD_WEIGHTS, GAUSS_WEIGHTS
    kron = np.einsum("i,j,k,ijkc->c", wk, wk, wk, vals) * scale
    diffs = np.array([
        np.max(np.abs(kron - np.einsum("i,j,k,ijkc->c", *w, vals) * scale))
        for w in ((wg, wk, wk), (wk, wg, wk), (wk, wk, wg))
    ])
    return kron, diffs, scalar


def integrate_adaptive_3d(f, domain, tol=None, singular_point=None, epsilon=None):
    """Integrate ``f`` over ``domain`` to ``tol``.

    ``f`` maps an (n, 3) array of Cartesian points to an (n,) or (n, k)
    array. A flagged ``singular_point`` is handled by excising a ball of
    radius ``epsilon`` around it; the caller chooses ``epsilon`` from its own
    bound on the omitted contribution. For a ``Ball`` centred on the
    singular point the excision is exact (inner radius raised to epsilon).
    """
    tol = tol or ToleranceSpec()
    mask = None
    if singular_point is not None:
        if epsilon is None or epsilon <= 0:
            raise ValueError("a singular point needs a positive epsilon")
        sp = vec3(singular_point)
        if isinstance(domain, Ball) and np.allclose(sp, domain.center, rtol=0, atol=1e-15):
            if domain.inner_radius < epsilon:
                domain = Ball(domain.center, domain.radius, epsilon,
                              domain.polar_axis, domain.radial_scale)
        else:
            mask = (sp, float(epsilon))

    lo, hi = domain.coord_bounds()
    counter = 0
    heap = []
    cells = {}
    kron, diffs, scalar = _cell_rule(f, domain, lo, hi, mask)
    cells[counter] = (kron, diffs.sum())
    heapq.heappush(heap, (-diffs.sum(), counter, lo, hi, diffs))
    total = kron.copy()
    total_err = diffs.sum()
    n_evals = 15 ** 3
    splits = 0

    while total_err > tol.target(float(np.max(np.abs(total)))):
        if splits >= tol.max_iterations:
            raise NonConvergence(
                f"cubature: {splits} splits, error {total_err:.3e} above target "
                f"{tol.target(float(np.max(np.abs(total)))):.3e}")
        _, idx, clo, chi, cdiffs = heapq.heappop(heap)
        old_val, old_err = cells.pop(idx)
        axis = int(np.argmax(cdiffs))
        cut = 0.5 * (clo[axis] + chi[axis])
        left_hi = chi.copy()
        left_hi[axis] = cut
        right_lo = clo.copy()
        right_lo[axis] = cut
        total = total - old_val
        total_err -= old_err
        for a, b in ((clo, left_hi), (right_lo, chi)):
            counter += 1
            val, d, _ = _cell_rule(f, domain, a, b, mask)
            cells[counter] = (val, d.sum())
            heapq.heappush(heap, (-d.sum(), counter, a, b, d))
            total = total + val
            total_err += d.sum()
            n_evals += 15 ** 3
        splits += 1
        if splits % 64 == 0:
            # resum to keep the running totals from drifting
            total = np.sum([cells[k][0] for k in sorted(cells)], axis=0)
            total_err = float(sum(cells[k][1] for k in sorted(cells)))

    total = np.sum([cells[k][0] for k in sorted(cells)], axis=0)
    total_err = float(sum(cells[k][1] for k in sorted(cells)))
    value = float(total[0]) if scalar else total
    return QuadResult(value, total_err, len(cells), n_evals)

"""Field-momentum four-vector (pi0, pi) of a probe charge in external fields.

    pi0 = 1/(4 pi c) * integral E_e . E  d^3x
    pi  = 1/(4 pi c) * integral E_e x B  d^3x

with E_e the Coulomb field of the probe. For magnetostatic sources pi equals
(e/c) times the Coulomb-gauge vector potential, which gives the closed forms
used as the independent oracle.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..core.quadrature import Ball, Box, Cylinder, integrate_adaptive_3d
from ..core.vectors import ToleranceSpec, vec3
from ..errors import PathThroughSource, SingularPoint, UnsupportedSource
from ..units import C, PHI0
from .sources import (BoxRegion, CylinderRegion, IdealSolenoid, PointCharge,
                      UniformBRegion, _axial_split)


@dataclass(frozen=True)
class FieldMomentum:
    pi0: float
    pi: np.ndarray
    position: np.ndarray
    method: str
    pi0_error: float = 0.0
    pi_error: float = 0.0


@dataclass(frozen=True)
class Path:
    points: tuple
    closed: bool = False

    def __post_init__(self):
        pts = tuple(vec3(p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("a path needs at least 2 points")
        object.__setattr__(self, "points", pts)
        for a, b in self.segments():
            if np.linalg.norm(b - a) == 0.0:
                raise ValueError("zero-length path segment")

    def segments(self):
        pts = list(self.points)
        if self.closed and not np.array_equal(pts[0], pts[-1]):
            pts.append(pts[0])
        return list(zip(pts[:-1], pts[1:]))


def _as_solenoid(src):
    """Closed-form-capable magnetic source as (axis_point, axis_dir, radius, flux/PHI0)."""
    if isinstance(src, IdealSolenoid):
        return src.axis_point, src.axis_dir, src.radius, src.flux
    if isinstance(src, UniformBRegion) and isinstance(src.region, CylinderRegion) \
            and src.region.half_length is None:
        reg = src.region
        b_par = src.B_field @ reg.axis_dir
        if np.linalg.norm(src.B_field - b_par * reg.axis_dir) > 1e-12 * max(1.0, abs(b_par)):
            raise UnsupportedSource("uniform-B cylinder with B not along its axis")
        return reg.axis_point, reg.axis_dir, reg.radius, b_par * np.pi * reg.radius ** 2 / PHI0
    raise UnsupportedSource(f"no closed form for {type(src).__name__}")


def _solenoid_pi(x, point, direction, radius, flux, probe_charge):
    _, perp = _axial_split(x, point, direction)
    rho = np.linalg.norm(perp, axis=1)
    phi_gauss = flux * PHI0
    b = phi_gauss / (np.pi * radius ** 2)
    out = np.empty_like(perp)
    inside = rho < radius
    # interior: (e/2c) B x r_perp ; exterior: e Phi / (2 pi c rho) phi_hat
    out[inside] = probe_charge * b / (2 * C) * np.cross(direction, perp[inside])
    outside = ~inside
    out[outside] = (probe_charge * phi_gauss / (2 * np.pi * C)
                    * np.cross(direction, perp[outside]) / rho[outside, None] ** 2)
    return out


def pi_closed_form_array(config, probe_charge, x):
    """Vectorised closed-form (pi0, pi) at points ``x`` of shape (n, 3)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    pi = np.zeros_like(x)
    pi0 = np.zeros(len(x))
    for src in config.sources:
        if isinstance(src, PointCharge):
            d = np.linalg.norm(x - src.position, axis=1)
            if np.any(d == 0.0):
                raise SingularPoint("probe on a point-charge source")
            pi0 = pi0 + probe_charge * src.q / (C * d)
        else:
            pi = pi + _solenoid_pi(x, *_as_solenoid(src), probe_charge)
    return pi0, pi


def pi_closed_form(config, probe_charge, probe_pos):
    p = vec3(probe_pos)
    pi0, pi = pi_closed_form_array(config, probe_charge, p)
    return FieldMomentum(float(pi0[0]), pi[0], p, "closed_form")


def _coulomb(x, center, charge):
    rel = x - center
    r = np.linalg.norm(rel, axis=1)
    return charge * rel / r[:, None] ** 3


def _target(tol, scale):
    return max(tol.abs_tol, tol.rel_tol * scale)


def _pi_magnetic(src, probe_charge, p, tol):
    if isinstance(src, UniformBRegion) and not (
            isinstance(src.region, CylinderRegion) and src.region.half_length is None):
        b = src.B_field
        reg = src.region
        if isinstance(reg, BoxRegion):
            domain = Box(reg.lo, reg.hi)
            inside = bool(reg.contains(p)[0])
        else:
            domain = Cylinder(reg.axis_point, reg.axis_dir, reg.radius,
                              -reg.half_length, reg.half_length)
            inside = bool(reg.contains(p)[0])
        scale = abs(probe_charge) * np.linalg.norm(b)
        budget = _target(tol, scale)
        sub = ToleranceSpec(tol.rel_tol, 0.8 * budget, tol.max_iterations)
        extra = {}
    else:
        if isinstance(src, IdealSolenoid):
            point, direction, radius = src.axis_point, src.axis_dir, src.radius
            b = src.b_interior
        else:
            reg = src.region
            point, direction, radius = reg.axis_point, reg.axis_dir, reg.radius
            b = src.B_field
        z_p, perp = _axial_split(p, point, direction)
        rho_p = float(np.linalg.norm(perp[0]))
        inside = rho_p < radius
        bmag = float(np.linalg.norm(b))
        # magnitude scale of the answer, only used to turn rel_tol into a budget
        scale = abs(probe_charge) * bmag * radius ** 2 / (2 * C * max(rho_p, radius))
        budget = _target(tol, scale)
        # transverse Coulomb tail beyond |z| > L is bounded by |e| B R^2 d / (4 c L^2)
        d_max = rho_p + radius
        l_cut = math.sqrt(abs(probe_charge) * bmag * radius ** 2 * d_max / (4 * C * 0.1 * budget))
        l_cut = max(l_cut, 10 * d_max)
        domain = Cylinder(point, direction, radius, z_p[0] - l_cut, z_p[0] + l_cut)
        sub = ToleranceSpec(tol.rel_tol, 0.8 * budget, tol.max_iterations)
    if inside:
        # excised ball: omitted part bounded by |e| |B| eps / c
        eps = 0.1 * budget * C / max(abs(probe_charge) * np.linalg.norm(b), 1e-300)
        extra = {"singular_point": p, "epsilon": eps}
    else:
        extra = {}

    def integrand(x):
        return np.cross(_coulomb(x, p, probe_charge), b) / (4 * np.pi * C)

    return integrate_adaptive_3d(integrand, domain, sub, **extra)


def _pi0_charge(src, probe_charge, p, tol):
    # probe-centred spherical coordinates: the r^2 Jacobian cancels the
    # probe's own 1/r^2 singularity, so no excision is needed here
    d = float(np.linalg.norm(src.position - p))
    if d == 0.0:
        raise SingularPoint("probe on a point-charge source")
    domain = Ball(p, np.inf, 0.0, tuple(src.position - p), radial_scale=d)
    scale = abs(probe_charge * src.q) / (C * d)

    def integrand(x):
        e_probe = _coulomb(x, p, probe_charge)
        e_src = _coulomb(x, src.position, src.q)
        return np.einsum("ij,ij->i", e_probe, e_src) / (4 * np.pi * C)

    sub = ToleranceSpec(tol.rel_tol, _target(tol, scale), tol.max_iterations)
    return integrate_adaptive_3d(integrand, domain, sub)


def pi_quadrature(config, probe_charge, probe_pos, tol=None):
    """(pi0, pi) by direct cubature, one source at a time."""
    tol = tol or ToleranceSpec(1e-6, 1e-9, 20_000)
    p = vec3(probe_pos)
    pi0, pi = 0.0, np.zeros(3)
    err0, err = 0.0, 0.0
    for src in config.sources:
        if isinstance(src, PointCharge):
            res = _pi0_charge(src, probe_charge, p, tol)
            pi0 += res.value
            err0 += res.error
        else:
            res = _pi_magnetic(src, probe_charge, p, tol)
            pi = pi + res.value
            err += res.error
    return FieldMomentum(pi0, pi, p, "quadrature", err0, err)


def pi_field(config, probe_charge, x, method="closed_form", tol=None):
    """Spatial pi at points ``x`` (n, 3) by the requested method."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if method == "closed_form":
        return pi_closed_form_array(config, probe_charge, x)[1]
    if method == "quadrature":
        return np.array([pi_quadrature(config, probe_charge, xi, tol).pi for xi in x])
    raise ValueError(f"unknown method {method!r}")


def _check_clearance(config, segments):
    for src in config.magnetic_sources():
        region = src.region
        for a, b in segments:
            if region.segment_clearance(a, b) <= 0.0:
                raise PathThroughSource(
                    f"segment {a.tolist()} -> {b.tolist()} meets the support of {type(src).__name__}")


def line_integral_pi(config, probe_charge, path, tol=None, method="closed_form", nodes=16):
    """Integral of pi . dr along a polyline.

    ``method="closed_form"`` uses adaptive 1-D quadrature per segment;
    ``method="quadrature"`` evaluates pi by cubature at ``nodes``
    Gauss-Legendre points per segment.
    """
    tol = tol or ToleranceSpec(1e-12, 1e-13, 200)
    segments = path.segments()
    _check_clearance(config, segments)
    parts = []
    if method == "closed_form":
        for a, b in segments:
            d = b - a

            def f(t, a=a, d=d):
                return float(pi_closed_form_array(config, probe_charge, a + t * d)[1][0] @ d)

            val, _ = quad(f, 0.0, 1.0, epsabs=tol.abs_tol / len(segments), epsrel=tol.rel_tol,
                          limit=tol.max_iterations)
            parts.append(val)
    elif method == "quadrature":
        t, w = np.polynomial.legendre.leggauss(nodes)
        t, w = 0.5 * (t + 1.0), 0.5 * w
        sub = ToleranceSpec(1e-6, 1e-9, 20_000)
        for a, b in segments:
            d = b - a
            pts = a + t[:, None] * d
            pis = pi_field(config, probe_charge, pts, "quadrature", sub)
            parts.append(float(w @ (pis @ d)))
    else:
        raise ValueError(f"unknown method {method!r}")
    return math.fsum(parts)


def _neville_at_zero(h, values):
    """Polynomial extrapolation of values(h) to h = 0; returns (value, error)."""
    table = list(values)
    prev = table[-1]
    n = len(h)
    best = table[-1]
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            table[i] = (h[i] * table[i + 1] - h[j] * table[i]) / (h[i] - h[j])
        prev, best = best, table[0]
    return best, abs(best - prev)


def line_integral_to_infinity(config, probe_charge, point, direction, r_inf=1000.0, levels=4,
                              tol=None):
    """Integral of pi . dr along the infinite line point + s*direction.

    Truncates at |s| <= R for R = r_inf * 2**k and extrapolates in 1/R.
    Returns (value, error_estimate).
    """
    p = vec3(point)
    u = vec3(direction)
    u = u / np.linalg.norm(u)
    radii = [r_inf * 2.0 ** k for k in range(levels)]
    vals = []
    for R in radii:
        path = Path((p - R * u, p, p + R * u))
        vals.append(line_integral_pi(config, probe_charge, path, tol))
    return _neville_at_zero([1.0 / R for R in radii], vals)


def field_tensor(sample, probe_charge):
    """(e/c) F^{mu nu} from local E and B, metric (-, +, +, +)."""
    g = np.zeros((4, 4))
    E, B = sample.E, sample.B
    g[0, 1:] = E
    g[1:, 0] = -E
    g[1, 2], g[2, 3], g[3, 1] = B[2], B[0], B[1]
    g[2, 1], g[3, 2], g[1, 3] = -B[2], -B[0], -B[1]
    return probe_charge / C * g


def local_field_tensor(config, probe_charge, probe_pos, h=1e-4, method="closed_form", tol=None):
    """G^{mu nu} = d^mu pi^nu - d^nu pi^mu by central differences (static fields)."""
    p = vec3(probe_pos)
    stencil = np.array([p + s * h * e for e in np.eye(3) for s in (1.0, -1.0)])
    for src in config.sources:
        if isinstance(src, PointCharge):
            if np.linalg.norm(p - src.position) <= 2 * h:
                raise SingularPoint("probe within the difference stencil of a point charge")
        else:
            flags = src.region.contains(np.vstack([p, stencil]))
            if flags.any() and not flags.all():
                raise SingularPoint("difference stencil straddles a source boundary")
    if method == "closed_form":
        pi0, pi = pi_closed_form_array(config, probe_charge, stencil)
    else:
        fm = [pi_quadrature(config, probe_charge, x, tol) for x in stencil]
        pi0 = np.array([f.pi0 for f in fm])
        pi = np.array([f.pi for f in fm])
    # grad[i, nu] = d_i pi^nu with pi^0 first
    four = np.column_stack([pi0, pi])
    grad = (four[0::2] - four[1::2]) / (2 * h)
    g = np.zeros((4, 4))
    g[0, 1:] = -grad[:, 0]
    g[1:, 0] = grad[:, 0]
    g[1:, 1:] = grad[:, 1:] - grad[:, 1:].T
    return g

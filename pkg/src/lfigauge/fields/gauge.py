"""Gauge functions as physical redistributions of distant fields.

A gauge function Lambda maps one configuration onto another,
pi -> pi - grad Lambda, while the local E and B seen by the probe stay
fixed. Around a shifted flux Lambda is multivalued; such functions are
carried by their gradient plus a declared branch-cut ray.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from ..core.quadrature import _frame
from ..core.vectors import vec3
from ..errors import NotGaugeEquivalent
from ..units import C, PHI0
from .momentum import _as_solenoid, pi_closed_form_array
from .sources import BoxRegion, FieldConfiguration, IdealSolenoid, PointCharge


@dataclass(frozen=True)
class GaugeFunction:
    kind: str
    gradient: object
    value: object = None
    time_rate: float = 0.0
    winding_flux: float = 0.0
    branch_cut: tuple | None = None

    @classmethod
    def analytic(cls, value, gradient, time_rate=0.0):
        return cls("analytic", gradient, value, time_rate)

    @classmethod
    def flux_shift(cls, solenoid, delta_flux, probe_charge=1.0):
        """Lambda = (e dPhi / 2 pi c) * azimuth about ``solenoid``'s axis."""
        point, direction = solenoid.axis_point, solenoid.axis_dir
        e1, e2, _ = _frame(direction)
        k = probe_charge * delta_flux * PHI0 / (2 * np.pi * C)

        def value(x):
            rel = np.atleast_2d(x) - point
            return k * np.arctan2(rel @ e2, rel @ e1)

        def gradient(x):
            rel = np.atleast_2d(x) - point
            perp = rel - np.outer(rel @ direction, direction)
            return k * np.cross(direction, perp) / np.einsum("ij,ij->i", perp, perp)[:, None]

        # arctan2 jumps across the ray along -e1
        return cls("flux_shift", gradient, value, 0.0, delta_flux, (point, -e1))

    def check_gradient(self, points, h=1e-5, rel=1e-6):
        """Max relative mismatch of declared gradient vs central differences.

        Raises ValueError above ``rel``.
        """
        if self.value is None:
            raise ValueError("gauge function has no value closure")
        pts = np.atleast_2d(points)
        fd = np.column_stack([
            (self.value(pts + h * e) - self.value(pts - h * e)) / (2 * h) for e in np.eye(3)])
        grad = self.gradient(pts)
        worst = float(np.max(np.linalg.norm(fd - grad, axis=1)
                             / np.maximum(np.linalg.norm(grad, axis=1), 1e-300)))
        if worst > rel:
            raise ValueError(f"gradient inconsistent with value: {worst:.3e}")
        return worst


def shift_flux(config, index, delta_flux):
    src = config.sources[index]
    if not isinstance(src, IdealSolenoid):
        raise TypeError("flux shifts apply to ideal solenoids")
    sources = list(config.sources)
    sources[index] = replace(src, flux=src.flux + delta_flux)
    return FieldConfiguration(tuple(sources))


def _curl(f, pts, h):
    d = [(f(pts + h * e) - f(pts - h * e)) / (2 * h) for e in np.eye(3)]
    # d[i][:, j] = d_i f_j
    return np.column_stack([d[1][:, 2] - d[2][:, 1], d[2][:, 0] - d[0][:, 2],
                            d[0][:, 1] - d[1][:, 0]])


def _winding_flux(config):
    total = 0.0
    for src in config.magnetic_sources():
        try:
            total += _as_solenoid(src)[3]
        except Exception:
            continue
    return total


def apply_gauge(config_a, config_b, region, probe_charge=1.0, n_probe=5, field_tol=1e-10,
                curl_tol=1e-6, h=1e-4):
    """Gauge function taking ``config_a`` to ``config_b`` on a convex probe box.

    Returns Lambda with grad Lambda = pi_a - pi_b on ``region``. Raises
    NotGaugeEquivalent when the local fields differ there or when the
    pi difference is not curl-free.
    """
    if not isinstance(region, BoxRegion):
        region = BoxRegion(*region)
    axes = [region.lo[k] + (np.arange(n_probe) + 0.5) / n_probe * (region.hi[k] - region.lo[k])
            for k in range(3)]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)

    for name, fa, fb in (("E", config_a.E, config_b.E), ("B", config_a.B, config_b.B)):
        va, vb = fa(pts), fb(pts)
        scale = 1.0 + max(float(np.max(np.abs(va))), float(np.max(np.abs(vb))))
        mismatch = float(np.max(np.abs(va - vb)))
        if mismatch > field_tol * scale:
            raise NotGaugeEquivalent(f"local {name} differs on the probe region by {mismatch:.3e}")

    def delta_pi(x):
        return (pi_closed_form_array(config_a, probe_charge, x)[1]
                - pi_closed_form_array(config_b, probe_charge, x)[1])

    dpi = delta_pi(pts)
    curl = _curl(delta_pi, pts, h)
    curl_scale = 1.0 + float(np.max(np.abs(dpi))) / max(np.min(region.hi - region.lo), h)
    if float(np.max(np.abs(curl))) > curl_tol * curl_scale:
        raise NotGaugeEquivalent(f"pi difference has curl {np.max(np.abs(curl)):.3e}")

    origin = 0.5 * (region.lo + region.hi)
    if np.max(np.abs(dpi)) == 0.0:
        def value(x):
            return np.zeros(len(np.atleast_2d(x)))
    else:
        def value(x):
            out = []
            for xi in np.atleast_2d(x):
                d = xi - origin
                if not np.any(d):
                    out.append(0.0)
                    continue
                v, _ = quad(lambda t: float(delta_pi(origin + t * d)[0] @ d), 0.0, 1.0,
                            epsabs=1e-13, epsrel=1e-12, limit=200)
                out.append(v)
            return np.array(out)

    time_rate = 0.0
    if any(isinstance(s, PointCharge) for s in config_a.sources + config_b.sources):
        p0a = pi_closed_form_array(config_a, probe_charge, origin)[0][0]
        p0b = pi_closed_form_array(config_b, probe_charge, origin)[0][0]
        time_rate = C * (p0b - p0a)
    winding = _winding_flux(config_a) - _winding_flux(config_b)
    return GaugeFunction("flux_shift" if not math.isclose(winding, 0.0, abs_tol=1e-12) else "analytic",
                         delta_pi, value, time_rate, winding, None)

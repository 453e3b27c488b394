"""Constant-pi plane waves of the Klein-Gordon equation.

With metric (-, +, +, +) the equation
    [-(d_mu - i pi_mu/hbar)(d^mu - i pi^mu/hbar) + m^2 c^2/hbar^2] phi = 0
gives, for phi = exp(i (k x - w t)),
    (hbar w / c - pi0)^2 = (hbar k - pi_x)^2 + m^2 c^2.
"""

from dataclasses import dataclass

import numpy as np

from ..units import C, HBAR

# 8th-order central stencils for the first and second derivative
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
_OFFSETS = np.arange(-4, 5)


@dataclass(frozen=True)
class Dispersion:
    omega: float
    residual: float


def kg_frequency(pi0, pi_x, k, mass):
    """Positive-frequency branch of the constant-pi dispersion relation."""
    return C / HBAR * (pi0 + np.sqrt((HBAR * k - pi_x) ** 2 + (mass * C) ** 2))


def kg_residual(pi0, pi_x, k, omega, mass, h=None):
    """Relative residual of the discretised operator acting on the plane wave.

    Derivatives use 8th-order central differences with step ``h`` about the
    origin of (t, x); the result is normalised by (m c / hbar)^2 + k^2 +
    (w / c)^2.
    """
    scale = max(abs(k), abs(omega) / C, mass * C / HBAR, 1.0)
    h = h or 0.05 / scale

    def phi(t, x):
        return np.exp(1j * (k * x - omega * t))

    ft = phi(_OFFSETS * h, 0.0)
    fx = phi(0.0, _OFFSETS * h)
    dt, dtt = _D1 @ ft / h, _D2 @ ft / h ** 2
    dx, dxx = _D1 @ fx / h, _D2 @ fx / h ** 2
    f0 = phi(0.0, 0.0)
    # time part:  (i hbar/c d_t - pi0)^2 ;  space part: (-i hbar d_x - pi_x)^2
    time_part = -(HBAR / C) ** 2 * dtt - 2j * HBAR / C * pi0 * dt + pi0 ** 2 * f0
    space_part = -HBAR ** 2 * dxx + 2j * HBAR * pi_x * dx + pi_x ** 2 * f0
    res = time_part - space_part - (mass * C) ** 2 * f0
    norm = (mass * C) ** 2 + (HBAR * k) ** 2 + (HBAR * omega / C) ** 2 + pi0 ** 2 + pi_x ** 2
    return float(abs(res) / norm)


def kg_dispersion_check(pi0, pi_x, k, mass=1.0, tol=1e-8):
    """Frequency and plane-wave residual; raises ValueError if residual > tol."""
    omega = kg_frequency(pi0, pi_x, k, mass)
    res = kg_residual(pi0, pi_x, k, omega, mass)
    if res > tol:
        raise ValueError(f"plane-wave residual {res:.3e} above {tol:.1e}")
    return Dispersion(float(omega), res)


def gauge_shift_plane_wave(pi0, pi_x, k, omega, a, b):
    """Apply Lambda = a t + b x: phi -> phi exp(-i Lambda/hbar).

    Returns (pi0', pi_x', k', omega') with pi0' = pi0 + a/c, pi_x' = pi_x - b,
    k' = k - b/hbar and omega' = omega + a/hbar.
    """
    return pi0 + a / C, pi_x - b, k - b / HBAR, omega + a / HBAR

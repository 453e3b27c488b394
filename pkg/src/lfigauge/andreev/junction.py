"""Point-contact parameters, the flux-to-phase map and the closed-form levels."""

import math
from dataclasses import dataclass

import numpy as np

from ..fields.momentum import Path, line_integral_pi
from ..fields.sources import FieldConfiguration, IdealSolenoid
from ..units import C, E_CHARGE, HBAR, PHI0


@dataclass(frozen=True)
class JunctionSpec:
    """Delta-barrier point contact between two superconducting leads.

    ``flux`` is Phi/Phi0, ``theta`` the angle the quasiparticle path
    subtends at the flux line, ``phi0`` the intrinsic phase difference.
    """

    Z: float
    delta0: float = 1.0
    mu: float = 1000.0
    phi0: float = 0.0
    theta: float = 2 * math.pi
    flux: float = 0.0

    def __post_init__(self):
        if not self.Z >= 0:
            raise ValueError("Z must be >= 0")
        if not self.delta0 > 0:
            raise ValueError("delta0 must be > 0")
        if not self.mu / self.delta0 >= 100:
            raise ValueError("mu/delta0 must be >= 100")
        if not 0 < self.theta <= 2 * math.pi + 1e-12:
            raise ValueError("theta must lie in (0, 2 pi]")

    @property
    def transmission(self):
        return 1.0 / (1.0 + self.Z ** 2)

    @property
    def phi_b(self):
        return phi_b_from_flux(self.theta, self.flux)

    @property
    def phase(self):
        return self.phi0 + self.phi_b


@dataclass(frozen=True)
class AndreevLevels:
    energies: np.ndarray
    phase: float
    method: str
    gap_edge: bool = False

    @property
    def e_plus(self):
        return float(np.max(self.energies))

    @property
    def e_minus(self):
        return float(np.min(self.energies))


def phi_b_from_flux(theta, flux):
    """Pair phase 2 e theta Phi / (h c) = 2 theta Phi/Phi0."""
    return 2.0 * E_CHARGE * theta * flux * PHI0 / (2 * np.pi * HBAR * C)


def phi_b_line_integral(theta, flux, radius=1.0, path_radius=2.0, n_vertices=64):
    """Cross-check of phi_b: (2/hbar) times the integral of pi along an arc.

    The arc subtends ``theta`` at the axis of a solenoid of ``flux``; the
    probe carries the Cooper-pair charge 2e.
    """
    sol = IdealSolenoid([0, 0, 0], [0, 0, 1], radius, flux)
    angles = np.linspace(0.0, theta, n_vertices + 1)
    pts = [[path_radius * np.cos(a), path_radius * np.sin(a), 0.0] for a in angles]
    closed = math.isclose(theta, 2 * np.pi)
    if closed:
        pts = pts[:-1]
    total = line_integral_pi(FieldConfiguration([sol]), 2 * E_CHARGE, Path(pts, closed=closed))
    return total / HBAR


def andreev_analytic(spec):
    """E = +/- delta0 sqrt(1 - T sin^2(phi/2)), phi = phi0 + phi_b."""
    phi = spec.phase
    e = spec.delta0 * math.sqrt(1.0 - spec.transmission * math.sin(phi / 2) ** 2)
    return AndreevLevels(np.array([-e, e]), phi, "analytic")

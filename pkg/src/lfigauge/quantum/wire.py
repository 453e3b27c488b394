"""Open 1-D wire: delta barrier plus a bounded pi profile, by transfer matrices.

In a cell of constant pi the pair w = (psi, D psi), D = d/dx - i pi/hbar,
propagates as exp(i q l) M0(k l) w with q = pi/hbar and M0 the free
propagator, so pi only contributes a scalar phase. Both psi and D psi are
continuous where pi jumps; the delta barrier makes D psi jump by
(2 m U0 / hbar^2) psi(0).
"""

from dataclasses import dataclass, replace

import numpy as np

from ..errors import EvanescentInput
from ..units import HBAR


@dataclass(frozen=True)
class PiProfile:
    """Piecewise-constant pi(x): ``values[i]`` on [edges[i], edges[i+1])."""

    edges: tuple = ()
    values: tuple = ()

    def __post_init__(self):
        edges = tuple(float(e) for e in self.edges)
        values = tuple(float(v) for v in self.values)
        if edges and len(values) != len(edges) - 1:
            raise ValueError("need len(values) == len(edges) - 1")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise ValueError("edges must increase strictly")
        if not all(np.isfinite(values)):
            raise ValueError("pi values must be finite")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)

    @classmethod
    def rectangle(cls, a, b, height):
        return cls((a, b), (height,))

    @classmethod
    def from_function(cls, f, a, b, n_cells=200):
        """Cell averages of ``f`` (5-point Gauss per cell) on ``n_cells`` cells."""
        edges = np.linspace(a, b, n_cells + 1)
        t, w = np.polynomial.legendre.leggauss(5)
        vals = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            x = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
            vals.append(0.5 * float(w @ np.asarray(f(x), dtype=float)))
        return cls(tuple(edges), tuple(vals))

    def integral(self):
        return float(sum(v * (b - a) for v, a, b in zip(self.values, self.edges, self.edges[1:])))

    def scaled(self, factor):
        return PiProfile(self.edges, tuple(factor * v for v in self.values))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for v, a, b in zip(self.values, self.edges, self.edges[1:]):
            out = np.where((x >= a) & (x < b), v, out)
        return out


@dataclass(frozen=True)
class WireModel:
    energy: float
    mass: float = 1.0
    barrier: float = 0.0
    pi_profile: PiProfile = PiProfile()

    def __post_init__(self):
        if not self.barrier >= 0:
            raise ValueError("barrier strength must be >= 0")
        if not self.mass > 0:
            raise ValueError("mass must be > 0")

    @property
    def k(self):
        return np.sqrt(2 * self.mass * self.energy) / HBAR


def _free(k, length):
    c, s = np.cos(k * length), np.sin(k * length)
    return np.array([[c, s / k], [-k * s, c]], dtype=complex)


def _breakpoints(model):
    pts = set(model.pi_profile.edges)
    pts.add(0.0)
    return sorted(pts)


def _q_on(model, a, b):
    mid = 0.5 * (a + b)
    return float(model.pi_profile(mid)) / HBAR


@dataclass(frozen=True)
class ScatteringResult:
    transmission_amplitude: complex
    reflection_amplitude: complex
    accumulated_pi_phase: float
    model: WireModel

    @property
    def T(self):
        return abs(self.transmission_amplitude) ** 2

    @property
    def R(self):
        return abs(self.reflection_amplitude) ** 2

    def wavefunction(self, x):
        """psi and d psi/dx of the left-incident state at points ``x``."""
        x = np.asarray(x, dtype=float)
        m, k = self.model, self.model.k
        r, t = self.reflection_amplitude, self.transmission_amplitude
        bps = _breakpoints(m)
        x_l, x_r = bps[0], bps[-1]
        psi = np.empty(x.shape, dtype=complex)
        dpsi = np.empty(x.shape, dtype=complex)
        left = x < x_l
        psi[left] = np.exp(1j * k * x[left]) + r * np.exp(-1j * k * x[left])
        dpsi[left] = 1j * k * (np.exp(1j * k * x[left]) - r * np.exp(-1j * k * x[left]))
        right = x >= x_r
        psi[right] = t * np.exp(1j * k * x[right])
        dpsi[right] = 1j * k * psi[right]
        # interior: march w = (psi, D psi) from x_l
        w = np.array([np.exp(1j * k * x_l) + r * np.exp(-1j * k * x_l),
                      1j * k * (np.exp(1j * k * x_l) - r * np.exp(-1j * k * x_l))])
        for a, b in zip(bps[:-1], bps[1:]):
            if a == 0.0:
                w = np.array([w[0], w[1] + 2 * m.mass * m.barrier / HBAR ** 2 * w[0]])
            q = _q_on(m, a, b)
            sel = (x >= a) & (x < b)
            for i in np.flatnonzero(sel.ravel()):
                xi = x.flat[i]
                wi = np.exp(1j * q * (xi - a)) * _free(k, xi - a) @ w
                psi.flat[i] = wi[0]
                dpsi.flat[i] = wi[1] + 1j * q * wi[0]
            w = np.exp(1j * q * (b - a)) * _free(k, b - a) @ w
        return psi, dpsi


def transfer_matrix(model):
    """Map (psi, D psi) at the left window edge to the right window edge."""
    bps = _breakpoints(model)
    k = model.k
    total = np.eye(2, dtype=complex)
    phase = 0.0
    for a, b in zip(bps[:-1], bps[1:]):
        if a == 0.0:
            total = np.array([[1, 0], [2 * model.mass * model.barrier / HBAR ** 2, 1]]) @ total
        q = _q_on(model, a, b)
        phase += q * (b - a)
        total = _free(k, b - a) @ total
    if bps[-1] == 0.0:
        total = np.array([[1, 0], [2 * model.mass * model.barrier / HBAR ** 2, 1]]) @ total
    return np.exp(1j * phase) * total, bps[0], bps[-1]


def wire_scatter(model):
    if not model.energy > 0:
        raise EvanescentInput("scattering energy must be > 0")
    k = model.k
    m, x_l, x_r = transfer_matrix(model)
    a = np.array([np.exp(1j * k * x_l), 1j * k * np.exp(1j * k * x_l)])
    b = np.array([np.exp(-1j * k * x_l), -1j * k * np.exp(-1j * k * x_l)])
    c = np.array([np.exp(1j * k * x_r), 1j * k * np.exp(1j * k * x_r)])
    lhs = np.column_stack([m @ b, -c])
    r, t = np.linalg.solve(lhs, -(m @ a))
    return ScatteringResult(complex(t), complex(r), model.pi_profile.integral() / HBAR, model)


def delta_barrier_transmission(mass, barrier, energy):
    """Closed-form |t|^2 = 1 / (1 + (m U0 / hbar^2 k)^2)."""
    k = np.sqrt(2 * mass * energy) / HBAR
    return 1.0 / (1.0 + (mass * barrier / (HBAR ** 2 * k)) ** 2)


def gauge_away_wire(model):
    """Pi-free model plus the open-path phase integral(pi dx)/hbar."""
    return replace(model, pi_profile=PiProfile()), model.pi_profile.integral() / HBAR


def probability_current(x, psi, pi=None, dpsi=None, mass=1.0):
    """j = (hbar/m) Im[psi* (d/dx - i pi/hbar) psi] on a grid.

    Pass the exact derivative ``dpsi`` when available; otherwise a
    second-order finite difference is used.
    """
    x = np.asarray(x, dtype=float)
    psi = np.asarray(psi, dtype=complex)
    if dpsi is None:
        dpsi = np.gradient(psi, x, edge_order=2)
    q = np.zeros_like(x) if pi is None else (pi(x) if callable(pi) else np.asarray(pi)) / HBAR
    return HBAR / mass * np.imag(np.conj(psi) * (dpsi - 1j * q * psi))

"""Relativistic point charge driven by local fields only.

    d(energy)/dt = e v . E,    dp/dt = e E + (e/c) v x B,    v = p c^2 / energy

The integrator never looks at pi; pi only appears in the gauge experiment
as a diagnostic showing that distant field redistribution changes pi but
not the motion.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .core.vectors import vec3
from .errors import LocalFieldMismatch, StepFailure, UnsupportedSource
from .fields.momentum import pi_closed_form_array, pi_quadrature
from .core.vectors import ToleranceSpec
from .units import C

TRAJECTORY_COLUMNS = ("t", "x", "y", "z", "px", "py", "pz", "energy")


@dataclass(frozen=True)
class ParticleState:
    position: np.ndarray
    momentum: np.ndarray
    charge: float = 1.0
    mass: float = 1.0
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "position", vec3(self.position))
        object.__setattr__(self, "momentum", vec3(self.momentum))
        if not self.mass > 0:
            raise ValueError("mass must be > 0")

    @property
    def energy(self):
        return C * np.sqrt(self.momentum @ self.momentum + (self.mass * C) ** 2)

    @property
    def velocity(self):
        return self.momentum * C ** 2 / self.energy


@dataclass
class Trajectory:
    t: np.ndarray
    position: np.ndarray
    momentum: np.ndarray
    energy: np.ndarray
    charge: float
    mass: float
    stats: dict = field(default_factory=dict)

    def state(self, i):
        return ParticleState(self.position[i], self.momentum[i], self.charge, self.mass, self.t[i])

    def mass_shell_error(self):
        m2c4 = (self.mass * C ** 2) ** 2
        p2 = np.einsum("ij,ij->i", self.momentum, self.momentum)
        return np.abs(self.energy ** 2 - p2 * C ** 2 - m2c4) / m2c4

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TRAJECTORY_COLUMNS)
        for row in np.column_stack([self.t, self.position, self.momentum, self.energy]):
            w.writerow([f"{v:.12g}" for v in row])
        return buf.getvalue()


def lorentz_rhs(state, sample):
    """(d energy/dt, dp/dt) for ``state`` in local fields ``sample``."""
    v = state.velocity
    e = state.charge
    return e * float(v @ sample.E), e * sample.E + e / C * np.cross(v, sample.B)


def simulate(config, initial, t_final, tol=1e-10, n_samples=201, max_step=np.inf):
    """Integrate the motion with an adaptive embedded Runge-Kutta (DOP853) scheme.

    The state is (r, p, energy). At output samples the energy is rebuilt from
    p so the mass shell holds exactly; the pre-correction drift is reported
    in ``stats["max_mass_shell_drift"]``.
    """
    if not t_final > initial.time:
        raise ValueError("t_final must exceed the initial time")
    e, m = initial.charge, initial.mass

    def rhs(_t, y):
        r, p, energy = y[:3], y[3:6], y[6]
        v = p * C ** 2 / energy
        E = config.E(r)[0]
        B = config.B(r)[0]
        dp = e * E + e / C * np.cross(v, B)
        return np.concatenate([v, dp, [e * (v @ E)]])

    y0 = np.concatenate([initial.position, initial.momentum, [initial.energy]])
    t_eval = np.linspace(initial.time, t_final, n_samples)
    atol = tol * np.maximum(np.abs(y0), 1.0)
    sol = solve_ivp(rhs, (initial.time, t_final), y0, method="DOP853", t_eval=t_eval,
                    rtol=tol, atol=atol, max_step=max_step)
    if sol.status != 0:
        raise StepFailure(sol.message)
    pos, mom, en = sol.y[:3].T, sol.y[3:6].T, sol.y[6]
    shell = C * np.sqrt(np.einsum("ij,ij->i", mom, mom) + (m * C) ** 2)
    stats = {"n_rhs": int(sol.nfev), "n_steps": int(sol.nfev // 12),
             "max_mass_shell_drift": float(np.max(np.abs(en - shell) / shell))}
    return Trajectory(sol.t, pos, mom, shell, e, m, stats)


def cyclotron_period(state, b_magnitude):
    return 2 * np.pi * state.energy / (abs(state.charge) * b_magnitude * C)


@dataclass(frozen=True)
class GaugeExperimentResult:
    max_deviation: float
    max_delta_pi: float
    trajectory_a: Trajectory
    trajectory_b: Trajectory


def _pi_along(config, charge, pts):
    try:
        return pi_closed_form_array(config, charge, pts)[1]
    except UnsupportedSource:
        loose = ToleranceSpec(1e-4, 1e-6, 5000)
        return np.array([pi_quadrature(config, charge, x, loose).pi for x in pts])


def gauge_invariance_experiment(config_a, config_b, initial, t_final, tol=1e-10, n_samples=201,
                                field_tol=1e-12):
    """Run the same particle through two configurations.

    Raises LocalFieldMismatch if the configurations disagree on E or B at
    any sample of trajectory A; otherwise returns the largest position
    deviation and the largest pi mismatch along the path.
    """
    tr_a = simulate(config_a, initial, t_final, tol, n_samples)
    pts = tr_a.position
    for name in ("E", "B"):
        fa, fb = getattr(config_a, name)(pts), getattr(config_b, name)(pts)
        scale = 1.0 + float(np.max(np.abs(fa)))
        if float(np.max(np.abs(fa - fb))) > field_tol * scale:
            raise LocalFieldMismatch(f"local {name} differs along the trajectory")
    tr_b = simulate(config_b, initial, t_final, tol, n_samples)
    dev = float(np.max(np.linalg.norm(tr_a.position - tr_b.position, axis=1)))
    dpi = _pi_along(config_a, initial.charge, pts) - _pi_along(config_b, initial.charge, pts)
    return GaugeExperimentResult(dev, float(np.max(np.linalg.norm(dpi, axis=1))), tr_a, tr_b)

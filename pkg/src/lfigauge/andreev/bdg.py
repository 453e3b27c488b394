"""Bound states of the gauged BdG problem by wavefunction matching.

Units inside this module: hbar = 1, m = 1/2, energies in units of delta0,
so k_F = sqrt(mu/delta0) and U0 = 2 Z k_F. After pi has been gauged away
the pair potential is delta0 exp(i phi) for x < 0 and delta0 for x > 0.

On each side the two decaying solutions (electron-like branch +k_F and
hole-like branch -k_F) are matched at x = 0: (u, v) continuous and the
derivative jumping by U0 (u, v)(0). In the default Andreev mode the wave
numbers are linearised about +/-k_F and the derivative keeps only the fast
+/-i k_F factor; ``mode="exact"`` uses the full quadratic dispersion.
The determinant is exp(i phi) times a real function of E.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..core.roots import find_roots_bracketed
from ..core.vectors import ToleranceSpec
from ..errors import NoBoundState
from .junction import AndreevLevels

SCAN_POINTS = 2001
EDGE_GAP = 1e-6


def _side_basis(E, kf, mu, chi, side, mode):
    """Amplitudes (n, 2, 2), wave numbers and matching derivatives for one side.

    ``side`` is +1 (x > 0, Im q > 0) or -1 (x < 0, Im q < 0).
    """
    E = np.asarray(E, dtype=float)
    omega = np.sqrt(np.clip(1.0 - E * E, 0.0, None))
    amps, qs, dqs = [], [], []
    for s in (1.0, -1.0):
        if mode == "andreev":
            q = s * kf + 1j * side * omega / (2 * kf)
            xi = 2 * s * kf * (q - s * kf)
            dq = np.full_like(q, s * kf)
        elif mode == "exact":
            cand = [s * np.sqrt(mu + 1j * sg * omega + 0j) for sg in (1.0, -1.0)]
            pick = (np.sign(cand[0].imag) == side)
            q = np.where(pick, cand[0], cand[1])
            xi = q * q - mu
            dq = q
        else:
            raise ValueError(f"unknown mode {mode!r}")
        a = np.full(E.shape, np.exp(1j * chi), dtype=complex)
        b = E - xi
        amps.append(np.stack([a, b], axis=-1))
        qs.append(q)
        dqs.append(dq)
    return np.stack(amps, axis=-1), np.stack(qs, axis=-1), np.stack(dqs, axis=-1)


def matching_matrix(E, Z, mu, phi, mode="andreev"):
    """4x4 matching matrices, shape (n, 4, 4), for reduced energies E (delta0 = 1)."""
    E = np.atleast_1d(np.asarray(E, dtype=float))
    kf = np.sqrt(mu)
    u0 = 2.0 * Z * kf
    ar, _, dr = _side_basis(E, kf, mu, 0.0, +1, mode)
    al, _, dl = _side_basis(E, kf, mu, phi, -1, mode)
    m = np.zeros((len(E), 4, 4), dtype=complex)
    m[:, 0:2, 0:2] = ar
    m[:, 0:2, 2:4] = -al
    m[:, 2:4, 0:2] = ar * (1j * dr[:, None, :]) - u0 * ar
    m[:, 2:4, 2:4] = -al * (1j * dl[:, None, :])
    return m


def matching_function(E, Z, mu, phi, mode="andreev"):
    """Real part of exp(-i phi) det M(E); its zeros are the bound states."""
    d = np.linalg.det(matching_matrix(E, Z, mu, phi, mode)) * np.exp(-1j * phi)
    return d.real


def _levels_reduced(Z, mu, phi, mode, tol):
    def g(E):
        return matching_function(E, Z, mu, phi, mode)

    lo, hi = -1.0 + EDGE_GAP, 1.0 - EDGE_GAP
    grid = np.linspace(lo, hi, SCAN_POINTS)
    values = g(grid)
    scale = float(np.max(np.abs(values)))
    roots = find_roots_bracketed(g, lo, hi, SCAN_POINTS - 1,
                                 ToleranceSpec(1e-8, 1e-13, tol.max_iterations),
                                 vectorized=True)
    gap_edge = False
    # cells between the scan window and the gap edges
    for a, b in ((-1.0, lo), (hi, 1.0)):
        ga, gb = g(np.array([a, b]))
        if ga * gb < 0:
            roots.append(brentq(lambda e: g(np.array([e]))[0], a, b, xtol=1e-13))
            gap_edge = True
    if len(roots) < 2:
        # tangential zero (levels merging): local minimum of |g| reaching zero
        absval = np.abs(values)
        for i in range(1, len(grid) - 1):
            if absval[i] <= absval[i - 1] and absval[i] <= absval[i + 1] \
                    and values[i - 1] * values[i + 1] > 0:
                res = minimize_scalar(lambda e: g(np.array([e]))[0] ** 2,
                                      bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                                      options={"xatol": tol.abs_tol})
                if abs(g(np.array([res.x]))[0]) <= 1e-10 * scale:
                    roots.extend([res.x, res.x])
    if len(roots) < 2:
        edge = g(np.array([-1.0, 1.0]))
        if np.all(np.abs(edge) <= 1e-8 * scale):
            roots = [-1.0, 1.0]
            gap_edge = True
    return sorted(roots), gap_edge


def andreev_numeric(spec, tol=None, mode="andreev"):
    """Bound-state energies from the zeros of the matching determinant."""
    tol = tol or ToleranceSpec(1e-12, 1e-10, 200)
    phi = spec.phase
    roots, gap_edge = _levels_reduced(spec.Z, spec.mu / spec.delta0, phi, mode, tol)
    if not roots:
        raise NoBoundState(f"no sub-gap zero for Z={spec.Z}, phi={phi}")
    return AndreevLevels(spec.delta0 * np.array(roots), phi, f"numeric-{mode}", gap_edge)


@dataclass(frozen=True)
class BdGState:
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    delta: np.ndarray
    pi: np.ndarray
    energy: float


def bound_state(spec, energy, x, mode="andreev"):
    """Wavefunction of the bound state at ``energy`` sampled on grid ``x``.

    Coefficients are the null vector of the matching matrix. The norm is
    exact: each side is a sum of decaying exponentials whose overlap
    integrals are elementary.
    """
    mu = spec.mu / spec.delta0
    e = energy / spec.delta0
    phi = spec.phase
    m = matching_matrix(e, spec.Z, mu, phi, mode)[0]
    coef = np.linalg.svd(m)[2][-1].conj()
    x = np.asarray(x, dtype=float)
    kf = np.sqrt(mu)
    out = np.zeros((2, len(x)), dtype=complex)
    norm2 = 0.0
    for side, chi, sel, cs in ((+1, 0.0, x >= 0, coef[:2]), (-1, phi, x < 0, coef[2:])):
        amps, qs, _ = _side_basis(np.array([e]), kf, mu, chi, side, mode)
        amps, qs = amps[0] * cs[None, :], qs[0]
        for j in range(2):
            out[:, sel] += amps[:, j, None] * np.exp(1j * qs[j] * x[sel])
        # integral over the half line of exp(i (q_l - conj q_j) x)
        gram = side * 1j / (qs[None, :] - qs.conj()[:, None])
        norm2 += float(np.real(np.sum((amps.conj().T @ amps) * gram)))
    norm = np.sqrt(norm2)
    delta = spec.delta0 * np.where(x < 0, np.exp(1j * phi), 1.0 + 0j)
    return BdGState(x, out[0] / norm, out[1] / norm, delta, np.zeros_like(x), float(energy))


def gauge_transform_bdg(state, lam, lam_gradient=None, hbar=1.0):
    """u' = u e^{-i L/hbar}, v' = v e^{i L/hbar}, delta' = delta e^{-2i L/hbar}, pi' = pi - L'.

    ``lam`` is a callable or an array on ``state.x``; the gradient defaults
    to a second-order finite difference.
    """
    lv = np.asarray(lam(state.x) if callable(lam) else lam, dtype=float) * np.ones_like(state.x)
    if lam_gradient is None:
        grad = np.gradient(lv, state.x, edge_order=2) if len(state.x) > 2 else np.zeros_like(lv)
    else:
        grad = np.asarray(lam_gradient(state.x) if callable(lam_gradient) else lam_gradient)
    ph = np.exp(-1j * lv / hbar)
    return replace(state, u=state.u * ph, v=state.v * ph.conj(), delta=state.delta * ph ** 2,
                   pi=state.pi - grad)

"""Tight-binding BdG chain with link phases, for exact gauge checks.

H = [[H_e, diag(delta)], [diag(delta)^*, -H_e^*]] with
H_e[j, j+1] = -t exp(-i theta_j) and theta_j = pi_j a / hbar on link j.
"""

from dataclasses import dataclass, replace

import numpy as np

from ..core.linalg import eig_hermitian_dense


@dataclass(frozen=True)
class LatticeJunction:
    mu: float
    hopping: float
    delta: np.ndarray
    link_phases: np.ndarray
    onsite: np.ndarray

    def __post_init__(self):
        n = len(self.delta)
        object.__setattr__(self, "delta", np.asarray(self.delta, dtype=complex))
        object.__setattr__(self, "link_phases", np.asarray(self.link_phases, dtype=float))
        object.__setattr__(self, "onsite", np.asarray(self.onsite, dtype=float))
        if self.link_phases.shape != (n - 1,) or self.onsite.shape != (n,):
            raise ValueError("need n sites, n - 1 links")

    @classmethod
    def point_contact(cls, n_sites, mu, delta0, barrier, hopping=1.0, link_phases=None,
                      phase=0.0):
        """Uniform gap, on-site barrier at the centre site, optional phase step."""
        delta = np.full(n_sites, delta0, dtype=complex)
        delta[: n_sites // 2] *= np.exp(1j * phase)
        onsite = np.zeros(n_sites)
        onsite[n_sites // 2] = barrier
        links = np.zeros(n_sites - 1) if link_phases is None else link_phases
        return cls(mu, hopping, delta, links, onsite)

    def hamiltonian(self):
        n = len(self.delta)
        t = self.hopping
        he = np.diag(2 * t - self.mu + self.onsite).astype(complex)
        idx = np.arange(n - 1)
        he[idx, idx + 1] = -t * np.exp(-1j * self.link_phases)
        he[idx + 1, idx] = -t * np.exp(1j * self.link_phases)
        h = np.zeros((2 * n, 2 * n), dtype=complex)
        h[:n, :n] = he
        h[n:, n:] = -he.conj()
        h[:n, n:] = np.diag(self.delta)
        h[n:, :n] = np.diag(self.delta.conj())
        return h

    def spectrum(self):
        return eig_hermitian_dense(self.hamiltonian())

    def eigh(self):
        return eig_hermitian_dense(self.hamiltonian(), vectors=True)

    def gauge_transform(self, lam, hbar=1.0):
        """Site gauge Lambda_j: theta'_j = theta_j - (L_{j+1} - L_j)/hbar, delta' = delta e^{-2iL/hbar}."""
        lam = np.asarray(lam, dtype=float)
        return replace(self, link_phases=self.link_phases - np.diff(lam) / hbar,
                       delta=self.delta * np.exp(-2j * lam / hbar))


def transform_eigenvector(vec, lam, hbar=1.0):
    """Apply (u, v) -> (u e^{-iL/hbar}, v e^{iL/hbar}) to a stacked lattice vector."""
    n = len(lam)
    ph = np.exp(-1j * np.asarray(lam) / hbar)
    return np.concatenate([vec[:n] * ph, vec[n:] * ph.conj()])

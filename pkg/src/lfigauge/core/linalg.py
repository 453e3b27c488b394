import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from ..errors import NonConvergence, NotHermitian


def eig_sym_tridiag(diag, offdiag, vectors=False):
    """Ascending eigenvalues of a real symmetric tridiagonal matrix."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    if len(e) != len(d) - 1:
        raise ValueError("offdiag must have len(diag) - 1 entries")
    try:
        if vectors:
            return eigh_tridiagonal(d, e, eigvals_only=False)
        return eigh_tridiagonal(d, e, eigvals_only=True)
    except LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc


def eig_hermitian_dense(matrix, abs_tol=1e-10, vectors=False):
    """Ascending eigenvalues of a dense Hermitian matrix.

    Raises NotHermitian when max|H - H^dagger| exceeds ``abs_tol`` times
    max(1, max|H|).
    """
    h = np.asarray(matrix)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("expected a square matrix")
    asym = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if asym > abs_tol * max(1.0, float(np.max(np.abs(h)))):
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds tolerance")
    try:
        if vectors:
            return np.linalg.eigh(h)
        return np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc

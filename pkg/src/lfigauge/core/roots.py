import numpy as np
from scipy.optimize import brentq

from .vectors import ToleranceSpec


def find_roots_bracketed(g, a, b, n_scan=1000, tol=None, vectorized=False):
    """Sign-change roots of ``g`` on [a, b], ascending.

    The interval is cut into ``n_scan`` equal cells; every cell whose end
    values have strictly opposite signs is refined with Brent's method.
    Tangential (even-multiplicity) zeros produce no sign change and are not
    reported. A node where g is exactly zero counts as a root only if its
    neighbours have opposite signs.
    """
    tol = tol or ToleranceSpec()
    if not b > a:
        raise ValueError("need b > a")
    xs = np.linspace(a, b, int(n_scan) + 1)
    ys = np.asarray(g(xs), dtype=float) if vectorized else np.array([g(x) for x in xs], dtype=float)
    scale = float(np.max(np.abs(ys))) if len(ys) else 0.0
    resid_cap = max(tol.abs_tol, tol.rel_tol * scale)

    def scalar(x):
        return float(g(np.array([x]))[0]) if vectorized else float(g(x))

    roots = []
    for i in range(len(xs) - 1):
        ya, yb = ys[i], ys[i + 1]
        if ya == 0.0:
            if 0 < i and ys[i - 1] * yb < 0:
                roots.append(float(xs[i]))
            continue
        if ya * yb < 0:
            r = brentq(scalar, xs[i], xs[i + 1], xtol=tol.abs_tol, rtol=4 * np.finfo(float).eps,
                       maxiter=tol.max_iterations)
            if abs(scalar(r)) <= resid_cap:
                roots.append(float(r))
    return roots

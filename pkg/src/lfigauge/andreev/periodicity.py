from dataclasses import dataclass

import numpy as np

from .bdg import andreev_numeric
from .junction import andreev_analytic


@dataclass(frozen=True)
class PeriodEstimate:
    theta: float
    expected: float
    analytic: float
    numeric: float | None
    resolution: float


def extract_period(grid, values, floor=1e-9):
    """Smallest lag whose shifted copy reproduces ``values`` (first deep minimum)."""
    values = np.asarray(values, dtype=float)
    step = float(grid[1] - grid[0])
    n = len(values)
    lags = np.arange(1, n // 2 + 1)
    mismatch = np.array([np.max(np.abs(values[L:] - values[:-L])) for L in lags])
    spread = float(np.ptp(values))
    threshold = max(floor, 0.1 * float(np.max(mismatch)))
    risen = np.nonzero(mismatch > 0.5 * float(np.max(mismatch)))[0]
    start = int(risen[0]) if len(risen) else len(lags)
    for i in range(start, len(lags)):
        left = mismatch[i - 1] if i > 0 else np.inf
        right = mismatch[i + 1] if i + 1 < len(lags) else np.inf
        if mismatch[i] <= left and mismatch[i] <= right and mismatch[i] <= threshold:
            return lags[i] * step
    if spread <= floor:
        return step
    raise ValueError("no period found on the grid")


def flux_periodicity_scan(spec, theta, flux_grid, numeric=True):
    """Period of E_+(Phi) in units of Phi0 from analytic and numeric levels."""
    grid = np.asarray(flux_grid, dtype=float)
    expected = np.pi / theta
    if grid[-1] - grid[0] < 2 * expected - 1e-12:
        raise ValueError("flux grid must span at least two periods")
    specs = [spec.__class__(spec.Z, spec.delta0, spec.mu, spec.phi0, theta, f) for f in grid]
    ana = [andreev_analytic(s).e_plus for s in specs]
    num = [andreev_numeric(s).e_plus for s in specs] if numeric else None
    return PeriodEstimate(theta, expected, extract_period(grid, ana),
                          extract_period(grid, num) if numeric else None,
                          float(grid[1] - grid[0]))

from .bdg import (BdGState, andreev_numeric, bound_state, gauge_transform_bdg, matching_function,
                  matching_matrix)
from .junction import (AndreevLevels, JunctionSpec, andreev_analytic, phi_b_from_flux,
                       phi_b_line_integral)
from .lattice import LatticeJunction, transform_eigenvector
from .periodicity import PeriodEstimate, extract_period, flux_periodicity_scan

__all__ = [
    "AndreevLevels", "BdGState", "JunctionSpec", "LatticeJunction", "PeriodEstimate",
    "andreev_analytic", "andreev_numeric", "bound_state", "extract_period",
    "flux_periodicity_scan", "gauge_transform_bdg", "matching_function", "matching_matrix",
    "phi_b_from_flux", "phi_b_line_integral", "transform_eigenvector",
]

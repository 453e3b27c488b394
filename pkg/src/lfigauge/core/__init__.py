from .vectors import FourVector, ToleranceSpec, vec3
from .quadrature import Ball, Box, Cylinder, QuadResult, integrate_adaptive_3d
from .roots import find_roots_bracketed
from .linalg import eig_hermitian_dense, eig_sym_tridiag

__all__ = [
    "Ball",
    "Box",
    "Cylinder",
    "FourVector",
    "QuadResult",
    "ToleranceSpec",
    "eig_hermitian_dense",
    "eig_sym_tridiag",
    "find_roots_bracketed",
    "integrate_adaptive_3d",
    "vec3",
]

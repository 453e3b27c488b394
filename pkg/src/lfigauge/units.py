"""Desk unit system: Gaussian units with hbar = c = e = 1.

Flux is carried in units of the normal flux quantum PHI0 = hc/e = 2*pi
everywhere in the public API; multiply by PHI0 to get the Gaussian flux.

Four-vectors use the metric signature (-, +, +, +), under which the coupling
(d_mu - i Pi_mu / hbar) reproduces the minimal substitution p - Pi.
"""

import math

HBAR = 1.0
C = 1.0
E_CHARGE = 1.0
PHI0 = 2.0 * math.pi * HBAR * C / E_CHARGE

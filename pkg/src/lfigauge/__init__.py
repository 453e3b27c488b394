"""Field momentum of charges in static electromagnetic configurations.

Field-momentum four-vector, physical gauge transformations, flux-threaded
rings and wires, and Andreev bound states of a flux-biased point contact.
"""

__version__ = "0.1.0"

from .kg import Dispersion, gauge_shift_plane_wave, kg_dispersion_check, kg_frequency, kg_residual
from .ring import (RingModel, RingSpectrum, gauge_away_ring, multiset_distance,
                   ring_continuum_levels, ring_levels_exact, ring_many_body_energy, ring_spectrum)
from .wire import (PiProfile, ScatteringResult, WireModel, delta_barrier_transmission,
                   gauge_away_wire, probability_current, transfer_matrix, wire_scatter)


def gauge_away_pi(model):
    """Dispatch to the ring or wire transformation; returns (model', phase)."""
    if isinstance(model, RingModel):
        return gauge_away_ring(model)
    if isinstance(model, WireModel):
        return gauge_away_wire(model)
    raise TypeError(f"cannot gauge away pi for {type(model).__name__}")


__all__ = [
    "Dispersion", "PiProfile", "RingModel", "RingSpectrum", "ScatteringResult", "WireModel",
    "delta_barrier_transmission", "gauge_away_pi", "gauge_away_ring", "gauge_away_wire",
    "gauge_shift_plane_wave", "kg_dispersion_check", "kg_frequency", "kg_residual",
    "multiset_distance", "probability_current", "ring_continuum_levels", "ring_levels_exact",
    "ring_many_body_energy", "ring_spectrum", "transfer_matrix", "wire_scatter",
]

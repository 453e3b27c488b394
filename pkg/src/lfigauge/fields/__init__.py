from .gauge import GaugeFunction, apply_gauge, shift_flux
from .momentum import (FieldMomentum, Path, field_tensor, line_integral_pi,
                       line_integral_to_infinity, local_field_tensor, pi_closed_form,
                       pi_closed_form_array, pi_quadrature)
from .sources import (BoxRegion, CylinderRegion, FieldConfiguration, FieldSample, IdealSolenoid,
                      PointCharge, UniformBRegion, eval_fields)

__all__ = [
    "BoxRegion", "CylinderRegion", "FieldConfiguration", "FieldMomentum", "FieldSample",
    "GaugeFunction", "IdealSolenoid", "Path", "PointCharge", "UniformBRegion", "apply_gauge",
    "eval_fields", "field_tensor", "line_integral_pi", "line_integral_to_infinity",
    "local_field_tensor", "pi_closed_form", "pi_closed_form_array", "pi_quadrature", "shift_flux",
]

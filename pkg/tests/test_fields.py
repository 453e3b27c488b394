import numpy as np
import pytest
from numpy.testing import assert_allclose

from lfigauge.errors import NotGaugeEquivalent, PathThroughSource, SingularPoint, UnsupportedSource
from lfigauge.fields import (BoxRegion, CylinderRegion, FieldConfiguration, GaugeFunction,
                             IdealSolenoid, Path, PointCharge, UniformBRegion, apply_gauge,
                             eval_fields, field_tensor, line_integral_pi,
                             line_integral_to_infinity, local_field_tensor, pi_closed_form,
                             pi_closed_form_array, pi_quadrature, shift_flux)
from lfigauge.units import PHI0

SOL = IdealSolenoid([0, 0, 0], [0, 0, 1], 1.0, 1.0)
CFG = FieldConfiguration([SOL])


def square(half, center=(0.0, 0.0)):
    cx, cy = center
    return Path([[cx + half, cy + half, 0], [cx - half, cy + half, 0],
                 [cx - half, cy - half, 0], [cx + half, cy - half, 0]], closed=True)


class TestSources:
    def test_solenoid_interior_field(self):
        B = SOL.B(np.array([[0.2, 0.1, 5.0], [3.0, 0, 0]]))
        assert_allclose(B[0], [0, 0, PHI0 / np.pi])
        assert_allclose(B[1], 0.0)

    def test_point_charge_coulomb(self):
        pc = PointCharge(2.0, [1, 0, 0])
        assert_allclose(pc.E(np.array([[3.0, 0, 0]]))[0], [0.5, 0, 0])
        with pytest.raises(SingularPoint):
            pc.E(np.array([[1.0, 0, 0]]))

    def test_box_region_is_strict(self):
        box = BoxRegion([0, 0, 0], [1, 1, 1])
        assert list(box.contains(np.array([[0.5, 0.5, 0.5], [1.0, 0.5, 0.5]]))) == [True, False]

    def test_configuration_round_trip(self):
        cfg = FieldConfiguration([SOL, PointCharge(1.5, [2, 2, 2]),
                                  UniformBRegion([0, 0, 0.3], CylinderRegion([5, 0, 0], [0, 0, 1], 1.0))])
        again = FieldConfiguration.from_dict(cfg.to_dict())
        assert again.to_dict() == cfg.to_dict()
        sample = eval_fields(again, [1.0, 2.0, 0.5])
        assert sample.B.shape == (3,) and sample.E.shape == (3,)


class TestClosedForm:
    @pytest.mark.parametrize("rho", [1.5, 2.0, 5.0])
    def test_exterior_value(self, rho):
        fm = pi_closed_form(CFG, 1.0, [0, rho, 0])
        # e Phi / (2 pi c rho) along -x at (0, rho, 0)
        assert_allclose(fm.pi, [-PHI0 / (2 * np.pi * rho), 0, 0], atol=1e-15)
        assert fm.pi0 == 0.0

    def test_interior_is_half_b_cross_r(self):
        x = np.array([0.3, -0.2, 7.0])
        _, pi = pi_closed_form_array(CFG, 1.0, x)
        assert_allclose(pi[0], 0.5 * np.cross(SOL.b_interior, [0.3, -0.2, 0.0]), atol=1e-15)

    def test_continuous_at_wall(self):
        _, pi = pi_closed_form_array(CFG, 1.0, np.array([[1 - 1e-12, 0, 0], [1 + 1e-12, 0, 0]]))
        assert_allclose(pi[0], pi[1], atol=1e-10)

    def test_point_charge_pi0(self):
        cfg = FieldConfiguration([PointCharge(3.0, [0, 0, 0])])
        assert pi_closed_form(cfg, 2.0, [0, 0, 4.0]).pi0 == pytest.approx(1.5)

    def test_box_uniform_b_unsupported(self):
        cfg = FieldConfiguration([UniformBRegion([0, 0, 1], BoxRegion([-1, -1, -1], [1, 1, 1]))])
        with pytest.raises(UnsupportedSource):
            pi_closed_form(cfg, 1.0, [3, 0, 0])


class TestQuadrature:
    def test_solenoid_exterior_matches_closed_form(self):
        fm = pi_quadrature(CFG, 1.0, [2.0, 0, 0])
        exact = pi_closed_form(CFG, 1.0, [2.0, 0, 0]).pi
        assert np.linalg.norm(fm.pi - exact) / np.linalg.norm(exact) < 1e-6

    def test_point_charge_overlap(self):
        cfg = FieldConfiguration([PointCharge(1.0, [0, 0, 0])])
        fm = pi_quadrature(cfg, 1.0, [0, 0, 1.0 / np.sqrt(2)])
        assert_allclose(fm.pi0, np.sqrt(2), rtol=1e-6)


class TestLineIntegrals:
    def test_encircling_loop_gives_flux(self):
        assert_allclose(line_integral_pi(CFG, 1.0, square(2.0)), PHI0, rtol=1e-12)

    def test_loop_charge_scaling(self):
        assert_allclose(line_integral_pi(CFG, 2.0, square(3.0)), 2 * PHI0, rtol=1e-12)

    def test_non_encircling_loop(self):
        assert abs(line_integral_pi(CFG, 1.0, square(1.0, (5.0, 0.0)))) < 1e-12

    def test_path_through_source_raises(self):
        with pytest.raises(PathThroughSource):
            line_integral_pi(CFG, 1.0, Path([[-3, 0.5, 0], [3, 0.5, 0]]))

    def test_open_line_gives_half_flux(self):
        val, err = line_integral_to_infinity(CFG, 1.0, [0, -2.0, 0], [1, 0, 0])
        assert_allclose(val, PHI0 / 2, rtol=1e-10)
        assert err < 1e-8

    def test_zero_length_segment_rejected(self):
        with pytest.raises(ValueError):
            Path([[0, 0, 0], [0, 0, 0]])


class TestTensors:
    def test_uniform_b_tensor(self):
        cfg = FieldConfiguration([UniformBRegion([0, 0, 2.0], CylinderRegion([0, 0, 0], [0, 0, 1], 10.0))])
        g = local_field_tensor(cfg, 1.0, [1.0, 0.5, 0.0])
        assert_allclose(g, field_tensor(eval_fields(cfg, [1.0, 0.5, 0.0]), 1.0), atol=1e-8)
        assert g[1, 2] == pytest.approx(2.0)

    def test_solenoid_exterior_is_field_free(self):
        assert np.max(np.abs(local_field_tensor(CFG, 1.0, [2.0, 1.0, 0.0]))) < 1e-9

    def test_point_charge_electric_components(self):
        cfg = FieldConfiguration([PointCharge(1.0, [0, 0, 0])])
        g = local_field_tensor(cfg, 1.0, [2.0, 0.0, 0.0])
        assert_allclose(g[0, 1], 0.25, rtol=1e-8)

    def test_stencil_straddling_wall(self):
        with pytest.raises(SingularPoint):
            local_field_tensor(CFG, 1.0, [1.0, 0, 0])


class TestGauge:
    def test_flux_shift_gradient_consistent(self):
        lam = GaugeFunction.flux_shift(SOL, 0.7)
        pts = np.array([[2.0, 1.0, 0.0], [-1.5, 2.0, 3.0], [0.5, -3.0, 1.0]])
        assert lam.check_gradient(pts) < 1e-6

    def test_shift_flux_winding_and_field_equivalence(self):
        b = shift_flux(CFG, 0, 1.0)
        lam = apply_gauge(CFG, b, ([2, 2, -1], [3, 3, 1]))
        assert lam.kind == "flux_shift"
        assert lam.winding_flux == pytest.approx(-1.0)
        pts = np.array([[2.2, 2.5, 0.0], [2.9, 2.1, 0.5]])
        dpi = pi_closed_form_array(CFG, 1.0, pts)[1] - pi_closed_form_array(b, 1.0, pts)[1]
        assert_allclose(lam.gradient(pts), dpi)

    def test_gauge_value_integrates_gradient(self):
        b = shift_flux(CFG, 0, 0.5)
        lam = apply_gauge(CFG, b, ([2, 2, -1], [3, 3, 1]))
        assert lam.check_gradient(np.array([[2.3, 2.7, 0.2]]), h=1e-4, rel=1e-6) < 1e-6

    def test_mismatched_local_fields(self):
        b = FieldConfiguration([SOL, PointCharge(1.0, [0, 0, 0.5])])
        with pytest.raises(NotGaugeEquivalent):
            apply_gauge(CFG, b, ([2, 2, -1], [3, 3, 1]))

    def test_identical_configurations_give_trivial_gauge(self):
        lam = apply_gauge(CFG, CFG, ([2, 2, -1], [3, 3, 1]))
        assert lam.kind == "analytic" and lam.winding_flux == 0.0
        assert_allclose(lam.value(np.array([[2.1, 2.1, 0.0]])), 0.0)

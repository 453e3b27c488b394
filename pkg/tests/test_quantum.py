import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from lfigauge.errors import EvanescentInput
from lfigauge.quantum import (PiProfile, RingModel, WireModel, delta_barrier_transmission,
                              gauge_away_pi, gauge_shift_plane_wave, kg_dispersion_check,
                              kg_frequency, kg_residual, multiset_distance, probability_current,
                              ring_continuum_levels, ring_levels_exact, ring_many_body_energy,
                              ring_spectrum, transfer_matrix, wire_scatter)


class TestRing:
    def test_matches_lattice_dispersion(self):
        m = RingModel(n_sites=64, flux=0.37)
        assert_allclose(ring_spectrum(m).eigenvalues, ring_levels_exact(m), atol=1e-10)

    def test_frozen_levels(self):
        ev = ring_spectrum(RingModel(n_sites=256, flux=0.02)).eigenvalues
        assert_allclose(ev[:3], [0.000199999995651, 0.48017684928, 0.520172831843], rtol=1e-10)

    @settings(max_examples=10, deadline=None)
    @given(st.floats(-3, 3))
    def test_flux_periodicity(self, f):
        a = ring_spectrum(RingModel(n_sites=64, flux=f)).eigenvalues
        b = ring_spectrum(RingModel(n_sites=64, flux=f + 1.0)).eigenvalues
        assert multiset_distance(a, b) < 1e-10

    def test_half_flux_degeneracy(self):
        ev = ring_spectrum(RingModel(n_sites=128, flux=0.5)).eigenvalues
        assert abs(ev[1] - ev[0]) < 1e-10

    def test_continuum_limit_converges_quadratically(self):
        errs = []
        for n in (64, 128, 256):
            m = RingModel(n_sites=n, flux=0.3)
            errs.append(abs(ring_spectrum(m).eigenvalues[0] - ring_continuum_levels(m, 1)[0]))
        assert_allclose(errs[0] / errs[1], 4.0, rtol=0.01)
        assert_allclose(errs[1] / errs[2], 4.0, rtol=0.01)

    def test_gauge_away_to_boundary_twist(self):
        m = RingModel(n_sites=64, flux=0.8)
        primed, phase = gauge_away_pi(m)
        assert primed.flux == 0.0 and phase == pytest.approx(2 * np.pi * 0.8)
        d = multiset_distance(ring_spectrum(m).eigenvalues, ring_spectrum(primed).eigenvalues)
        assert d < 1e-10

    def test_many_body_energy_is_periodic(self):
        e0 = ring_many_body_energy(RingModel(n_sites=32, flux=0.2), 5)
        e1 = ring_many_body_energy(RingModel(n_sites=32, flux=1.2), 5)
        assert e0 == pytest.approx(e1, abs=1e-10)

    def test_rejects_small_rings(self):
        with pytest.raises(ValueError):
            RingModel(n_sites=8)


class TestWire:
    def test_delta_barrier_oracle(self):
        # m U0 / (hbar^2 k) = 1 gives T = 1/2
        res = wire_scatter(WireModel(0.5, 1.0, 1.0))
        assert_allclose(res.T, 0.5, atol=1e-14)
        assert_allclose(res.T, delta_barrier_transmission(1.0, 1.0, 0.5), atol=1e-14)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.05, 5.0), st.floats(0.0, 4.0), st.floats(-3.0, 3.0))
    def test_unitarity(self, energy, barrier, height):
        prof = PiProfile.rectangle(-0.7, 1.3, height)
        res = wire_scatter(WireModel(energy, 1.0, barrier, prof))
        assert abs(res.T + res.R - 1.0) < 1e-10

    def test_transfer_matrix_determinant(self):
        prof = PiProfile((-1.0, 0.5, 2.0), (0.4, -1.1))
        m, _, _ = transfer_matrix(WireModel(1.3, 1.0, 0.8, prof))
        # the product of unimodular blocks times exp(i * integral of q)
        assert_allclose(abs(np.linalg.det(m)), 1.0, atol=1e-12)

    def test_pi_only_shifts_phase(self):
        base = wire_scatter(WireModel(1.0, 1.0, 0.6))
        prof = PiProfile.from_function(lambda x: np.exp(-x * x), -4.0, 4.0, 100)
        res = wire_scatter(WireModel(1.0, 1.0, 0.6, prof))
        assert abs(res.T - base.T) < 1e-13
        shift = np.angle(res.transmission_amplitude / base.transmission_amplitude)
        expected = np.angle(np.exp(1j * prof.integral()))
        assert abs(shift - expected) < 1e-10

    def test_gauge_away_wire(self):
        model = WireModel(2.0, 1.0, 0.3, PiProfile.rectangle(1.0, 2.0, 0.8))
        primed, phase = gauge_away_pi(model)
        assert phase == pytest.approx(0.8)
        t0 = wire_scatter(primed).transmission_amplitude
        t1 = wire_scatter(model).transmission_amplitude
        assert abs(t1 - t0 * np.exp(1j * phase)) < 1e-12

    def test_stationary_current_is_constant(self):
        prof = PiProfile.rectangle(-1.0, 2.0, 0.9)
        res = wire_scatter(WireModel(0.8, 1.0, 1.5, prof))
        x = np.linspace(-5, 5, 401)
        psi, dpsi = res.wavefunction(x)
        j = probability_current(x, psi, prof, dpsi)
        assert np.max(np.abs(j - j[-1])) < 1e-8
        # transmitted flux density hbar k T / m
        assert_allclose(j[-1], res.model.k * res.T, rtol=1e-12)

    def test_evanescent_rejected(self):
        with pytest.raises(EvanescentInput):
            wire_scatter(WireModel(-0.1))


class TestKleinGordon:
    def test_free_dispersion(self):
        d = kg_dispersion_check(0.0, 0.0, 0.75)
        assert_allclose(d.omega, np.sqrt(1 + 0.75 ** 2), rtol=1e-15)
        assert d.residual < 1e-8

    def test_frozen_frequency(self):
        assert kg_frequency(0.0, 0.3, 1.0, 1.0) == pytest.approx(1.2206555615733703, rel=1e-15)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-2, 2), st.floats(-1, 1), st.floats(-1, 1))
    def test_gauge_shift_keeps_plane_wave_on_shell(self, pi0, pix, k, a, b):
        w = kg_frequency(pi0, pix, k, 1.0)
        p0, px, k2, w2 = gauge_shift_plane_wave(pi0, pix, k, w, a, b)
        assert abs(kg_frequency(p0, px, k2, 1.0) - w2) < 1e-12
        assert kg_residual(p0, px, k2, w2, 1.0) < 1e-8

    def test_wrong_frequency_has_large_residual(self):
        assert kg_residual(0.0, 0.0, 0.5, 2.0, 1.0) > 0.1

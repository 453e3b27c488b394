import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from lfigauge.core import (Ball, Box, Cylinder, FourVector, ToleranceSpec, eig_hermitian_dense,
                           eig_sym_tridiag, find_roots_bracketed, integrate_adaptive_3d, vec3)
from lfigauge.errors import NonConvergence, NotHermitian


class TestVectors:
    def test_vec3_rejects_bad_shape_and_nan(self):
        with pytest.raises(ValueError):
            vec3([1.0, 2.0])
        with pytest.raises(ValueError):
            vec3([1.0, np.nan, 0.0])

    def test_four_vector_minkowski_dot(self):
        a = FourVector(2.0, [1.0, 0.0, 0.0])
        assert a.dot(a) == pytest.approx(-4.0 + 1.0)

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            ToleranceSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            ToleranceSpec(abs_tol=1.5)
        assert ToleranceSpec(1e-6, 1e-9).target(10.0) == pytest.approx(1e-5)


class TestCubature:
    def test_polynomial_on_box_is_exact(self):
        res = integrate_adaptive_3d(lambda x: x[:, 0] ** 2, Box([0, 0, 0], [1, 1, 1]))
        assert_allclose(res.value, 1.0 / 3.0, rtol=1e-14)

    def test_mixed_monomial(self):
        box = Box([-1, 0, 2], [1, 2, 3])
        res = integrate_adaptive_3d(lambda x: x[:, 0] ** 2 * x[:, 1] * x[:, 2] ** 3, box)
        # (2/3) * 2 * (81 - 16)/4
        assert_allclose(res.value, 2 / 3 * 2 * 65 / 4, rtol=1e-13)

    def test_ball_volume(self):
        res = integrate_adaptive_3d(lambda x: np.ones(len(x)), Ball([1, 2, 3], 2.0))
        assert_allclose(res.value, 4 / 3 * np.pi * 8, rtol=1e-12)

    def test_cylinder_volume(self):
        cyl = Cylinder([0, 0, 0], [1, 1, 0], 0.5, -1.0, 2.0)
        res = integrate_adaptive_3d(lambda x: np.ones(len(x)), cyl)
        assert_allclose(res.value, np.pi * 0.25 * 3.0, rtol=1e-12)

    def test_gaussian_over_large_box(self):
        res = integrate_adaptive_3d(lambda x: np.exp(-np.sum(x * x, axis=1)),
                                    Box([-6] * 3, [6] * 3), ToleranceSpec(1e-10, 1e-12))
        assert_allclose(res.value, np.pi ** 1.5, rtol=1e-9)

    def test_singular_point_excision(self):
        eps = 1e-3
        res = integrate_adaptive_3d(lambda x: 1.0 / np.sum(x * x, axis=1), Ball([0, 0, 0], 1.0),
                                    singular_point=[0, 0, 0], epsilon=eps)
        assert_allclose(res.value, 4 * np.pi * (1 - eps), rtol=1e-10)

    def test_vector_valued_integrand(self):
        res = integrate_adaptive_3d(lambda x: np.column_stack([x[:, 0], x[:, 1] ** 2]),
                                    Box([0, 0, 0], [1, 1, 1]))
        assert_allclose(res.value, [0.5, 1 / 3], rtol=1e-13)

    def test_budget_exhaustion_raises(self):
        with pytest.raises(NonConvergence):
            integrate_adaptive_3d(lambda x: 1.0 / np.sqrt(np.abs(x[:, 0] - 0.3317)),
                                  Box([0, 0, 0], [1, 1, 1]), ToleranceSpec(1e-14, 1e-15, 20))

    def test_deterministic(self):
        f = lambda x: np.sin(3 * x[:, 0]) * np.cos(x[:, 1] * x[:, 2])  # noqa: E731
        a = integrate_adaptive_3d(f, Box([0, 0, 0], [2, 1, 3]))
        b = integrate_adaptive_3d(f, Box([0, 0, 0], [2, 1, 3]))
        assert a.value == b.value and a.n_cells == b.n_cells

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-3, 3), st.floats(-3, 3))
    def test_linearity(self, a, b):
        dom = Box([0, 0, 0], [1, 2, 1])
        f = lambda x: np.exp(-x[:, 0]) * x[:, 1]  # noqa: E731
        g = lambda x: np.cos(x[:, 2] + x[:, 0])  # noqa: E731
        tol = ToleranceSpec(1e-12, 1e-13)
        lhs = integrate_adaptive_3d(lambda x: a * f(x) + b * g(x), dom, tol).value
        rhs = a * integrate_adaptive_3d(f, dom, tol).value + b * integrate_adaptive_3d(g, dom, tol).value
        assert abs(lhs - rhs) <= 1e-10 * (1 + abs(a) + abs(b))


class TestRoots:
    def test_cosine(self):
        assert_allclose(find_roots_bracketed(np.cos, 0.0, 3.0), [np.pi / 2], atol=1e-12)

    def test_tangential_root_is_not_reported(self):
        assert find_roots_bracketed(lambda x: (x - 1.0) ** 2, 0.0, 2.0) == []

    def test_sqrt_two(self):
        (r,) = find_roots_bracketed(lambda x: x * x - 2.0, 0.0, 3.0, tol=ToleranceSpec(1e-8, 1e-14))
        assert abs(r - np.sqrt(2)) < 1e-13

    def test_vectorized_many_roots(self):
        roots = find_roots_bracketed(np.sin, 0.5, 20.0, 400, vectorized=True)
        assert_allclose(roots, np.pi * np.arange(1, 7), atol=1e-10)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            find_roots_bracketed(np.cos, 1.0, 0.0)


class TestLinalg:
    def test_tridiagonal_matches_dense(self):
        rng = np.random.default_rng(3)
        d, e = rng.normal(size=40), rng.normal(size=39)
        dense = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        assert_allclose(eig_sym_tridiag(d, e), np.linalg.eigvalsh(dense), atol=1e-12)

    def test_free_chain_oracle(self):
        n = 50
        ev = eig_sym_tridiag(np.zeros(n), -np.ones(n - 1))
        exact = np.sort(-2 * np.cos(np.pi * np.arange(1, n + 1) / (n + 1)))
        assert_allclose(ev, exact, atol=1e-13)

    def test_hermitian_check(self):
        with pytest.raises(NotHermitian):
            eig_hermitian_dense(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_hermitian_eigenvectors(self):
        h = np.array([[2.0, 1j], [-1j, 2.0]])
        w, v = eig_hermitian_dense(h, vectors=True)
        assert_allclose(w, [1.0, 3.0], atol=1e-14)
        assert_allclose(h @ v, v * w, atol=1e-14)

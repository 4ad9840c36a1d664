import csv
import math

import numpy as np
import pytest
import scipy.special as sp

from weylkit import (PhaseFunction, PolarScheme, SpectralPoint,
                     commutative_eigencheck, cylinder_harmonic,
                     cylinder_harmonic_coeffs, cylinder_harmonic_eval,
                     eigencheck, residual_vs_size, weyl_forward)
from weylkit.spectral import write_residual_csv
from weylkit.specfun import bessel_j, laguerre_fn_all
from weylkit.ncspace import diagonal_indices


class TestHarmonicEval:
    def test_mode_zero_is_plain_bessel(self):
        rho = np.linspace(0, 5, 11)
        got = cylinder_harmonic_eval(SpectralPoint(2.0, 0), rho, 0.3)
        np.testing.assert_allclose(got, bessel_j(0, math.sqrt(2.0) * rho),
                                   atol=1e-15)

    def test_signed_order_consistency(self):
        # i^{-j} J_j = i^{-|j|} J_{|j|} at j = -2
        x = 1.7
        lhs = 1j ** 2 * bessel_j(-2, x)
        rhs = 1j ** -2 * bessel_j(2, x)
        assert lhs == pytest.approx(rhs, abs=1e-15)
        val = cylinder_harmonic_eval(SpectralPoint(x ** 2, -2), 1.0, 0.0)
        assert val == pytest.approx(1j ** -2 * bessel_j(2, x), abs=1e-15)

    def test_zero_spectral_parameter(self):
        assert cylinder_harmonic_eval(SpectralPoint(0.0, 0), 2.2, 1.1) == 1.0

    def test_negative_lambda_rejected(self):
        with pytest.raises(ValueError):
            SpectralPoint(-1.0, 0)


class TestHarmonicCoeffs:
    def test_mode_zero_profile(self):
        eps, lam = 1.3, 0.9
        coeffs = cylinder_harmonic_coeffs(SpectralPoint(lam, 0), 8, eps)
        expected = laguerre_fn_all(0.0, 7, np.array(eps * lam / 2.0))
        np.testing.assert_allclose(coeffs.values, expected, atol=1e-14)

    def test_zero_lambda_all_ones(self):
        coeffs = cylinder_harmonic_coeffs(SpectralPoint(0.0, 0), 10, 1.0)
        np.testing.assert_allclose(coeffs.values, np.ones(10), atol=1e-15)

    def test_first_angular_leading_coefficient(self):
        eps, lam = 0.9, 1.3
        coeffs = cylinder_harmonic_coeffs(SpectralPoint(lam, 1), 8, eps)
        expected = -(2 ** -0.5 * 1j * math.sqrt(eps * lam)) \
            * math.exp(-eps * lam / 4.0)
        assert coeffs.values[0] == pytest.approx(expected, abs=1e-15)

    def test_matrix_support(self):
        coeffs = cylinder_harmonic_coeffs(SpectralPoint(1.0, 2), 7, 1.0)
        mat = coeffs.matrix().mat
        rows, cols = diagonal_indices(-2, 7)
        support = np.zeros((7, 7), dtype=bool)
        support[rows, cols] = True
        assert np.all(mat[~support] == 0)
        assert np.all(mat[support] != 0)


class TestEigencheck:
    def test_laplacian_interior_residual(self):
        rep = eigencheck("laplacian", SpectralPoint(2.0, 0), 200, 1.0)
        assert rep.residual < 1e-9
        assert rep.fitted == pytest.approx(2.0, rel=1e-12)
        assert rep.alternative == pytest.approx(2.0)  # eps = 1: same value

    def test_laplacian_alternative_reports_eps_scaling(self):
        rep = eigencheck("laplacian", SpectralPoint(2.0, 1), 128, 0.5)
        assert rep.fitted == pytest.approx(2.0, rel=1e-10)
        assert rep.alternative == pytest.approx(1.0)  # eps*lam

    def test_rotation_fits_scaled_index(self):
        rep = eigencheck("rotation", SpectralPoint(2.0, 3), 48, 1.0)
        assert rep.fitted == pytest.approx(3.0, abs=1e-10)
        assert rep.residual < 1e-10
        assert rep.alternative == 3.0

    def test_rotation_zero_mode(self):
        rep = eigencheck("rotation", SpectralPoint(1.0, 0), 32, 1.7)
        assert abs(rep.fitted) < 1e-12

    def test_summary_mentions_both_candidates(self):
        rep = eigencheck("laplacian", SpectralPoint(2.0, 1), 64, 0.5)
        text = rep.summary()
        assert "fitted" in text and "alternative" in text

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            eigencheck("spin", SpectralPoint(1.0, 0), 16, 1.0)


class TestCommutativeEigencheck:
    def test_second_order_residual(self):
        rep = commutative_eigencheck(SpectralPoint(1.0, 0), step=1e-3)
        assert rep.bessel_residual < 1e-5
        assert rep.factorization_residual < 1e-5

    def test_higher_mode(self):
        rep = commutative_eigencheck(SpectralPoint(4.0, 2), step=1e-3)
        assert rep.bessel_residual < 1e-4
        assert rep.factorization_residual < 1e-4

    def test_flat_case_is_exact(self):
        rep = commutative_eigencheck(SpectralPoint(0.0, 0), step=1e-3)
        assert rep.bessel_residual == 0.0
        assert rep.factorization_residual == 0.0

    def test_residual_scales_quadratically(self):
        coarse = commutative_eigencheck(SpectralPoint(1.0, 0), step=4e-3)
        fine = commutative_eigencheck(SpectralPoint(1.0, 0), step=1e-3)
        ratio = coarse.bessel_residual / fine.bessel_residual
        assert 8.0 < ratio < 32.0  # ~16 for a clean O(h^2) scheme


class TestWeylConsistency:
    def test_damped_harmonic_transforms_toward_coefficients(self):
        # Gaussian-damped surrogate of the j-harmonic: the diagonal
        # coefficients of its operator image align with the closed-form
        # coefficient vector as the damping widens
        eps, lam, j, size = 1.0, 2.0, 1, 32
        scheme = PolarScheme.for_eps(eps)
        target = cylinder_harmonic_coeffs(SpectralPoint(lam, j), size, eps)
        rows, cols = diagonal_indices(-j, size)
        harmonic = cylinder_harmonic(SpectralPoint(lam, j))
        correlations = []
        for sigma in (4.0, 6.0, 8.0):
            damp = 1.0 / (2.0 * sigma * sigma)
            f = PhaseFunction(
                lambda x, y, d=damp: harmonic(x, y)
                * np.exp(-d * (x * x + y * y)))
            op = weyl_forward(f, size, eps, scheme)
            vec = op.mat[rows, cols]
            corr = abs(np.vdot(target.values, vec)) \
                / (np.linalg.norm(target.values) * np.linalg.norm(vec))
            correlations.append(corr)
        assert correlations == sorted(correlations)
        assert correlations[-1] > 0.999

    def test_angular_mode_occupancy(self):
        from weylkit import angular_decompose
        f = cylinder_harmonic(SpectralPoint(2.0, 3))
        damped = PhaseFunction(
            lambda x, y: f(x, y) * np.exp(-(x * x + y * y) / 32.0))
        modes = angular_decompose(damped, 6)
        for j in range(-6, 7):
            mag = np.abs(modes.profile(j)).max()
            assert (mag > 1e-6) == (j == 3)


class TestSmearedBesselClosure:
    def test_truncated_closure_reproduces_gaussian(self):
        # delta(x - y) = int_0^T t x J_0(xt) J_0(yt) dt, smeared against a
        # Gaussian: a convergence check at T = 200, tolerance 2 percent.
        # scipy's J_0 serves as the integration kernel for speed; bessel_j
        # is validated against it elsewhere.
        x0 = 1.0
        ts = np.linspace(0, 200.0, 40001)
        ys = np.linspace(0.0, 4.0, 801)
        g = np.exp(-2.0 * (ys - 1.2) ** 2)
        jxt = sp.j0(x0 * ts)
        inner = np.trapezoid(
            sp.j0(np.outer(ys, ts)) * (jxt * ts)[None, :], ts, axis=1)
        smeared = np.trapezoid(x0 * inner * g, ys)
        expected = math.exp(-2.0 * (x0 - 1.2) ** 2)
        assert abs(smeared - expected) / expected < 0.02


class TestResidualTable:
    def test_rows_and_csv(self, tmp_path):
        rows = residual_vs_size("laplacian", SpectralPoint(1.5, 1),
                                [32, 64], 1.0)
        assert [size for size, _ in rows] == [32, 64]
        assert all(res < 1e-10 for _, res in rows)
        path = tmp_path / "residuals.csv"
        write_residual_csv(path, rows)
        with open(path, newline="") as fh:
            content = list(csv.reader(fh))
        assert content[0] == ["N", "residual"]
        assert len(content) == 3
        assert float(content[1][1]) == rows[0][1]

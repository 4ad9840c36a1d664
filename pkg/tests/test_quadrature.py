import math

import numpy as np
import pytest

from weylkit import (PlanePoint, FreqPoint, PolarScheme, gauss_rule,
                     fourier_point, gaussian, lg_mode, plane_inner_product)
from weylkit.phase_space import PhaseFunction
from weylkit.quadrature import fourier_points


class TestGaussRule:
    def test_hermite_one_point(self):
        rule = gauss_rule("hermite", 1)
        assert rule.nodes[0] == 0.0
        assert rule.weights[0] == pytest.approx(math.sqrt(math.pi), abs=1e-15)

    @pytest.mark.parametrize("n", [4, 32, 128, 200])
    def test_hermite_weight_sum(self, n):
        rule = gauss_rule("hermite", n)
        assert abs(rule.weights.sum() - math.sqrt(math.pi)) < 1e-13

    @pytest.mark.parametrize("n", [8, 24])
    def test_hermite_even_moments_exact(self, n):
        rule = gauss_rule("hermite", n)
        for k in range(0, n - 1):
            # int x^{2k} e^{-x^2} dx = Gamma(k + 1/2)
            got = rule.integrate(rule.nodes ** (2 * k))
            expected = math.gamma(k + 0.5)
            assert abs(got - expected) / expected < 1e-12

    def test_laguerre_one_point(self):
        rule = gauss_rule("laguerre", 1, 0.0)
        assert rule.nodes[0] == pytest.approx(1.0, abs=1e-15)
        assert rule.weights[0] == pytest.approx(1.0, abs=1e-15)

    def test_laguerre_moments(self):
        rule = gauss_rule("laguerre", 16, 0.0)
        for k in range(0, 20):
            got = rule.integrate(rule.nodes ** float(k))
            assert abs(got - math.factorial(k)) / math.factorial(k) < 1e-12

    def test_laguerre_alpha_rejected(self):
        with pytest.raises(ValueError):
            gauss_rule("laguerre", 4, -1.0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            gauss_rule("jacobi", 4)

    def test_size_rejected(self):
        with pytest.raises(ValueError):
            gauss_rule("hermite", 0)


class TestPoints:
    def test_polar_accessors(self):
        p = PlanePoint(1.0, 1.0)
        assert p.rho == pytest.approx(math.sqrt(2.0))
        assert p.theta == pytest.approx(math.pi / 4)
        q = FreqPoint(0.0, -2.0)
        assert q.theta == pytest.approx(3 * math.pi / 2)


class TestPlaneInnerProduct:
    @pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
    def test_mode_norm(self, eps):
        scheme = PolarScheme.for_eps(eps)
        mode = lg_mode(0, 0, eps)
        val = plane_inner_product(mode, mode, scheme)
        assert val.real == pytest.approx(2 * math.pi / eps, rel=1e-13)
        assert abs(val.imag) < 1e-13

    def test_mode_orthogonality(self):
        scheme = PolarScheme.for_eps(1.0)
        pairs = [((2, 1), (0, 3)), ((1, 0), (0, 1)), ((4, 2), (2, 4))]
        for (m, n), (mp, np_) in pairs:
            val = plane_inner_product(lg_mode(m, n, 1.0),
                                      lg_mode(mp, np_, 1.0), scheme)
            assert abs(val) < 1e-9

    def test_unit_gaussian_norm(self):
        scheme = PolarScheme()
        g = gaussian(1.0)
        val = plane_inner_product(g, g, scheme)
        assert val.real == pytest.approx(math.pi, rel=1e-13)

    def test_conjugate_symmetry(self):
        scheme = PolarScheme.for_eps(1.0)
        rng = np.random.default_rng(0)
        c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        f = c[0] * lg_mode(0, 0, 1.0) + c[1] * lg_mode(2, 1, 1.0)
        g = c[2] * lg_mode(1, 1, 1.0) + c[3] * lg_mode(0, 2, 1.0)
        a = plane_inner_product(f, g, scheme)
        b = plane_inner_product(g, f, scheme)
        assert abs(a - np.conj(b)) < 1e-13


class TestFourier:
    def test_unit_gaussian_self_dual(self):
        scheme = PolarScheme()
        g = gaussian(1.0)
        for xi in [(0.3, 0.0), (1.0, 2.0), (3.0, -1.5)]:
            val = fourier_point(g, xi[0], xi[1], scheme)
            expected = math.exp(-(xi[0] ** 2 + xi[1] ** 2) / 2)
            assert abs(val - expected) < 1e-12

    @pytest.mark.parametrize("a", [0.5, 2.0])
    def test_gaussian_family(self, a):
        scheme = PolarScheme(radial_scale=a)
        g = gaussian(a)
        val = fourier_point(g, 1.0, 0.7, scheme)
        expected = (1.0 / a) * math.exp(-(1.0 + 0.49) / (2 * a))
        assert abs(val - expected) < 1e-12

    def test_linearity(self):
        scheme = PolarScheme(64, 64)
        f = gaussian(1.0)
        g = lg_mode(1, 0, 1.0)
        a, b = 1.7 - 0.3j, -0.8 + 2.1j
        combo = a * f + b * g
        lhs = fourier_point(combo, 0.9, -0.4, scheme)
        rhs = a * fourier_point(f, 0.9, -0.4, scheme) \
            + b * fourier_point(g, 0.9, -0.4, scheme)
        assert abs(lhs - rhs) < 1e-12

    def test_double_application_is_parity(self):
        # outer scheme concentrated (radial_scale 2) so it only samples
        # frequencies the inner transform resolves
        inner = PolarScheme(96, 128, radial_scale=1.0)
        outer = PolarScheme(64, 128, radial_scale=2.0)
        f = PhaseFunction(
            lambda x, y: np.exp(-(x * x + y * y) / 2) * (x + 0.5 * y + 0.3))
        xi_x = outer.grid_x.ravel()
        xi_y = outer.grid_y.ravel()
        ff = fourier_points(f, xi_x, xi_y, inner)
        weights = (outer.radial_weights[:, None]
                   * np.ones(outer.n_angular)[None, :]).ravel()
        for (px, py) in [(0.4, -0.8), (1.1, 0.2), (0.0, 0.0)]:
            phase = np.exp(-1j * (px * xi_x + py * xi_y))
            val = (phase * ff * weights).sum() * outer.angular_step / (2 * math.pi)
            assert abs(val - complex(f(-px, -py))) < 1e-8


class TestPolarScheme:
    def test_resolves(self):
        scheme = PolarScheme(16, 9)
        assert scheme.resolves(4)
        assert not scheme.resolves(5)

    def test_validation(self):
        with pytest.raises(ValueError):
            PolarScheme(n_angular=1)
        with pytest.raises(ValueError):
            PolarScheme(radial_scale=0.0)

    def test_radial_rule_integrates_rho_gaussian(self):
        # int_0^inf e^{-c rho^2} rho drho = 1/(2c)
        scheme = PolarScheme(32, 8, radial_scale=0.8)
        val = (scheme.radial_weights * np.exp(-0.8 * scheme.rho ** 2)).sum()
        assert val == pytest.approx(1.0 / 1.6, rel=1e-14)

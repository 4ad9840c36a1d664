"""Shared oracles for the test suite: direct quadrature inner products and
random coefficient fields, independent of the code paths they check."""

import numpy as np

from weylkit import CoeffField, gauss_rule, synthesize
from weylkit.specfun import hermite_fn_all, laguerre_fn_all


def hermite_gram(nmax, eps, nodes=200):
    """Gram matrix <h_m, h_n> by Gauss-Hermite quadrature.

    After x = sqrt(eps) t the product h_m h_n supplies exactly the e^{-t^2}
    weight, so the rule applies with no exponential rescaling.
    """
    rule = gauss_rule("hermite", nodes)
    t = rule.nodes
    phi = hermite_fn_all(nmax, np.sqrt(eps) * t, eps) * np.exp(t * t / 2.0)
    return np.sqrt(eps) * np.einsum("mk,nk,k->mn", phi, phi, rule.weights)


def laguerre_gram(alpha, nmax, nodes=80):
    """Gram matrix int_0^infty x^alpha l_m l_n dx by Gauss-Laguerre."""
    rule = gauss_rule("laguerre", nodes, alpha)
    u = rule.nodes
    lpoly = laguerre_fn_all(alpha, nmax, u) * np.exp(u / 2.0)
    return np.einsum("mk,nk,k->mn", lpoly, lpoly, rule.weights)


def random_field(size, eps, rng):
    """Random mode combination as (CoeffField, PhaseFunction)."""
    c = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    field = CoeffField(eps, c)
    return field, synthesize(field)

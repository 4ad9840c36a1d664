"""The transform between plane functions and Hermite-basis operator
matrices: forward, inverse, rank-one inversion, the unitarity constant,
and the derivation/multiplication correspondences.

The forward map is the basis correspondence (mode (m, n) goes to the unit
matrix entry at (m, n)); the frequency-domain integral is kept as an
independent oracle.  The two coincide at eps = 1; the literal integral
normalization carries an extra 1/eps otherwise, so oracle cross-checks pin
eps = 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .specfun import check_eps
from .quadrature import PolarScheme, fourier_points, plane_inner_product
from .phase_space import CoeffField, PhaseFunction, analyze, synthesize
from .ncspace import OperatorMatrix, apply_superop, weyl_element

__all__ = [
    "weyl_forward",
    "weyl_forward_oracle",
    "weyl_forward_oracle_matrix",
    "weyl_inverse",
    "weyl_inverse_rank1",
    "PlancherelReport",
    "plancherel_ratio",
    "correspondence_residual",
    "CORRESPONDENCE_KINDS",
]


def weyl_forward(f, size, eps=1.0, scheme=None):
    """Operator image of a Gaussian-decay plane function.

    The Hermite-basis matrix entries are exactly the Laguerre-Gauss
    coefficients of f, since the transform sends mode (m, n) to the unit
    matrix entry (m, n).
    """
    field = analyze(f, size, eps, scheme)
    return OperatorMatrix(field.eps, field.c)


def weyl_forward_oracle_matrix(f, size, eps=1.0, scheme=None, freq_scheme=None):
    """All entries (m, n < size) of the frequency-domain defining integral

        F[m][n] = (2 pi)^{-1} int Ff(xi) <h_m, W_xi h_n> dxi,

    computed on a polar frequency grid, fully independent of the
    mode-projection path.  The Fourier data is shared across entries.
    """
    eps = check_eps(eps)
    scheme = scheme or PolarScheme(64, 128, radial_scale=1.0 / eps)
    freq_scheme = freq_scheme or PolarScheme(64, 128, radial_scale=eps / 2.0)
    xi_x = freq_scheme.grid_x.ravel()
    xi_y = freq_scheme.grid_y.ravel()
    ff = fourier_points(f, xi_x, xi_y, scheme)
    base = ff * (freq_scheme.radial_weights[:, None]
                 * np.ones(freq_scheme.n_angular)[None, :]).ravel()
    out = np.empty((size, size), dtype=complex)
    for m in range(size):
        for n in range(size):
            elements = weyl_element(m, n, xi_x, xi_y, eps)
            out[m, n] = np.sum(base * elements)
    out *= freq_scheme.angular_step / (2.0 * math.pi)
    return OperatorMatrix(eps, out)


def weyl_forward_oracle(f, m, n, eps=1.0, scheme=None, freq_scheme=None):
    """Single entry of the frequency-domain defining integral."""
    eps = check_eps(eps)
    scheme = scheme or PolarScheme(64, 128, radial_scale=1.0 / eps)
    freq_scheme = freq_scheme or PolarScheme(64, 128, radial_scale=eps / 2.0)
    xi_x = freq_scheme.grid_x.ravel()
    xi_y = freq_scheme.grid_y.ravel()
    ff = fourier_points(f, xi_x, xi_y, scheme)
    weights = (freq_scheme.radial_weights[:, None]
               * np.ones(freq_scheme.n_angular)[None, :]).ravel()
    elements = weyl_element(m, n, xi_x, xi_y, eps)
    total = np.sum(ff * weights * elements)
    return complex(total * freq_scheme.angular_step / (2.0 * math.pi))


def weyl_inverse(op):
    """Plane function sum_{m,n} A[m][n] mode_{m,n}(x, y)."""
    return synthesize(CoeffField(op.eps, op.mat))


def weyl_inverse_rank1(phi, psi, x, y, eps=1.0):
    """Inverse image of the rank-one operator psi (x) phi^* at (x, y).

    Evaluates 2 eps^{-1} <phi, W_{2y/eps, -2x/eps} psi-hat> where psi-hat
    is the parity flip, realized on Hermite coefficients as (-1)^n psi_n.
    Bilinear in (psi, conj(phi)).
    """
    eps = check_eps(eps)
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    scalar = np.isscalar(x) and np.isscalar(y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xi_x = 2.0 * y / eps
    xi_y = -2.0 * x / eps
    total = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for m in range(len(phi)):
        if phi[m] == 0:
            continue
        for n in range(len(psi)):
            if psi[n] == 0:
                continue
            coeff = np.conj(phi[m]) * (-1.0) ** n * psi[n]
            total = total + coeff * weyl_element(m, n, xi_x, xi_y, eps)
    total *= 2.0 / eps
    return complex(total) if scalar else total


@dataclass(frozen=True)
class PlancherelReport:
    """Measured unitarity constant of the transform.

    ratio is <f, g> over the trace pairing of the images; for the measure
    conventions used here it equals 2 pi / eps on basis-supported inputs.
    ``defined`` is False when the trace pairing is numerically zero.
    """

    ratio: complex
    expected: float
    deviation: float
    defined: bool
    plane_pairing: complex
    trace_pairing: complex


def plancherel_ratio(f, g, size, eps=1.0, scheme=None):
    """Compare the plane inner product with the operator trace pairing."""
    eps = check_eps(eps)
    scheme = scheme or PolarScheme.for_eps(eps)
    plane = plane_inner_product(f, g, scheme)
    fop = weyl_forward(f, size, eps, scheme)
    gop = weyl_forward(g, size, eps, scheme)
    trace = complex(np.sum(np.conj(fop.mat) * gop.mat))
    expected = 2.0 * math.pi / eps
    # zero detection scaled to the image norms: quadrature zeros for
    # unit-normalized orthogonal inputs land around 1e-14
    floor = 1e-12 * max(1.0, float(np.linalg.norm(fop.mat))
                        * float(np.linalg.norm(gop.mat)))
    if abs(trace) < floor:
        return PlancherelReport(complex("nan"), expected, math.inf, False,
                                plane, trace)
    ratio = plane / trace
    return PlancherelReport(ratio, expected, abs(ratio - expected), True,
                            plane, trace)


CORRESPONDENCE_KINDS = ("mx", "my", "px", "py")

_KIND_TO_SUPEROP = {
    "mx": "mult_x",
    "my": "mult_y",
    "px": "mom_x",
    "py": "mom_y",
}


def correspondence_residual(kind, f, size, eps=1.0, scheme=None,
                            derivative=None, step=1e-4):
    """Max interior-entry mismatch between transforming the derived/
    multiplied function and applying the matching superoperator.

    kind "mx"/"my" multiplies by the coordinate; "px"/"py" applies the
    momentum derivation -i eps d/dx (resp. d/dy), via central differences
    of ``step`` unless an analytic ``derivative(x, y)`` is supplied.
    The comparison drops the last row/column (interior margin 1).
    """
    kind = kind.lower()
    if kind not in CORRESPONDENCE_KINDS:
        raise ValueError(f"unknown correspondence kind {kind!r}")
    eps = check_eps(eps)
    if kind == "mx":
        g = PhaseFunction(lambda x, y: x * f(x, y))
    elif kind == "my":
        g = PhaseFunction(lambda x, y: y * f(x, y))
    elif derivative is not None:
        g = PhaseFunction(lambda x, y: -1j * eps * derivative(x, y))
    elif kind == "px":
        g = PhaseFunction(
            lambda x, y: -1j * eps * (f(x + step, y) - f(x - step, y))
            / (2.0 * step))
    else:
        g = PhaseFunction(
            lambda x, y: -1j * eps * (f(x, y + step) - f(x, y - step))
            / (2.0 * step))
    lhs = weyl_forward(g, size, eps, scheme)
    rhs = apply_superop(_KIND_TO_SUPEROP[kind], weyl_forward(f, size, eps, scheme))
    interior = slice(0, size - 1)
    return float(np.abs(lhs.mat[interior, interior]
                        - rhs.mat[interior, interior]).max())

"""The commutative side: plane functions, the Laguerre-Gauss mode basis,
coefficient analysis/synthesis, and angular-mode decomposition.

Modes are indexed two ways.  The Cartesian pair (m, n) matches the rank-one
operators the modes transform into; the polar pair (j, r) = (m - n, min(m, n))
labels the same mode by its angular momentum j and radial index r.
"""

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .specfun import check_eps, laguerre_fn_all, laguerre_gauss_2d, laguerre_radial
from .quadrature import PolarScheme

__all__ = [
    "PhaseFunction",
    "gaussian",
    "lg_mode",
    "lg_mode_eval",
    "lg_mode_polar_eval",
    "CoeffField",
    "AngularModes",
    "analyze",
    "synthesize_at",
    "synthesize",
    "angular_decompose",
]


@dataclass(frozen=True)
class PhaseFunction:
    """A complex function on the plane, wrapped so combinations compose.

    ``evaluator`` maps broadcastable arrays (x, y) to complex values.
    ``band_limit`` optionally declares the largest angular mode present.
    """

    evaluator: Callable
    band_limit: Optional[int] = None

    def __call__(self, x, y):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float),
                                         np.asarray(y, dtype=float)),
                          dtype=complex)

    def __add__(self, other):
        if not isinstance(other, PhaseFunction):
            return NotImplemented
        bl = None
        if self.band_limit is not None and other.band_limit is not None:
            bl = max(self.band_limit, other.band_limit)
        return PhaseFunction(lambda x, y: self(x, y) + other(x, y), bl)

    def __mul__(self, scalar):
        if isinstance(scalar, PhaseFunction):
            return NotImplemented
        c = complex(scalar)
        return PhaseFunction(lambda x, y: c * self(x, y), self.band_limit)

    __rmul__ = __mul__


def gaussian(a=1.0):
    """Radial Gaussian e^{-a rho^2 / 2} as a PhaseFunction."""
    if a <= 0:
        raise ValueError("decay rate a must be positive")
    return PhaseFunction(lambda x, y: np.exp(-0.5 * a * (x * x + y * y)),
                         band_limit=0)


def lg_mode_eval(m, n, x, y, eps=1.0):
    """Laguerre-Gauss mode of index (m, n) at Cartesian points.

    Closed form 2 eps^{-1} (-1)^m times the conjugate-index Laguerre-Gauss
    function at the rotated, rescaled argument (2 eps^{-1/2} y,
    -2 eps^{-1/2} x).
    """
    eps = check_eps(eps)
    s = 2.0 / math.sqrt(eps)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (2.0 / eps) * (-1.0) ** m * laguerre_gauss_2d(n, m, s * y, -s * x)


def lg_mode_polar_eval(j, n, rho, theta, eps=1.0):
    """Polar-indexed mode (angular momentum j, radial index n) at
    (rho, theta): 2 eps^{-1} (-1)^n i^{-|j|} times the radial
    Laguerre-Gauss factor at 2 eps^{-1/2} rho, times e^{-i j theta}."""
    eps = check_eps(eps)
    j = int(j)
    aj = abs(j)
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    rad = laguerre_radial(aj, n, 2.0 / math.sqrt(eps) * rho)
    return (2.0 / eps) * (-1.0) ** n * (1j ** -aj) * rad * np.exp(-1j * j * theta)


def lg_mode(m, n, eps=1.0):
    """The (m, n) mode as a PhaseFunction."""
    eps = check_eps(eps)
    return PhaseFunction(lambda x, y: lg_mode_eval(m, n, x, y, eps),
                         band_limit=abs(m - n))


# ---------------------------------------------------------------------------
# Coefficient fields
# ---------------------------------------------------------------------------

def _matrix_to_json_dict(eps, mat):
    return {
        "eps": float(eps),
        "N": int(mat.shape[0]),
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def _matrix_from_json_dict(data):
    eps = check_eps(data["eps"])
    size = int(data["N"])
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != (size, size) or im.shape != (size, size):
        raise ValueError(f"matrix payload is not {size}x{size}")
    mat = re + 1j * im
    if not np.all(np.isfinite(re)) or not np.all(np.isfinite(im)):
        raise ValueError("matrix payload contains non-finite entries")
    return eps, mat


@dataclass(frozen=True)
class CoeffField:
    """Coefficients of a plane function against the Laguerre-Gauss modes.

    c[m][n] is the coefficient of mode (m, n); identically the matrix of
    the function's operator image in the Hermite basis.
    """

    eps: float
    c: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.c, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("coefficient array must be square")
        if not np.all(np.isfinite(mat.view(float))):
            raise ValueError("coefficient array must be finite")
        object.__setattr__(self, "c", mat)
        check_eps(self.eps)

    @property
    def size(self):
        return self.c.shape[0]

    def to_json_dict(self):
        return _matrix_to_json_dict(self.eps, self.c)

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data):
        eps, mat = _matrix_from_json_dict(data)
        return cls(eps, mat)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class AngularModes:
    """Angular-mode decomposition f(rho, theta) = sum_j f_j(rho) e^{i j theta},
    with the radial profiles sampled on a scheme's radial nodes."""

    j_values: np.ndarray
    profiles: np.ndarray  # shape (len(j_values), n_radial)
    scheme: PolarScheme

    def profile(self, j):
        idx = int(j) - int(self.j_values[0])
        if idx < 0 or idx >= len(self.j_values):
            raise KeyError(f"mode {j} outside decomposition band")
        return self.profiles[idx]

    def reconstruct(self):
        """Grid samples sum_j f_j(rho_k) e^{i j theta_a}."""
        phases = np.exp(1j * np.outer(self.j_values, self.scheme.theta))
        return np.einsum("jk,ja->ka", self.profiles, phases)


def _angular_fft(fgrid, n_angular):
    # mode j lives at FFT index j mod n_angular
    return np.fft.fft(fgrid, axis=1) / n_angular


def angular_decompose(f, band, scheme=None):
    """Angular modes f_j(rho_k) = (2 pi)^{-1} int e^{-i j theta} f dtheta
    for |j| <= band, evaluated by the exact uniform-grid rule."""
    scheme = scheme or PolarScheme()
    band = int(band)
    if not scheme.resolves(band):
        raise ValueError(
            f"angular grid of {scheme.n_angular} cannot resolve band {band}")
    fgrid = scheme.evaluate(f)
    fft = _angular_fft(fgrid, scheme.n_angular)
    j_values = np.arange(-band, band + 1)
    profiles = np.stack([fft[:, j % scheme.n_angular] for j in j_values])
    return AngularModes(j_values, profiles, scheme)


# ---------------------------------------------------------------------------
# Analysis and synthesis
# ---------------------------------------------------------------------------

def analyze(f, size, eps=1.0, scheme=None):
    """Project a plane function on the first size x size Laguerre-Gauss modes.

    The normalization eps/(2 pi) makes analyze(mode) the unit coefficient
    field, so the coefficients coincide with the Hermite-basis entries of
    the function's operator image.  Internally the projection runs per
    angular mode: an exact FFT over the angular grid followed by a radial
    Gauss-Laguerre quadrature, which integrates mode products exactly.
    """
    eps = check_eps(eps)
    size = int(size)
    if size < 1:
        raise ValueError("size must be >= 1")
    scheme = scheme or PolarScheme.for_eps(eps)
    if not scheme.resolves(size - 1):
        raise ValueError("angular grid too coarse for requested size")
    fgrid = scheme.evaluate(f)
    fft = _angular_fft(fgrid, scheme.n_angular)
    u = (2.0 / eps) * scheme.rho ** 2
    out = np.zeros((size, size), dtype=complex)
    for j in range(-(size - 1), size):
        aj = abs(j)
        length = size - aj
        rad = laguerre_fn_all(float(aj), length - 1, u)  # (length, n_radial)
        weights = scheme.radial_weights * u ** (aj / 2.0) \
            * fft[:, (-j) % scheme.n_angular]
        coeffs = 2.0 * (rad @ weights)
        coeffs *= (-1.0) ** np.arange(length)
        if j >= 0:
            rows = np.arange(length) + j
            cols = np.arange(length)
        else:
            rows = np.arange(length)
            cols = np.arange(length) + aj
        out[rows, cols] = coeffs
    return CoeffField(eps, out)


def synthesize_at(field, x, y):
    """Evaluate sum_{m,n} c[m][n] mode_{m,n}(x, y) at points."""
    eps = field.eps
    size = field.size
    scalar = np.isscalar(x) and np.isscalar(y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    u = (2.0 / eps) * (x * x + y * y)
    theta = np.arctan2(y, x)
    total = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for j in range(-(size - 1), size):
        aj = abs(j)
        length = size - aj
        if j >= 0:
            diag = field.c[np.arange(length) + j, np.arange(length)]
        else:
            diag = field.c[np.arange(length), np.arange(length) + aj]
        if not np.any(diag):
            continue
        rad = laguerre_fn_all(float(aj), length - 1, u)
        signs = (-1.0) ** np.arange(length)
        radsum = np.tensordot(diag * signs, rad, axes=(0, 0))
        # i^{-|j|} of the polar closed form cancels against the i^{|j|} of
        # the radial factor, leaving the real kernel u^{|j|/2} l_r(u)
        total = total + u ** (aj / 2.0) * radsum * np.exp(-1j * j * theta)
    total *= 2.0 / eps
    return complex(total) if scalar else total


def synthesize(field):
    """The synthesized plane function as a PhaseFunction."""
    return PhaseFunction(lambda x, y: synthesize_at(field, x, y),
                         band_limit=field.size - 1)

"""Special functions and three-term recurrences used throughout the toolkit.

All orthogonal-function evaluation goes through recurrences on the
*normalized* functions, never through explicit factorials, so indices in
the thousands stay finite.  Gamma-factor seeds are taken through
``log``-gamma.
"""

import math

import numpy as np
from scipy.special import gammaln

__all__ = [
    "check_eps",
    "hermite_poly",
    "hermite_poly_all",
    "hermite_fn",
    "hermite_fn_all",
    "laguerre_poly",
    "laguerre_poly_all",
    "laguerre_fn",
    "laguerre_fn_all",
    "bessel_j",
    "laguerre_radial",
    "laguerre_gauss_2d",
    "jacobi_apply",
    "jacobi_is_symmetric",
    "JACOBI_KINDS",
]


def check_eps(eps):
    """Validate the deformation parameter: a finite positive real."""
    eps = float(eps)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValueError(f"eps must be a finite positive real, got {eps!r}")
    return eps


def _check_alpha(alpha):
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= -1.0:
        raise ValueError(f"alpha must be > -1, got {alpha!r}")
    return alpha


# ---------------------------------------------------------------------------
# Hermite polynomials and functions
# ---------------------------------------------------------------------------

def hermite_poly_all(nmax, x):
    """Physicists' Hermite polynomials H_0..H_nmax at ``x``, stacked on axis 0.

    Upward recurrence H_{n+1} = 2 x H_n - 2 n H_{n-1}.  Overflow to inf for
    very large n*x is allowed and documented.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * x
    for n in range(1, nmax):
        out[n + 1] = 2.0 * x * out[n] - 2.0 * n * out[n - 1]
    return out


def hermite_poly(n, x):
    """H_n(x) by the stable upward three-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    res = hermite_poly_all(n, x)[n]
    return float(res) if np.isscalar(x) else res


def hermite_fn_all(nmax, x, eps=1.0):
    """Normalized Hermite functions h_0..h_nmax, recurring on h_n directly.

    h_n(x) = eps^{-1/4} pi^{-1/4} 2^{-n/2} (n!)^{-1/2} e^{-x^2/2eps}
             H_n(eps^{-1/2} x), generated from
    h_{n+1} = sqrt(2/(n+1)) (x/sqrt(eps)) h_n - sqrt(n/(n+1)) h_{n-1}.
    """
    eps = check_eps(eps)
    x = np.asarray(x, dtype=float)
    t = x / math.sqrt(eps)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = eps ** -0.25 * math.pi ** -0.25 * np.exp(-x * x / (2.0 * eps))
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * t * out[0]
    for n in range(1, nmax):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * t * out[n] \
            - math.sqrt(n / (n + 1.0)) * out[n - 1]
    return out


def hermite_fn(n, x, eps=1.0):
    """h_n(x), the L^2-normalized Hermite function with parameter eps."""
    if n < 0:
        raise ValueError("n must be >= 0")
    res = hermite_fn_all(n, x, eps)[n]
    return float(res) if np.isscalar(x) else res


# ---------------------------------------------------------------------------
# Laguerre polynomials and functions
# ---------------------------------------------------------------------------

def laguerre_poly_all(alpha, nmax, x):
    """Generalized Laguerre polynomials L^(alpha)_0..nmax at ``x``.

    Upward recurrence
    (n+1) L_{n+1} = (2n+alpha+1-x) L_n - (n+alpha) L_{n-1}.
    """
    alpha = _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = alpha + 1.0 - x
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + alpha + 1.0 - x) * out[n]
                      - (n + alpha) * out[n - 1]) / (n + 1.0)
    return out


def laguerre_poly(alpha, n, x):
    """L^(alpha)_n(x) via the upward three-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    res = laguerre_poly_all(alpha, n, x)[n]
    return float(res) if np.isscalar(x) else res


def laguerre_fn_all(alpha, nmax, x):
    """Normalized Laguerre functions l^(alpha)_0..nmax at ``x >= 0``.

    l^(alpha)_n(x) = sqrt(n!/Gamma(n+alpha+1)) e^{-x/2} L^(alpha)_n(x),
    generated by recurring on the normalized functions:

        sqrt((n+1)(n+alpha+1)) l_{n+1}
            = (2n+alpha+1-x) l_n - sqrt(n(n+alpha)) l_{n-1}

    with the n=0 seed through log-gamma, so no factorial ever appears.
    """
    alpha = _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.exp(-0.5 * gammaln(alpha + 1.0) - 0.5 * x)
    if nmax >= 1:
        out[1] = (alpha + 1.0 - x) / math.sqrt(alpha + 1.0) * out[0]
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + alpha + 1.0 - x) * out[n]
                      - math.sqrt(n * (n + alpha)) * out[n - 1]) \
            / math.sqrt((n + 1.0) * (n + alpha + 1.0))
    return out


def laguerre_fn(alpha, n, x):
    """l^(alpha)_n(x), the weighted-orthonormal Laguerre function."""
    if n < 0:
        raise ValueError("n must be >= 0")
    res = laguerre_fn_all(alpha, n, x)[n]
    return float(res) if np.isscalar(x) else res


# ---------------------------------------------------------------------------
# Bessel functions of integer order
# ---------------------------------------------------------------------------

_SERIES_CUTOFF = 8.0
_SERIES_TERMS = 36


def _bessel_series(j, x):
    # power series around 0; j >= 0, |x| <= _SERIES_CUTOFF
    half = 0.5 * x
    term = np.exp(j * np.log(np.where(half == 0.0, 1.0, np.abs(half)))
                  - gammaln(j + 1.0)) * np.sign(half) ** j
    term = np.where(half == 0.0, 1.0 if j == 0 else 0.0, term)
    total = term.copy()
    h2 = half * half
    for k in range(1, _SERIES_TERMS):
        term = term * (-h2) / (k * (k + j))
        total += term
    return total


def _bessel_miller(j, x):
    # Miller-style backward recurrence, normalized with J_0 + 2 sum J_{2k} = 1.
    # x > 0 elementwise.
    xmax = float(np.max(x))
    m = max(j, int(xmax)) + 50
    if m % 2:
        m += 1
    inv = 1.0 / x
    fkp1 = np.zeros_like(x)
    fk = np.full_like(x, 1e-30)
    total = np.zeros_like(x)
    target = np.zeros_like(x)
    for k in range(m, 0, -1):
        fkm1 = (2.0 * k) * inv * fk - fkp1
        fkp1 = fk
        fk = fkm1
        if k - 1 == j:
            target = fk.copy()
        if (k - 1) % 2 == 0 and k - 1 > 0:
            total += fk
        big = np.abs(fk) > 1e250
        if big.any():
            scale = np.where(big, 1e-250, 1.0)
            fk = fk * scale
            fkp1 = fkp1 * scale
            total = total * scale
            target = target * scale
    norm = fk + 2.0 * total
    return target / norm


def bessel_j(j, x):
    """Bessel function J_j(x) of integer order.

    Power series for |x| below 8, Miller-style backward recurrence above.
    Negative orders and arguments reduce through J_{-n} = (-1)^n J_n and
    J_n(-x) = (-1)^n J_n(x).
    """
    j = int(j)
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    sign = 1.0
    if j < 0:
        j = -j
        sign *= (-1.0) ** j
    ax = np.abs(x)
    out = np.empty_like(ax)
    small = ax <= _SERIES_CUTOFF
    if small.any():
        out[small] = _bessel_series(j, ax[small])
    if (~small).any():
        out[~small] = _bessel_miller(j, ax[~small])
    out = sign * out * np.where(x < 0, (-1.0) ** j, 1.0)
    return float(out) if scalar else out


# ---------------------------------------------------------------------------
# Laguerre-Gauss building blocks
# ---------------------------------------------------------------------------

def laguerre_radial(j, n, rho):
    """Radial Laguerre-Gauss factor (i rho / sqrt(2))^|j| l^(|j|)_n(rho^2/2).

    Complex because of the i^|j| prefactor; vanishes at rho=0 for j != 0.
    """
    aj = abs(int(j))
    scalar = np.isscalar(rho)
    rho = np.asarray(rho, dtype=float)
    rad = laguerre_fn_all(float(aj), n, 0.5 * rho * rho)[n]
    val = (2.0 ** -0.5 * 1j * rho) ** aj * rad
    return complex(val) if scalar else val


def laguerre_gauss_2d(m, n, x, y):
    """Laguerre-Gauss plane function of index (m, n) at Cartesian (x, y).

    For m >= n this is (i zeta / sqrt(2))^{m-n} l^{(m-n)}_n(|zeta|^2 / 2)
    with zeta = x + i y; for m < n the mirror with conjugated argument.
    These are the Hermite-basis matrix elements of the Weyl operator after
    rescaling the argument.
    """
    m = int(m)
    n = int(n)
    scalar = np.isscalar(x) and np.isscalar(y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    zeta = x + 1j * y
    half_sq = 0.5 * (x * x + y * y)
    if m >= n:
        val = (2.0 ** -0.5 * 1j * zeta) ** (m - n) \
            * laguerre_fn_all(float(m - n), n, half_sq)[n]
    else:
        val = (2.0 ** -0.5 * 1j * np.conj(zeta)) ** (n - m) \
            * laguerre_fn_all(float(n - m), m, half_sq)[m]
    return complex(val) if scalar else val


# ---------------------------------------------------------------------------
# Discrete three-term operators on index vectors
# ---------------------------------------------------------------------------

JACOBI_KINDS = ("A", "B", "C", "D")


def jacobi_is_symmetric(kind, alpha=0.0):
    """True when the discrete operator is symmetric on the lattice.

    B and D are symmetric for every admissible alpha; C only at alpha=0;
    A never.
    """
    kind = kind.upper()
    if kind not in JACOBI_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind in ("B", "D"):
        return True
    if kind == "C":
        return float(alpha) == 0.0
    return False


def jacobi_apply(kind, v, alpha=0.0, offset=0, require_symmetric=False):
    """Apply one of the discrete three-term operators to a vector.

    ``v[i]`` carries lattice index ``i + offset``.  Entries below index 0
    are absent (the operators are singular at n=0, so no boundary data is
    needed); the out-of-range ``v[len(v)]`` term is dropped by truncation.

    Kinds:
        A: (Av)_n = v_{n+1}/2 + n v_{n-1}
        B: (Bv)_n = sqrt((n+1)/2) v_{n+1} + sqrt(n/2) v_{n-1}
        C: (Cv)_n = -(n+1) v_{n+1} + (2n+alpha+1) v_n - (n+alpha) v_{n-1}
        D: (Dv)_n = -sqrt((n+1)(n+alpha+1)) v_{n+1} + (2n+alpha+1) v_n
                    - sqrt(n(n+alpha)) v_{n-1}
    """
    kind = kind.upper()
    if kind not in JACOBI_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind in ("C", "D"):
        alpha = _check_alpha(alpha)
    if require_symmetric and not jacobi_is_symmetric(kind, alpha):
        raise ValueError(f"kind {kind} with alpha={alpha} is not symmetric")
    v = np.asarray(v)
    size = v.shape[0]
    n = np.arange(size, dtype=float) + offset
    up = np.zeros_like(v)    # v_{n+1} contribution
    down = np.zeros_like(v)  # v_{n-1} contribution
    up[:-1] = v[1:]
    down[1:] = v[:-1]
    nm1 = np.maximum(n - 1.0, 0.0)  # coefficient of v_{n-1}, guarded at n=0
    if kind == "A":
        return 0.5 * up + n * down
    if kind == "B":
        return np.sqrt((n + 1.0) / 2.0) * up + np.sqrt(n / 2.0) * down
    if kind == "C":
        return -(n + 1.0) * up + (2.0 * n + alpha + 1.0) * v \
            - (n + alpha) * down
    # kind == "D"
    return -np.sqrt((n + 1.0) * (n + alpha + 1.0)) * up \
        + (2.0 * n + alpha + 1.0) * v \
        - np.sqrt(np.maximum(n * (n + alpha), 0.0)) * down

"""The noncommutative side: truncated operator matrices in the Hermite
basis, Weyl-operator matrix elements, superoperators, spectral calculus,
the angular-phase and radius-power operators, and the Bargmann kernel.

Truncation policy: superoperator identities that hold for the infinite
operators are exact here only on an interior index block; every consumer
states its interior margin.  Helpers whose name ends in ``_exact`` evaluate
ladder-index products in integer arithmetic, so the truncated identities
they encode hold to the last bit.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .specfun import check_eps, laguerre_gauss_2d
from .quadrature import gauss_rule
from .phase_space import _matrix_from_json_dict, _matrix_to_json_dict

__all__ = [
    "OperatorMatrix",
    "diagonal_to_pair",
    "pair_to_diagonal",
    "diagonal_indices",
    "diagonal_length",
    "ladder_operators",
    "commutator",
    "commutator_xy_exact",
    "ladder_quadratic_exact",
    "weyl_element",
    "weyl_element_oracle",
    "SUPEROP_KINDS",
    "apply_superop",
    "ad_r2_half",
    "mult_r2_power",
    "angular_phase_operator",
    "radius_power_operator",
    "bargmann_basis",
    "bargmann_kernel",
]


@dataclass(frozen=True)
class OperatorMatrix:
    """Truncated Hilbert-Schmidt operator: mat[m][n] = <h_m, A h_n>."""

    eps: float
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("operator matrix must be square")
        if not np.all(np.isfinite(mat.view(float))):
            raise ValueError("operator matrix must be finite")
        object.__setattr__(self, "mat", mat)
        check_eps(self.eps)

    @property
    def size(self):
        return self.mat.shape[0]

    def adjoint(self):
        return OperatorMatrix(self.eps, self.mat.conj().T)

    def to_json_dict(self):
        return _matrix_to_json_dict(self.eps, self.mat)

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data):
        eps, mat = _matrix_from_json_dict(data)
        return cls(eps, mat)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Diagonal (angular momentum) indexing: j = m - n, radial r = min(m, n)
# ---------------------------------------------------------------------------

def diagonal_to_pair(j, r):
    """(j, r) -> (m, n): (r+j, r) for j >= 0, (r, r+|j|) for j < 0."""
    j = int(j)
    r = int(r)
    if r < 0:
        raise ValueError("radial index must be >= 0")
    return (r + j, r) if j >= 0 else (r, r - j)


def pair_to_diagonal(m, n):
    """(m, n) -> (j, r) with j = m - n and r = min(m, n)."""
    return int(m) - int(n), min(int(m), int(n))


def diagonal_length(j, size):
    """Number of radial slots on diagonal j of a size x size matrix."""
    return max(int(size) - abs(int(j)), 0)


def diagonal_indices(j, size):
    """Row/column index arrays of diagonal j in a size x size matrix."""
    length = diagonal_length(j, size)
    r = np.arange(length)
    if j >= 0:
        return r + j, r
    return r, r + abs(int(j))


# ---------------------------------------------------------------------------
# Ladder operators and exact truncated identities
# ---------------------------------------------------------------------------

def ladder_operators(size, eps=1.0):
    """Truncated lowering/raising/coordinate operators.

    Returns a dict with entries S (lowering, S[n-1][n] = sqrt(n)),
    Sdag (its adjoint), X = sqrt(eps/2)(Sdag+S), Y = i sqrt(eps/2)(Sdag-S).
    """
    eps = check_eps(eps)
    size = int(size)
    if size < 2:
        raise ValueError("size must be >= 2")
    s = np.zeros((size, size), dtype=complex)
    n = np.arange(1, size)
    s[n - 1, n] = np.sqrt(n)
    sdag = s.conj().T.copy()
    c = math.sqrt(eps / 2.0)
    x = c * (sdag + s)
    y = 1j * c * (sdag - s)
    return {
        "S": OperatorMatrix(eps, s),
        "Sdag": OperatorMatrix(eps, sdag),
        "X": OperatorMatrix(eps, x),
        "Y": OperatorMatrix(eps, y),
    }


def commutator(a, b):
    """[A, B] of two operator matrices (brute-force truncated product)."""
    if a.size != b.size:
        raise ValueError("dimension mismatch")
    return OperatorMatrix(a.eps, a.mat @ b.mat - b.mat @ a.mat)


def commutator_xy_exact(size, eps=1.0):
    """Truncated [X, Y] with ladder amplitude products done exactly.

    The products sqrt(n) * sqrt(n) are formed as the integer n, so the
    result is exactly i eps on the diagonal except the last entry, which
    is exactly -i eps (size-1): the truncation drops the sqrt(size) rung.
    """
    eps = check_eps(eps)
    size = int(size)
    if size < 2:
        raise ValueError("size must be >= 2")
    diag = np.ones(size)
    diag[-1] = -(size - 1)
    return OperatorMatrix(eps, 1j * eps * np.diag(diag).astype(complex))


def ladder_quadratic_exact(size, eps=1.0):
    """Truncated X^2 + Y^2 with ladder products done exactly.

    Equals eps (SdagS + SSdag) with integer diagonals n and n+1 (the last
    SSdag entry truncates to 0), i.e. diag(eps (2n+1)) except the corner
    entry eps (size-1).
    """
    eps = check_eps(eps)
    size = int(size)
    n = np.arange(size)
    diag = (2 * n + 1).astype(float)
    diag[-1] = float(size - 1)
    return OperatorMatrix(eps, eps * np.diag(diag).astype(complex))


# ---------------------------------------------------------------------------
# Weyl operator matrix elements
# ---------------------------------------------------------------------------

def weyl_element(m, n, xi_x, xi_y, eps=1.0):
    """<h_m, W_{xi_x, xi_y} h_n>: the Laguerre-Gauss closed form at the
    rescaled frequency sqrt(eps) * xi."""
    eps = check_eps(eps)
    s = math.sqrt(eps)
    return laguerre_gauss_2d(m, n, s * np.asarray(xi_x, dtype=float),
                             s * np.asarray(xi_y, dtype=float))


def weyl_element_oracle(m, n, xi_x, xi_y, eps=1.0, rule=None):
    """The same matrix element by one-dimensional quadrature of

        int e^{i xi_x x} h_m(x - eps xi_y / 2) h_n(x + eps xi_y / 2) dx,

    entirely independent of the closed-form code path.  ``rule`` is a
    Gauss-Hermite quadrature; 240 nodes cover m, n <= 16, |xi| <= 6.
    """
    eps = check_eps(eps)
    m = int(m)
    n = int(n)
    rule = rule or gauss_rule("hermite", 240)
    t = rule.nodes
    b = math.sqrt(eps) * xi_y / 2.0  # shift after x = sqrt(eps) t
    # Hermite polynomials at the shifted nodes, upward recurrence
    def hpoly(k, pts):
        h_prev = np.ones_like(pts)
        if k == 0:
            return h_prev
        h_cur = 2.0 * pts
        for idx in range(1, k):
            h_prev, h_cur = h_cur, 2.0 * pts * h_cur - 2.0 * idx * h_prev
        return h_cur

    cm = eps ** -0.25 * math.pi ** -0.25 * 2.0 ** (-m / 2.0) \
        * math.exp(-0.5 * gammaln(m + 1.0))
    cn = eps ** -0.25 * math.pi ** -0.25 * 2.0 ** (-n / 2.0) \
        * math.exp(-0.5 * gammaln(n + 1.0))
    phase = np.exp(1j * xi_x * math.sqrt(eps) * t)
    integrand = hpoly(m, t - b) * hpoly(n, t + b) * phase
    gauss = math.exp(-eps * xi_y * xi_y / 4.0)  # e^{-a^2/eps}, a = eps xi_y/2
    return complex(math.sqrt(eps) * gauss * cm * cn * rule.integrate(integrand))


# ---------------------------------------------------------------------------
# Superoperators
# ---------------------------------------------------------------------------

SUPEROP_KINDS = (
    "mult_x", "mult_y", "mom_x", "mom_y",
    "laplacian", "radial_potential", "oscillator", "rotation", "mult_r2",
)


def _shift_both(mat, step):
    """Array whose (m, n) entry is mat[m+step, n+step], zero past the edge."""
    out = np.zeros_like(mat)
    if step > 0:
        out[:-step, :-step] = mat[step:, step:]
    elif step < 0:
        out[-step:, -step:] = mat[:step, :step]
    else:
        out[:] = mat
    return out


def apply_superop(kind, op):
    """Apply a superoperator to an operator matrix.

    mult_x/mult_y are the symmetrized coordinate multiplications
    (XA + AX)/2; mom_x = ad_Y and mom_y = -ad_X are the momentum
    derivations; laplacian and radial_potential act along the shifted
    diagonals; oscillator is their diagonal combination 3(m+n+1), exact on
    index formulas; rotation is mult_x mom_y - mult_y mom_x built from
    first principles; mult_r2 multiplies entrywise by eps (m+n+1).

    radial_potential is the ladder-product form
    (4/eps) V = Sdag . S + S . Sdag + 2 eps^{-1} mult_r2, the convention
    under which the oscillator combination (eps/2) laplacian + (4/eps) V
    is diagonal.  Composing mult_x/mult_y twice instead doubles the
    shifted-diagonal terms and is a different (non-diagonalizing) object.

    Identities for the infinite operators hold on the interior index block;
    matrix-product kinds (mult/mom/rotation) leak at margin 1 (2 for
    rotation), the diagonal-stencil kinds at the last diagonal slot.
    """
    mat = op.mat
    eps = op.eps
    size = op.size
    kind = kind.lower()
    if kind not in SUPEROP_KINDS:
        raise ValueError(f"unknown superoperator kind {kind!r}")
    if kind in ("mult_x", "mult_y", "mom_x", "mom_y", "rotation"):
        ladder = ladder_operators(size, eps)
        x = ladder["X"].mat
        y = ladder["Y"].mat
        if kind == "mult_x":
            out = 0.5 * (x @ mat + mat @ x)
        elif kind == "mult_y":
            out = 0.5 * (y @ mat + mat @ y)
        elif kind == "mom_x":
            out = y @ mat - mat @ y
        elif kind == "mom_y":
            out = mat @ x - x @ mat
        else:  # rotation
            mom_y = mat @ x - x @ mat
            mom_x = y @ mat - mat @ y
            out = 0.5 * (x @ mom_y + mom_y @ x) - 0.5 * (y @ mom_x + mom_x @ y)
        return OperatorMatrix(eps, out)

    idx = np.arange(size, dtype=float)
    msum = idx[:, None] + idx[None, :] + 1.0  # m + n + 1
    if kind == "oscillator":
        return OperatorMatrix(eps, 3.0 * msum * mat)
    if kind == "mult_r2":
        return OperatorMatrix(eps, eps * msum * mat)

    root = np.sqrt(idx[:, None] * idx[None, :])          # sqrt(m n)
    root_up = np.sqrt((idx[:, None] + 1.0) * (idx[None, :] + 1.0))
    down = _shift_both(mat, -1)  # A[m-1, n-1]
    up = _shift_both(mat, +1)    # A[m+1, n+1]
    if kind == "laplacian":
        out = (2.0 / eps) * (-root * down + msum * mat - root_up * up)
    else:  # radial_potential
        out = (eps / 4.0) * (root * down + 2.0 * msum * mat + root_up * up)
    return OperatorMatrix(eps, out)


def ad_r2_half(op, sign=-1):
    """sign * (1/2) ad_{R^2}, evaluated spectrally: entrywise
    sign * eps (m - n).  R^2 is diagonal, so no truncation leakage.

    With sign=-1 this reproduces the first-principles rotation
    superoperator on the interior block; sign=+1 is the opposite
    convention, kept as a cross-check path.
    """
    idx = np.arange(op.size, dtype=float)
    factor = sign * op.eps * (idx[:, None] - idx[None, :])
    return OperatorMatrix(op.eps, factor * op.mat)


def mult_r2_power(op, p):
    """Spectral power of the symmetrized R^2 multiplication: multiply the
    (m, n) entry by [eps (m+n+1)]^p.  All eigenvalues are positive."""
    idx = np.arange(op.size, dtype=float)
    factor = (op.eps * (idx[:, None] + idx[None, :] + 1.0)) ** float(p)
    return OperatorMatrix(op.eps, factor * op.mat)


# ---------------------------------------------------------------------------
# Polar elementary images
# ---------------------------------------------------------------------------

def _phase_coefficient(j, r):
    # 2^{|j|/2} sqrt((r+|j|)!/r!) (2r+|j|+1)^{-|j|/2}, as one square root of
    # an exact rational so e.g. the j=1 coefficients are exactly 1.0
    aj = abs(int(j))
    num = 1
    for k in range(1, aj + 1):
        num *= (r + k)
    return math.sqrt(Fraction(2 ** aj * num, (2 * r + aj + 1) ** aj))


def angular_phase_operator(j, size, eps=1.0):
    """Operator image of the pure phase e^{-i j theta}.

    Supported on diagonal j with radial coefficients
    2^{|j|/2} sqrt((r+|j|)!/r!) (2r+|j|+1)^{-|j|/2}; for j = 1 this is the
    unilateral shift (all coefficients exactly 1).
    """
    eps = check_eps(eps)
    size = int(size)
    j = int(j)
    if abs(j) >= size:
        raise ValueError("|j| must be < size")
    mat = np.zeros((size, size), dtype=complex)
    rows, cols = diagonal_indices(j, size)
    mat[rows, cols] = [_phase_coefficient(j, r)
                       for r in range(diagonal_length(j, size))]
    return OperatorMatrix(eps, mat)


def radius_power_operator(k, size, eps=1.0):
    """Operator image of rho^k: the diagonal matrix [eps (2n+1)]^{k/2}.

    Even powers are computed as integer powers of eps (2n+1), so k=2
    matches the exact truncated X^2+Y^2 off the corner to the last bit.
    """
    eps = check_eps(eps)
    k = int(k)
    if k < 0:
        raise ValueError("power must be >= 0")
    n = np.arange(int(size))
    base = eps * (2 * n + 1).astype(float)
    diag = base ** (k // 2) if k % 2 == 0 else base ** (k / 2.0)
    return OperatorMatrix(eps, np.diag(diag).astype(complex))


# ---------------------------------------------------------------------------
# Bargmann space
# ---------------------------------------------------------------------------

def bargmann_basis(n, s, eps=1.0):
    """Bargmann monomial eps^{-1/4} pi^{-1/2} (n!)^{-1/2} (s/sqrt(eps))^n."""
    eps = check_eps(eps)
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    s = np.asarray(s, dtype=complex)
    val = eps ** -0.25 * math.pi ** -0.5 \
        * math.exp(-0.5 * gammaln(n + 1.0)) * (s / math.sqrt(eps)) ** n
    return complex(val) if val.ndim == 0 else val


def bargmann_kernel(s, x, eps=1.0):
    """Integral kernel of the Hermite-to-Bargmann unitary:
    eps^{-1/2} pi^{-3/4} exp(-s^2/2eps + sqrt(2) s x / eps - x^2/2eps)."""
    eps = check_eps(eps)
    s = np.asarray(s, dtype=complex)
    x = np.asarray(x, dtype=float)
    val = eps ** -0.5 * math.pi ** -0.75 * np.exp(
        (-0.5 * s * s + math.sqrt(2.0) * s * x - 0.5 * x * x) / eps)
    return complex(val) if val.ndim == 0 else val

"""Generalized eigenvectors of the plane Laplacian in both pictures, and
the rotation-generator eigenrelations.

Eigenvalues here are *fitted* on the truncation interior and reported next
to both closed-form candidates, so convention questions (an eps factor and
a sign in the rotation relation) are documented by the reports rather than
hidden.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .specfun import bessel_j, check_eps, laguerre_radial
from .ncspace import (OperatorMatrix, apply_superop, diagonal_indices,
                      diagonal_length)

__all__ = [
    "SpectralPoint",
    "cylinder_harmonic_eval",
    "cylinder_harmonic",
    "OmegaCoeffs",
    "cylinder_harmonic_coeffs",
    "EigencheckReport",
    "eigencheck",
    "CommutativeReport",
    "commutative_eigencheck",
    "residual_vs_size",
    "write_residual_csv",
]


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral parameter lam >= 0 and angular index j."""

    lam: float
    j: int

    def __post_init__(self):
        if self.lam < 0 or not math.isfinite(self.lam):
            raise ValueError("lam must be a finite nonnegative real")


def cylinder_harmonic_eval(point, rho, theta):
    """Bessel-times-phase harmonic i^{-|j|} J_|j|(sqrt(lam) rho) e^{i j theta}."""
    aj = abs(point.j)
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    val = (1j ** -aj) * bessel_j(aj, math.sqrt(point.lam) * rho) \
        * np.exp(1j * point.j * theta)
    return complex(val) if val.ndim == 0 else val


def cylinder_harmonic(point):
    """The harmonic as a Cartesian evaluator (x, y) -> complex."""
    def evaluator(x, y):
        rho = np.hypot(x, y)
        theta = np.arctan2(y, x)
        return cylinder_harmonic_eval(point, rho, theta)
    return evaluator


@dataclass(frozen=True)
class OmegaCoeffs:
    """Operator-side image of a cylinder harmonic.

    values[r] = (-1)^j * radial Laguerre-Gauss factor at sqrt(eps lam),
    living on diagonal -j of the operator matrix.
    """

    point: SpectralPoint
    eps: float
    size: int
    values: np.ndarray

    @property
    def diagonal(self):
        return -self.point.j

    def matrix(self):
        mat = np.zeros((self.size, self.size), dtype=complex)
        rows, cols = diagonal_indices(self.diagonal, self.size)
        mat[rows, cols] = self.values
        return OperatorMatrix(self.eps, mat)


def cylinder_harmonic_coeffs(point, size, eps=1.0):
    """Radial coefficient vector of the operator-side harmonic."""
    eps = check_eps(eps)
    size = int(size)
    if abs(point.j) >= size:
        raise ValueError("|j| must be < size")
    length = diagonal_length(point.j, size)
    arg = math.sqrt(eps * point.lam)
    values = np.array(
        [(-1.0) ** point.j * laguerre_radial(point.j, r, arg)
         for r in range(length)], dtype=complex)
    return OmegaCoeffs(point, eps, size, values)


@dataclass(frozen=True)
class EigencheckReport:
    """Residual and fitted eigenvalue of an operator-side eigenrelation.

    ``fitted`` is the least-squares scalar on the truncation interior;
    ``expected`` the value the recurrence/first-principles route predicts;
    ``alternative`` the other published candidate (they differ by an eps
    factor for the Laplacian and coincide at eps=1 for the rotation).
    """

    kind: str
    point: SpectralPoint
    eps: float
    size: int
    interior: int
    residual: float
    fitted: float
    expected: float
    alternative: float

    def summary(self):
        return (f"{self.kind} lam={self.point.lam} j={self.point.j} "
                f"eps={self.eps} N={self.size}: residual={self.residual:.3e} "
                f"fitted={self.fitted:.12g} expected={self.expected:.12g} "
                f"(alternative {self.alternative:.12g})")


def eigencheck(kind, point, size, eps=1.0):
    """Check the Laplacian or rotation eigenrelation on the interior block.

    laplacian: residual of (L - lam) on the harmonic's coefficients;
               expected eigenvalue lam, alternative eps*lam.
    rotation:  fits mu minimizing |rot(Omega) - mu Omega| on the interior;
               expected eps*j, alternative j.
    Interior margin: radial slots r < size - |j| - 2.
    """
    if kind not in ("laplacian", "rotation"):
        raise ValueError(f"unknown eigencheck kind {kind!r}")
    eps = check_eps(eps)
    coeffs = cylinder_harmonic_coeffs(point, size, eps)
    omega = coeffs.matrix()
    rows, cols = diagonal_indices(coeffs.diagonal, size)
    interior = max(diagonal_length(point.j, size) - 2, 0)
    rows = rows[:interior]
    cols = cols[:interior]
    vec = omega.mat[rows, cols]
    if kind == "laplacian":
        image = apply_superop("laplacian", omega).mat[rows, cols]
        expected = point.lam
        alternative = eps * point.lam
    else:
        image = apply_superop("rotation", omega).mat[rows, cols]
        expected = eps * point.j
        alternative = float(point.j)
    denom = np.vdot(vec, vec).real
    fitted = float(np.vdot(vec, image).real / denom) if denom > 0 else math.nan
    if kind == "laplacian":
        residual = float(np.abs(image - expected * vec).max()) if interior else 0.0
    else:
        residual = float(np.abs(image - fitted * vec).max()) if interior else 0.0
    return EigencheckReport(kind, point, eps, size, interior, residual,
                            fitted, expected, alternative)


@dataclass(frozen=True)
class CommutativeReport:
    """Finite-difference residuals of the plane-side eigenrelations."""

    point: SpectralPoint
    step: float
    bessel_residual: float
    factorization_residual: float


def _radial_profile(point, rho):
    return bessel_j(abs(point.j), math.sqrt(point.lam) * rho)


def commutative_eigencheck(point, rho_grid=None, step=1e-3):
    """Residual of the polar radial equation and of the complex-derivative
    factorization of the Laplacian, via central differences.

    The radial operator is -d^2/drho^2 - (1/rho) d/drho + j^2/rho^2 acting
    on J_|j|(sqrt(lam) rho); the factorization route applies
    -4 d/dzeta d/dzeta-bar to the full harmonic.  Both residuals are
    O(step^2).
    """
    if rho_grid is None:
        rho_grid = np.linspace(0.5, 8.0, 61)
    rho = np.asarray(rho_grid, dtype=float)
    h = float(step)
    g0 = _radial_profile(point, rho)
    gp = _radial_profile(point, rho + h)
    gm = _radial_profile(point, rho - h)
    d2 = (gp - 2.0 * g0 + gm) / (h * h)
    d1 = (gp - gm) / (2.0 * h)
    radial_op = -d2 - d1 / rho + point.j ** 2 * g0 / (rho * rho)
    bessel_res = float(np.abs(radial_op - point.lam * g0).max())

    # -4 dzeta dzetabar route on the full harmonic, nested central diffs
    f = cylinder_harmonic(point)

    def d_zetabar(x, y):
        fx = (f(x + h, y) - f(x - h, y)) / (2.0 * h)
        fy = (f(x, y + h) - f(x, y - h)) / (2.0 * h)
        return 0.5 * (fx + 1j * fy)

    angles = np.linspace(0.0, 2.0 * np.pi, 13)[:-1]
    radii = np.array([0.8, 1.7, 3.1])
    x = (radii[:, None] * np.cos(angles)[None, :]).ravel()
    y = (radii[:, None] * np.sin(angles)[None, :]).ravel()
    gx = (d_zetabar(x + h, y) - d_zetabar(x - h, y)) / (2.0 * h)
    gy = (d_zetabar(x, y + h) - d_zetabar(x, y - h)) / (2.0 * h)
    lap = -4.0 * 0.5 * (gx - 1j * gy)
    fac_res = float(np.abs(lap - point.lam * f(x, y)).max())
    return CommutativeReport(point, h, bessel_res, fac_res)


def residual_vs_size(kind, point, sizes, eps=1.0):
    """Rows (N, interior residual) for a list of truncation sizes."""
    return [(int(size), eigencheck(kind, point, size, eps).residual)
            for size in sizes]


def write_residual_csv(path, rows):
    """Emit a residual-vs-N table with columns N, residual."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "residual"])
        for size, residual in rows:
            writer.writerow([size, format(residual, ".17g")])

"""Built-in acceptance checks, runnable as ``weylkit selftest``.

Each check pins its tolerance here; a failing check flips the process exit
code, so a silently loosened bound cannot pass unnoticed.
"""

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import decay, ncspace, phase_space, quadrature, spectral, weyl
from .specfun import hermite_fn_all, laguerre_fn_all

__all__ = ["CheckResult", "ALL_CHECKS", "run_checks", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _result(name, passed, detail, started):
    return CheckResult(name, bool(passed), detail, time.perf_counter() - started)


def check_matrix_elements():
    """Closed-form Weyl matrix elements against the 1-d quadrature oracle."""
    started = time.perf_counter()
    grid = np.linspace(-3.0, 3.0, 5)
    rule = quadrature.gauss_rule("hermite", 240)
    worst = 0.0
    for eps in (0.5, 1.0, 2.0):
        for m in range(9):
            for n in range(9):
                for xx in grid:
                    for yy in grid:
                        closed = ncspace.weyl_element(m, n, xx, yy, eps)
                        oracle = ncspace.weyl_element_oracle(
                            m, n, xx, yy, eps, rule)
                        worst = max(worst, abs(closed - oracle))
    elapsed = time.perf_counter() - started
    passed = worst < 1e-8 and elapsed < 10.0
    return _result(
        "matrix-elements",
        passed,
        f"max |closed - oracle| = {worst:.3e} (tol 1e-8), {elapsed:.1f}s (< 10s)",
        started)


def check_diagonal_hamiltonian():
    """Oscillator superoperator: exact 3(m+n+1) on unit entries, and the
    matrix-product route agrees on the interior block."""
    started = time.perf_counter()
    size = 16
    eps = 0.7
    exact_ok = True
    for m in range(size):
        for n in range(size):
            unit = np.zeros((size, size), dtype=complex)
            unit[m, n] = 1.0
            out = ncspace.apply_superop(
                "oscillator", ncspace.OperatorMatrix(eps, unit)).mat
            expected = np.zeros_like(unit)
            expected[m, n] = 3.0 * (m + n + 1)
            if not np.array_equal(out, expected):
                exact_ok = False
    # matrix-product route: (eps/2) L with L = eps^-2 (ad_X^2 + ad_Y^2),
    # plus the ladder-product form of the quadratic potential,
    # (4/eps) V = Sdag A S + S A Sdag + eps^-1 (R^2 A + A R^2)
    rng = np.random.default_rng(7)
    a = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    op = ncspace.OperatorMatrix(eps, a)
    ladder = ncspace.ladder_operators(size, eps)
    x = ladder["X"].mat
    y = ladder["Y"].mat
    s = ladder["S"].mat
    sdag = ladder["Sdag"].mat
    r2 = x @ x + y @ y

    def ad(gen, mat):
        return gen @ mat - mat @ gen

    lap = (ad(x, ad(x, a)) + ad(y, ad(y, a))) / eps ** 2
    pot4 = sdag @ a @ s + s @ a @ sdag + (r2 @ a + a @ r2) / eps
    product_route = (eps / 2.0) * lap + pot4
    direct = ncspace.apply_superop("oscillator", op).mat
    interior = slice(0, size - 2)
    gap = np.abs(product_route[interior, interior]
                 - direct[interior, interior]).max()
    passed = exact_ok and gap < 1e-12
    return _result(
        "diagonal-hamiltonian",
        passed,
        f"unit entries exact: {exact_ok}; product-route interior gap "
        f"{gap:.3e} (tol 1e-12)",
        started)


def check_round_trip():
    """Inverse(forward) identity on the first 12x12 mode span, and forward
    against the frequency-domain oracle for a unit Gaussian (eps=1)."""
    started = time.perf_counter()
    size = 12
    eps = 1.0
    scheme = quadrature.PolarScheme.for_eps(eps)
    rng = np.random.default_rng(3)
    coeffs = rng.standard_normal((size, size)) \
        + 1j * rng.standard_normal((size, size))
    field = phase_space.CoeffField(eps, coeffs)
    f = phase_space.synthesize(field)
    op = weyl.weyl_forward(f, size, eps, scheme)
    g = weyl.weyl_inverse(op)
    diff = quadrature.plane_norm(
        phase_space.PhaseFunction(lambda xx, yy: f(xx, yy) - g(xx, yy)),
        scheme)
    scale = quadrature.plane_norm(f, scheme)
    rel_l2 = diff / scale
    gauss = phase_space.gaussian(1.0)
    forward = weyl.weyl_forward(gauss, 9, eps, scheme)
    oracle = weyl.weyl_forward_oracle_matrix(gauss, 9, eps)
    entry_gap = np.abs(forward.mat - oracle.mat).max()
    passed = rel_l2 < 1e-7 and entry_gap < 1e-7
    return _result(
        "round-trip",
        passed,
        f"rel L2 error {rel_l2:.3e} (tol 1e-7); oracle entry gap "
        f"{entry_gap:.3e} (tol 1e-7)",
        started)


def check_plancherel():
    """Unitarity constant 2 pi / eps across random mode combinations."""
    started = time.perf_counter()
    size = 6
    rng = np.random.default_rng(11)
    worst = 0.0
    worst_spread = 0.0
    for eps in (0.5, 1.0, 2.0):
        scheme = quadrature.PolarScheme.for_eps(eps)
        expected = 2.0 * math.pi / eps
        ratios = []
        for _ in range(20):
            cf = rng.standard_normal((size, size)) \
                + 1j * rng.standard_normal((size, size))
            cg = rng.standard_normal((size, size)) \
                + 1j * rng.standard_normal((size, size))
            f = phase_space.synthesize(phase_space.CoeffField(eps, cf))
            g = phase_space.synthesize(phase_space.CoeffField(eps, cg))
            report = weyl.plancherel_ratio(f, g, size, eps, scheme)
            if not report.defined:
                continue
            ratios.append(report.ratio)
            worst = max(worst, abs(report.ratio - expected) / expected)
        spread = float(np.std(np.asarray(ratios))) / expected
        worst_spread = max(worst_spread, spread)
    passed = worst < 1e-6 and worst_spread < 1e-6
    return _result(
        "plancherel",
        passed,
        f"max relative deviation {worst:.3e}, max spread {worst_spread:.3e} "
        f"(tol 1e-6)",
        started)


def check_truncated_commutator():
    """[X, Y] = i eps I except the corner entry -i eps (N-1): exact by
    integer ladder arithmetic, and the dense matmul agrees to rounding."""
    started = time.perf_counter()
    exact_ok = True
    worst = 0.0
    for eps in (0.5, 1.0, 2.0):
        for size in (4, 64):
            expected = 1j * eps * np.eye(size, dtype=complex)
            expected[size - 1, size - 1] = -1j * eps * (size - 1)
            exact = ncspace.commutator_xy_exact(size, eps).mat
            if not np.array_equal(exact, expected):
                exact_ok = False
            ladder = ncspace.ladder_operators(size, eps)
            dense = ncspace.commutator(ladder["X"], ladder["Y"]).mat
            worst = max(worst,
                        float(np.abs(dense - expected).max()) / (eps * size))
    passed = exact_ok and worst < 1e-14
    return _result(
        "truncated-commutator",
        passed,
        f"integer-arithmetic path exact: {exact_ok}; dense matmul relative "
        f"gap {worst:.3e} (tol 1e-14)",
        started)


def check_half_integer_bridge():
    """Even/odd Hermite functions against half-integer Laguerre functions.

    Constants follow the derivation: eps^{1/4} h_{2n}(sqrt(eps) x)
    = (-1)^n l^(-1/2)_n(x^2) and eps^{1/4} h_{2n+1}(sqrt(eps) x)
    = x (-1)^n l^(1/2)_n(x^2) (no factorial factor).
    """
    started = time.perf_counter()
    xs = np.linspace(-5.0, 5.0, 101)
    worst = 0.0
    for eps in (0.5, 1.0, 2.0):
        h = hermite_fn_all(31, math.sqrt(eps) * xs, eps)
        le = laguerre_fn_all(-0.5, 15, xs ** 2)
        lo = laguerre_fn_all(0.5, 15, xs ** 2)
        for n in range(16):
            sign = (-1.0) ** n
            rhs_even = sign * le[n]
            rhs_odd = xs * sign * lo[n]
            even = np.abs(eps ** 0.25 * h[2 * n] - rhs_even) \
                / np.maximum(np.abs(rhs_even), 1.0)
            odd = np.abs(eps ** 0.25 * h[2 * n + 1] - rhs_odd) \
                / np.maximum(np.abs(rhs_odd), 1.0)
            worst = max(worst, float(even.max()), float(odd.max()))
    passed = worst < 1e-9
    return _result(
        "half-integer-bridge",
        passed,
        f"max relative error {worst:.3e} (tol 1e-9), n <= 15, |x| <= 5",
        started)


def check_polar_images():
    """Angular-phase operator: exact shift at j=1, spectral-power route for
    j <= 4, and the radius-square image against exact and dense X^2+Y^2."""
    started = time.perf_counter()
    size = 64
    eps = 1.0
    t1 = ncspace.angular_phase_operator(1, size, eps).mat
    shift = np.zeros((size, size), dtype=complex)
    shift[np.arange(1, size), np.arange(size - 1)] = 1.0
    shift_exact = np.array_equal(t1, shift)

    worst_path = 0.0
    for j in range(-4, 5):
        direct = ncspace.angular_phase_operator(j, size, eps).mat
        raw = np.zeros((size, size), dtype=complex)
        rows, cols = ncspace.diagonal_indices(j, size)
        r = np.arange(len(rows), dtype=float)
        amps = np.exp(0.5 * (gammaln(r + abs(j) + 1.0) - gammaln(r + 1.0)))
        raw[rows, cols] = (2.0 * eps) ** (abs(j) / 2.0) * amps
        via_power = ncspace.mult_r2_power(
            ncspace.OperatorMatrix(eps, raw), -abs(j) / 2.0).mat
        worst_path = max(worst_path, float(np.abs(via_power - direct).max()))

    r2 = ncspace.radius_power_operator(2, size, eps).mat
    exact = ncspace.ladder_quadratic_exact(size, eps).mat
    mask = np.ones((size, size), dtype=bool)
    mask[size - 1, size - 1] = False
    corner_exact = np.array_equal(r2[mask], exact[mask])
    ladder = ncspace.ladder_operators(size, eps)
    dense = ladder["X"].mat @ ladder["X"].mat + ladder["Y"].mat @ ladder["Y"].mat
    dense_gap = float(np.abs((dense - r2)[mask]).max())

    passed = shift_exact and worst_path < 1e-12 and corner_exact \
        and dense_gap < 1e-12
    return _result(
        "polar-images",
        passed,
        f"j=1 shift exact: {shift_exact}; spectral-power route gap "
        f"{worst_path:.3e} (tol 1e-12); radius-square exact off corner: "
        f"{corner_exact}, dense gap {dense_gap:.3e}",
        started)


def check_laplacian_recurrence():
    """Laplacian eigenrelation on cylinder-harmonic coefficients."""
    started = time.perf_counter()
    size = 200
    worst_res = 0.0
    worst_fit = 0.0
    alt = None
    for eps in (0.5, 1.0, 2.0):
        for lam in (0.5, 2.0, 5.0):
            for j in range(-4, 5):
                rep = spectral.eigencheck(
                    "laplacian", spectral.SpectralPoint(lam, j), size, eps)
                worst_res = max(worst_res, rep.residual)
                worst_fit = max(worst_fit, abs(rep.fitted - lam) / lam)
                alt = rep.alternative
    passed = worst_res < 1e-9 and worst_fit < 1e-9
    return _result(
        "laplacian-recurrence",
        passed,
        f"max interior residual {worst_res:.3e} (tol 1e-9); fitted "
        f"eigenvalue matches lam to {worst_fit:.3e} (published alternative "
        f"eps*lam, e.g. {alt:.6g})",
        started)


def check_rotation_eigenvalue():
    """Rotation superoperator eigenvalue: fitted scalar equals eps*j."""
    started = time.perf_counter()
    size = 48
    lam = 2.0
    worst = 0.0
    for eps in (0.5, 1.0, 2.0):
        for j in range(-4, 5):
            rep = spectral.eigencheck(
                "rotation", spectral.SpectralPoint(lam, j), size, eps)
            worst = max(worst, abs(rep.fitted - eps * j))
    passed = worst < 1e-10
    return _result(
        "rotation-eigenvalue",
        passed,
        f"max |fitted - eps*j| = {worst:.3e} (tol 1e-10; matches the "
        f"published j at eps=1)",
        started)


def check_decay_law():
    """Weighted propagator norms against (1+t^2)^{-(1+alpha)/2}."""
    started = time.perf_counter()
    times = np.linspace(0.0, 5.0, 21)
    worst = 0.0
    sizes = {}
    for alpha in (0.0, 1.0, 2.0):
        curve = decay.decay_curve(alpha, times)
        worst = max(worst, curve.max_rel_deviation)
        sizes[alpha] = curve.size
    elapsed = time.perf_counter() - started
    passed = worst < 1e-4 and elapsed < 60.0
    return _result(
        "decay-law",
        passed,
        f"max relative deviation {worst:.3e} (tol 1e-4); converged "
        f"truncations {sizes}; {elapsed:.1f}s (< 60s)",
        started)


ALL_CHECKS = (
    check_matrix_elements,
    check_diagonal_hamiltonian,
    check_round_trip,
    check_plancherel,
    check_truncated_commutator,
    check_half_integer_bridge,
    check_polar_images,
    check_laplacian_recurrence,
    check_rotation_eigenvalue,
    check_decay_law,
)


def run_checks(checks=None):
    if checks is None:
        checks = ALL_CHECKS
    return [check() for check in checks]


def run_selftest(stream=None):
    """Run every check, print one pass/fail line each, return exit code."""
    import sys
    stream = stream or sys.stdout
    results = run_checks()
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}", file=stream)
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} checks passed",
          file=stream)
    return 0 if failed == 0 else 1

"""weylkit: transforms between plane functions and Hermite-basis operator
matrices, with the Laguerre-Gauss mode calculus, cylindrical-harmonic
spectral checks, and Jacobi-propagator decay curves built on top."""

import os as _os

# WEYLKIT_THREADS caps BLAS parallelism (0 = automatic).  Must run before
# numpy loads its backend, hence before the submodule imports below.
_cap = _os.environ.get("WEYLKIT_THREADS")
if _cap and _cap.strip() != "0":
    for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _cap.strip())
del _os, _cap

from .specfun import (  # noqa: E402
    bessel_j,
    hermite_fn,
    hermite_poly,
    jacobi_apply,
    laguerre_fn,
    laguerre_gauss_2d,
    laguerre_poly,
    laguerre_radial,
)
from .quadrature import (  # noqa: E402
    FreqPoint,
    PlanePoint,
    PolarScheme,
    Quadrature,
    fourier_point,
    gauss_rule,
    plane_inner_product,
    plane_norm,
)
from .phase_space import (  # noqa: E402
    AngularModes,
    CoeffField,
    PhaseFunction,
    analyze,
    angular_decompose,
    gaussian,
    lg_mode,
    lg_mode_eval,
    lg_mode_polar_eval,
    synthesize,
    synthesize_at,
)
from .ncspace import (  # noqa: E402
    OperatorMatrix,
    angular_phase_operator,
    apply_superop,
    bargmann_basis,
    bargmann_kernel,
    commutator,
    commutator_xy_exact,
    diagonal_indices,
    diagonal_to_pair,
    ladder_operators,
    ladder_quadratic_exact,
    mult_r2_power,
    pair_to_diagonal,
    radius_power_operator,
    weyl_element,
    weyl_element_oracle,
)
from .weyl import (  # noqa: E402
    PlancherelReport,
    correspondence_residual,
    plancherel_ratio,
    weyl_forward,
    weyl_forward_oracle,
    weyl_forward_oracle_matrix,
    weyl_inverse,
    weyl_inverse_rank1,
)
from .spectral import (  # noqa: E402
    EigencheckReport,
    OmegaCoeffs,
    SpectralPoint,
    commutative_eigencheck,
    cylinder_harmonic,
    cylinder_harmonic_coeffs,
    cylinder_harmonic_eval,
    eigencheck,
    residual_vs_size,
)
from .decay import (  # noqa: E402
    DecayConvergenceError,
    DecayCurve,
    JacobiMatrix,
    WeightVector,
    build_jacobi,
    decay_curve,
    propagator,
    weighted_norm,
)

__version__ = "0.1.0"

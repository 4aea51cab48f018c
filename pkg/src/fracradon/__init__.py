"""Fractional derivatives of section functions of convex bodies.

The package computes h^(q)(0) for parallel section functions h(t) of
origin-symmetric star bodies with even densities, normalizes by cos(pi q/2),
and verifies the closed forms, identities and slicing-type inequalities that
this quantity satisfies at desk scale.
"""

from .bodies import (
    Ball,
    ContainsResult,
    Ellipsoid,
    LpBall,
    RadialQSum,
    SphereGrid,
    StarBody,
    body_from_spec,
    contains,
    enclosing_ellipsoid_dovr,
    radial_metric,
    radial_q_sum,
    scale_to_volume_one,
    volume_polar,
)
from .errors import ConvergenceError, DomainError, GuardBandError, PoleError
from .fracderiv import (
    FracDerivResult,
    SectionFunction,
    classical_deriv_at_zero,
    frac_deriv_at_zero,
    frac_deriv_auto,
    frac_deriv_even,
    frac_deriv_neg,
    taylor_coeffs_at_zero,
)
from .quadrature import QuadratureSpec, adaptive_gauss_kronrod
from .radon import (
    Density,
    GaussianDensity,
    MaxResult,
    RadialPolyDensity,
    RadonDerivResult,
    SweepResult,
    UniformDensity,
    density_from_spec,
    direction_sweep,
    frac_radon_at_zero,
    frac_radon_result,
    integral_over_body,
    max_over_directions,
    moment_integral,
    normalized_to_mass,
    parallel_section_function,
    section_integral,
)
from .special import (
    FractionalOrder,
    ball_frac_deriv,
    ball_frac_deriv_normalized,
    ball_volume,
    cos_half_pi,
    direction_lower_bound,
    fourier_power_constant,
    gamma,
    log_gamma,
    lp_ball_volume,
    ovr_distance_bound,
    reciprocal_gamma_negative,
    slicing_constant,
    slicing_constant_exact,
    sphere_surface,
    volume_one_ball_value,
)
from .verify import (
    DovrBound,
    InequalityReport,
    check_corollary1,
    check_holder_step,
    check_mp_lemma,
    check_mp_moment_identity,
    check_parseval,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    reports_to_csv,
    run_suite,
    serialize_reports_json,
)

__version__ = "0.1.0"

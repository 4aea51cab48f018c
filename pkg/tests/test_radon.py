import math

import numpy as np
import pytest

from fracradon.bodies import Ball, Ellipsoid, LpBall, RadialQSum, SphereGrid
from fracradon.errors import DomainError, GuardBandError
from fracradon.quadrature import QuadratureSpec
from fracradon.radon import (
    GaussianDensity,
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
    section_mass_residual,
)
from fracradon.special import ball_frac_deriv_normalized, ball_volume

E3 = np.array([0.0, 0.0, 1.0])


def test_ball_section_areas():
    K = Ball(1.0, 3)
    f = UniformDensity()
    assert section_integral(K, f, E3, 0.5) == pytest.approx(3.0 * math.pi / 4.0, rel=1e-12)
    assert section_integral(K, f, E3, 0.0) == pytest.approx(math.pi, rel=1e-12)
    assert section_integral(K, f, E3, -0.5) == pytest.approx(3.0 * math.pi / 4.0, rel=1e-12)
    assert section_integral(K, f, E3, 1.0 + 1e-9) == 0.0
    assert section_integral(K, f, E3, 5.0) == 0.0


def test_section_function_evenness_and_support():
    K = Ellipsoid([2.0, 1.0, 1.0])
    xi = np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0)
    h = parallel_section_function(K, xi, UniformDensity())
    assert h.support == pytest.approx(K.support_value(xi), rel=1e-12)
    ts = np.linspace(0.0, h.support * 0.95, 7)
    vals = h(ts)
    f = UniformDensity()
    for t, v in zip(ts, vals):
        assert section_integral(K, f, xi, -t) == pytest.approx(v, rel=1e-10)


def test_gaussian_ball_sections_against_closed_form():
    # n=3 radial gaussian over a disk section integrates in closed form:
    # h(t) = 2 pi s^2 e^(-t^2/(2 s^2)) (1 - e^(-(1-t^2)/(2 s^2)))
    K = Ball(1.0, 3)
    g = GaussianDensity(0.8)
    s2 = 0.64
    for t in (0.0, 0.3, 0.7, 0.95):
        rho2 = 1.0 - t * t
        exact = 2.0 * math.pi * s2 * math.exp(-t * t / (2 * s2)) * (
            1.0 - math.exp(-rho2 / (2 * s2))
        )
        assert section_integral(K, g, E3, t) == pytest.approx(exact, rel=1e-9)


def test_ellipsoid_closed_route_matches_quadrature():
    K = Ellipsoid([2.0, 1.0, 0.7])
    f = UniformDensity()
    xi = np.array([0.5, -0.5, math.sqrt(0.5)])
    h_closed = parallel_section_function(K, xi, f, analytic="always")
    h_num = parallel_section_function(K, xi, f, analytic="never")
    ts = np.linspace(0.0, h_closed.support * 0.99, 9)
    assert np.allclose(h_closed(ts), h_num(ts), rtol=1e-10, atol=1e-12)


def test_rotation_equivariance():
    th = 0.7
    R = np.array(
        [[math.cos(th), -math.sin(th), 0.0], [math.sin(th), math.cos(th), 0.0], [0.0, 0.0, 1.0]]
    )
    E = Ellipsoid([2.0, 1.0, 0.7])
    ER = Ellipsoid([2.0, 1.0, 0.7], rotation=R)
    f = UniformDensity()
    xi = np.array([0.3, 0.9, 0.3])
    xi /= np.linalg.norm(xi)
    # sections of the rotated body at the rotated direction agree
    a = section_integral(E, f, xi, 0.4)
    b = section_integral(ER, f, R @ xi, 0.4)
    assert b == pytest.approx(a, rel=1e-10)


def test_section_mass_fubini():
    # integrating the section function over offsets recovers the bulk mass;
    # the bulk side converges O(1/N) in the sphere grid, so use a fine one
    from dataclasses import replace

    fine = replace(QuadratureSpec(), sphere_nodes=16384)
    kinked = replace(fine, section_nodes=512)
    for K, f, spec, tol in [
        (Ball(1.0, 3), UniformDensity(), fine, 1e-12),
        (Ellipsoid([2.0, 1.0, 1.0]), GaussianDensity(1.0), fine, 2e-4),
        (LpBall(math.inf, 3, 0.8), UniformDensity(), kinked, 2e-4),
    ]:
        assert abs(section_mass_residual(K, E3, f, spec)) < tol


def test_polytope_sections_need_angular_resolution():
    # kinked radial profiles converge slowly in the angular rule; the knob
    # exists for exactly this case
    from dataclasses import replace

    cross = LpBall(1.0, 3)
    base = replace(QuadratureSpec(), sphere_nodes=16384)
    coarse = abs(section_mass_residual(cross, E3, UniformDensity(), base))
    fine = abs(
        section_mass_residual(cross, E3, UniformDensity(), replace(base, section_nodes=512))
    )
    assert fine < 1e-4
    assert fine < coarse


def test_sections_reject_nonconvex_bodies():
    M = RadialQSum([Ball(1.0, 3), Ellipsoid([2.0, 1.0, 1.0])], 2.0)
    with pytest.raises(DomainError):
        section_integral(M, UniformDensity(), E3, 0.1)
    with pytest.raises(DomainError):
        section_integral(LpBall(0.5, 3), UniformDensity(), E3, 0.1)


def test_ball_derivative_direction_invariance():
    K = Ball(1.0, 3)
    vals = direction_sweep(K, UniformDensity(), 0.5, SphereGrid.build(3, 32, seed=8).nodes)
    assert np.allclose(vals.values, vals.values[0], rtol=1e-12)
    assert vals.route == "closed-form"
    assert vals.values[0] == pytest.approx(ball_frac_deriv_normalized(3, 0.5), rel=1e-12)


def test_pipeline_matches_closed_on_ball():
    K = Ball(1.0, 3)
    res = frac_radon_result(K, E3, 0.5, UniformDensity(), analytic="never")
    assert res.value == pytest.approx(ball_frac_deriv_normalized(3, 0.5), rel=1e-9)
    assert res.diagnostics["error_estimate"] < 1e-6


def test_sweep_closed_vs_numeric():
    K = Ellipsoid([2.0, 1.0, 1.0])
    f = UniformDensity()
    dirs = SphereGrid.build(3, 16, seed=11).nodes
    for q in (0.5, 1.5):
        closed = direction_sweep(K, f, q, dirs, analytic="always")
        numeric = direction_sweep(K, f, q, dirs, analytic="never")
        rel = np.max(np.abs(closed.values - numeric.values) / np.abs(closed.values))
        assert rel < 1e-6, q
        assert closed.route == "closed-form"
        assert numeric.route != "closed-form"


def test_odd_order_guard_on_numeric_route():
    K = LpBall(math.inf, 3)
    with pytest.raises(GuardBandError):
        direction_sweep(K, UniformDensity(), 1.0, E3[None, :])
    with pytest.raises(GuardBandError):
        frac_radon_result(K, E3, 1.0, UniformDensity())
    # analytic in q on the closed route, so odd integers are fine there
    val = direction_sweep(Ball(1.0, 3), UniformDensity(), 1.0, E3[None, :])
    assert val.values[0] == pytest.approx(ball_frac_deriv_normalized(3, 1.0), rel=1e-12)


def test_integer_orders_route_classically():
    K = Ball(1.0, 3)
    res = frac_radon_result(K, E3, 0, UniformDensity(), analytic="never")
    assert res.value == pytest.approx(math.pi, rel=1e-9)  # central section area
    res2 = frac_radon_result(K, E3, 2, UniformDensity(), analytic="never")
    assert res2.value == pytest.approx(2.0 * math.pi, rel=1e-6)  # h''(0) = -2 pi


def test_max_over_directions_ellipsoid():
    K = Ellipsoid([2.0, 1.0, 1.0])
    mx = max_over_directions(K, UniformDensity(), 0.0, grid=SphereGrid.build(3, 256, seed=12))
    # largest central section: the plane containing the long axis, area 2 pi
    assert mx.value == pytest.approx(2.0 * math.pi, rel=1e-4)
    assert abs(mx.direction[0]) < 2e-2  # direction is orthogonal to the long axis
    assert mx.value >= mx.grid_value


def test_moment_identity_ball_exact():
    D = Ball(1.0, 3)
    grid = SphereGrid.build(3, 512, seed=13)
    got = moment_integral(D, D, UniformDensity(), 1.5, grid=grid)
    assert got == pytest.approx(3.0 * ball_volume(3) / 1.5, rel=1e-12)
    with pytest.raises(DomainError):
        moment_integral(D, D, UniformDensity(), 3.0, grid=grid)  # p >= n diverges


def test_normalized_to_mass():
    K = Ball(1.0, 3)
    g = normalized_to_mass(GaussianDensity(1.0), K)
    assert integral_over_body(K, g) == pytest.approx(1.0, rel=1e-12)


def test_density_from_spec():
    assert density_from_spec("uniform").kind == "uniform"
    g = density_from_spec("gaussian:sigma=0.5")
    assert g.sigma == 0.5
    p = density_from_spec("poly:c=1,0.5")
    assert p.profile(2.0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        density_from_spec("bogus")
    with pytest.raises(DomainError):
        density_from_spec("gaussian:sigma=-1")


def test_sweep_error_estimates_cover_closed_truth():
    K = Ellipsoid([2.0, 1.0, 1.0])
    dirs = SphereGrid.build(3, 16, seed=14).nodes
    closed = direction_sweep(K, UniformDensity(), 2.5, dirs, analytic="always")
    numeric = direction_sweep(K, UniformDensity(), 2.5, dirs, analytic="never")
    gap = np.abs(closed.values - numeric.values)
    assert np.all(gap <= 10.0 * numeric.error_estimates + 1e-9 * np.abs(closed.values))

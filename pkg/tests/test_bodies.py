import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracradon.bodies import (
    Ball,
    Ellipsoid,
    LpBall,
    RadialQSum,
    SphereGrid,
    body_from_spec,
    contains,
    enclosing_ellipsoid_dovr,
    radial_metric,
    radial_q_sum,
    scale_to_volume_one,
    volume_polar,
)
from fracradon.errors import DomainError
from fracradon.special import ball_volume, sphere_surface

from _oracles import LP_VOLUME

BODIES = [
    Ball(1.3, 3),
    Ellipsoid([2.0, 1.0, 0.5]),
    LpBall(1.0, 3),
    LpBall(math.inf, 3, 0.8),
    LpBall(3.0, 4),
    RadialQSum([Ball(1.0, 3), Ellipsoid([2.0, 1.0, 1.0])], 2.0),
]


@given(
    st.integers(min_value=0, max_value=len(BODIES) - 1),
    st.lists(st.floats(min_value=-3, max_value=3), min_size=3, max_size=3).filter(
        lambda v: sum(x * x for x in v) > 1e-6
    ),
    st.floats(min_value=0.01, max_value=50.0),
)
@settings(max_examples=150, deadline=None)
def test_minkowski_homogeneous_and_symmetric(idx, vec, lam):
    K = BODIES[idx]
    x = np.zeros(K.dim)
    x[:3] = vec
    m = K.minkowski(x)
    assert K.minkowski(-x) == pytest.approx(m, rel=1e-12)
    assert K.minkowski(lam * x) == pytest.approx(lam * m, rel=1e-9)


def test_radial_is_reciprocal_gauge():
    grid = SphereGrid.build(3, 64, seed=1)
    for K in BODIES[:4]:
        r = K.radial(grid.nodes)
        m = K.minkowski(grid.nodes)
        assert np.allclose(r * m, 1.0, atol=1e-12)
        # boundary points have gauge 1
        assert np.allclose(K.minkowski(grid.nodes * r[:, None]), 1.0, atol=1e-10)


def test_closed_volumes():
    assert Ball(2.0, 3).closed_volume() == pytest.approx(8.0 * ball_volume(3), rel=1e-14)
    assert Ellipsoid([2.0, 1.0, 0.5]).closed_volume() == pytest.approx(
        ball_volume(3), rel=1e-14
    )
    for (p, n), v in LP_VOLUME.items():
        assert LpBall(p, n).closed_volume() == pytest.approx(v, rel=1e-13)
    assert LpBall(math.inf, 3, 0.5).closed_volume() == pytest.approx(1.0, rel=1e-14)


def test_polar_volume_matches_closed():
    grid = SphereGrid.build(3, 8192, seed=3)
    for K in (Ball(1.0, 3), Ellipsoid([2.0, 1.0, 1.0]), LpBall(1.0, 3)):
        assert volume_polar(K, grid) == pytest.approx(K.closed_volume(), rel=2e-3)


def test_ellipsoid_support_oracles():
    rng = np.random.default_rng(5)
    A = np.diag([2.0, 1.0, 0.5])
    E = Ellipsoid([2.0, 1.0, 0.5])
    for _ in range(20):
        xi = rng.normal(size=3)
        xi /= np.linalg.norm(xi)
        assert E.support_value(xi) == pytest.approx(np.linalg.norm(A @ xi), rel=1e-12)
        p = E.support_point(xi)
        assert E.minkowski(p) == pytest.approx(1.0, rel=1e-12)
        assert float(p @ xi) == pytest.approx(E.support_value(xi), rel=1e-12)


def test_lp_support_values():
    cube = LpBall(math.inf, 3, 0.7)
    cross = LpBall(1.0, 3, 0.7)
    xi = np.array([3.0, 4.0, 0.0]) / 5.0
    # dual norms: cube pairs with l1, cross with l_inf
    assert cube.support_value(xi) == pytest.approx(0.7 * (3.0 + 4.0) / 5.0, rel=1e-12)
    assert cross.support_value(xi) == pytest.approx(0.7 * 4.0 / 5.0, rel=1e-12)
    for K in (cube, cross, LpBall(3.0, 3, 0.7)):
        p = K.support_point(xi)
        assert K.minkowski(p) == pytest.approx(1.0, rel=1e-10)
        assert float(p @ xi) == pytest.approx(K.support_value(xi), rel=1e-10)


def test_support_dominates_radial_for_convex_bodies():
    grid = SphereGrid.build(3, 128, seed=2)
    for K in (Ellipsoid([2.0, 1.0, 0.5]), LpBall(1.0, 3), LpBall(math.inf, 3)):
        r = K.radial(grid.nodes)
        h = np.array([K.support_value(x) for x in grid.nodes])
        assert np.all(h >= r * (1.0 - 1e-10))


def test_radial_q_sum_identity():
    K, L, q = Ball(1.0, 3), Ellipsoid([2.0, 1.0, 1.0]), 2.0
    M = radial_q_sum(K, L, q)
    grid = SphereGrid.build(3, 64, seed=4)
    rm = M.radial(grid.nodes)
    expect = (K.radial(grid.nodes) ** q + L.radial(grid.nodes) ** q) ** (1.0 / q)
    assert np.allclose(rm, expect, rtol=1e-12)
    assert not M.is_convex


def test_radial_metric_and_contains():
    grid = SphereGrid.build(3, 256, seed=6)
    assert radial_metric(Ball(1.0, 3), Ball(1.5, 3), grid) == pytest.approx(0.5, rel=1e-12)
    inner = contains(LpBall(math.inf, 3), Ball(1.0, 3), grid)
    assert inner.contained and inner.min_ratio >= 1.0 - 1e-12
    outer = contains(Ball(1.0, 3), LpBall(math.inf, 3), grid)
    assert not outer.contained


def test_scale_to_volume_one():
    for K in (Ball(1.0, 3), Ellipsoid([2.0, 1.0, 1.0]), LpBall(math.inf, 3)):
        K1 = scale_to_volume_one(K)
        assert K1.closed_volume() == pytest.approx(1.0, rel=1e-12)
        assert type(K1) is type(K)
    B1 = scale_to_volume_one(Ball(1.0, 3))
    assert B1.r == pytest.approx((3.0 / (4.0 * math.pi)) ** (1.0 / 3.0), rel=1e-13)


def test_sphere_grid_structure():
    g = SphereGrid.build(3, 512, seed=20240)
    assert g.nodes.shape == (512, 3)
    assert np.allclose(np.linalg.norm(g.nodes, axis=1), 1.0, atol=1e-12)
    assert float(np.sum(g.weights)) == pytest.approx(sphere_surface(3), rel=1e-13)
    g2 = SphereGrid.build(3, 512, seed=20240)
    assert np.array_equal(g.nodes, g2.nodes)
    with pytest.raises(ValueError):
        g.nodes[0, 0] = 2.0
    # antipodal symmetry in the paired constructions
    g4 = SphereGrid.build(4, 256, seed=1)
    half = len(g4) // 2
    assert np.allclose(g4.nodes[:half], -g4.nodes[half:], atol=1e-15)
    g2d = SphereGrid.build(2, 8, seed=1)
    assert float(np.sum(g2d.weights)) == pytest.approx(2.0 * math.pi, rel=1e-13)


def test_enclosing_ellipsoid_on_reference_bodies():
    E, ratio = enclosing_ellipsoid_dovr(Ball(1.0, 3))
    assert ratio == pytest.approx(1.0, abs=1e-6)
    E, ratio = enclosing_ellipsoid_dovr(Ellipsoid([2.0, 1.0, 0.5]))
    assert ratio == pytest.approx(1.0, abs=1e-6)
    # cube: the minimal ellipsoid is the circumscribed ball, ratio (3^{3/2} pi/6)^{1/3}
    E, ratio = enclosing_ellipsoid_dovr(LpBall(math.inf, 3))
    exact = (ball_volume(3) * 3.0 ** 1.5 / 8.0) ** (1.0 / 3.0)
    assert ratio == pytest.approx(exact, rel=1e-4)
    grid = SphereGrid.build(3, 512, seed=9)
    assert contains(E, LpBall(math.inf, 3), grid, slack=1e-6).contained


def test_body_from_spec_round_trip():
    for text, n in [
        ("ball:r=2", 3),
        ("ellipsoid:a=2,1,1", 3),
        ("lp:p=1.5,scale=0.5", 3),
        ("cube:scale=2", 3),
        ("qsum:q=2;ball:r=1;ellipsoid:a=2,1,1", 3),
    ]:
        K = body_from_spec(text, n)
        K2 = body_from_spec(K.spec_string(), n)
        assert type(K2) is type(K)
        assert K2.spec_string() == K.spec_string()
    assert isinstance(body_from_spec("ball", 4), Ball)
    assert body_from_spec("ball", 4).dim == 4


def test_body_from_spec_rejects_garbage():
    for text in ("torus:r=1", "ball:radius=1", "ellipsoid:a=2,1,1,extra=3", "lp:p=0"):
        with pytest.raises(DomainError):
            body_from_spec(text, 3)
    with pytest.raises(DomainError):
        body_from_spec("ellipsoid:a=2,1", 3)  # axis count vs dimension

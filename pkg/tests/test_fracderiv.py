import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracradon.errors import DomainError
from fracradon.fracderiv import (
    SectionFunction,
    classical_deriv_at_zero,
    frac_deriv_at_zero,
    frac_deriv_auto,
    frac_deriv_even,
    frac_deriv_neg,
    taylor_coeffs_at_zero,
)
from fracradon.special import reciprocal_gamma_negative
from fracradon.testfns import (
    evenized_exp,
    exp_decay,
    one_minus_t2,
    polynomial,
    power_profile,
)

from _oracles import FRAC_DERIV_RAW


def _general_ms(q):
    lo = max(0, math.floor(q) + 1)
    return [m for m in range(lo, 5)]


def test_exponential_eigenfunction_all_routes():
    # the regularized derivative of e^-t at 0 is 1 for every order
    h = exp_decay(40.0)
    he = evenized_exp(40.0)
    for q in (-0.5, -0.1, 0.3, 0.5, 1.2, 2.4, 3.6):
        for m in _general_ms(q):
            res = frac_deriv_at_zero(h, q, m=m)
            assert res.value == pytest.approx(1.0, abs=1e-8), (q, m)
        if q < 0.0:
            assert frac_deriv_neg(h, q).value == pytest.approx(1.0, abs=1e-8)
            # evenization is only C0 at 0, so only the m=0 routes see it
            assert frac_deriv_even(he, q, m=0).value == pytest.approx(1.0, abs=1e-8)


def test_kink_blocks_higher_order_routes():
    he = evenized_exp(40.0)
    with pytest.raises(DomainError):
        frac_deriv_even(he, 0.5, m=2)  # m_max = 0
    with pytest.raises(DomainError):
        frac_deriv_at_zero(he, 0.5, m=1)


def test_m_independence_and_route_agreement():
    # values must not depend on the admissible m, and the even single-integral
    # route must agree with the general one
    for h in (one_minus_t2(), power_profile(1.5)):
        for q in (0.3, 0.7, 1.2, 1.8, 2.4, 3.6):
            vals = [frac_deriv_at_zero(h, q, m=m).value for m in _general_ms(q)]
            ref = vals[0]
            for v in vals[1:]:
                assert v == pytest.approx(ref, rel=1e-8), (h.name, q)
            m_even = 2 * (math.floor(q / 2.0) + 1)
            v_even = frac_deriv_even(h, q, m=m_even).value
            assert v_even == pytest.approx(ref, rel=1e-8), (h.name, q)


def test_raw_values_against_frozen_oracle():
    fns = {"one-minus-t2": one_minus_t2(), "one-minus-t2-32": power_profile(1.5)}
    for (name, q), v in FRAC_DERIV_RAW.items():
        got = frac_deriv_auto(fns[name], q)
        assert got.value == pytest.approx(v, rel=1e-10), (name, q)
        assert abs(got.value - v) <= max(10.0 * got.error_estimate, 1e-12 * abs(v))


def test_integer_limit_continuity():
    h = power_profile(1.5)
    classical = classical_deriv_at_zero(h, 2)
    assert classical == pytest.approx(-3.0, rel=1e-10)  # (+1) * h''(0)
    for q in (2.0 - 1e-4, 2.0 + 1e-4):
        res = frac_deriv_auto(h, q)
        assert res.value == pytest.approx(classical, rel=1e-3), q


def test_classical_signs():
    # integer orders carry (-1)^k
    h = exp_decay(40.0)
    for k in range(0, 4):
        assert classical_deriv_at_zero(h, k) == pytest.approx(1.0, abs=1e-7), k


@given(
    st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=1, max_size=5),
    st.floats(min_value=-0.9, max_value=3.9).filter(
        lambda q: abs(q - round(q)) > 1e-3
    ),
)
@settings(max_examples=60, deadline=None)
def test_polynomial_closed_form(coeffs, q):
    # for h = sum c_j t^j on [0, T], every term integrates exactly:
    # D^q h(0) = (1/Gamma(-q)) sum_j c_j T^(j-q) / (j - q)
    T = 1.25
    h = polynomial(coeffs, T=T)
    m = max(0, math.floor(q) + 1)
    res = frac_deriv_at_zero(h, q, m=m)
    rg = reciprocal_gamma_negative(q)
    exact = rg * math.fsum(c * T ** (j - q) / (j - q) for j, c in enumerate(coeffs))
    scale = max(abs(exact), math.fsum(abs(c) for c in coeffs) * abs(rg), 1e-6)
    assert abs(res.value - exact) <= 1e-7 * scale


def test_taylor_coeffs_exact_and_fd():
    h = exp_decay(40.0)
    derivs = taylor_coeffs_at_zero(h, 4)
    for k, d in enumerate(derivs):
        assert d == pytest.approx((-1.0) ** k, rel=1e-12), k
    # strip the series so finite differences carry the load; the step is
    # proportional to the support, so test at an O(1) support
    bare = SectionFunction(
        evaluator=h.evaluator, support=2.0, m_max=4, even=False, name="bare-exp"
    )
    derivs_fd = taylor_coeffs_at_zero(bare, 3)
    for k, d in enumerate(derivs_fd):
        assert d == pytest.approx((-1.0) ** k, abs=2e-6), k


def test_even_symmetry_shortcut():
    h = one_minus_t2()
    derivs = taylor_coeffs_at_zero(h, 4)
    assert derivs[1] == 0.0
    assert derivs[3] == 0.0
    assert derivs[2] == pytest.approx(-2.0, rel=1e-12)


def test_route_argument_validation():
    h = one_minus_t2()
    with pytest.raises(DomainError):
        frac_deriv_at_zero(h, 2.5, m=2)  # needs q < m
    with pytest.raises(DomainError):
        frac_deriv_even(h, 0.5, m=3)  # odd m
    with pytest.raises(DomainError):
        frac_deriv_even(h, 2.5, m=2)  # outside (m-2, m)
    with pytest.raises(DomainError):
        frac_deriv_neg(h, 0.5)
    with pytest.raises(DomainError):
        frac_deriv_neg(h, -1.0)


def test_result_diagnostics_fields():
    res = frac_deriv_auto(power_profile(1.5), 2.4)
    assert res.diagnostics["route"] == "even"
    assert res.error_estimate >= 0.0
    assert res.converged
    res0 = frac_deriv_auto(power_profile(1.5), 0.0)
    assert res0.diagnostics["route"] == "classical"
    assert res0.value == pytest.approx(1.0)


def test_support_cutoff_is_enforced():
    h = polynomial((1.0,), T=0.5)
    assert h(0.25) == 1.0
    assert h(0.75) == 0.0
    vals = h(np.array([0.1, 0.5, 0.9]))
    assert vals[1] == 1.0 and vals[2] == 0.0
    with pytest.raises(DomainError):
        h(-0.1)

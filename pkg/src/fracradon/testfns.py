"""Named one-dimensional test functions with exact series data.

These are the reference inputs for the fractional-derivative engine: each
carries a long Taylor expansion at 0 so every route can be exercised at full
precision.  exp_decay is the eigenfunction of the whole machinery (every
admissible order maps it to 1), the power profiles are what hyperplane
sections of round bodies look like.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .fracderiv import SectionFunction
from .special import ball_volume

__all__ = [
    "exp_decay",
    "evenized_exp",
    "const_one",
    "one_minus_t2",
    "power_profile",
    "ball_profile",
    "polynomial",
    "from_spec",
    "REGISTRY",
]

_SERIES_LEN = 64


def exp_decay(T: float = 40.0) -> SectionFunction:
    """h(t) = e^{-t} truncated at T; fractional derivatives of all orders are 1."""
    coeffs = tuple((-1.0) ** k / math.factorial(k) for k in range(_SERIES_LEN))
    return SectionFunction(
        evaluator=lambda t: np.exp(-t),
        support=float(T),
        m_max=_SERIES_LEN - 1,
        even=False,
        taylor=coeffs,
        series_radius=math.inf,
        name=f"exp-neg:T={T:g}",
    )


def evenized_exp(T: float = 40.0) -> SectionFunction:
    """The even extension of e^{-|t|} restricted to t >= 0.

    Only continuous at 0 (the derivative jumps), so m_max = 0: the only
    admissible routes are the negative-order ones.
    """
    return SectionFunction(
        evaluator=lambda t: np.exp(-t),
        support=float(T),
        m_max=0,
        even=True,
        taylor=(1.0,),
        name=f"exp-neg-even:T={T:g}",
    )


def const_one(T: float = 1.0) -> SectionFunction:
    """h identically 1 on [0, T]; closed-form values in every route."""
    coeffs = (1.0,) + (0.0,) * (_SERIES_LEN - 1)
    return SectionFunction(
        evaluator=lambda t: np.ones_like(t),
        support=float(T),
        m_max=_SERIES_LEN - 1,
        even=True,
        taylor=coeffs,
        series_radius=math.inf,
        name=f"const-one:T={T:g}",
    )


def polynomial(coeffs, T: float = 1.0, even: bool | None = None) -> SectionFunction:
    """sum_j coeffs[j] t^j on [0, T]."""
    cs = tuple(float(c) for c in coeffs)
    if even is None:
        even = all(c == 0.0 for c in cs[1::2])
    padded = cs + (0.0,) * max(0, _SERIES_LEN - len(cs))
    arr = np.array(padded)

    def ev(t):
        acc = np.zeros_like(t)
        for c in arr[::-1]:
            acc = acc * t + c
        return acc

    return SectionFunction(
        evaluator=ev,
        support=float(T),
        m_max=_SERIES_LEN - 1,
        even=even,
        taylor=padded,
        series_radius=math.inf,
        name="poly",
    )


def one_minus_t2(T: float = 1.0) -> SectionFunction:
    """h(t) = 1 - t^2 on [0, 1] (T must be 1 for the support to match the zero)."""
    if T != 1.0:
        raise DomainError("one_minus_t2 vanishes at 1; support is fixed there")
    f = polynomial((1.0, 0.0, -1.0), T=1.0, even=True)
    return SectionFunction(
        evaluator=f.evaluator, support=1.0, m_max=f.m_max, even=True,
        taylor=f.taylor, series_radius=1.0, name="one-minus-t2",
    )


def power_profile(alpha: float, T: float = 1.0, amplitude: float = 1.0) -> SectionFunction:
    """h(t) = amplitude * (1 - (t/T)^2)^alpha on [0, T].

    The binomial series in (t/T)^2 converges up to the support edge, which is
    exactly what the stable remainder evaluation needs.
    """
    if alpha <= 0.0:
        raise DomainError("alpha must be positive")
    coeffs = [0.0] * _SERIES_LEN
    a = 1.0
    for j in range(_SERIES_LEN // 2):
        coeffs[2 * j] = amplitude * a / T ** (2 * j)
        a = a * (j - alpha) / (j + 1.0)

    def ev(t):
        x = 1.0 - (t / T) ** 2
        return amplitude * np.maximum(x, 0.0) ** alpha

    return SectionFunction(
        evaluator=ev,
        support=float(T),
        m_max=_SERIES_LEN - 1,
        even=True,
        taylor=tuple(coeffs),
        series_radius=float(T),
        name=f"power:alpha={alpha:g},T={T:g}",
    )


def ball_profile(n: int, r: float = 1.0) -> SectionFunction:
    """Parallel section function of the radius-r ball in R^n.

    h(t) = |B_2^{n-1}| r^{n-1} (1 - (t/r)^2)^{(n-1)/2}.
    """
    if n < 2:
        raise DomainError("dimension must be >= 2")
    amp = ball_volume(n - 1) * r ** (n - 1)
    f = power_profile(0.5 * (n - 1), T=r, amplitude=amp)
    return SectionFunction(
        evaluator=f.evaluator, support=f.support, m_max=f.m_max, even=True,
        taylor=f.taylor, series_radius=f.series_radius,
        name=f"ball-profile:n={n},r={r:g}",
    )


REGISTRY = {
    "exp-neg": exp_decay,
    "exp-neg-even": evenized_exp,
    "const-one": const_one,
    "one-minus-t2": one_minus_t2,
    "one-minus-t2-32": lambda T=1.0: power_profile(1.5, T=T),
    "ball-profile": ball_profile,
}


def from_spec(text: str, T: float | None = None) -> SectionFunction:
    """Build a test function from a CLI token like 'exp-neg' or 'ball-profile:n=4'."""
    name, _, params = text.partition(":")
    if name not in REGISTRY:
        raise DomainError(f"unknown test function {name!r}; known: {sorted(REGISTRY)}")
    kwargs = {}
    if params:
        for item in params.split(","):
            key, _, val = item.partition("=")
            if not val:
                raise DomainError(f"malformed parameter {item!r} in {text!r}")
            kwargs[key.strip()] = float(val) if key.strip() != "n" else int(val)
    if T is not None:
        kwargs["T"] = float(T)
    try:
        return REGISTRY[name](**kwargs)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {name!r}: {exc}") from exc

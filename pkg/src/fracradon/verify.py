"""Desk-scale verification of the closed forms and slicing inequalities.

Every checker returns an :class:`InequalityReport` comparing a left side
against a right side, with the pass decision made relative to ten times the
estimated quadrature error, so a failure always means the mathematics (or the
code) is wrong by more than the numerics could explain.  Constants carry a
provenance tag, and distance factors carry the class argument that justifies
them.  Checks whose hypotheses fail report ``applicability`` instead of a
pass/fail verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bodies import (
    Ball,
    Ellipsoid,
    LpBall,
    SphereGrid,
    StarBody,
    enclosing_ellipsoid_dovr,
    volume_polar,
)
from .errors import DomainError
from .fracderiv import frac_deriv_auto
from .quadrature import QuadratureSpec
from .radon import (
    Density,
    UniformDensity,
    direction_sweep,
    frac_radon_result,
    max_over_directions,
    moment_integral,
    moment_integral_result,
)
from .special import (
    ball_frac_deriv,
    ball_frac_deriv_normalized,
    ball_volume,
    cos_half_pi,
    direction_lower_bound,
    fourier_power_constant,
    odd_integer_distance,
    ovr_distance_bound,
    slicing_constant,
    slicing_constant_exact,
    sphere_surface,
)
from .testfns import power_profile

__all__ = [
    "InequalityReport",
    "DovrBound",
    "check_corollary1",
    "check_parseval",
    "check_mp_moment_identity",
    "check_mp_lemma",
    "check_holder_step",
    "check_theorem2",
    "check_theorem3",
    "check_theorem1",
    "run_suite",
    "reports_to_csv",
    "serialize_reports_json",
]

_DEFAULT_SPEC = QuadratureSpec()
_ODD_GUARD = 1e-6

# equal-weight sphere grids converge like 1/N, so scalar integrals (volumes,
# masses, moments) run on a finer grid than direction sweeps need
_BULK_NODES = 16384


def _f17(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class InequalityReport:
    check: str
    inputs: dict
    lhs: float
    rhs: float
    relation: str  # "le" for lhs <= rhs, "eq" for lhs == rhs
    tolerance: float
    applicability: str = "ok"
    passed: bool | None = None
    tight: bool = False
    constants: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "inputs": _json_value(self.inputs),
            "lhs": _json_value(self.lhs),
            "rhs": _json_value(self.rhs),
            "margin": _json_value(self.margin),
            "relation": self.relation,
            "tolerance": _json_value(self.tolerance),
            "applicability": self.applicability,
            "pass": self.passed,
            "tight": self.tight,
            "constants": [
                {"name": c["name"], "value": _json_value(c["value"]), "source": c["source"]}
                for c in self.constants
            ],
            "diagnostics": {k: _json_value(v) for k, v in sorted(self.diagnostics.items())},
        }

    def csv_row(self) -> dict:
        get = self.inputs.get
        return {
            "check": self.check,
            "n": get("n", ""),
            "q": _f17(get("q")) if get("q") is not None else "",
            "body": get("body", ""),
            "density": get("density", ""),
            "lhs": _f17(self.lhs),
            "rhs": _f17(self.rhs),
            "margin": _f17(self.margin),
            "pass": "na" if self.passed is None else str(self.passed).lower(),
            "dovr_source": get("dovr_source", ""),
            "seed": get("seed", ""),
        }


def _json_value(v):
    # floats stay native: repr round-trips exactly and json has no inf/nan
    if isinstance(v, (float, np.floating)):
        x = float(v)
        return x if math.isfinite(x) else _f17(x)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.ndarray):
        return [_json_value(float(x)) for x in v.ravel()]
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in sorted(v.items())}
    return v


def _finish(report: InequalityReport, est: float) -> InequalityReport:
    """Apply the shared pass rule: margin at least -10 * estimated error."""
    if report.applicability != "ok":
        report.tolerance = 0.0
        report.passed = None
        return report
    # symmetric grids can make the halving estimates exactly zero, so keep a
    # machine-roundoff floor under the estimated error
    floor = 1e-14 * (abs(report.lhs) + abs(report.rhs))
    report.tolerance = 10.0 * max(est, floor)
    if report.relation == "eq":
        report.passed = abs(report.margin) <= report.tolerance
        report.tight = True
    else:
        report.passed = report.margin >= -report.tolerance
        report.tight = abs(report.margin) <= report.tolerance
    return report


@dataclass(frozen=True)
class DovrBound:
    """An upper bound for the outer volume ratio distance, with provenance."""

    value: float
    source: str
    raw: float | None = None

    def __post_init__(self):
        if self.value < 1.0:
            raise DomainError("a distance bound cannot be below 1")

    @classmethod
    def for_body(
        cls,
        K: StarBody,
        lp_constant: float = 1.0,
        boundary_samples: int = 512,
        seed: int = 7,
    ) -> "DovrBound":
        """Default distance bound by body class.

        Balls and ellipsoids are intersection bodies (distance 1), as are
        p-balls with p <= 2; unconditional bodies such as the cube are within
        e; p-balls with 2 < p < inf are within a multiple of sqrt(p).  Bodies
        outside those classes get the sampled minimal enclosing ellipsoid.
        """
        if isinstance(K, (Ball, Ellipsoid)):
            return cls(1.0, "class:ellipsoid")
        if isinstance(K, LpBall):
            if K.p <= 2.0:
                return cls(1.0, "class:lp-low")
            if math.isinf(K.p):
                return cls(math.e, "class:unconditional")
            return cls(lp_constant * math.sqrt(K.p), "class:lp-high")
        _, ratio = enclosing_ellipsoid_dovr(K, boundary_samples, seed=seed)
        return cls(max(ratio, 1.0), "mvee", raw=ratio)


def _as_dovr(dovr, K: StarBody) -> DovrBound:
    if dovr is None:
        return DovrBound.for_body(K)
    if isinstance(dovr, DovrBound):
        return dovr
    return DovrBound(float(dovr), "user")


def _grid(n: int, count: int, seed: int) -> SphereGrid:
    return SphereGrid.build(n, count, seed)


def _body_volume(K: StarBody, spec: QuadratureSpec):
    v = K.closed_volume()
    if v is not None:
        return v, 0.0, "closed"
    hi = _grid(K.dim, _BULK_NODES, spec.seed)
    lo = _grid(K.dim, _BULK_NODES // 2, spec.seed)
    vh = volume_polar(K, hi)
    vl = volume_polar(K, lo)
    return vh, abs(vh - vl), "polar"


def _bulk_integral(K: StarBody, f: Density, spec: QuadratureSpec):
    hi = _grid(K.dim, _BULK_NODES, spec.seed)
    lo = _grid(K.dim, _BULK_NODES // 2, spec.seed)
    v, rerr, _ = moment_integral_result(K, K, f, 0.0, spec, hi)
    v2, _, _ = moment_integral_result(K, K, f, 0.0, spec, lo)
    return v, rerr + abs(v - v2)


def _q_in_range(q: float, n: int) -> str:
    if not (-1.0 < q < n - 1.0):
        return f"needs -1 < q < n-1, got q={q:g} at n={n}"
    return "ok"


def _closed_route(K: StarBody, f: Density) -> bool:
    return isinstance(K, (Ball, Ellipsoid)) and f.kind == "uniform"


def _axis(n: int) -> np.ndarray:
    e = np.zeros(n)
    e[-1] = 1.0
    return e


# --------------------------------------------------------------------------
# closed forms and identities


def check_corollary1(n: int, q: float, quad: QuadratureSpec | None = None) -> InequalityReport:
    """Triple-route agreement for the ball value.

    The gamma-function expression, the 1-D derivative of the exact section
    profile, and the full numeric pipeline (sections evaluated by quadrature)
    must coincide; a fourth expression through the Fourier-transform power
    constant is compared in the diagnostics.
    """
    spec = quad or _DEFAULT_SPEC
    inputs = {"n": n, "q": q, "body": "ball:r=1", "density": "uniform", "seed": spec.seed}
    rep = InequalityReport("corollary1", inputs, math.nan, math.nan, "eq", 0.0)
    why = _q_in_range(q, n)
    if why != "ok":
        rep.applicability = why
        return _finish(rep, 0.0)
    if odd_integer_distance(q) < _ODD_GUARD:
        rep.applicability = "odd order: the quadrature route is undefined"
        return _finish(rep, 0.0)

    closed = ball_frac_deriv_normalized(n, q, 1.0)
    profile = power_profile((n - 1) / 2.0, T=1.0, amplitude=ball_volume(n - 1))
    prof_res = frac_deriv_auto(profile, q, spec=spec)
    cq = cos_half_pi(q)
    prof_val = prof_res.value / cq
    pipe = frac_radon_result(Ball(1.0, n), _axis(n), q, UniformDensity(), spec, analytic="never")
    fourier = fourier_power_constant(q + 1.0 - n, n) / (math.pi * (n - q - 1.0))

    rep.lhs = pipe.value
    rep.rhs = closed
    rep.constants = [
        {"name": "ball_value_gamma", "value": closed, "source": "gamma-expression"},
        {"name": "ball_value_fourier", "value": fourier, "source": "fourier-power-constant"},
        {"name": "ball_value_profile", "value": prof_val, "source": "profile-quadrature"},
    ]
    rep.diagnostics = {
        "pipeline_error_estimate": pipe.error_estimate,
        "profile_residual": abs(prof_val - closed) / abs(closed),
        "fourier_residual": abs(fourier - closed) / abs(closed),
        "route": pipe.diagnostics.get("route", ""),
    }
    est = pipe.error_estimate + prof_res.error_estimate / abs(cq) + 1e-14 * abs(closed)
    return _finish(rep, est)


def check_parseval(
    K: StarBody, p: float, quad: QuadratureSpec | None = None, grid: SphereGrid | None = None
) -> InequalityReport:
    """Power-constant product identity tested on a body.

    For the ball both sides reduce to the scalar identity
    C(-p) C(-(n-p)) = (2 pi)^n; for an ellipsoid the two sides are genuinely
    different sphere integrals whose equality encodes the transform pairing.
    """
    spec = quad or _DEFAULT_SPEC
    n = K.dim
    inputs = {"n": n, "q": p, "body": K.spec_string(), "density": "", "seed": spec.seed}
    rep = InequalityReport("parseval", inputs, math.nan, math.nan, "eq", 0.0)
    if not (0.0 < p < n):
        rep.applicability = f"needs 0 < p < n, got p={p:g}"
        return _finish(rep, 0.0)
    if not isinstance(K, (Ball, Ellipsoid)):
        rep.applicability = "stated for balls and ellipsoids"
        return _finish(rep, 0.0)

    prod = fourier_power_constant(-p, n) * fourier_power_constant(-(n - p), n)
    two_pi_n = (2.0 * math.pi) ** n
    scalar_resid = abs(prod - two_pi_n) / two_pi_n

    if isinstance(K, Ball):
        surf = sphere_surface(n)
        lhs = K.r ** (2 * n) * prod * K.r ** (-n) * surf
        rhs = two_pi_n * K.r**n * surf
        est = 1e-13 * abs(rhs)
    else:
        g_hi = grid or _grid(n, _BULK_NODES, spec.seed)
        g_lo = _grid(n, len(g_hi) // 2, spec.seed)
        det = float(np.prod(K.semi_axes))

        def sides(g):
            y = (g.nodes if K.rotation is None else g.nodes @ K.rotation) * K.semi_axes
            w = np.sqrt(np.einsum("ij,ij->i", y, y))
            lhs_g = det**2 * prod * float(g.weights @ w ** (-n))
            rhs_g = two_pi_n * float(g.weights @ K.radial(g.nodes) ** n)
            return lhs_g, rhs_g

        lhs, rhs = sides(g_hi)
        lhs2, rhs2 = sides(g_lo)
        est = abs(lhs - lhs2) + abs(rhs - rhs2) + 1e-13 * abs(rhs)

    rep.lhs, rep.rhs = lhs, rhs
    rep.constants = [
        {"name": "power_constant_product", "value": prod, "source": "gamma-expression"},
        {"name": "two_pi_to_n", "value": two_pi_n, "source": "exact"},
    ]
    rep.diagnostics = {"scalar_residual": scalar_resid}
    return _finish(rep, est)


def check_mp_moment_identity(
    D: StarBody, q: float, quad: QuadratureSpec | None = None, grid: SphereGrid | None = None
) -> InequalityReport:
    """int_D ||x||_D^{-1-q} dx = n |D| / (n - q - 1), exact for star bodies."""
    spec = quad or _DEFAULT_SPEC
    n = D.dim
    inputs = {"n": n, "q": q, "body": D.spec_string(), "density": "uniform", "seed": spec.seed}
    rep = InequalityReport("mp-identity", inputs, math.nan, math.nan, "eq", 0.0)
    why = _q_in_range(q, n)
    if why != "ok":
        rep.applicability = why
        return _finish(rep, 0.0)
    g_hi = grid or _grid(n, _BULK_NODES, spec.seed)
    g_lo = _grid(n, len(g_hi) // 2, spec.seed)
    one = UniformDensity()
    lhs, rerr, _ = moment_integral_result(D, D, one, 1.0 + q, spec, g_hi)
    lhs2 = moment_integral(D, D, one, 1.0 + q, spec, g_lo)
    vol, verr, vol_src = _body_volume(D, spec)
    rhs = n * vol / (n - q - 1.0)
    est = rerr + abs(lhs - lhs2) + n * verr / (n - q - 1.0)
    rep.lhs, rep.rhs = lhs, rhs
    rep.constants = [{"name": "volume", "value": vol, "source": vol_src}]
    rep.diagnostics = {"radial_rule_error": rerr, "grid_halving_error": abs(lhs - lhs2)}
    return _finish(rep, est)


def check_mp_lemma(
    L: StarBody,
    g: Density,
    D: StarBody,
    q: float,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
) -> InequalityReport:
    """Moment-comparison step: for 0 <= g <= 1,
    (int_L ||x||_D^{-1-q} g / int_D ||x||_D^{-1-q})^{1/(n-q-1)}
        <= (int_L g / |D|)^{1/n}."""
    spec = quad or _DEFAULT_SPEC
    n = D.dim
    inputs = {
        "n": n, "q": q, "body": f"{L.spec_string()}|{D.spec_string()}",
        "density": g.describe(), "seed": spec.seed,
    }
    rep = InequalityReport("mp-lemma", inputs, math.nan, math.nan, "le", 0.0)
    if L.dim != n:
        rep.applicability = "dimension mismatch"
        return _finish(rep, 0.0)
    why = _q_in_range(q, n)
    if why != "ok":
        rep.applicability = why
        return _finish(rep, 0.0)
    sup_g = _density_sup(g, L)
    if sup_g > 1.0 + 1e-9:
        rep.applicability = f"needs g <= 1, sampled sup is {sup_g:.6g}"
        return _finish(rep, 0.0)

    g_hi = grid or _grid(n, _BULK_NODES, spec.seed)
    a, aerr, _ = moment_integral_result(D, L, g, 1.0 + q, spec, g_hi)
    b, berr, _ = moment_integral_result(D, D, UniformDensity(), 1.0 + q, spec, g_hi)
    gm, gerr = _bulk_integral(L, g, spec)
    vol, verr, vol_src = _body_volume(D, spec)
    expo = 1.0 / (n - q - 1.0)
    lhs = (a / b) ** expo
    rhs = (gm / vol) ** (1.0 / n)
    est = abs(lhs) * expo * (aerr / a + berr / b) + abs(rhs) / n * (gerr / gm + verr / max(vol, 1e-300))
    rep.lhs, rep.rhs = lhs, rhs
    rep.constants = [{"name": "volume_D", "value": vol, "source": vol_src}]
    rep.diagnostics = {"ratio_moments": a / b, "mass_g": gm, "sampled_sup_g": sup_g}
    return _finish(rep, est)


def _density_sup(g: Density, L: StarBody) -> float:
    R = L.outer_radius()
    if g.is_radial:
        r2 = np.linspace(0.0, R * R, 2049)
        return float(np.max(g.profile(r2)))
    grid = _grid(L.dim, 1024, seed=11)
    pts = grid.nodes[:, None, :] * np.linspace(0.0, R, 33)[None, :, None]
    return float(np.max(g.evaluate(pts)))


def check_holder_step(
    D: StarBody, q: float, quad: QuadratureSpec | None = None, grid: SphereGrid | None = None
) -> InequalityReport:
    """Norming-step inequality on the sphere:
    int_S ||theta||_D^{-1-q} <= |S|^{(n-q-1)/n} n^{(q+1)/n} |D|^{(q+1)/n},
    with equality exactly for centered balls."""
    spec = quad or _DEFAULT_SPEC
    n = D.dim
    inputs = {"n": n, "q": q, "body": D.spec_string(), "density": "", "seed": spec.seed}
    rep = InequalityReport("holder", inputs, math.nan, math.nan, "le", 0.0)
    why = _q_in_range(q, n)
    if why != "ok":
        rep.applicability = why
        return _finish(rep, 0.0)
    g_hi = grid or _grid(n, _BULK_NODES, spec.seed)
    g_lo = _grid(n, len(g_hi) // 2, spec.seed)
    mh = D.minkowski(g_hi.nodes)
    ml = D.minkowski(g_lo.nodes)
    lhs = float(g_hi.weights @ mh ** (-1.0 - q))
    lhs2 = float(g_lo.weights @ ml ** (-1.0 - q))
    vol, verr, vol_src = _body_volume(D, spec)
    surf = sphere_surface(n)
    rhs = surf ** ((n - q - 1.0) / n) * n ** ((q + 1.0) / n) * vol ** ((q + 1.0) / n)
    est = abs(lhs - lhs2) + abs(rhs) * (q + 1.0) / n * verr / max(vol, 1e-300)
    rep.lhs, rep.rhs = lhs, rhs
    rep.constants = [
        {"name": "sphere_surface", "value": surf, "source": "gamma-expression"},
        {"name": "volume", "value": vol, "source": vol_src},
    ]
    return _finish(rep, est)


# --------------------------------------------------------------------------
# the slicing inequalities


def check_theorem2(
    K: StarBody,
    f: Density,
    q: float,
    dovr=None,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
    analytic: str = "auto",
) -> InequalityReport:
    """Slicing bound: the mass of f is controlled by the maximal normalized
    section derivative times the slicing constant, a volume factor and the
    distance factor raised to q+1."""
    spec = quad or _DEFAULT_SPEC
    n = K.dim
    bound = _as_dovr(dovr, K)
    inputs = {
        "n": n, "q": q, "body": K.spec_string(), "density": f.describe(),
        "dovr_source": bound.source, "seed": spec.seed,
    }
    rep = InequalityReport("thm2", inputs, math.nan, math.nan, "le", 0.0)
    why = _q_in_range(q, n)
    if why != "ok":
        rep.applicability = why
        return _finish(rep, 0.0)
    if odd_integer_distance(q) < _ODD_GUARD and not _closed_route(K, f):
        rep.applicability = "odd order outside the closed-form route"
        return _finish(rep, 0.0)

    dir_grid = grid or _grid(n, spec.sphere_nodes, spec.seed)
    lhs, lerr = _bulk_integral(K, f, spec)
    vol, verr, vol_src = _body_volume(K, spec)
    mx = max_over_directions(K, f, q, spec, dir_grid, analytic)
    const = slicing_constant(n, q)
    const_exact = slicing_constant_exact(n, q)
    vfac = vol ** ((q + 1.0) / n)
    rhs = const * vfac * bound.value ** (q + 1.0) * mx.value
    mx_est = mx.diagnostics.get("error_estimate", 0.0)
    est = (
        lerr
        + abs(rhs) * (q + 1.0) / n * verr / max(vol, 1e-300)
        + const * vfac * bound.value ** (q + 1.0) * mx_est
    )
    rep.lhs, rep.rhs = lhs, rhs
    rep.constants = [
        {"name": "slicing_constant", "value": const, "source": "gamma-expression"},
        {"name": "slicing_constant_exact", "value": const_exact, "source": "gamma-expression"},
        {"name": "dovr", "value": bound.value, "source": bound.source},
        {"name": "volume", "value": vol, "source": vol_src},
    ]
    rep.diagnostics = {
        "max_value": mx.value,
        "max_direction": mx.direction,
        "grid_max": mx.grid_value,
        "n_directions": len(dir_grid),
        "max_error_estimate": mx_est,
        "mass_error_estimate": lerr,
        "route": mx.diagnostics.get("route", ""),
    }
    return _finish(rep, est)


def check_theorem3(
    K: StarBody,
    f: Density,
    L: StarBody,
    g: Density,
    q: float,
    dovr=None,
    quad: QuadratureSpec | None = None,
    hypothesis_grid: SphereGrid | None = None,
    analytic: str = "auto",
) -> InequalityReport:
    """Comparison bound: if the normalized section derivatives of (K, f) are
    dominated by those of (L, g) in every direction, with g(0) = ||g||_inf = 1,
    then the mass of f is controlled by the mass of g.  A failed hypothesis
    is reported as inapplicable together with a witness direction."""
    spec = quad or _DEFAULT_SPEC
    n = K.dim
    bound = _as_dovr(dovr, K)
    inputs = {
        "n": n, "q": q, "body": f"{K.spec_string()}|{L.spec_string()}",
        "density": f"{f.describe()}|{g.describe()}",
        "dovr_source": bound.source, "seed": spec.seed,
    }
    rep = InequalityReport("thm3", inputs, math.nan, math.nan, "le", 0.0)
    if L.dim != n:
        rep.applicability = "dimension mismatch"
        return _finish(rep, 0.0)
    why = _q_in_range(q, n)
    if why != "ok":
        rep.applicability = why
        return _finish(rep, 0.0)
    if odd_integer_distance(q) < _ODD_GUARD and not (_closed_route(K, f) and _closed_route(L, g)):
        rep.applicability = "odd order outside the closed-form route"
        return _finish(rep, 0.0)

    g0 = float(g.profile(0.0)) if g.is_radial else float(g.evaluate(np.zeros(n)))
    sup_g = _density_sup(g, L)
    if abs(g0 - 1.0) > 1e-9 or sup_g > 1.0 + 1e-9:
        rep.applicability = f"needs g(0) = sup g = 1 (g(0)={g0:.6g}, sup={sup_g:.6g})"
        return _finish(rep, 0.0)

    hyp = hypothesis_grid or _grid(n, max(spec.sphere_nodes, 200), spec.seed)
    sf = direction_sweep(K, f, q, hyp.nodes, spec, analytic)
    sg = direction_sweep(L, g, q, hyp.nodes, spec, analytic)
    slack = 10.0 * (sf.error_estimates + sg.error_estimates)
    gap = sf.values - sg.values
    worst = int(np.argmax(gap - slack))
    if gap[worst] > slack[worst]:
        rep.applicability = "hypothesis fails: section derivative of f exceeds g's"
        rep.diagnostics = {
            "witness_direction": hyp.nodes[worst],
            "witness_f": float(sf.values[worst]),
            "witness_g": float(sg.values[worst]),
            "witness_gap": float(gap[worst]),
        }
        return _finish(rep, 0.0)

    lhs, lerr = _bulk_integral(K, f, spec)
    gm, gerr = _bulk_integral(L, g, spec)
    volK, verr, vol_src = _body_volume(K, spec)
    factor = n / (n - q - 1.0)
    rhs = factor * bound.value ** (q + 1.0) * gm ** ((n - q - 1.0) / n) * volK ** ((q + 1.0) / n)
    est = (
        lerr
        + abs(rhs) * ((n - q - 1.0) / n * gerr / gm + (q + 1.0) / n * verr / max(volK, 1e-300))
    )
    rep.lhs, rep.rhs = lhs, rhs
    rep.constants = [
        {"name": "mass_ratio_factor", "value": factor, "source": "gamma-expression"},
        {"name": "dovr", "value": bound.value, "source": bound.source},
        {"name": "volume_K", "value": volK, "source": vol_src},
    ]
    rep.diagnostics = {
        "mass_g": gm,
        "hypothesis_directions": len(hyp),
        "hypothesis_worst_gap": float(np.max(gap)),
        "route_f": sf.route,
        "route_g": sg.route,
    }
    return _finish(rep, est)


def check_theorem1(
    K: StarBody,
    f: Density,
    q: float,
    c: float = 0.05,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
    analytic: str = "auto",
) -> InequalityReport:
    """Existence of a direction with a dimension-robust lower bound.

    For a volume-1 body and a probability density, some direction must have
    normalized section derivative at least (c (q+1) / sqrt(n log^3(ne/(q+1))))
    ^(q+1).  The report carries the largest constant the computed maximum
    supports, plus the chain through the slicing bound and the distance
    estimate for comparison."""
    spec = quad or _DEFAULT_SPEC
    n = K.dim
    inputs = {
        "n": n, "q": q, "body": K.spec_string(), "density": f.describe(), "seed": spec.seed,
    }
    rep = InequalityReport("thm1", inputs, math.nan, math.nan, "le", 0.0)
    if not (-1e-12 <= q <= n - 2.0 + 1e-12):
        rep.applicability = f"needs 0 <= q <= n-2, got q={q:g}"
        return _finish(rep, 0.0)
    if odd_integer_distance(q) < _ODD_GUARD and not _closed_route(K, f):
        rep.applicability = "odd order outside the closed-form route"
        return _finish(rep, 0.0)
    vol, verr, _ = _body_volume(K, spec)
    if abs(vol - 1.0) > 1e-6 + 10 * verr:
        rep.applicability = f"needs |K| = 1, got {vol:.9g}"
        return _finish(rep, 0.0)

    mass, merr = _bulk_integral(K, f, spec)
    fn = f.with_const(f.const / mass)
    dir_grid = grid or _grid(n, spec.sphere_nodes, spec.seed)
    mx = max_over_directions(K, fn, q, spec, dir_grid, analytic)
    lower = direction_lower_bound(n, q, c)
    log_term = math.sqrt(n * math.log(n * math.e / (q + 1.0)) ** 3)
    implied_c = mx.value ** (1.0 / (q + 1.0)) * log_term / (q + 1.0)

    # chain through the slicing route: with mass 1 and volume 1 the maximum
    # is at least 1 / (slicing constant * dovr^(q+1)); bounding the distance
    # by the sqrt(n log^3) estimate and allowing the e^(q+1) slack of the
    # rounding between the two statements gives an a-priori constant
    kpz_q = min(max(q, 1.0), n - 1.0)
    kpz = ovr_distance_bound(n, kpz_q, 1.0)
    chain_lower = 1.0 / (slicing_constant(n, q) * kpz ** (q + 1.0))
    chain_c = chain_lower ** (1.0 / (q + 1.0)) * log_term / (q + 1.0) / math.e

    mx_est = mx.diagnostics.get("error_estimate", 0.0)
    rep.lhs, rep.rhs = lower, mx.value
    rep.constants = [
        {"name": "direction_constant", "value": c, "source": "configured"},
        {"name": "lower_bound", "value": lower, "source": "gamma-expression"},
        {"name": "distance_estimate", "value": kpz, "source": "sqrt-log-bound"},
    ]
    rep.diagnostics = {
        "implied_constant": implied_c,
        "max_value": mx.value,
        "max_direction": mx.direction,
        "max_error_estimate": mx_est,
        "normalization": 1.0 / mass,
        "normalization_error": merr,
        "chain_lower_bound": chain_lower,
        "chain_constant": chain_c,
        "chain_slack": math.exp(q + 1.0),
        "route": mx.diagnostics.get("route", ""),
    }
    return _finish(rep, mx_est + abs(lower) * 1e-12)


# --------------------------------------------------------------------------
# suite


def run_suite(quad: QuadratureSpec | None = None) -> list[InequalityReport]:
    """Deterministic cross-section of every checker, sized for seconds."""
    from .bodies import scale_to_volume_one
    from .radon import GaussianDensity

    spec = quad or _DEFAULT_SPEC
    small = _grid(3, min(spec.sphere_nodes, 128), spec.seed)
    B = Ball(1.0, 3)
    E = Ellipsoid([2.0, 1.0, 1.0])
    cube = LpBall(math.inf, 3, 1.0)
    cross = LpBall(1.0, 3, 1.0)
    B1 = scale_to_volume_one(B)
    cube1 = scale_to_volume_one(cube)
    uni = UniformDensity()
    gauss = GaussianDensity(1.0)

    reports = [
        check_corollary1(3, 0.5, spec),
        check_corollary1(4, 1.5, spec),
        check_parseval(B, 1.5, spec),
        check_parseval(E, 1.0, spec),
        check_mp_moment_identity(B, 0.5, spec),
        check_mp_moment_identity(cube, 1.5, spec),
        check_mp_lemma(Ball(0.8, 3), uni, B, 0.5, spec),
        check_holder_step(cube, 0.5, spec),
        check_holder_step(B, 1.5, spec),
        check_theorem2(B1, uni, 0.0, None, spec, small),
        check_theorem2(cube1, gauss, 0.5, None, spec, small),
        check_theorem3(Ball(1.0, 3), gauss.with_const(0.5), Ball(1.0, 3), gauss, 0.5,
                       None, spec, small),
        check_theorem1(B1, uni, 0.5, 0.05, spec, small),
    ]
    return reports


# --------------------------------------------------------------------------
# serialization


_CSV_COLUMNS = [
    "check", "n", "q", "body", "density", "lhs", "rhs", "margin",
    "pass", "dovr_source", "seed",
]


def reports_to_csv(reports) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.csv_row())
    return buf.getvalue()


def serialize_reports_json(reports, config: dict | None = None) -> str:
    import json

    from . import __version__

    payload = {
        "version": __version__,
        "config": {k: _json_value(v) for k, v in sorted((config or {}).items())},
        "reports": [rep.to_json_dict() for rep in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"

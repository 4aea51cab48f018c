"""Hyperplane sections of star bodies with densities.

The central object is the parallel section function of a body K, density f
and unit direction xi:

    h(t) = integral of f over K intersect {<x, xi> = t}.

Sections are evaluated in polar coordinates inside the hyperplane around the
chord point p(t) = (t/T) * xbar, where xbar is a boundary point with
<xbar, xi> = T = h_K(xi).  For convex K and |t| < T this point lies in the
interior of the slice, so every in-plane ray meets the boundary exactly once.
Using the support width T (not the radial function, which is smaller for
directions that are not normal to a supporting hyperplane) is what makes the
slab -T < t < T exhaust the body.

Fractional derivatives of h at 0 are taken with the machinery from
``fracderiv``; ``frac_radon_at_zero`` additionally divides by cos(pi q / 2),
which is the normalization under which the ball closed form and the slicing
inequalities are stated.

Ball and ellipsoid sections of the uniform density have the closed form
  h(t) = c * V_{n-1} * (det A / w) * (1 - (t/w)^2)^{(n-1)/2},   w = |A^T xi|,
used as the analytic fast path and as the oracle in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bodies import Ball, Ellipsoid, SphereGrid, StarBody
from .errors import DomainError, GuardBandError
from .fracderiv import FracDerivResult, SectionFunction, frac_deriv_auto
from .quadrature import QuadratureSpec, gauss_jacobi_01, gauss_legendre_01
from .special import (
    FractionalOrder,
    ball_frac_deriv_normalized,
    ball_volume,
    cos_half_pi,
    default_even_order,
    odd_integer_distance,
    reciprocal_gamma_negative,
)
from .testfns import power_profile

__all__ = [
    "Density",
    "UniformDensity",
    "GaussianDensity",
    "RadialPolyDensity",
    "density_from_spec",
    "section_integral",
    "parallel_section_function",
    "frac_radon_at_zero",
    "frac_radon_result",
    "RadonDerivResult",
    "direction_sweep",
    "SweepResult",
    "max_over_directions",
    "MaxResult",
    "moment_integral",
    "integral_over_body",
    "normalized_to_mass",
    "section_mass_residual",
]

_DEFAULT_SPEC = QuadratureSpec()
_NUMERIC_SECTION_MMAX = 4


# --------------------------------------------------------------------------
# densities


class Density:
    """Even density on R^n; radial kinds expose profile(r^2) to avoid
    materializing point clouds in the batched section paths."""

    even = True
    is_radial = False
    kind = "custom"
    const = 1.0

    def evaluate(self, points):
        raise NotImplementedError

    def profile(self, r2):
        raise NotImplementedError(f"{self.kind} density is not radial")

    def with_const(self, const: float) -> "Density":
        return replace(self, const=float(const))

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class UniformDensity(Density):
    const: float = 1.0
    is_radial = True
    kind = "uniform"

    def profile(self, r2):
        return np.full(np.shape(r2), self.const)

    def evaluate(self, points):
        return np.full(np.shape(points)[:-1], self.const)

    def describe(self):
        return "uniform" if self.const == 1.0 else f"uniform:c={self.const:.12g}"


@dataclass(frozen=True)
class GaussianDensity(Density):
    """exp(-|x|^2 / (2 sigma^2)) restricted to whatever body it is paired with."""

    sigma: float = 1.0
    const: float = 1.0
    is_radial = True
    kind = "gaussian"

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise DomainError("sigma must be positive")

    def profile(self, r2):
        return self.const * np.exp(np.asarray(r2, dtype=float) / (-2.0 * self.sigma**2))

    def evaluate(self, points):
        pts = np.asarray(points, dtype=float)
        return self.profile(np.sum(pts * pts, axis=-1))

    def describe(self):
        base = f"gaussian:sigma={self.sigma:g}"
        return base if self.const == 1.0 else f"{base},c={self.const:.12g}"


@dataclass(frozen=True)
class RadialPolyDensity(Density):
    """const * sum_j coeffs[j] * |x|^(2j); kept even by construction."""

    coeffs: tuple
    const: float = 1.0
    is_radial = True
    kind = "poly"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("need at least one coefficient")

    def profile(self, r2):
        return self.const * np.polynomial.polynomial.polyval(
            np.asarray(r2, dtype=float), self.coeffs
        )

    def evaluate(self, points):
        pts = np.asarray(points, dtype=float)
        return self.profile(np.sum(pts * pts, axis=-1))

    def describe(self):
        cs = ",".join(f"{c:g}" for c in self.coeffs)
        base = f"poly:c={cs}"
        return base if self.const == 1.0 else f"{base};scale={self.const:.12g}"


def density_from_spec(text: str) -> Density:
    text = text.strip()
    name, _, params = text.partition(":")
    if name == "uniform":
        if params:
            raise DomainError("uniform takes no parameters")
        return UniformDensity()
    if name == "gaussian":
        sigma = 1.0
        for item in filter(None, params.split(",")):
            key, _, val = item.partition("=")
            if key.strip() != "sigma":
                raise DomainError(f"unknown gaussian parameter {key!r}")
            sigma = float(val)
        return GaussianDensity(sigma)
    if name == "poly":
        if not params.startswith("c="):
            raise DomainError("poly needs c=c0,c1,...")
        coeffs = tuple(float(v) for v in params[2:].split(","))
        return RadialPolyDensity(coeffs)
    raise DomainError(f"unknown density kind {name!r}")


# --------------------------------------------------------------------------
# section geometry


def _unit(xi) -> np.ndarray:
    v = np.asarray(xi, dtype=float)
    nv = np.linalg.norm(v)
    if nv == 0.0:
        raise DomainError("direction must be nonzero")
    return v / nv


def _tangent_basis(xi: np.ndarray) -> np.ndarray:
    """Orthonormal (n, n-1) basis of xi-perp via a Householder reflection."""
    n = xi.size
    v = xi.copy()
    v[0] -= 1.0
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        return np.eye(n)[:, 1:]
    H = np.eye(n) - (2.0 / (nv * nv)) * np.outer(v, v)
    return H[:, 1:]


def _require_sections(K: StarBody):
    if not K.is_convex:
        raise DomainError(
            "section evaluation needs a convex body (the chord-point polar "
            "parametrization assumes star-shaped slices)"
        )


def _ray_lengths(K: StarBody, origins: np.ndarray, dirs: np.ndarray, tol: float):
    """Distance from interior origins to the boundary along unit rays."""
    if isinstance(K, Ball):
        b = np.einsum("ij,ij->i", origins, dirs)
        c = np.einsum("ij,ij->i", origins, origins) - K.r * K.r
        disc = np.maximum(b * b - c, 0.0)
        return -b + np.sqrt(disc)
    if isinstance(K, Ellipsoid):
        ob = K._body_coords(origins) / K.semi_axes
        db = K._body_coords(dirs) / K.semi_axes
        a = np.einsum("ij,ij->i", db, db)
        b = np.einsum("ij,ij->i", ob, db)
        c = np.einsum("ij,ij->i", ob, ob) - 1.0
        disc = np.maximum(b * b - a * c, 0.0)
        return (-b + np.sqrt(disc)) / a
    hi0 = 2.0 * K.outer_radius() + np.linalg.norm(origins, axis=1)
    lo = np.zeros(origins.shape[0])
    hi = hi0.copy()
    steps = max(20, int(math.ceil(math.log2(float(np.max(hi0)) / tol))))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        inside = K.minkowski(origins + mid[:, None] * dirs) <= 1.0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return 0.5 * (lo + hi)


@dataclass
class _SectionFrame:
    """Per-direction geometry reused across many t evaluations."""

    xi: np.ndarray
    support: float
    support_point: np.ndarray
    thetas: np.ndarray  # (Ntheta, n), unit, orthogonal to xi
    theta_weights: np.ndarray  # (Ntheta,), sum to |S^{n-2}|


def _section_frame(K: StarBody, xi: np.ndarray, spec: QuadratureSpec) -> _SectionFrame:
    basis = _tangent_basis(xi)
    grid = SphereGrid.build(K.dim - 1, spec.section_nodes, seed=spec.seed + 1)
    thetas = grid.nodes @ basis.T
    return _SectionFrame(
        xi=xi,
        support=K.support_value(xi),
        support_point=np.asarray(K.support_point(xi), dtype=float),
        thetas=thetas,
        theta_weights=grid.weights,
    )


def _section_values(
    K: StarBody, f: Density, frame: _SectionFrame, ts: np.ndarray, spec: QuadratureSpec
) -> np.ndarray:
    """h(t) for an array of offsets along one direction."""
    n = K.dim
    ts = np.asarray(ts, dtype=float)
    out = np.zeros(ts.shape)
    T = frame.support
    live = np.abs(ts) < T * (1.0 - 1e-12)
    if not live.any():
        return out
    tl = ts[live]
    origins = (tl[:, None] / T) * frame.support_point[None, :]  # (Nt, n)
    nt = tl.size
    ntheta = frame.thetas.shape[0]
    org = np.repeat(origins, ntheta, axis=0)
    drs = np.tile(frame.thetas, (nt, 1))
    rho = _ray_lengths(K, org, drs, spec.bisection_tol).reshape(nt, ntheta)
    if f.kind == "uniform":
        inner = f.const * rho ** (n - 1) / (n - 1)
    else:
        ynod, ywts = gauss_jacobi_01(spec.radial_nodes, n - 2)
        s = rho[:, :, None] * ynod  # (Nt, Ntheta, Nr)
        if f.is_radial:
            b = origins @ frame.thetas.T  # (Nt, Ntheta)
            p2 = np.einsum("ij,ij->i", origins, origins)
            r2 = p2[:, None, None] + 2.0 * s * b[:, :, None] + s * s
            fv = f.profile(r2)
        else:
            pts = org.reshape(nt, ntheta, 1, n) + s[:, :, :, None] * frame.thetas[None, :, None, :]
            fv = f.evaluate(pts)
        inner = rho ** (n - 1) * (fv @ ywts)
    out[live] = inner @ frame.theta_weights
    return out


def section_integral(K: StarBody, f: Density, xi, t: float, quad: QuadratureSpec | None = None) -> float:
    """Integral of f over the slice of K at offset t along xi."""
    spec = quad or _DEFAULT_SPEC
    _require_sections(K)
    xi = _unit(xi)
    frame = _section_frame(K, xi, spec)
    return float(_section_values(K, f, frame, np.array([float(t)]), spec)[0])


def parallel_section_function(
    K: StarBody,
    xi,
    f: Density | None = None,
    quad: QuadratureSpec | None = None,
    analytic: str = "auto",
) -> SectionFunction:
    """The slice integral as a function of the offset, packaged for the
    fractional-derivative machinery.

    Ball and ellipsoid slices of the uniform density use the closed form
    (including its full power series); anything else evaluates sections
    numerically and is limited to derivative orders m <= 4.
    """
    spec = quad or _DEFAULT_SPEC
    f = f or UniformDensity()
    if not f.even:
        raise DomainError("densities must be even")
    xi = _unit(xi)
    if analytic not in ("auto", "never", "always"):
        raise DomainError("analytic must be auto/never/always")
    use_analytic = analytic != "never" and _has_closed_sections(K, f)
    if analytic == "always" and not use_analytic:
        raise DomainError("no closed-form sections for this body and density")
    if use_analytic:
        return _closed_section_function(K, f, xi)
    _require_sections(K)
    frame = _section_frame(K, xi, spec)
    evaluator = lambda ts: _section_values(K, f, frame, ts, spec)
    return SectionFunction(
        evaluator=evaluator,
        support=frame.support,
        m_max=_NUMERIC_SECTION_MMAX,
        even=True,
        name=f"section[{K.spec_string()};{f.describe()}]",
    )


def _has_closed_sections(K: StarBody, f: Density) -> bool:
    return isinstance(K, (Ball, Ellipsoid)) and f.kind == "uniform"


def _ellipsoid_width_det(K: StarBody, xi: np.ndarray):
    if isinstance(K, Ball):
        return K.r, K.r**K.dim
    w = K.support_value(xi)
    return w, float(np.prod(K.semi_axes))


def _closed_section_function(K: StarBody, f: Density, xi: np.ndarray) -> SectionFunction:
    n = K.dim
    w, det = _ellipsoid_width_det(K, xi)
    amp = f.const * ball_volume(n - 1) * det / w
    g = power_profile((n - 1) / 2.0, T=w, amplitude=amp)
    return replace(g, name=f"section[{K.spec_string()};{f.describe()}]")


@dataclass
class RadonDerivResult:
    """Fractional derivative of a section function at the origin.

    ``value`` is raw / cos(pi q / 2), the normalization under which the
    slicing bounds and the ball closed form are stated.
    """

    value: float
    raw: float
    q: float
    direction: np.ndarray
    diagnostics: dict

    @property
    def error_estimate(self) -> float:
        return self.diagnostics.get("error_estimate", math.nan)


def frac_radon_result(
    K: StarBody,
    xi,
    q,
    f: Density | None = None,
    quad: QuadratureSpec | None = None,
    analytic: str = "auto",
) -> RadonDerivResult:
    spec = quad or _DEFAULT_SPEC
    f = f or UniformDensity()
    xi = _unit(xi)
    qv = float(q)
    if float(qv).is_integer():
        if int(round(qv)) % 2 == 1:
            raise GuardBandError(f"q={qv} is an odd integer; cos(pi q/2) vanishes")
    else:
        FractionalOrder(qv)  # validates range and the odd-integer guard band
    h = parallel_section_function(K, xi, f, spec, analytic)
    res = frac_deriv_auto(h, qv, spec=spec)
    cosq = cos_half_pi(qv)
    diag = dict(res.diagnostics)
    diag["m_used"] = res.m_used
    diag["cos_factor"] = cosq
    diag["error_estimate"] = res.error_estimate / abs(cosq)
    return RadonDerivResult(
        value=res.value / cosq, raw=res.value, q=qv, direction=xi, diagnostics=diag
    )


def frac_radon_at_zero(
    K: StarBody,
    xi,
    q,
    f: Density | None = None,
    quad: QuadratureSpec | None = None,
    analytic: str = "auto",
) -> float:
    """Normalized fractional derivative of the section function at 0."""
    return frac_radon_result(K, xi, q, f, quad, analytic).value


# --------------------------------------------------------------------------
# sweeps over many directions


@dataclass
class SweepResult:
    directions: np.ndarray  # (D, n)
    values: np.ndarray  # (D,) normalized by cos(pi q / 2)
    raw: np.ndarray
    supports: np.ndarray
    error_estimates: np.ndarray
    route: str


def _batched_section_values(K, f, frames, t_matrix, spec):
    """t_matrix[d] holds the offsets needed for direction d."""
    return np.stack(
        [_section_values(K, f, frames[d], t_matrix[d], spec) for d in range(len(frames))]
    )


def _sweep_even_derivatives(K, f, frames, supports, spec, need_c2):
    """Batched h(0) and h''(0)/2 per direction via Richardson on an even
    difference stencil; the spread of the extrapolation levels is the error."""
    d = len(frames)
    s0 = spec.fd_step * supports  # (D,)
    mults = np.array([0.0, 0.25, 0.5, 1.0])
    tm = s0[:, None] * mults[None, :]
    hv = _batched_section_values(K, f, frames, tm, spec)  # (D, 4)
    c0 = hv[:, 0]
    if not need_c2:
        return c0, np.zeros(d), np.zeros(d)
    diffs = (hv[:, 1:] - c0[:, None]) / tm[:, 1:] ** 2  # A(s/4), A(s/2), A(s)
    r1_small = (4.0 * diffs[:, 0] - diffs[:, 1]) / 3.0
    r1_big = (4.0 * diffs[:, 1] - diffs[:, 2]) / 3.0
    c2 = (16.0 * r1_small - r1_big) / 15.0
    err = np.abs(r1_small - r1_big) / 15.0 + np.abs(c2 - r1_small)
    return c0, c2, err


def _sweep_numeric(K, f, dirs, qv, spec):
    """Per-direction fractional derivative via a fixed Gauss-Jacobi rule.

    Same assembly as the even route: singular part on (0, T) with the
    remainder after subtracting the even Taylor polynomial, plus the closed
    form of the polynomial's own contribution.  The Jacobi weight absorbs
    t^(m-1-q) exactly, so one fixed rule handles the whole support without
    panel adaptivity; a half-order rule supplies the error estimate.
    """
    frames = [_section_frame(K, xi, spec) for xi in dirs]
    supports = np.array([fr.support for fr in frames])
    cosq = cos_half_pi(qv)

    if float(qv).is_integer():
        k = int(round(qv))
        if k == 0:
            c0, _, err = _sweep_even_derivatives(K, f, frames, supports, spec, False)
            raw = c0.copy()
            est = np.full(len(frames), 1e-14) + err
        elif k == 2:
            _, c2, err = _sweep_even_derivatives(K, f, frames, supports, spec, True)
            raw = 2.0 * c2  # h''(0); classical value carries (-1)^k = +1
            est = 2.0 * err
        else:
            raise DomainError(f"direction sweeps support integer q in {{0, 2}}, got {k}")
        return SweepResult(dirs, raw / cosq, raw, supports, est, route="classical")

    m = default_even_order(qv)
    if m > _NUMERIC_SECTION_MMAX:
        raise DomainError(f"numeric sections support q < {_NUMERIC_SECTION_MMAX}, got q={qv}")
    rg = reciprocal_gamma_negative(qv)
    c0, c2, fd_err = _sweep_even_derivatives(K, f, frames, supports, spec, m >= 4)
    beta = m - 1.0 - qv

    def assemble(npts):
        ynod, ywts = gauss_jacobi_01(npts, beta)
        tm = supports[:, None] * ynod[None, :]
        hv = _batched_section_values(K, f, frames, tm, spec)
        psi = (hv - c0[:, None] - c2[:, None] * tm * tm) / tm**m
        return supports ** (m - qv) * (psi @ ywts)

    # polytope-like bodies have slope breaks inside the section profile, so
    # the fixed rule needs more nodes there than on smooth boundaries
    base_nodes = spec.jacobi_nodes if isinstance(K, (Ball, Ellipsoid)) else max(64, spec.jacobi_nodes)
    main = assemble(base_nodes)
    half = assemble(max(6, base_nodes // 2))
    tail = -c0 * supports ** (-qv) / qv
    if m >= 4:
        tail = tail - c2 * supports ** (2.0 - qv) / (qv - 2.0)
    raw = rg * (main + tail)
    quad_err = np.abs(rg) * np.abs(main - half)
    # the subtracted polynomial enters psi / the tail with opposite signs, so
    # its FD uncertainty propagates through both terms
    fd_prop = np.abs(rg) * fd_err * supports ** (2.0 - qv) * (1.0 / abs(qv - 2.0) + 1.0)
    est = quad_err + fd_prop
    return SweepResult(dirs, raw / cosq, raw, supports, est / abs(cosq), route=f"jacobi-m{m}")


def _unit_profile_value(n: int, qv: float, spec: QuadratureSpec):
    """Normalized derivative of the unit ball's section profile.

    The gamma-function expression covers -1 < q < n-1; beyond that (where the
    slicing constants have poles but the derivative itself is still finite)
    fall back to differentiating the profile directly, which works for any
    order because the profile carries its full power series.
    """
    if qv < n - 1.0:
        return ball_frac_deriv_normalized(n, qv, 1.0), 1e-15, "closed-form"
    g = power_profile((n - 1) / 2.0, T=1.0, amplitude=ball_volume(n - 1))
    res = frac_deriv_auto(g, qv, spec=spec)
    cosq = cos_half_pi(qv)
    return res.value / cosq, res.error_estimate / abs(cosq), "closed-profile"


def _sweep_closed(K, f, dirs, qv, spec):
    n = K.dim
    if isinstance(K, Ball):
        w = np.full(dirs.shape[0], K.r)
        det = K.r**n
    else:
        y = (dirs if K.rotation is None else dirs @ K.rotation) * K.semi_axes
        w = np.sqrt(np.einsum("ij,ij->i", y, y))
        det = float(np.prod(K.semi_axes))
    unit, unit_err, route = _unit_profile_value(n, qv, spec)
    scale = f.const * det * w ** (-1.0 - qv)
    vals = scale * unit
    raw = vals * cos_half_pi(qv)
    est = np.abs(scale) * (unit_err + 1e-15 * abs(unit))
    return SweepResult(dirs, vals, raw, w, est, route=route)


def direction_sweep(
    K: StarBody,
    f: Density,
    q,
    dirs,
    quad: QuadratureSpec | None = None,
    analytic: str = "auto",
) -> SweepResult:
    """Normalized fractional section derivative for a batch of directions."""
    spec = quad or _DEFAULT_SPEC
    qv = float(q)
    dirs = np.asarray(dirs, dtype=float)
    if dirs.ndim == 1:
        dirs = dirs[None, :]
    if analytic != "never" and _has_closed_sections(K, f):
        # the closed route is analytic in q, so odd integer orders are fine
        # here even though cos(pi q / 2) vanishes (raw and the cosine cancel)
        return _sweep_closed(K, f, dirs, qv, spec)
    if odd_integer_distance(qv) < 1e-6:
        raise GuardBandError(f"q={qv} is inside the odd-integer guard band")
    _require_sections(K)
    return _sweep_numeric(K, f, dirs, qv, spec)


@dataclass
class MaxResult:
    direction: np.ndarray
    value: float
    grid_value: float
    grid_index: int
    diagnostics: dict

    def __iter__(self):
        return iter((self.direction, self.value))


def max_over_directions(
    K: StarBody,
    f: Density,
    q,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
    analytic: str = "auto",
) -> MaxResult:
    """Maximize the normalized section derivative over directions.

    Grid sweep followed by rounds of coordinate-wise golden-section polishing
    in the tangent directions of the current best point.  Everything is
    seeded and tie-broken by first index, so results are reproducible.
    """
    spec = quad or _DEFAULT_SPEC
    if grid is None:
        grid = SphereGrid.build(K.dim, spec.sphere_nodes, spec.seed)
    sweep = direction_sweep(K, f, q, grid.nodes, spec, analytic)
    j = int(np.argmax(sweep.values))
    best_dir = grid.nodes[j].copy()
    best_val = float(sweep.values[j])
    grid_val = best_val
    n_evals = len(grid)

    def value_at(xi):
        return float(direction_sweep(K, f, q, xi[None, :], spec, analytic).values[0])

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    delta = 1.5 * (4.0 * math.pi / max(len(grid), 8)) ** (1.0 / max(K.dim - 1, 1))
    for _ in range(spec.refine_rounds):
        basis = _tangent_basis(best_dir)
        for k in range(basis.shape[1]):
            b = basis[:, k]

            def along(alpha):
                v = math.cos(alpha) * best_dir + math.sin(alpha) * b
                return value_at(v / np.linalg.norm(v))

            lo, hi = -delta, delta
            x1 = hi - invphi * (hi - lo)
            x2 = lo + invphi * (hi - lo)
            f1, f2 = along(x1), along(x2)
            for _ in range(10):
                if f1 < f2:
                    lo, x1, f1 = x1, x2, f2
                    x2 = lo + invphi * (hi - lo)
                    f2 = along(x2)
                else:
                    hi, x2, f2 = x2, x1, f1
                    x1 = hi - invphi * (hi - lo)
                    f1 = along(x1)
            alpha = x1 if f1 >= f2 else x2
            val = f1 if f1 >= f2 else f2
            n_evals += 12
            if val > best_val:
                best_val = val
                v = math.cos(alpha) * best_dir + math.sin(alpha) * b
                best_dir = v / np.linalg.norm(v)
        delta *= 0.35
    err = float(np.max(sweep.error_estimates)) if len(sweep.error_estimates) else 0.0
    return MaxResult(
        direction=best_dir,
        value=best_val,
        grid_value=grid_val,
        grid_index=j,
        diagnostics={
            "n_direction_evals": n_evals,
            "route": sweep.route,
            "refine_gain": best_val - grid_val,
            "error_estimate": err,
        },
    )


# --------------------------------------------------------------------------
# radial moment integrals


def _moment(D, K, f, p, spec, grid):
    n = K.dim
    if D.dim != n:
        raise DomainError("dimension mismatch between the gauge body and the domain")
    pv = float(p)
    if pv < 0.0:
        raise DomainError("the moment exponent must be nonnegative")
    if pv >= n:
        raise DomainError(f"moment diverges at the origin for p >= n (p={pv}, n={n})")
    if grid is None:
        grid = SphereGrid.build(n, spec.sphere_nodes, spec.seed)
    theta = grid.nodes
    r = K.radial(theta)
    gauge = D.minkowski(theta) ** (-pv) if pv != 0.0 else np.ones(len(grid))

    def radial_rule(npts):
        if pv <= n - 1.0:
            ynod, ywts = gauss_jacobi_01(npts, n - 1.0 - pv)
            s = r[:, None] * ynod[None, :]
            scale = r ** (n - pv)
        else:
            # substitute s = r u^{1/(n-p)}; the weight becomes flat on (0,1)
            ynod, ywts = gauss_legendre_01(npts)
            s = r[:, None] * ynod[None, :] ** (1.0 / (n - pv))
            scale = r ** (n - pv) / (n - pv)
        if f.is_radial:
            fv = f.profile(s * s)
        else:
            pts = s[:, :, None] * theta[:, None, :]
            fv = f.evaluate(pts)
        return scale * (fv @ ywts)

    inner = radial_rule(spec.radial_nodes)
    inner_half = radial_rule(max(6, spec.radial_nodes // 2))
    terms = grid.weights * gauge * inner
    value = math.fsum(terms.tolist())
    half_value = math.fsum((grid.weights * gauge * inner_half).tolist())
    err = abs(value - half_value)
    return value, err, {"n_nodes": len(grid), "radial_nodes": spec.radial_nodes}


def moment_integral(
    D: StarBody,
    K: StarBody,
    f: Density,
    p,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
) -> float:
    """integral over K of ||x||_D^{-p} f(x) dx, in polar coordinates.

    Needs p < n; the radial weight s^{n-1-p} is absorbed by a Jacobi rule
    for p <= n-1 and by a power substitution on the last unit of exponent.
    """
    spec = quad or _DEFAULT_SPEC
    value, _, _ = _moment(D, K, f, float(p), spec, grid)
    return value


def moment_integral_result(D, K, f, p, quad=None, grid=None):
    spec = quad or _DEFAULT_SPEC
    return _moment(D, K, f, float(p), spec, grid)


def integral_over_body(
    K: StarBody,
    f: Density,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
) -> float:
    return moment_integral(K, K, f, 0.0, quad, grid)


def normalized_to_mass(
    f: Density,
    K: StarBody,
    target: float = 1.0,
    quad: QuadratureSpec | None = None,
    grid: SphereGrid | None = None,
) -> Density:
    """Rescale a density so its integral over K equals target."""
    mass = integral_over_body(K, f, quad, grid)
    if mass <= 0.0:
        raise DomainError("density has nonpositive mass on this body")
    return f.with_const(f.const * target / mass)


def section_mass_residual(
    K: StarBody,
    xi,
    f: Density | None = None,
    quad: QuadratureSpec | None = None,
    n_t: int = 200,
) -> float:
    """Relative gap between integrating sections over offsets and the bulk
    integral; a direct consistency check of the slab parametrization."""
    spec = quad or _DEFAULT_SPEC
    f = f or UniformDensity()
    h = parallel_section_function(K, xi, f, spec, analytic="never")
    ynod, ywts = gauss_legendre_01(n_t)
    vals = h(h.support * ynod)
    line = 2.0 * h.support * float(vals @ ywts)
    bulk = integral_over_body(K, f, spec)
    return abs(line - bulk) / abs(bulk)

"""Origin-symmetric star bodies and sphere quadrature grids.

A star body is described by its Minkowski functional ||x||_K (gauge): the
radial function is its reciprocal on the unit sphere.  All concrete kinds
here are closed under dilation, so volume normalization returns the same
kind with rescaled parameters.  Sections and maximization elsewhere rely on
three extra oracles that each kind provides: the support function value
h_K(xi) (the true half-width of K in a direction, which for non-round bodies
exceeds the radial function), a boundary point attaining it, and an outer
Euclidean radius for bracketing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import ball_volume, lp_ball_volume, sphere_surface

__all__ = [
    "StarBody",
    "Ball",
    "Ellipsoid",
    "LpBall",
    "RadialQSum",
    "SphereGrid",
    "radial_q_sum",
    "radial_metric",
    "volume_polar",
    "scale_to_volume_one",
    "contains",
    "ContainsResult",
    "enclosing_ellipsoid_dovr",
    "body_from_spec",
]

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def _as_points(x, dim):
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != dim:
        raise DomainError(f"expected points in R^{dim}, got shape {pts.shape}")
    return pts


class StarBody:
    """Base class; subclasses fill in _minkowski on (N, n) arrays."""

    dim: int
    is_convex: bool = True

    def minkowski(self, x):
        pts = _as_points(x, self.dim)
        flat = pts.reshape(-1, self.dim)
        vals = self._minkowski(flat).reshape(pts.shape[:-1])
        return float(vals) if vals.ndim == 0 else vals

    def radial(self, theta):
        m = self.minkowski(theta)
        return 1.0 / m

    # --- support oracles -------------------------------------------------
    def support_value(self, xi) -> float:
        """h_K(xi) = max over K of <x, xi>; fallback scans a fixed grid."""
        xi = np.asarray(xi, dtype=float)
        grid = _support_grid(self.dim)
        r = self.radial(grid)
        return float(np.max(r * (grid @ xi)))

    def support_point(self, xi):
        """A boundary point x with <x, xi> = support_value(xi)."""
        xi = np.asarray(xi, dtype=float)
        grid = _support_grid(self.dim)
        r = self.radial(grid)
        scores = r * (grid @ xi)
        j = int(np.argmax(scores))
        return r[j] * grid[j]

    def outer_radius(self) -> float:
        grid = _support_grid(self.dim)
        return float(np.max(self.radial(grid)))

    def closed_volume(self):
        """Exact volume when the kind has one, else None."""
        return None

    def scaled(self, factor: float) -> "StarBody":
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec_string()} n={self.dim}>"


_SUPPORT_GRIDS = {}


def _support_grid(dim):
    # fixed fallback grid for support queries on kinds without a closed form
    if dim not in _SUPPORT_GRIDS:
        _SUPPORT_GRIDS[dim] = SphereGrid.build(dim, 4096, seed=7).nodes
    return _SUPPORT_GRIDS[dim]


class Ball(StarBody):
    def __init__(self, r: float = 1.0, dim: int = 3):
        if r <= 0.0:
            raise DomainError("radius must be positive")
        if dim < 2:
            raise DomainError("dimension must be >= 2")
        self.r = float(r)
        self.dim = int(dim)

    def _minkowski(self, pts):
        return np.sqrt(np.sum(pts * pts, axis=-1)) / self.r

    def support_value(self, xi):
        return self.r

    def support_point(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.r * xi

    def outer_radius(self):
        return self.r

    def closed_volume(self):
        return ball_volume(self.dim) * self.r**self.dim

    def scaled(self, factor):
        return Ball(self.r * factor, self.dim)

    def spec_string(self):
        return f"ball:r={self.r:g}"


class Ellipsoid(StarBody):
    """{x : |A^{-1} x| <= 1} with A = rotation @ diag(semi_axes)."""

    def __init__(self, semi_axes, rotation=None):
        axes = np.asarray(semi_axes, dtype=float)
        if axes.ndim != 1 or axes.size < 2:
            raise DomainError("need at least two semi-axes")
        if (axes <= 0.0).any():
            raise DomainError("semi-axes must be positive")
        self.semi_axes = axes
        self.dim = axes.size
        if rotation is None:
            self.rotation = None
        else:
            rot = np.asarray(rotation, dtype=float)
            if rot.shape != (self.dim, self.dim):
                raise DomainError("rotation shape mismatch")
            if not np.allclose(rot @ rot.T, np.eye(self.dim), atol=1e-10):
                raise DomainError("rotation must be orthogonal")
            self.rotation = rot

    def _body_coords(self, pts):
        return pts if self.rotation is None else pts @ self.rotation

    def _minkowski(self, pts):
        y = self._body_coords(pts) / self.semi_axes
        return np.sqrt(np.sum(y * y, axis=-1))

    def support_value(self, xi):
        xi = np.asarray(xi, dtype=float)
        y = self._body_coords(xi) * self.semi_axes
        return float(np.sqrt(np.sum(y * y)))

    def support_point(self, xi):
        xi = np.asarray(xi, dtype=float)
        y = self._body_coords(xi) * self.semi_axes**2
        x = y if self.rotation is None else self.rotation @ y
        return x / self.support_value(xi)

    def outer_radius(self):
        return float(np.max(self.semi_axes))

    def closed_volume(self):
        return ball_volume(self.dim) * float(np.prod(self.semi_axes))

    def scaled(self, factor):
        return Ellipsoid(self.semi_axes * factor, self.rotation)

    def spec_string(self):
        axes = ",".join(f"{a:g}" for a in self.semi_axes)
        return f"ellipsoid:a={axes}"


class LpBall(StarBody):
    """{x : sum |x_i|^p <= scale^p}; p = inf is the cube [-scale, scale]^n."""

    def __init__(self, p: float, dim: int, scale: float = 1.0):
        if not (p > 0.0):
            raise DomainError("p must be positive (use math.inf for the cube)")
        if scale <= 0.0:
            raise DomainError("scale must be positive")
        if dim < 2:
            raise DomainError("dimension must be >= 2")
        self.p = float(p)
        self.scale = float(scale)
        self.dim = int(dim)
        self.is_convex = self.p >= 1.0

    def _minkowski(self, pts):
        a = np.abs(pts)
        if math.isinf(self.p):
            return np.max(a, axis=-1) / self.scale
        return np.sum(a**self.p, axis=-1) ** (1.0 / self.p) / self.scale

    def _dual_exponent(self):
        if math.isinf(self.p):
            return 1.0
        if self.p == 1.0:
            return math.inf
        return self.p / (self.p - 1.0)

    def support_value(self, xi):
        if not self.is_convex:
            return super().support_value(xi)
        xi = np.asarray(xi, dtype=float)
        pd = self._dual_exponent()
        a = np.abs(xi)
        if math.isinf(pd):
            return self.scale * float(np.max(a))
        return self.scale * float(np.sum(a**pd) ** (1.0 / pd))

    def support_point(self, xi):
        if not self.is_convex:
            return super().support_point(xi)
        xi = np.asarray(xi, dtype=float)
        a = np.abs(xi)
        if math.isinf(self.p):
            return self.scale * np.sign(xi)
        if self.p == 1.0:
            j = int(np.argmax(a))
            x = np.zeros(self.dim)
            x[j] = self.scale * math.copysign(1.0, xi[j])
            return x
        pd = self._dual_exponent()
        norm = float(np.sum(a**pd) ** (1.0 / pd))
        return self.scale * np.sign(xi) * (a / norm) ** (pd - 1.0)

    def outer_radius(self):
        if self.p >= 2.0:
            inv_p = 0.0 if math.isinf(self.p) else 1.0 / self.p
            return self.scale * self.dim ** (0.5 - inv_p)
        return self.scale

    def closed_volume(self):
        return lp_ball_volume(self.dim, self.p, self.scale)

    def scaled(self, factor):
        return LpBall(self.p, self.dim, self.scale * factor)

    def spec_string(self):
        p = "inf" if math.isinf(self.p) else f"{self.p:g}"
        return f"lp:p={p},scale={self.scale:g}"


class RadialQSum(StarBody):
    """Radial q-sum: r^q is the sum of the components' r^q."""

    def __init__(self, components, qexp: float):
        comps = tuple(components)
        if len(comps) < 2:
            raise DomainError("a radial sum needs at least two components")
        dims = {c.dim for c in comps}
        if len(dims) != 1:
            raise DomainError("component dimensions differ")
        if not (qexp > 0.0):
            raise DomainError("the radial exponent must be positive")
        self.components = comps
        self.qexp = float(qexp)
        self.dim = comps[0].dim
        self.is_convex = False  # not guaranteed, treated as a star body only

    def _minkowski(self, pts):
        norms = np.sqrt(np.sum(pts * pts, axis=-1))
        out = np.zeros_like(norms)
        nz = norms > 0.0
        if nz.any():
            u = pts[nz] / norms[nz, None]
            rq = np.zeros(u.shape[0])
            for c in self.components:
                rq += (1.0 / c._minkowski(u)) ** self.qexp
            out[nz] = norms[nz] / rq ** (1.0 / self.qexp)
        return out

    def outer_radius(self):
        rq = sum(c.outer_radius() ** self.qexp for c in self.components)
        return rq ** (1.0 / self.qexp)

    def scaled(self, factor):
        return RadialQSum([c.scaled(factor) for c in self.components], self.qexp)

    def spec_string(self):
        parts = ";".join(c.spec_string() for c in self.components)
        return f"qsum:q={self.qexp:g};{parts}"


def radial_q_sum(K: StarBody, L: StarBody, q: float) -> RadialQSum:
    return RadialQSum([K, L], q)


@dataclass(frozen=True)
class SphereGrid:
    """Equal-weight antipodally symmetric nodes on S^{n-1}.

    n=2 uses uniform angles, n=3 a Fibonacci spiral on the upper hemisphere
    mirrored to the lower one, higher dimensions seeded Gaussian directions
    plus antipodes.  Weights are |S^{n-1}|/N so constants integrate exactly.
    """

    dim: int
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, dim: int, count: int, seed: int = 0) -> "SphereGrid":
        if dim < 1:
            raise DomainError("dimension must be >= 1")
        if dim == 1:
            nodes = np.array([[1.0], [-1.0]])
        elif dim == 2:
            m = max(2, (count + 1) // 2)
            ang = np.arange(m) * (math.pi / m)
            half = np.stack([np.cos(ang), np.sin(ang)], axis=1)
            nodes = np.concatenate([half, -half])
        elif dim == 3:
            m = max(2, (count + 1) // 2)
            i = np.arange(m)
            z = (i + 0.5) / m
            rho = np.sqrt(1.0 - z * z)
            phi = i * _GOLDEN_ANGLE
            half = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
            nodes = np.concatenate([half, -half])
        else:
            m = max(2, (count + 1) // 2)
            rng = np.random.Generator(np.random.PCG64(seed))
            raw = rng.standard_normal((m, dim))
            norms = np.linalg.norm(raw, axis=1)
            while (norms < 1e-12).any():  # pragma: no cover - measure zero
                bad = norms < 1e-12
                raw[bad] = rng.standard_normal((int(bad.sum()), dim))
                norms = np.linalg.norm(raw, axis=1)
            half = raw / norms[:, None]
            nodes = np.concatenate([half, -half])
        n_nodes = nodes.shape[0]
        weights = np.full(n_nodes, sphere_surface(dim) / n_nodes)
        nodes.flags.writeable = False
        weights.flags.writeable = False
        return cls(dim, nodes, weights)

    def __len__(self):
        return self.nodes.shape[0]


def volume_polar(K: StarBody, grid: SphereGrid) -> float:
    """|K| = (1/n) integral over the sphere of r_K^n."""
    if grid.dim != K.dim:
        raise DomainError("grid dimension mismatch")
    r = K.radial(grid.nodes)
    return math.fsum((grid.weights * r**K.dim).tolist()) / K.dim


def radial_metric(K: StarBody, L: StarBody, grid: SphereGrid) -> float:
    """max over grid nodes of |r_K - r_L| (a lower bound for the true sup)."""
    if K.dim != L.dim:
        raise DomainError("dimension mismatch")
    return float(np.max(np.abs(K.radial(grid.nodes) - L.radial(grid.nodes))))


@dataclass
class ContainsResult:
    contained: bool
    min_ratio: float


def contains(D: StarBody, K: StarBody, grid: SphereGrid, slack: float = 1e-10) -> ContainsResult:
    """Grid test of K subset of D with multiplicative slack."""
    if K.dim != D.dim:
        raise DomainError("dimension mismatch")
    rk = K.radial(grid.nodes)
    rd = D.radial(grid.nodes)
    ratio = rd / rk
    ok = bool(np.all(rk <= rd * (1.0 + slack)))
    return ContainsResult(ok, float(np.min(ratio)))


def _volume(K: StarBody, grid: SphereGrid | None) -> float:
    v = K.closed_volume()
    if v is not None:
        return v
    if grid is None:
        # equal-weight sphere grids converge like 1/N on generic bodies, so
        # the volume fallback uses a much finer grid than direction sweeps do
        grid = SphereGrid.build(K.dim, 16384, seed=7)
    return volume_polar(K, grid)


def scale_to_volume_one(K: StarBody, grid: SphereGrid | None = None) -> StarBody:
    """Dilated copy with unit volume (closed-form volume when available)."""
    v = _volume(K, grid)
    return K.scaled(v ** (-1.0 / K.dim))


def enclosing_ellipsoid_dovr(
    K: StarBody,
    boundary_samples: int = 512,
    seed: int = 7,
    tol: float = 1e-8,
    max_iter: int = 200_000,
    grid: SphereGrid | None = None,
):
    """Minimal-volume origin-centered ellipsoid over sampled boundary points.

    Returns (ellipsoid, (|E|/|K|)^{1/n}).  The ratio upper-bounds the outer
    volume ratio distance from K to any dilation-invariant class containing
    ellipsoids.  Frank-Wolfe with away steps on the symmetric formulation:
    maximize log det sum(u_i p_i p_i^T) over the simplex; at the optimum all
    support weights sit on contact points and max_i p_i^T M^{-1} p_i = n.
    """
    n = K.dim
    dirs = [SphereGrid.build(n, boundary_samples, seed).nodes]
    axes = np.eye(n)
    dirs.append(axes)
    dirs.append(-axes)
    if n <= 12:
        # sign-diagonal directions pick up the corners of cube-like bodies
        signs = np.array(
            [[1.0 if (i >> b) & 1 else -1.0 for b in range(n)] for i in range(2 ** (n - 1))]
        )
        dirs.append(signs / math.sqrt(n))
    dmat = np.concatenate(dirs)
    pts = dmat * K.radial(dmat)[:, None]
    if np.linalg.matrix_rank(pts) < n:
        raise DomainError("boundary samples are rank deficient")
    npts = pts.shape[0]
    u = np.full(npts, 1.0 / npts)
    for _ in range(max_iter):
        M = pts.T @ (u[:, None] * pts)
        g = np.einsum("ij,ji->i", pts, np.linalg.solve(M, pts.T))
        j_to = int(np.argmax(g))
        kappa_to = g[j_to]
        if kappa_to <= n * (1.0 + tol):
            break
        active = u > 1e-14
        g_act = np.where(active, g, np.inf)
        j_away = int(np.argmin(g_act))
        kappa_aw = g_act[j_away]
        if kappa_to - n >= n - kappa_aw or not np.isfinite(kappa_aw):
            lam = (kappa_to - n) / (n * (kappa_to - 1.0))
            u *= 1.0 - lam
            u[j_to] += lam
        else:
            if kappa_aw > 1.0:
                lam = max((kappa_aw - n) / (n * (kappa_aw - 1.0)),
                          -u[j_away] / (1.0 - u[j_away]))
            else:
                lam = -u[j_away] / (1.0 - u[j_away])
            u *= 1.0 - lam
            u[j_away] += lam
            np.clip(u, 0.0, None, out=u)
            u /= u.sum()
    M = pts.T @ (u[:, None] * pts)
    A = np.linalg.inv(M) / n
    mu = float(np.max(np.einsum("ij,ji->i", pts, A @ pts.T)))
    A /= mu
    evals, evecs = np.linalg.eigh(A)
    semi_axes = 1.0 / np.sqrt(evals)
    ell = Ellipsoid(semi_axes[::-1], rotation=np.ascontiguousarray(evecs[:, ::-1]))
    ratio = (ell.closed_volume() / _volume(K, grid)) ** (1.0 / n)
    return ell, float(ratio)


def body_from_spec(text: str, dim: int) -> StarBody:
    """Parse a body description like 'ball:r=1', 'ellipsoid:a=2,1,1',
    'lp:p=1,scale=1' or 'qsum:q=2;ball:r=1;ellipsoid:a=2,1'."""
    text = text.strip()
    if text.startswith("qsum:"):
        head, *parts = text.split(";")
        if len(parts) < 2:
            raise DomainError("qsum needs at least two component bodies")
        kv = _parse_params(head.partition(":")[2])
        if set(kv) != {"q"}:
            raise DomainError(f"qsum takes exactly the parameter q, got {sorted(kv)}")
        qexp = _scalar(kv, "q", 2.0)
        comps = [body_from_spec(p, dim) for p in parts]
        return RadialQSum(comps, qexp)
    name, _, params = text.partition(":")
    kv = _parse_params(params)
    if name == "ball":
        r = _scalar(kv, "r", 1.0)
        _reject_extras("ball", kv)
        return Ball(r, dim)
    if name == "ellipsoid":
        if "a" not in kv:
            raise DomainError("ellipsoid needs a=a1,a2,... semi-axes")
        axes = [float(v) for v in kv.pop("a")]
        _reject_extras("ellipsoid", kv)
        if len(axes) != dim:
            raise DomainError(f"ellipsoid has {len(axes)} axes but n={dim}")
        return Ellipsoid(axes)
    if name == "lp":
        if "p" not in kv:
            raise DomainError("lp needs p=...")
        praw = kv.pop("p")[0]
        p = math.inf if praw.lower() in ("inf", "infinity") else float(praw)
        scale = _scalar(kv, "scale", 1.0)
        _reject_extras("lp", kv)
        return LpBall(p, dim, scale)
    if name == "cube":
        scale = _scalar(kv, "scale", 1.0)
        _reject_extras("cube", kv)
        return LpBall(math.inf, dim, scale)
    raise DomainError(f"unknown body kind {name!r}")


def _parse_params(params: str) -> dict:
    """key=value pairs; bare items extend the previous key's value list."""
    kv: dict[str, list[str]] = {}
    if not params:
        return kv
    last = None
    for item in params.split(","):
        key, eq, val = item.partition("=")
        if eq:
            last = key.strip()
            kv[last] = [val.strip()]
        else:
            if last is None:
                raise DomainError(f"malformed body parameter {item!r}")
            kv[last].append(item.strip())
    return kv


def _scalar(kv, key, default):
    if key not in kv:
        return float(default)
    vals = kv.pop(key)
    if len(vals) != 1:
        raise DomainError(f"parameter {key} expects a single value")
    try:
        return float(vals[0])
    except ValueError as exc:
        raise DomainError(f"parameter {key}={vals[0]!r} is not a number") from exc


def _reject_extras(kind, kv):
    if kv:
        raise DomainError(f"unknown parameters for {kind}: {sorted(kv)}")

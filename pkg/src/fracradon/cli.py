"""Command line interface: compute, verify, sweep.

Output is JSON (default) or CSV with 17-significant-digit floats, printed to
stdout or written to --out; --figures additionally renders a PNG next to the
delimited output.  Exit codes: 0 success, 1 a verified inequality failed,
2 invalid input, 3 numerical non-convergence.  All knobs can come from a flat
key=value config file (--config); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .bodies import SphereGrid, body_from_spec, scale_to_volume_one
from .errors import ConvergenceError, DomainError, GuardBandError, PoleError
from .fracderiv import frac_deriv_auto
from .quadrature import QuadratureSpec
from .radon import (
    density_from_spec,
    direction_sweep,
    max_over_directions,
    normalized_to_mass,
    section_integral,
)
from .special import odd_integer_distance
from .testfns import from_spec as testfn_from_spec
from .verify import _BULK_NODES
from .verify import (
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

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_ODD_GUARD = 1e-6

_CHECKS = (
    "corollary1",
    "parseval",
    "mp-identity",
    "mp-lemma",
    "holder",
    "thm1",
    "thm2",
    "thm3",
    "all",
)

_SPEC_KEYS = (
    "seed",
    "sphere_nodes",
    "section_nodes",
    "radial_nodes",
    "jacobi_nodes",
    "fd_step",
    "refine_rounds",
)


def _f17(x) -> str:
    return format(float(x), ".17g")


def _floats(text) -> list[float]:
    try:
        return [float(tok) for tok in str(text).split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise DomainError(f"expected a comma list of numbers, got {text!r}") from exc


def _ints(text) -> list[int]:
    return [int(round(v)) for v in _floats(text)]


def _parse_config_file(path) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _merged(args, file_values: dict):
    """Fill argparse Nones from the config file; flags always win."""
    for key, val in file_values.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, val)
    return args


def _build_spec(args) -> QuadratureSpec:
    spec = QuadratureSpec()
    overrides = {}
    for key in _SPEC_KEYS:
        raw = getattr(args, key, None)
        if raw is None:
            continue
        overrides[key] = float(raw) if key == "fd_step" else int(float(raw))
    return replace(spec, **overrides) if overrides else spec


def _run_config(args, spec: QuadratureSpec) -> dict:
    cfg = {"command": args.command, "version": __version__, "seed": spec.seed}
    for key in (
        "subcommand", "check", "body", "body2", "density", "density2", "fn",
        "n", "q", "p", "t", "xi", "T", "dovr", "c", "lp_constant", "nodes",
        "analytic", "format",
    ):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in _SPEC_KEYS:
        cfg[key] = getattr(spec, key)
    return cfg


# --------------------------------------------------------------------------
# output plumbing


def _rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (_f17(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def _rows_to_json(rows: list[dict], config: dict) -> str:
    # json floats stay native (repr round-trips); only csv needs .17g text
    def conv(v):
        if isinstance(v, float):
            return v if math.isfinite(v) else _f17(v)
        if isinstance(v, (list, tuple)):
            return [conv(x) for x in v]
        return v

    payload = {
        "version": __version__,
        "config": {k: conv(v) for k, v in sorted(config.items())},
        "rows": [{k: conv(v) for k, v in row.items()} for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _figure_path(args, suffix="") -> str:
    import os.path

    if args.out:
        stem = os.path.splitext(args.out)[0]
    else:
        stem = f"fracradon_{args.command}"
    return f"{stem}{suffix}.png"


def _maybe_value_figure(args, xs, values, xlabel, errors=None, title=None):
    if not args.figures:
        return
    from .figures import render_value_figure

    path = render_value_figure(xs, values, _figure_path(args), xlabel, errors, title)
    print(f"figure written to {path}", file=sys.stderr)


# --------------------------------------------------------------------------
# compute


def _filter_orders(qs, closed_ok: bool) -> list[float]:
    """Drop orders inside the odd-integer guard band unless the closed route
    (analytic in the order) will be used; dropped values are logged."""
    kept = []
    for q in qs:
        if odd_integer_distance(q) < _ODD_GUARD and not closed_ok:
            print(f"filtered q={q:g} (odd-integer guard band)", file=sys.stderr)
            continue
        kept.append(q)
    return kept


def _has_closed(K, f) -> bool:
    from .radon import _has_closed_sections

    return _has_closed_sections(K, f)


def _cmd_compute(args) -> int:
    spec = _build_spec(args)
    sub = args.subcommand
    rows = []

    if sub == "frac-deriv":
        if args.fn is None or args.q is None:
            raise DomainError("frac-deriv needs --fn and --q")
        fn = testfn_from_spec(args.fn, float(args.T) if args.T is not None else None)
        qs = _filter_orders(_floats(args.q), closed_ok=False)
        if not qs:
            raise DomainError("no orders left after the odd-integer filter")
        for q in qs:
            res = frac_deriv_auto(fn, q, spec=spec)
            rows.append(
                {
                    "fn": fn.name, "q": q, "value": res.value,
                    "error_estimate": res.error_estimate,
                    "route": res.diagnostics.get("route", ""), "m": res.m_used,
                }
            )
        _maybe_value_figure(args, [r["q"] for r in rows], [r["value"] for r in rows],
                            "q", [r["error_estimate"] for r in rows], fn.name)

    elif sub == "radon":
        if args.body is None or args.n is None or args.t is None:
            raise DomainError("radon needs --body, --n and --t")
        n = int(args.n)
        K = body_from_spec(args.body, n)
        f = density_from_spec(args.density or "uniform")
        xi = _direction(args, n)
        ts = _floats(args.t)
        for t in ts:
            val = section_integral(K, f, xi, t, spec)
            rows.append({"body": K.spec_string(), "t": t, "value": val})
        _maybe_value_figure(args, ts, [r["value"] for r in rows], "t",
                            title=f"sections of {K.spec_string()}")

    elif sub == "frac-radon":
        if args.body is None or args.n is None or args.q is None:
            raise DomainError("frac-radon needs --body, --n and --q")
        n = int(args.n)
        K = body_from_spec(args.body, n)
        f = density_from_spec(args.density or "uniform")
        xi = _direction(args, n)
        qs = _filter_orders(_floats(args.q), closed_ok=_has_closed(K, f))
        if not qs:
            raise DomainError("no orders left after the odd-integer filter")
        for q in qs:
            sweep = direction_sweep(K, f, q, xi[None, :], spec, args.analytic or "auto")
            rows.append(
                {
                    "body": K.spec_string(), "density": f.describe(), "q": q,
                    "value": float(sweep.values[0]), "raw": float(sweep.raw[0]),
                    "error_estimate": float(sweep.error_estimates[0]),
                    "route": sweep.route,
                }
            )
        _maybe_value_figure(args, qs, [r["value"] for r in rows], "q",
                            [r["error_estimate"] for r in rows], K.spec_string())

    elif sub == "max":
        if args.body is None or args.n is None or args.q is None:
            raise DomainError("max needs --body, --n and --q")
        n = int(args.n)
        K = body_from_spec(args.body, n)
        f = density_from_spec(args.density or "uniform")
        grid = SphereGrid.build(n, int(args.nodes) if args.nodes else spec.sphere_nodes, spec.seed)
        qs = _filter_orders(_floats(args.q), closed_ok=_has_closed(K, f))
        if not qs:
            raise DomainError("no orders left after the odd-integer filter")
        for q in qs:
            mx = max_over_directions(K, f, q, spec, grid, args.analytic or "auto")
            rows.append(
                {
                    "body": K.spec_string(), "density": f.describe(), "q": q,
                    "value": mx.value, "grid_value": mx.grid_value,
                    "direction": ",".join(_f17(x) for x in mx.direction),
                    "route": mx.diagnostics["route"],
                    "error_estimate": mx.diagnostics["error_estimate"],
                }
            )
        _maybe_value_figure(args, qs, [r["value"] for r in rows], "q",
                            title=f"max over directions, {K.spec_string()}")

    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown compute subcommand {sub!r}")

    fmt = (args.format or "json").lower()
    text = _rows_to_csv(rows) if fmt == "csv" else _rows_to_json(rows, _run_config(args, spec))
    _emit(text, args)
    return EXIT_OK


def _unit_mass(f, K, spec):
    # normalize on the fine bulk grid so the reported mass is 1 to within the
    # checker's own integration accuracy, not the coarse sweep default
    grid = SphereGrid.build(K.dim, _BULK_NODES, spec.seed)
    return normalized_to_mass(f, K, 1.0, spec, grid)


def _direction(args, n: int) -> np.ndarray:
    if getattr(args, "xi", None) is None:
        xi = np.zeros(n)
        xi[-1] = 1.0
        return xi
    vec = np.asarray(_floats(args.xi), dtype=float)
    if vec.shape != (n,):
        raise DomainError(f"--xi needs {n} comma-separated components")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise DomainError("--xi cannot be the zero vector")
    return vec / norm


# --------------------------------------------------------------------------
# verify


def _verify_reports(args, spec: QuadratureSpec) -> list[InequalityReport]:
    check = args.check
    if check == "all":
        return run_suite(spec)

    n = int(args.n) if args.n is not None else 3
    qs = _floats(args.q) if args.q is not None else [0.5]
    dovr = float(args.dovr) if args.dovr is not None else None
    grid = None
    if args.nodes is not None:
        grid = SphereGrid.build(n, int(args.nodes), spec.seed)

    def body(default="ball"):
        return body_from_spec(args.body or default, n)

    def density(key="density", default="uniform"):
        return density_from_spec(getattr(args, key, None) or default)

    reports = []
    for q in qs:
        if check == "corollary1":
            reports.append(check_corollary1(n, q, spec))
        elif check == "parseval":
            p = float(args.p) if args.p is not None else q
            reports.append(check_parseval(body(), p, spec, grid))
        elif check == "mp-identity":
            reports.append(check_mp_moment_identity(body(), q, spec, grid))
        elif check == "mp-lemma":
            D = body()
            L = body_from_spec(args.body2, n) if args.body2 else D
            reports.append(check_mp_lemma(L, density("density2"), D, q, spec, grid))
        elif check == "holder":
            reports.append(check_holder_step(body(), q, spec, grid))
        elif check == "thm2":
            K = scale_to_volume_one(body())
            f = _unit_mass(density(), K, spec)
            reports.append(
                check_theorem2(K, f, q, dovr, spec, grid, args.analytic or "auto")
            )
        elif check == "thm3":
            K = body()
            L = body_from_spec(args.body2, n) if args.body2 else K
            f = density()
            g = density("density2", args.density or "uniform")
            reports.append(
                check_theorem3(K, f, L, g, q, dovr, spec, grid, args.analytic or "auto")
            )
        elif check == "thm1":
            K = scale_to_volume_one(body())
            f = _unit_mass(density(), K, spec)
            c = float(args.c) if args.c is not None else 0.05
            reports.append(check_theorem1(K, f, q, c, spec, grid, args.analytic or "auto"))
        else:  # pragma: no cover - argparse restricts choices
            raise DomainError(f"unknown check {check!r}")
    return reports


def _cmd_verify(args) -> int:
    spec = _build_spec(args)
    reports = _verify_reports(args, spec)
    fmt = (args.format or "json").lower()
    if fmt == "csv":
        text = reports_to_csv(reports)
    else:
        text = serialize_reports_json(reports, _run_config(args, spec))
    _emit(text, args)

    if args.figures:
        from .figures import render_report_figure

        path = render_report_figure(reports, _figure_path(args))
        print(f"figure written to {path}", file=sys.stderr)

    n_pass = sum(1 for r in reports if r.passed is True)
    n_fail = sum(1 for r in reports if r.passed is False)
    n_skip = sum(1 for r in reports if r.passed is None)
    print(f"{n_pass} pass, {n_fail} fail, {n_skip} inapplicable", file=sys.stderr)
    return EXIT_FAIL if n_fail else EXIT_OK


# --------------------------------------------------------------------------
# sweep


def _cmd_sweep(args) -> int:
    spec = _build_spec(args)
    check = args.check or "thm2"
    if check not in ("thm1", "thm2"):
        raise DomainError("sweep supports --check thm1 or thm2")
    body_specs = [b.strip() for b in (args.body or "ball").split("|") if b.strip()]
    ns = _ints(args.n) if args.n is not None else [3]
    qs = _floats(args.q) if args.q is not None else [0.0, 0.5, 1.5]
    dovr = float(args.dovr) if args.dovr is not None else None
    c = float(args.c) if args.c is not None else 0.05

    cells = []
    for n in ns:
        for spec_text in body_specs:
            K = scale_to_volume_one(body_from_spec(spec_text, n))
            f = _unit_mass(density_from_spec(args.density or "uniform"), K, spec)
            closed_ok = _has_closed(K, f)
            kept = _filter_orders(qs, closed_ok)
            for q in kept:
                cells.append((n, K, f, q))
    if not cells:
        raise DomainError("sweep grid is empty after the odd-integer filter")

    reports = []
    for n, K, f, q in cells:
        if check == "thm2":
            reports.append(check_theorem2(K, f, q, dovr, spec, None, args.analytic or "auto"))
        else:
            reports.append(check_theorem1(K, f, q, c, spec, None, args.analytic or "auto"))

    fmt = (args.format or "csv").lower()
    if fmt == "csv":
        text = reports_to_csv(reports)
    else:
        text = serialize_reports_json(reports, _run_config(args, spec))
    _emit(text, args)

    if args.figures:
        from .figures import render_value_figure

        xs = list(range(len(reports)))
        render_value_figure(xs, [r.margin for r in reports], _figure_path(args),
                            "cell index", title=f"{check} margins")
        print(f"figure written to {_figure_path(args)}", file=sys.stderr)

    n_fail = sum(1 for r in reports if r.passed is False)
    return EXIT_FAIL if n_fail else EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_common(parser):
    parser.add_argument("--config", help="flat key=value file; flags override it")
    parser.add_argument("--format", choices=["json", "csv"], default=None)
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--figures", action="store_const", const=True, default=None,
                        help="render a PNG next to the output")
    parser.add_argument("--seed", default=None, help="sphere-grid seed")
    parser.add_argument("--sphere-nodes", dest="sphere_nodes", default=None)
    parser.add_argument("--section-nodes", dest="section_nodes", default=None)
    parser.add_argument("--radial-nodes", dest="radial_nodes", default=None)
    parser.add_argument("--jacobi-nodes", dest="jacobi_nodes", default=None)
    parser.add_argument("--fd-step", dest="fd_step", default=None)
    parser.add_argument("--refine-rounds", dest="refine_rounds", default=None)
    parser.add_argument("--analytic", choices=["auto", "never", "always"], default=None,
                        help="closed-form section route policy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracradon",
        description="fractional section derivatives on convex bodies: compute, verify, sweep",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="single computations and small grids")
    comp.add_argument("subcommand", choices=["frac-deriv", "radon", "frac-radon", "max"])
    comp.add_argument("--fn", help="test function, e.g. exp-neg or ball-profile:n=4")
    comp.add_argument("--T", default=None, help="support override for --fn")
    comp.add_argument("--body", help="body spec, e.g. ball:r=1, ellipsoid:a=2,1,1, cube")
    comp.add_argument("--density", help="uniform | gaussian:sigma=s | poly:c=...")
    comp.add_argument("--n", default=None, help="ambient dimension")
    comp.add_argument("--q", default=None, help="comma list of orders")
    comp.add_argument("--t", default=None, help="comma list of section offsets")
    comp.add_argument("--xi", default=None, help="direction components, comma list")
    comp.add_argument("--nodes", default=None, help="direction-grid size for max")
    _add_common(comp)
    comp.set_defaults(func=_cmd_compute)

    ver = sub.add_parser("verify", help="run a named checker or the whole suite")
    ver.add_argument("check", choices=list(_CHECKS))
    ver.add_argument("--body", help="body spec (default ball)")
    ver.add_argument("--body2", help="second body, for mp-lemma (L) and thm3 (L)")
    ver.add_argument("--density", help="density spec (default uniform)")
    ver.add_argument("--density2", help="second density, for mp-lemma and thm3 (g)")
    ver.add_argument("--n", default=None, help="ambient dimension (default 3)")
    ver.add_argument("--q", default=None, help="comma list of orders (default 0.5)")
    ver.add_argument("--p", default=None, help="exponent for parseval (defaults to --q)")
    ver.add_argument("--dovr", default=None, help="distance-factor override")
    ver.add_argument("--c", default=None, help="direction-bound constant (thm1)")
    ver.add_argument("--lp-constant", dest="lp_constant", default=None)
    ver.add_argument("--nodes", default=None, help="direction-grid size")
    _add_common(ver)
    ver.set_defaults(func=_cmd_verify)

    sw = sub.add_parser("sweep", help="checker margins over a (body, n, q) grid")
    sw.add_argument("--check", choices=["thm1", "thm2"], default=None)
    sw.add_argument("--body", help="pipe-separated body specs, e.g. 'ball|cube'")
    sw.add_argument("--density", help="density spec applied to every cell")
    sw.add_argument("--n", default=None, help="comma list of dimensions")
    sw.add_argument("--q", default=None, help="comma list of orders")
    sw.add_argument("--dovr", default=None)
    sw.add_argument("--c", default=None)
    _add_common(sw)
    sw.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help; pass both through
        return int(exc.code or 0)

    try:
        if args.config:
            _merged(args, _parse_config_file(args.config))
        return args.func(args)
    except (DomainError, GuardBandError, PoleError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line interface.

Commands: catalog, eval, norm, becker, shear, render, verify.  Output is
deterministic for fixed inputs: JSON objects with fixed field order and
floats in shortest round-trip form, CSV with the documented header.

Exit codes: 0 success, 1 usage, 2 expression parse error, 3 domain
error, 4 numerical failure.  Every error path writes one machine
parsable JSON record {"code", "message", "at"?} to stderr.

Map specification (exactly one style per invocation):

  --map NAME            catalog map (K, L, S1, S2, K2, k, l, s, q2)
  --h EXPR --g EXPR     parts form: analytic part h and co-analytic g
  --h EXPR --omega EXPR dilatation form: the ``h`` expression is the
                        DERIVATIVE h' (the map is rebuilt with
                        h(0) = g(0) = 0), omega is the dilatation

The dilatation-form convention matches the JSON interchange emitted by
``shear``: a sheared map's analytic part has no closed form, so its
derivative phi'/(1 - e^{2i theta} omega) is what travels.
"""

import argparse
import cmath
import json
import math
import sys

import numpy as np

from . import expr as ex
from .errors import (
    BranchPointAtCenter,
    CenterMismatch,
    CriticalPoint,
    DegenerateJet,
    DilatationZeroNeedsQ,
    DivisionByZeroConstantTerm,
    DomainError,
    ExprSyntaxError,
    IllConditioned,
    NonFinite,
    ParameterOutOfRange,
    QMismatch,
    QuadratureFailure,
    ShearSingularity,
    StencilOutsideDomain,
    ToolkitError,
    UnknownCatalogName,
    UnknownIdentifier,
)
from .maps import (
    CATALOG_NAMES,
    HarmonicMap,
    catalog_map,
    map_from_json,
)
from .norms import SearchConfig, becker_check, becker_lhs, hyperbolic_sup
from .operators import (
    dbar_pre_schwarzian,
    jacobian,
    lemma1_schwarzian,
    mixed_laplacian_schwarzian,
    pre_schwarzian,
    schwarzian,
    schwarzian_via_jacobian_fd,
    tamanoi_schwarzian,
)
from .operators import cdo_schwarzian

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3, 4

_ERROR_CODES = (
    (ExprSyntaxError, EXIT_PARSE),
    (UnknownIdentifier, EXIT_PARSE),
    (UnknownCatalogName, EXIT_USAGE),
    (ParameterOutOfRange, EXIT_USAGE),
    (DomainError, EXIT_DOMAIN),
    (ShearSingularity, EXIT_DOMAIN),
    (CriticalPoint, EXIT_DOMAIN),
    (DilatationZeroNeedsQ, EXIT_DOMAIN),
    (QMismatch, EXIT_DOMAIN),
    (BranchPointAtCenter, EXIT_DOMAIN),
    (DegenerateJet, EXIT_DOMAIN),
    (DivisionByZeroConstantTerm, EXIT_DOMAIN),
    (StencilOutsideDomain, EXIT_DOMAIN),
    (QuadratureFailure, EXIT_NUMERIC),
    (IllConditioned, EXIT_NUMERIC),
    (NonFinite, EXIT_NUMERIC),
    (CenterMismatch, EXIT_NUMERIC),
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit_error(code, message, at=None):
    record = {"code": code, "message": str(message)}
    if at is not None:
        record["at"] = at
    print(json.dumps(record), file=sys.stderr)
    return code


def _classify(exc):
    for etype, code in _ERROR_CODES:
        if isinstance(exc, etype):
            return code
    return EXIT_NUMERIC


def _parse_point(text):
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError:
        raise _UsageError(f"point {text!r} is not of the form 're,im'")


def _load_map(args):
    styles = sum([args.map is not None,
                  args.h is not None and args.g is not None,
                  args.h is not None and args.omega is not None])
    if args.map is not None and (args.h or args.g or args.omega):
        raise _UsageError("--map cannot be combined with --h/--g/--omega")
    if styles != 1:
        raise _UsageError(
            "specify exactly one map style: --map NAME, --h/--g, or --h/--omega")
    if args.map is not None:
        return catalog_map(args.map)
    if args.g is not None:
        return HarmonicMap.from_parts(
            ex.ExprFunction(args.h), ex.ExprFunction(args.g),
            label="cli", sources=(("h", args.h), ("g", args.g)))
    return HarmonicMap.from_dilatation(
        ex.ExprFunction(args.h), ex.ExprFunction(args.omega),
        h0=0.0, label="cli", sources=(("h", args.h), ("omega", args.omega)))


def _add_map_flags(p):
    p.add_argument("--map", help="catalog map name "
                   f"({', '.join(CATALOG_NAMES)})")
    p.add_argument("--h", help="analytic part h (with --g) or its "
                   "derivative h' (with --omega)")
    p.add_argument("--g", help="co-analytic part g (parts form)")
    p.add_argument("--omega", help="dilatation omega (dilatation form)")


def _add_search_flags(p):
    p.add_argument("--rays", type=int, default=256)
    p.add_argument("--radial", type=int, default=128,
                   help="radial samples of the polar grid")
    p.add_argument("--rmax", type=float, default=1.0 - 1e-6)
    p.add_argument("--no-refine", action="store_true",
                   help="skip Nelder-Mead refinement of the grid maximum")
    p.add_argument("--refine-iterations", type=int, default=60)


def _search_config(args):
    return SearchConfig(rays=args.rays, radial_samples=args.radial,
                        rmax=args.rmax, refine=not args.no_refine,
                        refine_iterations=args.refine_iterations)


def _jsonpair(v):
    v = complex(v)
    return [v.real, v.imag]


# ---------------------------------------------------------------------------
# symbolic d/dz on the expression grammar (serialization plumbing for
# shear: h' = phi'/(1 - e^{2i theta} omega) must travel as expression
# text, so phi' is differentiated at the AST level here)


def _ddz(node):
    if isinstance(node, ex.Const):
        return ex.Const(0j)
    if isinstance(node, ex.Var):
        return ex.Const(1 + 0j)
    if isinstance(node, ex.Neg):
        return ex.Neg(_ddz(node.operand))
    if isinstance(node, ex.Add):
        return ex.Add(_ddz(node.left), _ddz(node.right))
    if isinstance(node, ex.Sub):
        return ex.Sub(_ddz(node.left), _ddz(node.right))
    if isinstance(node, ex.Mul):
        return ex.Add(ex.Mul(_ddz(node.left), node.right),
                      ex.Mul(node.left, _ddz(node.right)))
    if isinstance(node, ex.Div):
        return ex.Div(
            ex.Sub(ex.Mul(_ddz(node.left), node.right),
                   ex.Mul(node.left, _ddz(node.right))),
            ex.Pow(node.right, ex.Const(2 + 0j)))
    if isinstance(node, ex.Pow):
        n = ex.integer_exponent(node.exponent)
        if n is not None:
            return ex.Mul(
                ex.Mul(ex.Const(complex(n)), ex.Pow(node.base, ex.Const(complex(n - 1)))),
                _ddz(node.base))
        # b^e = exp(e log b): derivative b^e * (e' log b + e b'/b)
        return ex.Mul(
            ex.Pow(node.base, node.exponent),
            ex.Add(ex.Mul(_ddz(node.exponent), ex.Call("log", node.base)),
                   ex.Mul(node.exponent, ex.Div(_ddz(node.base), node.base))))
    if isinstance(node, ex.Call):
        darg = _ddz(node.arg)
        if node.fn == "log":
            return ex.Div(darg, node.arg)
        if node.fn == "exp":
            return ex.Mul(ex.Call("exp", node.arg), darg)
        if node.fn == "sqrt":
            return ex.Div(darg, ex.Mul(ex.Const(2 + 0j), ex.Call("sqrt", node.arg)))
    raise TypeError(f"cannot differentiate node {node!r}")


# ---------------------------------------------------------------------------
# commands


def _cmd_catalog(args):
    if args.name is None:
        print(json.dumps({"names": list(CATALOG_NAMES)}))
        return EXIT_OK
    from .maps import map_to_json
    print(json.dumps(map_to_json(catalog_map(args.name))))
    return EXIT_OK


_EVAL_OPS = {
    "pre": pre_schwarzian,
    "schw": schwarzian,
    "cdo": None,  # handled separately (optional --q)
    "jac": jacobian,
    "dbarpre": dbar_pre_schwarzian,
    "lap": mixed_laplacian_schwarzian,
}


def _cmd_eval(args):
    f = _load_map(args)
    q = ex.ExprFunction(args.q) if args.q else None
    points = [_parse_point(t) for t in args.at]
    records = []
    for z in points:
        if abs(z) >= 1.0:
            raise DomainError("evaluation point outside the unit disk", at=z)
        if args.op == "cdo":
            val = cdo_schwarzian(f, z, q=q)
        else:
            val = _EVAL_OPS[args.op](f, z)
        records.append({"z": _jsonpair(z), "op": args.op,
                        "value": _jsonpair(val)})
    if args.format == "csv":
        print("re_z,im_z,op,re_value,im_value")
        for r in records:
            print(f"{r['z'][0]!r},{r['z'][1]!r},{r['op']},"
                  f"{r['value'][0]!r},{r['value'][1]!r}")
    else:
        for r in records:
            print(json.dumps(r))
    return EXIT_OK


def _cmd_norm(args):
    f = _load_map(args)
    report = hyperbolic_sup(f, args.op, _search_config(args))
    print(json.dumps(report.to_json()))
    return EXIT_OK


def _cmd_becker(args):
    f = _load_map(args)
    report = becker_check(f, _search_config(args))
    print(json.dumps(report.to_json()))
    return EXIT_OK


def _cmd_shear(args):
    if not math.isfinite(args.theta):
        raise _UsageError("--theta must be finite (radians)")
    phi_ast = ex.parse(args.phi)
    omega_ast = ex.parse(args.omega)
    cis = cmath.exp(2j * args.theta)
    hp_ast = ex.Div(_ddz(phi_ast),
                    ex.Sub(ex.Const(1 + 0j), ex.Mul(ex.Const(cis), omega_ast)))
    hp_src = ex.to_text(hp_ast)
    omega_src = ex.to_text(omega_ast)
    # smoke-check evaluability at the origin before emitting
    spec = {"label": f"shear(theta={args.theta!r})", "form": "dilatation",
            "h": hp_src, "omega": omega_src, "sense": "preserving"}
    map_from_json(spec).derivative_data(0.0)
    print(json.dumps(spec))
    return EXIT_OK


def _cmd_render(args):
    f = _load_map(args)
    if args.rays <= 0 or args.circles <= 0 or not 0 < args.rmax < 1:
        raise _UsageError("render grid parameters must be positive, rmax in (0,1)")
    radii = args.rmax * (np.arange(args.circles) + 1) / args.circles
    angles = 2.0 * np.pi * np.arange(args.rays) / args.rays
    zs = (radii[:, None] * np.exp(1j * angles)[None, :]).reshape(-1)
    vals = f.values(zs)
    print("re_z,im_z,re_f,im_f")
    for z, v in zip(zs, vals):
        print(f"{float(z.real)!r},{float(z.imag)!r},"
              f"{float(v.real)!r},{float(v.imag)!r}")
    return EXIT_OK


# -- verify suites -----------------------------------------------------------

_VERIFY_POINTS = [0.1 + 0.2j, -0.3 + 0.1j, 0.25 - 0.35j]


def _suite_oracles():
    details = []
    for name in ("K", "L", "S1", "S2", "K2"):
        f = catalog_map(name)
        for z in _VERIFY_POINTS:
            s = schwarzian(f, z)
            checks = [
                ("lemma1", abs(s - lemma1_schwarzian(f, z)), 1e-10),
                ("jacobian-fd", abs(s - schwarzian_via_jacobian_fd(f, z)), 1e-5),
                ("tamanoi", abs(s - tamanoi_schwarzian(f, z)), 1e-6),
            ]
            for oracle, err, tol in checks:
                details.append({
                    "name": f"oracle {oracle} {name} at {z}",
                    "passed": bool(err <= tol),
                    "error": float(err), "tol": tol,
                })
    return details


def _suite_invariance():
    from .maps import AffineMap, affine_compose, conjugate, disk_automorphism, precompose
    details = []
    affines = [AffineMap(1.2 - 0.3j, 0.4 + 0.2j, 2.0 + 1.0j),
               AffineMap(0.5j, 0.9, -1.0)]
    for name in ("K", "S2"):
        f = catalog_map(name)
        g = conjugate(f)
        for z in _VERIFY_POINTS:
            err = abs(schwarzian(f, z) - schwarzian(g, z)) + \
                abs(pre_schwarzian(f, z) - pre_schwarzian(g, z))
            details.append({"name": f"conjugation invariance {name} at {z}",
                            "passed": bool(err <= 1e-12), "error": float(err),
                            "tol": 1e-12})
        for A in affines:
            F = affine_compose(A, f)
            err = max(abs(schwarzian(F, z) - schwarzian(f, z)) +
                      abs(pre_schwarzian(F, z) - pre_schwarzian(f, z))
                      for z in _VERIFY_POINTS)
            details.append({"name": f"affine invariance {name} A={A!r}",
                            "passed": bool(err <= 1e-10), "error": float(err),
                            "tol": 1e-10})
        phi = disk_automorphism(0.3 - 0.2j)
        F = precompose(f, phi)
        err = 0.0
        for z in _VERIFY_POINTS:
            phj = phi.jet(z, 3)
            lhs = schwarzian(F, z)
            rhs = schwarzian(f, complex(phj.value)) * complex(phj.coeffs[1]) ** 2 \
                + complex(6.0 * phj.coeffs[3] / phj.coeffs[1]
                          - 1.5 * (2.0 * phj.coeffs[2] / phj.coeffs[1]) ** 2)
            err = max(err, abs(lhs - rhs))
        details.append({"name": f"chain rule {name}", "passed": bool(err <= 1e-9),
                        "error": float(err), "tol": 1e-9})
    return details


def _suite_norms():
    targets = [("L", 1.5), ("S1", 2.5), ("S2", 4.0), ("K", 9.5)]
    details = []
    for name, want in targets:
        rep = hyperbolic_sup(catalog_map(name), "S")
        details.append({"name": f"norm S {name}",
                        "passed": bool(abs(rep.value - want) <= 1e-6),
                        "value": rep.value, "want": want})
    rep = hyperbolic_sup(catalog_map("K2"), "S")
    details.append({"name": "norm S K2 (boundary)",
                    "passed": bool(rep.value >= 9.45 and rep.boundary_flag),
                    "value": rep.value, "want": 9.5})
    return details


def _suite_becker():
    details = []
    affine = HarmonicMap.from_parts(ex.ExprFunction("z"),
                                    ex.ExprFunction("0.5*z"), label="affine")
    rep = becker_check(affine)
    details.append({"name": "becker affine holds",
                    "passed": bool(rep.holds and abs(rep.worst_margin - 1.0) <= 1e-12),
                    "worst_margin": rep.worst_margin})
    koebe = catalog_map("k")
    rep = becker_check(koebe)
    lhs_half = float(becker_lhs(koebe, 0.5))
    details.append({"name": "becker koebe fails",
                    "passed": bool(not rep.holds and lhs_half > 1.0),
                    "worst_margin": rep.worst_margin,
                    "lhs_at_half": lhs_half})
    return details


_SUITES = {
    "oracles": _suite_oracles,
    "invariance": _suite_invariance,
    "norms": _suite_norms,
    "becker": _suite_becker,
}


def _cmd_verify(args):
    if args.suite == "all":
        details = []
        for fn in _SUITES.values():
            details.extend(fn())
    elif args.suite in _SUITES:
        details = _SUITES[args.suite]()
    else:
        print(json.dumps({"code": EXIT_USAGE,
                          "message": f"unknown suite {args.suite!r}"}),
              file=sys.stderr)
        return EXIT_USAGE
    passed = sum(1 for d in details if d["passed"])
    failed = len(details) - passed
    print(json.dumps({"suite": args.suite, "passed": passed,
                      "failed": failed, "details": details}))
    return EXIT_OK if failed == 0 else EXIT_NUMERIC


# ---------------------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="harmschwarz",
                     description="Schwarzian machinery for planar harmonic maps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog maps or emit one as JSON")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("eval", help="evaluate an operator at points")
    _add_map_flags(p)
    p.add_argument("--op", required=True, choices=list(_EVAL_OPS))
    p.add_argument("--at", action="append", required=True,
                   metavar="RE,IM", help="evaluation point (repeatable)")
    p.add_argument("--q", help="explicit square root of omega (cdo only)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("norm", help="hyperbolic sup-norm estimate")
    _add_map_flags(p)
    p.add_argument("--op", required=True, choices=("P", "S"))
    _add_search_flags(p)
    p.set_defaults(fn=_cmd_norm)

    p = sub.add_parser("becker", help="Becker-type univalence check")
    _add_map_flags(p)
    _add_search_flags(p)
    p.set_defaults(fn=_cmd_becker)

    p = sub.add_parser("shear", help="shear construction, emitted as map JSON")
    p.add_argument("--phi", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--theta", type=float, default=0.0, help="radians")
    p.set_defaults(fn=_cmd_shear)

    p = sub.add_parser("render", help="CSV image of the map on a polar grid")
    _add_map_flags(p)
    p.add_argument("--rays", type=int, default=64)
    p.add_argument("--circles", type=int, default=64)
    p.add_argument("--rmax", type=float, default=0.99)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("suite", help="oracles | invariance | norms | becker | all")
    p.set_defaults(fn=_cmd_verify)

    return parser


_EXPR_FLAGS = ("--h", "--g", "--omega", "--phi", "--q")


def _merge_dash_expressions(argv):
    """Join expression flags with values that start with '-' (e.g.
    ``--omega -z``), which argparse would otherwise read as options."""
    out = []
    i = 0
    known = {"--map", "--op", "--at", "--format", "--rays", "--radial",
             "--rmax", "--no-refine", "--refine-iterations", "--theta",
             "--circles", *_EXPR_FLAGS}
    while i < len(argv):
        tok = argv[i]
        if tok in _EXPR_FLAGS and i + 1 < len(argv):
            nxt = argv[i + 1]
            if nxt.startswith("-") and nxt not in known:
                out.append(f"{tok}={nxt}")
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_dash_expressions(list(argv))
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _emit_error(EXIT_USAGE, exc)
    try:
        return args.fn(args)
    except _UsageError as exc:
        return _emit_error(EXIT_USAGE, exc)
    except ToolkitError as exc:
        at = getattr(exc, "at", None)
        at_text = f"{complex(at).real},{complex(at).imag}" if at is not None else None
        return _emit_error(_classify(exc), exc, at=at_text)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error (invalid or
degenerate tetrahedron, wrong geometry, failed verification).
"""

import argparse
import json
import os
import sys

from .config import DEFAULT_TOLERANCES
from .errors import SchlaefliError, WrongGeometry
from .identities import IdentityReport
from .jacobian import jacobian_analytic, jacobian_fd, p_matrix, r_matrix
from .sampling import DEFAULT_RANGE, DEFAULT_SEED, SweepConfig, sweep
from .tetra import TetraLengths, curvature_map, dual, is_valid
from .triangle import Geometry
from .volume import volume_gradient_check, volume_schlaefli

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_tetra(path, geometry=None):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("input must be a JSON object with 'geometry' and 'lengths'")
    if geometry is not None:
        data = dict(data, geometry=geometry)
    try:
        return TetraLengths.from_dict(data)
    except KeyError as exc:
        raise UsageError(f"missing key {exc.args[0]!r} in input") from None
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad input: {exc}") from None


def _validated(x):
    report = is_valid(x.values, x.geometry)
    return {"valid": report.valid, "stage": report.stage, "reason": report.reason}


def cmd_solve(args):
    x = _load_tetra(args.input, args.geometry)
    diagnostics = _validated(x)
    out = dict(x.to_json(), diagnostics=diagnostics)
    if not diagnostics["valid"]:
        _emit(_dump(out), args.output)
        return EXIT_DOMAIN
    out["angles"] = curvature_map(x).to_dict()
    _emit(_dump(out), args.output)
    return EXIT_OK


def cmd_jacobian(args):
    x = _load_tetra(args.input, args.geometry)
    if args.r_matrix and x.geometry is Geometry.EUCLIDEAN:
        raise WrongGeometry("R-matrix requires curved geometry")
    jac = jacobian_analytic(x, mode=args.mode)
    matrices = {"jacobian": jac}
    extra = {}
    if args.p_matrix:
        matrices["p_matrix"] = p_matrix(x, jac)
    if args.r_matrix:
        matrices["r_matrix"] = r_matrix(x, jac)
        extra["condition"] = matrices["r_matrix"].condition
    if args.fd_check:
        fd = jacobian_fd(x, args.h)
        scale = max(1.0, float(abs(jac.matrix).max()))
        extra["fd_check"] = {"h": args.h,
                             "max_rel_error": float(abs(jac.matrix - fd.matrix).max()) / scale}
    if args.format == "csv":
        parts = [f"# {name}\n{m.to_csv()}" for name, m in matrices.items()]
        parts += [f"# {key}: {json.dumps(value)}\n" for key, value in extra.items()]
        _emit("".join(parts), args.output)
    else:
        out = dict(x.to_json(), mode=args.mode)
        out.update({name: m.to_json()["matrix"] for name, m in matrices.items()})
        out["edges"] = list(jac.to_json()["edges"])
        out.update(extra)
        _emit(_dump(out), args.output)
    return EXIT_OK


def _parse_range(text):
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--range must look like lo:hi, got {text!r}") from None
    return lo, hi


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SCHLAFLI_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SCHLAFLI_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def cmd_verify(args):
    lo, hi = _parse_range(args.range)
    tol = DEFAULT_TOLERANCES
    if args.tol is not None:
        tol = tol.with_(identity_p=args.tol, identity_r=args.tol, inverse=args.tol)
    for flag, field in (("tol_p", "identity_p"), ("tol_r", "identity_r"), ("tol_inv", "inverse")):
        value = getattr(args, flag)
        if value is not None:
            tol = tol.with_(**{field: value})
    try:
        config = SweepConfig(Geometry.coerce(args.geometry), args.samples, lo, hi, _seed(args),
                             tolerances=tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    families = ["angles"]
    if config.geometry is not Geometry.EUCLIDEAN and args.family in ("all", "lengths"):
        families.append("lengths")
    if args.family == "lengths":
        if config.geometry is Geometry.EUCLIDEAN:
            raise WrongGeometry("length-side identities require curved geometry")
        families = ["lengths"]
    reports = [sweep(config, family, workers=args.workers) for family in families]
    passed = all(r.passed for r in reports)
    out = {"geometry": config.geometry.name.lower(), "pass": passed,
           "reports": [r.to_json() for r in reports]}
    _emit(_dump(out), args.output)
    if not args.quiet:
        sys.stderr.write("\n\n".join(_table(r) for r in reports) + "\n")
    return EXIT_OK if passed else EXIT_DOMAIN


def _table(report: IdentityReport):
    lines = [report.table()]
    for name, info in report.metadata["worst_samples"].items():
        lines.append(f"  worst {name}: sample #{info['index']}")
    return "\n".join(lines)


def cmd_volume(args):
    x = _load_tetra(args.input, args.geometry)
    result = volume_schlaefli(x, args.steps)
    out = dict(x.to_json(), **result.to_json())
    code = EXIT_OK
    if args.check_gradient:
        check = volume_gradient_check(x, args.h)
        out["gradient_check"] = check.to_json()
        if not check.passed():
            code = EXIT_DOMAIN
    _emit(_dump(out), args.output)
    return code


def cmd_dual(args):
    x = _load_tetra(args.input, args.geometry)
    dual_x, dual_a = dual(x)
    out = dual_x.to_json()
    out["angles"] = dual_a.to_dict()
    _emit(_dump(out), args.output)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="schlaefli",
                     description="Dihedral angles, curvature-map Jacobians, symmetry checks and "
                                 "volumes of constant-curvature tetrahedra.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def single(name, helptext):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", help="tetrahedron JSON file, or - for stdin")
        p.add_argument("--geometry", choices=["spherical", "euclidean", "hyperbolic"],
                       help="override the geometry given in the file")
        p.add_argument("--output", help="write the result here instead of stdout")
        return p

    single("solve", "dihedral angles of one tetrahedron").set_defaults(func=cmd_solve)

    p = single("jacobian", "analytic Jacobian and normalized matrices")
    p.add_argument("--mode", choices=["direct", "minimal"], default="direct")
    p.add_argument("--fd-check", action="store_true",
                   help="compare with central differences and report the max relative error")
    p.add_argument("--h", type=float, default=1e-5, help="finite-difference step")
    p.add_argument("--p-matrix", action="store_true")
    p.add_argument("--r-matrix", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("verify", help="identity sweep over random tetrahedra")
    p.add_argument("--geometry", choices=["spherical", "euclidean", "hyperbolic"], required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--range", default=f"{DEFAULT_RANGE[0]}:{DEFAULT_RANGE[1]}",
                   help="edge-length sampling range lo:hi")
    p.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed (fallback: $SCHLAFLI_SEED, then {DEFAULT_SEED})")
    p.add_argument("--family", choices=["all", "angles", "lengths"], default="all")
    p.add_argument("--tol", type=float, help="set every identity tolerance at once")
    p.add_argument("--tol-p", type=float, help="tolerance for angle-side identities")
    p.add_argument("--tol-r", type=float, help="tolerance for length-side identities")
    p.add_argument("--tol-inv", type=float, help="tolerance for J J^-1 = I")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--output")
    p.add_argument("--quiet", action="store_true", help="suppress the table on stderr")
    p.set_defaults(func=cmd_verify)

    p = single("volume", "volume by integrating the Schlaefli form")
    p.add_argument("--steps", type=int, default=4096)
    p.add_argument("--check-gradient", action="store_true")
    p.add_argument("--h", type=float, default=1e-4)
    p.set_defaults(func=cmd_volume)

    single("dual", "polar dual of a spherical tetrahedron").set_defaults(func=cmd_dual)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"schlaefli: error: {exc}\n")
        return EXIT_USAGE
    except SchlaefliError as exc:
        sys.stderr.write(f"schlaefli: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

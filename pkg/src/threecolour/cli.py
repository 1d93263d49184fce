"""Command-line entry point: ``threecolour <subcommand> [flags]``.

Exit status is 0 on success, 1 when a check fails, 2 on a usage error.
Output goes to stdout unless --output names a file; figures from ``zeros``
and ``free-energy`` are written next to that file with a .png suffix.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analysis
from .boards import colour_counts, enumerate_boards, partition_polynomial
from .errors import ThreeColourError
from .families import P_poly, manifest, p_poly, p_tilde, qr_polys, y_poly
from .reconstruct import ENUMERATED_UP_TO, count_matrix, count_table, z3c_from_qr
from .suites import SUITES, run_suite
from .theta import (
    ThetaContext,
    closed_form_check,
    crossing_symmetry_check,
    cyclic_sum_check,
    determinant_check,
    gamma_check,
    identities_check,
    modular_constants,
    parse_complex,
    quasi_periodicity_check,
    random_sample,
    specialization_recursion_check,
    trigonometric_check,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
KINDS = ("p", "ptilde", "P", "q", "r", "y")
THETA_CHECKS = (
    "determinant",
    "gamma",
    "quasi-periodicity",
    "specialization",
    "crossing",
    "cyclic-sum",
    "modular",
    "closed-form",
    "trigonometric",
    "identities",
)


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _figure_path(args) -> str | None:
    if not args.output:
        return None
    return os.path.splitext(args.output)[0] + ".png"


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for {args.command}")
    return v


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    n = _need(args, "n")
    boards = list(enumerate_boards(n, force=args.force))
    if args.format == "csv":
        lines = ["board,k0,k1,k2"]
        for b in boards:
            k = colour_counts(b)
            lines.append("/".join("".join(map(str, r)) for r in b.grid) + f",{k[0]},{k[1]},{k[2]}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump({"n": n, "count": len(boards), "boards": [[list(r) for r in b.grid] for b in boards]}))
    return EXIT_OK


def cmd_count(args) -> int:
    n = _need(args, "n")
    table = count_table(n)
    if args.format == "csv":
        if n < 1:
            raise UsageError("the counting matrix needs n >= 1; use --format json")
        rows = count_matrix(table)
        _emit(args, "\n".join(",".join(map(str, r)) for r in rows) + "\n")
    else:
        obj = {
            "n": n,
            "source": "enumeration" if n <= ENUMERATED_UP_TO else "reconstruction",
            "total": str(table.total()),
            "matrix": [[str(v) for v in r] for r in count_matrix(table)] if n >= 1 else None,
            "counts": table.to_json_obj(),
        }
        _emit(args, _dump(obj))
    return EXIT_OK


def cmd_zpoly(args) -> int:
    n = _need(args, "n")
    Z = partition_polynomial(n) if args.source == "enumeration" else z3c_from_qr(n)
    terms = sorted(Z.terms.items())
    if args.format == "csv":
        lines = ["k0,k1,k2,coeff"] + [f"{k[0]},{k[1]},{k[2]},{v}" for k, v in terms]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump({"n": n, "source": args.source, "terms": [[list(k), str(v)] for k, v in terms]}))
    return EXIT_OK


def _family(kind: str, n: int):
    if kind == "p":
        return p_poly(n), "three-term recursion"
    if kind == "ptilde":
        return p_tilde(n), "coefficient reversal of p_n"
    if kind == "P":
        return P_poly(n), "three-term recursion"
    if kind == "y":
        return y_poly(n), "quadratic relation"
    q, r = qr_polys(n)
    return (q if kind == "q" else r), "substitution identity"


def cmd_family(args) -> int:
    n = _need(args, "n")
    poly, path = _family(args.kind, n)
    var = "x" if args.kind in ("q", "r") else "zeta"
    if args.format == "csv":
        if args.kind == "P":
            raise UsageError("P_n is bivariate; use --format json")
        lines = ["k,num,den"] + [f"{k},{c.numerator},{c.denominator}" for k, c in enumerate(poly.coeffs)]
        _emit(args, "\n".join(lines) + "\n")
        return EXIT_OK
    obj = {
        "kind": args.kind,
        "n": n,
        "poly": poly.to_json_obj() if args.kind == "P" else poly.to_json_obj(var),
        "text": None if args.kind == "P" else poly.pretty(var),
        "manifest": manifest(args.kind, n, poly, path),
    }
    _emit(args, _dump(obj))
    return EXIT_OK


def cmd_verify(args) -> int:
    nmax = args.nmax if args.nmax is not None else 6
    rows = run_suite(args.suite, nmax, args.seed, args.jobs)
    failed = sum(1 for r in rows if not r["pass"])
    if args.format == "csv":
        lines = ["suite,check,n,pass"] + [
            f"{r['suite']},{r['check']},{'' if r['n'] is None else r['n']},{int(r['pass'])}" for r in rows
        ]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump({"suite": args.suite, "nmax": nmax, "total": len(rows), "failed": failed, "results": rows}))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_zeros(args) -> int:
    n = _need(args, "n")
    rep = analysis.root_profile(n)
    _emit(args, rep.csv() if args.format == "csv" else _dump(rep.to_json_obj() | {"roots": rep.roots}))
    fig = _figure_path(args)
    if fig:
        from .plotting import zeros_figure

        zeros_figure(rep, fig)
    ok = rep.count_ok and rep.simple and rep.location_ok and rep.max_residual <= analysis.RESIDUAL_TOL
    return EXIT_OK if ok else EXIT_FAIL


def cmd_free_energy(args) -> int:
    zeta = _fraction(args.zeta or "1")
    nmax = args.nmax if args.nmax is not None else 16
    est = analysis.free_energy(zeta, nmax)
    obj = est.to_json_obj()
    if args.format == "csv":
        lines = ["n,f_n"] + [f"{i},{f:.17g}" for i, f in enumerate(est.f_sequence, start=1)]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump(obj))
    fig = _figure_path(args)
    if fig:
        from .plotting import free_energy_figure

        free_energy_figure(est, fig)
    tol = args.tol if args.tol is not None else 2e-2
    return EXIT_OK if est.abs_error <= tol else EXIT_FAIL


def cmd_theta_check(args) -> int:
    n = args.n if args.n is not None else 2
    seed = args.seed
    s = random_sample(n, seed)
    if args.p is not None or args.lam is not None:
        s = type(s)(
            seed,
            parse_complex(args.p) if args.p is not None else s.p,
            parse_complex(args.lam) if args.lam is not None else s.lam,
            s.xs,
            s.ys,
            s.gamma,
        )
    tol = {} if args.tol is None else {"tol": args.tol}
    ctx = ThetaContext(s.p, args.precision)
    name = args.check
    vertex = {
        "determinant": determinant_check,
        "gamma": gamma_check,
        "quasi-periodicity": quasi_periodicity_check,
        "specialization": specialization_recursion_check,
        "crossing": crossing_symmetry_check,
        "cyclic-sum": cyclic_sum_check,
    }
    if name in vertex:
        reports = [vertex[name](n, s, **tol)]
    elif name == "modular":
        mc = modular_constants(ctx)
        obj = {
            "check": "modular-identities",
            "params": {"p": str(s.p)},
            "zeta": str(complex(mc.zeta)),
            "eta": str(complex(mc.eta)),
            "tau": str(complex(mc.tau)),
            "residuals": mc.residuals,
            "pass": True,
        }
        _emit(args, _dump(obj))
        return EXIT_OK
    elif name == "closed-form":
        Z3 = z3c_from_qr(n)
        reports = [closed_form_check(n, s.lam, ctx, Z3, **tol), trigonometric_check(n, s.lam, Z3)]
    else:
        reports = [identities_check(ctx, seed, **tol)]
    objs = [r.to_json_obj() for r in reports]
    _emit(args, _dump(objs[0] if len(objs) == 1 else objs))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "zpoly": cmd_zpoly,
    "family": cmd_family,
    "verify": cmd_verify,
    "zeros": cmd_zeros,
    "free-energy": cmd_free_energy,
    "theta-check": cmd_theta_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="threecolour", description="Three-colour model with domain wall boundary.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, help="size parameter")
        p.add_argument("--nmax", type=int, help="largest size for scans")
        p.add_argument("--zeta", help="rational zeta, e.g. 1 or 3/2")
        p.add_argument("--p", help="nome as re,im")
        p.add_argument("--lambda", dest="lam", help="spectral parameter as re,im")
        p.add_argument("--tol", type=float, help="tolerance override")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--precision", default="double", help="double or bits:<k>")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker threads")
        return p

    common(sub.add_parser("enumerate", help="list every board")).add_argument(
        "--force", action="store_true", help="lift the size guard"
    )
    common(sub.add_parser("count", help="counting function N"))
    common(sub.add_parser("zpoly", help="partition polynomial")).add_argument(
        "--source", choices=("reconstruction", "enumeration"), default="reconstruction"
    )
    common(sub.add_parser("family", help="p, ptilde, P, q, r or y")).add_argument(
        "--kind", choices=KINDS, default="p"
    )
    common(sub.add_parser("verify", help="run verification suites")).add_argument(
        "--suite", choices=(*SUITES, "all"), default="all"
    )
    common(sub.add_parser("zeros", help="zeros of p_n"))
    common(sub.add_parser("free-energy", help="free-energy estimate"))
    common(sub.add_parser("theta-check", help="numeric elliptic checks")).add_argument(
        "--check", choices=THETA_CHECKS, default="determinant"
    )
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ThreeColourError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

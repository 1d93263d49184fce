"""Named verification suites behind ``threecolour verify``.

A suite maps (nmax, seed, jobs) to a list of flat result rows:
{"suite", "check", "n", "pass", "detail"}.  Each suite caps n at a size that
keeps it at desk scale, whatever nmax asks for.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from . import analysis, checks, reference
from .boards import counting_table, enumerate_boards, partition_polynomial
from .errors import IdentityViolation, ThreeColourError
from .families import P_poly, p_poly, qr_degrees, qr_polys
from .reconstruct import (
    Report,
    count_matrix,
    count_table,
    parity_symmetry_check,
    support_edges_check,
    symmetry_check,
    z3c_from_qr,
)
from .theta import (
    CheckReport,
    ThetaContext,
    _rand_c,
    closed_form_check,
    crossing_symmetry_check,
    cyclic_sum_check,
    determinant_check,
    gamma_check,
    identities_check,
    modular_constants,
    parametrization_check,
    quasi_periodicity_check,
    random_sample,
    run_parallel,
    small_nome_check,
    specialization_recursion_check,
    three_colour_check,
    trigonometric_check,
)

CAPS = {
    "oracle": 6,
    "enumeration": 7,
    "support": 9,
    "special-values": 16,
    "identities": 3,
    "vertex": 3,
    "closed-form": 5,
    "conjectures": 16,
    "roots": 12,
    "px": 8,
    "integrality": 16,
}
THETA_SAMPLES = 20
MODULAR_SAMPLES = 10


def row(suite: str, check: str, n, ok: bool, detail=None) -> dict:
    return {"suite": suite, "check": check, "n": n, "pass": bool(ok), "detail": detail or {}}


def _report(suite: str, r: Report) -> dict:
    return row(suite, r.check, r.n, r.passed, r.detail)


def _numeric(suite: str, r: CheckReport) -> dict:
    return row(
        suite,
        r.check,
        r.params.get("n"),
        r.passed,
        {"residual": r.residual, "tol": r.tol, "params": r.params},
    )


# ---------------------------------------------------------------------------


def suite_tables(nmax: int, seed: int, jobs: int) -> list[dict]:
    out = []
    for n in range(0, 8):
        out.append(row("tables", "q-r-table", n, qr_polys(n) == reference.qr_reference(n)))
    for n in range(0, 7):
        out.append(row("tables", "p-table", n, p_poly(n) == reference.p_reference(n)))
    for n in range(0, 5):
        out.append(row("tables", "P-table", n, P_poly(n) == reference.P_reference(n)))
    for n, want in reference.COUNT_MATRICES.items():
        out.append(row("tables", "count-matrix", n, count_matrix(counting_table(n)) == want))
    for n in range(1, min(nmax, CAPS["special-values"]) + 1):
        q, r = qr_polys(n)
        dq, dr = qr_degrees(n)
        ok = q.degree() == dq and r.degree() == dr
        ok = ok and all(f.is_zero() or f.lead() == 1 for f in (q, r))
        out.append(row("tables", "q-r-degrees-monic", n, ok, {"degrees": [q.degree(), r.degree()]}))
    return out


def suite_oracle(nmax: int, seed: int, jobs: int) -> list[dict]:
    out = []
    for n in range(1, min(nmax, CAPS["enumeration"]) + 1):
        got = sum(1 for _ in enumerate_boards(n))
        out.append(row("oracle", "enumeration-count", n, got == reference.ASM_COUNTS[n - 1], {"count": got}))
    for n in range(0, min(nmax, CAPS["oracle"]) + 1):
        out.append(row("oracle", "reconstruction-vs-enumeration", n, z3c_from_qr(n) == partition_polynomial(n)))
    for n in range(1, min(max(nmax, 1), CAPS["support"]) + 1):
        table = count_table(n)
        out.append(_report("oracle", support_edges_check(n, table)))
        if n % 2:
            out.append(_report("oracle", parity_symmetry_check(n, table)))
        out.append(_report("oracle", symmetry_check(n)))
    return out


def suite_special_values(nmax: int, seed: int, jobs: int) -> list[dict]:
    top = min(nmax, CAPS["special-values"])
    out = [_report("special-values", checks.special_values_check(n)) for n in range(0, top + 1)]
    out += [_report("special-values", checks.linear_coefficient_check(n, "fitted")) for n in range(1, top + 1)]
    small = min(top, 8)
    for n in range(0, small + 1):
        out.append(_report("special-values", checks.special_zeta_check(n)))
        out.append(_report("special-values", checks.coefficient_structure_check(n)))
        out.append(_report("special-values", checks.reflection_check(n)))
    for n in range(1, small + 1):
        out.append(_report("special-values", checks.hypergeometric_check(n)))
    for n in range(0, min(top, 3) + 1):
        out.append(_report("special-values", checks.specialization_check(n, seed)))
        out.append(_report("special-values", checks.minus_two_limits_check(n)))
    return out


def suite_identities(nmax: int, seed: int, jobs: int) -> list[dict]:
    top = min(nmax, CAPS["identities"])
    jobs_list = [(name, n) for name in checks.IDENTITIES for n in range(1, top + 1)]
    reports = run_parallel(lambda t: checks.identity_check(t[0], t[1], seed), jobs_list, jobs)
    out = [_report("identities", r) for r in reports]
    out += [_report("identities", checks.inversion_check(n, seed)) for n in range(1, top + 1)]
    return out


def _nome(rng: random.Random, pmax: float) -> complex:
    return _rand_c(rng, 0.02, pmax)


def suite_theta(nmax: int, seed: int, jobs: int) -> list[dict]:
    out = []
    vertex = (
        determinant_check,
        gamma_check,
        quasi_periodicity_check,
        specialization_recursion_check,
        crossing_symmetry_check,
        cyclic_sum_check,
    )
    items = [(n, k) for n in range(1, min(nmax, CAPS["vertex"]) + 1) for k in range(THETA_SAMPLES)]

    def run_vertex(item):
        n, k = item
        s = random_sample(n, seed * 1000 + k)
        return [fn(n, s) for fn in vertex if not (fn is specialization_recursion_check and n < 2)]

    for reports in run_parallel(run_vertex, items, jobs):
        out += [_numeric("theta", r) for r in reports]

    rng = random.Random(f"modular:{seed}")
    for _ in range(MODULAR_SAMPLES):
        ctx = ThetaContext(_nome(rng, 0.3))
        try:
            mc = modular_constants(ctx)
            out.append(row("theta", "modular-identities", None, True, {"p": str(ctx.p), **mc.residuals}))
        except IdentityViolation as exc:
            out.append(row("theta", "modular-identities", None, False, {"p": str(ctx.p), "residual": exc.residual}))
        out.append(_numeric("theta", identities_check(ctx, rng.randrange(10**6))))

    rng = random.Random(f"closed-form:{seed}")
    for n in range(1, min(nmax, CAPS["closed-form"]) + 1):
        Z3 = z3c_from_qr(n)
        lam = _rand_c(rng, 0.5, 1.5)
        ctx = ThetaContext(_nome(rng, 0.2))
        out.append(_numeric("theta", closed_form_check(n, lam, ctx, Z3)))
        out.append(_numeric("theta", trigonometric_check(n, lam, Z3)))
        out.append(_numeric("theta", small_nome_check(n, lam)))
        if n <= CAPS["vertex"]:
            out.append(_numeric("theta", three_colour_check(n, lam, ctx, Z3)))
    ctx = ThetaContext(_nome(rng, 0.2))
    out.append(_numeric("theta", parametrization_check(ctx, [_rand_c(rng, 0.5, 1.5) for _ in range(3)])))
    return out


def suite_conjectures(nmax: int, seed: int, jobs: int) -> list[dict]:
    out = []
    for r in analysis.conjecture_scan(min(nmax, CAPS["conjectures"]), jobs):
        ok = r["positive"] and r["unimodal"] and r["argmax_ok"] is not False
        out.append(row("conjectures", "positive-unimodal", r["n"], ok, r))
    top = min(nmax, CAPS["roots"])
    for n in range(1, top + 1):
        rp = analysis.root_profile(n)
        ok = rp.count_ok and rp.simple and rp.location_ok and rp.max_residual <= analysis.RESIDUAL_TOL
        out.append(row("conjectures", "real-zeros", n, ok, rp.to_json_obj()))
    for r in analysis.interlacing_scan(top, jobs):
        ok = r["p_even_vs_reversed"] and r["reversed_vs_next"] and r["next_below_minus_two"]
        out.append(row("conjectures", "zero-interlacing", 2 * r["m"] + 2, ok, r))
    for z in (Fraction(-3, 2), Fraction(-3, 4)):
        rep = analysis.px_interlacing(z, min(nmax, CAPS["px"]))
        ok = all(all(v for k, v in r.items() if k != "n") for r in rep["rows"])
        out.append(row("conjectures", "P-zeros-in-x", None, ok, rep))
    for r in analysis.second_coefficient_scan(min(nmax, CAPS["conjectures"])):
        out.append(row("conjectures", "second-coefficient", r["n"], r["match"], r))
    return out


def suite_integrality(nmax: int, seed: int, jobs: int) -> list[dict]:
    out = []
    for r in analysis.integrality_report(min(nmax, CAPS["integrality"]), jobs):
        ok = all(v for k, v in r.items() if k not in ("n", "mu_bound_violations"))
        out.append(row("integrality", "integrality", r["n"], ok, r))
    return out


def suite_free_energy(nmax: int, seed: int, jobs: int) -> list[dict]:
    est = analysis.free_energy(1, 16)
    target = 1.5 * math.log(3) - 1.75 * math.log(2)
    out = [
        row(
            "free-energy",
            "extrapolation",
            16,
            abs(est.extrapolated - target) <= 2e-2,
            est.to_json_obj() | {"target": target},
        )
    ]
    w1 = analysis.w_dwbc(1.0)
    out.append(row("free-energy", "w-at-one", None, abs(w1 - 3 * math.sqrt(3) / 4) <= 1e-12, {"value": w1}))
    rng = random.Random(f"free-energy:{seed}")
    for z in [2.0] + [rng.uniform(0.05, 20) for _ in range(4)]:
        rec = abs(analysis.w_dwbc(z) - analysis.w_dwbc(1 / z)) / analysis.w_dwbc(z)
        out.append(row("free-energy", "w-reciprocal", None, rec <= 1e-12, {"zeta": z, "residual": rec}))
        rel = analysis.w_relation_residual(z)
        out.append(row("free-energy", "w-periodic-relation", None, rel <= 1e-12, {"zeta": z, "residual": rel}))
    return out


SUITES = {
    "tables": suite_tables,
    "oracle": suite_oracle,
    "special-values": suite_special_values,
    "identities": suite_identities,
    "theta": suite_theta,
    "conjectures": suite_conjectures,
    "integrality": suite_integrality,
    "free-energy": suite_free_energy,
}


def run_suite(name: str, nmax: int, seed: int = 0, jobs: int = 1) -> list[dict]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for s in names:
        try:
            out += SUITES[s](nmax, seed, jobs)
        except ThreeColourError as exc:
            out.append(row(s, "suite-error", None, False, {"error": f"{type(exc).__name__}: {exc}"}))
    return out

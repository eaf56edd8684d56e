"""Command-line front end.

Exit status: 0 pass, 1 a checked verdict is false (or a precondition such as
"not m-primary" fails), 2 usage or parse error, 3 a size guard refused to run.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from .errors import GuardExceeded, ParseError, PreconditionError, ReesError, UnsupportedError
from .gb import is_m_primary
from .iclose import (
    GradedTarget,
    MonomialIdeal,
    check_certificate,
    closure_equal,
    lift_certificate,
    newton_closure,
)
from .instance import Instance, load_instance
from .modalg import (
    check_detadj,
    minors_ideal_of_sym_power,
    module_minors,
    normalize_basis,
    sym_power,
    t1_coefficient_check,
)
from .theorems import check_bv, check_fingen_window, rees_gap

SCHEMA_VERSION = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _s(p) -> str:
    return str(p)


def _need(inst: Instance, what: str):
    value = getattr(inst, what)
    if value is None:
        raise ParseError(f"this subcommand needs a {what!r} block in the instance")
    return value


def _param(inst: Instance, name: str, default=None, minimum=None):
    value = inst.params.get(name, default)
    if value is None:
        raise ParseError(f"missing parameter {name!r} (instance params or --{name})")
    if not isinstance(value, int) or isinstance(value, bool) or (minimum is not None and value < minimum):
        raise ParseError(f"parameter {name!r} must be an integer >= {minimum}")
    return value


def _ideal_of(inst: Instance, guards):
    """The instance ideal, or I(M) when only a module is given."""
    if inst.ideal is not None:
        return inst.ideal, "ideal"
    if inst.module is not None:
        return module_minors(inst.module, guards), "I(M)"
    raise ParseError("this subcommand needs an 'ideal' or 'module' block")


# -- handlers: each returns (passed, results, text lines) -------------------


def cmd_sym_power(inst, guards):
    M = _need(inst, "module")
    n = _param(inst, "n", minimum=1)
    piece = sym_power(M, n, guards)
    gens = [_s(f) for f in piece.forms()]
    basis = [_s(M.ring.monomial((0,) * M.ring.s + e)) for e in piece.basis.monomials]
    results = {"n": n, "basis": basis, "generators": gens, "labels": list(piece.labels)}
    lines = [f"S_{n}(M): {len(gens)} generators in a basis of {len(basis)} monomials"] + [
        f"  {lab}: {g}" for lab, g in zip(piece.labels, gens)
    ]
    return True, results, lines


def cmd_minors(inst, guards):
    M = _need(inst, "module")
    n = inst.params.get("n")
    if n is None:
        ideal = module_minors(M, guards)
        size = M.r
    else:
        n = _param(inst, "n", minimum=1)
        ideal = minors_ideal_of_sym_power(M, n, guards)
        size = len(sym_power(M, n, guards).basis)
    gens = [_s(g) for g in ideal.polys]
    results = {"n": n, "minor_size": size, "generators": gens, "monomial": ideal.is_zero() or ideal.is_monomial()}
    note = None
    if ideal.is_zero():
        note = "fewer independent columns than rows: zero ideal by convention"
        results["note"] = note
    label = "I(M)" if n is None else f"I(S_{n}(M))"
    lines = [f"{label} = (" + ", ".join(gens) + ")"] + ([f"note: {note}"] if note else [])
    return True, results, lines


def cmd_detadj(inst, guards):
    M = _need(inst, "module")
    n = _param(inst, "n", default=1, minimum=1)
    rep = check_detadj(M, n, guards)
    checks = [{"g": _s(g), "Z": _s(Z), "member": v} for g, Z, v in rep.checks]
    results = {"n": n, "minors": [_s(g) for g in rep.minors], "checks": checks}
    if rep.note:
        results["note"] = rep.note
    lines = [f"I(S_{n}(M)) * S_{n}(F) inside S_{n}(M): {sum(c['member'] for c in checks)}/{len(checks)} pairs"]
    lines += [f"  {'ok  ' if c['member'] else 'FAIL'} {c['g']} * {c['Z']}" for c in checks if not c["member"]]
    return rep.passed, results, lines


def _monomial(I, what):
    return MonomialIdeal.from_ideal(I)


def cmd_closure(inst, guards):
    I, src = _ideal_of(inst, guards)
    mono = _monomial(I, src)
    if mono.is_zero():
        raise PreconditionError("closure of the zero ideal is not computed")
    closure = newton_closure(mono, guards)
    gens = [_s(p) for p in closure.polys()]
    results = {"ideal": [_s(p) for p in mono.polys()], "closure": gens}
    return True, results, [", ".join(gens)]


def cmd_closure_equal(inst, guards):
    I = _monomial(_need(inst, "ideal"), "ideal")
    J = _monomial(_need(inst, "compare_ideal"), "compare_ideal")
    equal = closure_equal(I, J)
    results = {"ideal": [_s(p) for p in I.polys()], "compare_ideal": [_s(p) for p in J.polys()], "equal": equal}
    return equal, results, [f"{I} and {J} have {'equal' if equal else 'different'} integral closures"]


def _cert_results(cert, check):
    target = cert.target
    if isinstance(target, GradedTarget):
        tdesc = {"kind": "module", "n": target.n}
    else:
        tdesc = {"kind": "ideal", "generators": [_s(g) for g in target.ideal.polys]}
    return {
        "subject": _s(cert.subject),
        "p": cert.p,
        "coefficients": [_s(a) for a in cert.coefficients],
        "target": tdesc,
        "relation_zero": check.relation_zero,
        "memberships": check.memberships,
    }


def cmd_verify_cert(inst, guards):
    record = _need(inst, "certificate")
    cert = inst.build_certificate(record, guards)
    check = check_certificate(cert, guards)
    results = _cert_results(cert, check)
    lines = [
        f"relation vanishes: {check.relation_zero}",
        *(f"  a_{j} = {a} meets target: {ok}" for j, (a, ok) in enumerate(zip(results['coefficients'], check.memberships), 1)),
    ]
    return check.passed, results, lines


def cmd_lift_cert(inst, guards):
    M = _need(inst, "module")
    record = _need(inst, "certificate")
    if record.target.get("kind") != "minors":
        raise ParseError("lift-cert needs a certificate with target kind 'minors'")
    if record.Z is None:
        raise ParseError("lift-cert needs certificate.Z (a degree-n T-monomial)")
    n = record.target["n"] if isinstance(record.target.get("n"), int) else None
    cert = inst.build_certificate(record, guards)
    Z = inst.parse_poly(record.Z, M.ring, "certificate.Z")
    lifted = lift_certificate(cert, Z, M, n, guards)
    check = check_certificate(lifted, guards)
    results = {"input": _cert_results(cert, check_certificate(cert, guards)), "lifted": _cert_results(lifted, check)}
    lines = [f"lifted subject {lifted.subject}"] + [
        f"  a_{j} Z^{j} = {a} in S_{j * n}(M): {ok}"
        for j, (a, ok) in enumerate(zip(lifted.coefficients, check.memberships), 1)
    ] + [f"relation vanishes: {check.relation_zero}"]
    return check.passed, results, lines


def _matrix_strings(M):
    return [[_s(e) for e in row] for row in M.matrix]


def cmd_normalize(inst, guards):
    M = _need(inst, "module")
    nb = normalize_basis(M, guards)
    results = {
        "survivor": nb.survivor + 1,
        "change_of_basis": [[_s(c) for c in row] for row in nb.change_of_basis],
        "dual": [[_s(c) for c in row] for row in nb.dual],
        "transformed_matrix": _matrix_strings(nb.transformed),
        "transformed_generators": [_s(f) for f in nb.transformed.forms()],
        "enlarged_generators": [_s(f) for f in nb.enlarged.forms()],
        "first_row_in_m": nb.first_row_in_m,
        "enlarged_quotient_length": nb.quotient_length,
        "unit_determinant": nb.unit_determinant,
    }
    lines = [
        f"new first basis vector from residue direction T{nb.survivor + 1}",
        "transformed generators: " + ", ".join(results["transformed_generators"]),
        f"T'_1 coefficients in m: {nb.first_row_in_m}; length F/M'' = {nb.quotient_length}",
    ]
    return nb.verified, results, lines


def cmd_t1_check(inst, guards):
    M = _need(inst, "module")
    n = _param(inst, "n", minimum=1)
    k = _param(inst, "k", default=0, minimum=0)
    nb = normalize_basis(M, guards)
    rep = t1_coefficient_check(nb.transformed, n, k, guards)
    results = {
        "n": n,
        "k": k,
        "transformed_generators": [_s(f) for f in nb.transformed.forms()],
        "coefficients": [_s(c) for c in rep.coefficients],
        "verdicts": rep.verdicts,
    }
    lines = [f"T'_1^{n} coefficients of S_{n - k}(M)S_{k}(F) in m^{n - k}: {sum(rep.verdicts)}/{len(rep.verdicts)}"]
    return rep.passed, results, lines


def cmd_fingen(inst, guards):
    M = _need(inst, "module")
    k = _param(inst, "k", default=0, minimum=0)
    N = _param(inst, "N", minimum=k)
    extras = inst.build_extras(guards)
    rep = check_fingen_window(M, extras, k, N, guards)
    results = {
        "k": k,
        "N": N,
        "extras": [{"degree": e.degree, "element": _s(e.element)} for e in extras],
        "verdicts": {str(n): v for n, v in sorted(rep.verdicts.items())},
        "products_tested": {str(n): c for n, c in sorted(rep.products_tested.items())},
        "failures": [{"n": n, "product": lab, "element": _s(p)} for n, lab, p in rep.failures],
    }
    if rep.generator_set is not None:
        results["generator_set"] = [_s(g) for g in rep.generator_set]
    lines = [f"degree {n}: {'ok' if v else 'FAIL'}" for n, v in sorted(rep.verdicts.items())]
    lines += [f"  not in S_{n - k}(M)S_{k}(F): {lab} = {p}" for n, lab, p in rep.failures]
    return rep.passed, results, lines


def cmd_bv(inst, guards):
    M = _need(inst, "module")
    n = _param(inst, "n", minimum=1)
    rep = check_bv(M, n, guards)
    results = {
        "n": n,
        "r": rep.r,
        "exponent": rep.exponent,
        "minors_of_module": [_s(p) for p in rep.minors_of_module.polys()],
        "minors_of_power": [_s(p) for p in rep.minors_of_power.polys()],
        "power_of_minors": [_s(p) for p in rep.power_of_minors.polys()],
        "equal_up_to_closure": rep.equal,
        "literally_equal": rep.literally_equal,
    }
    lines = [
        f"I(S_{n}(M)) = {rep.minors_of_power}",
        f"I(M)^{rep.exponent} = {rep.power_of_minors}",
        f"equal up to integral closure: {rep.equal}",
    ]
    return rep.passed, results, lines


def cmd_gap(inst, guards):
    I, src = _ideal_of(inst, guards)
    r = inst.module.r if (src == "I(M)") else 1
    k = _param(inst, "k", default=0, minimum=0)
    N = _param(inst, "N", minimum=0)
    sharp = bool(inst.params.get("sharp", False))
    mono = _monomial(I, src)
    rep = rees_gap(mono, k, N, r=r, sharp=sharp, guards=guards)
    rows = [{"n": row.n, "m": row.m, "holds": row.verdict, **({"sharp": row.sharp} if sharp else {})} for row in rep.rows]
    results = {"ideal": [_s(p) for p in mono.polys()], "t": rep.t, "k": k, "r": r, "rows": rows}
    lines = [f"{src} = {mono}, m^{rep.t} inside it; staircase n(m) = m*{rep.t} + {k}, r = {r}"]
    lines += [
        f"  n={row.n}: closure(I^{row.n}) in I^{row.m}: {row.verdict}" + (f" (sharp {row.sharp})" if sharp else "")
        for row in rep.rows
    ]
    return rep.passed, results, lines


def cmd_primary(inst, guards):
    I, src = _ideal_of(inst, guards)
    ok, t = is_m_primary(I)
    results = {"source": src, "generators": [_s(p) for p in I.polys], "m_primary": ok, "t": t}
    line = f"{src} is m-primary with m^{t} inside it" if ok else f"{src} is not m-primary"
    return ok, results, [line]


COMMANDS: dict = {
    "sym-power": (cmd_sym_power, "generators of S_n(M) in S_n(F)"),
    "minors": (cmd_minors, "maximal minors ideal I(M) or I(S_n(M))"),
    "detadj": (cmd_detadj, "check I(S_n(M)) S_n(F) inside S_n(M)"),
    "closure": (cmd_closure, "integral closure of a monomial ideal"),
    "closure-equal": (cmd_closure_equal, "compare two monomial ideals up to integral closure"),
    "verify-cert": (cmd_verify_cert, "verify an integral-dependence certificate"),
    "lift-cert": (cmd_lift_cert, "lift a certificate over I(S_n(M)) to S(M)"),
    "normalize": (cmd_normalize, "basis with all T_1-coefficients in m"),
    "t1-check": (cmd_t1_check, "T_1^n coefficients of S_{n-k}(M)S_k(F) lie in m^{n-k}"),
    "fingen": (cmd_fingen, "degree window B_n inside S_{n-k}(M)S_k(F)"),
    "bv": (cmd_bv, "I(S_n(M)) vs I(M)^C(n+r-1,r) up to integral closure"),
    "gap": (cmd_gap, "Rees gap staircase closure(I^n) inside I^m(n)"),
    "primary": (cmd_primary, "m-primary test with the least t such that m^t is inside"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reesalg", description="Exact checks for Rees algebras of modules.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("instance", help="path to a JSON instance file")
        sp.add_argument("--n", type=int, help="degree n (overrides params.n)")
        sp.add_argument("--k", type=int, help="window offset k (overrides params.k)")
        sp.add_argument("--N", type=int, dest="N", help="largest degree N (overrides params.N)")
        sp.add_argument("--max-minor-size", type=int, help="largest minor size computed (default 6)")
        sp.add_argument("--max-minors", type=int, help="most minors enumerated (default 20000)")
        sp.add_argument("--max-products", type=int, help="most products enumerated per degree (default 5000)")
        sp.add_argument("--max-generators", type=int, help="most generators of an ideal power (default 5000)")
        sp.add_argument("--max-points", type=int, help="most lattice points scanned by closure (default 1000000)")
        sp.add_argument("--sharp", action="store_true", help="gap: also compute the sharp exponent")
        sp.add_argument("--json", action="store_true", help="print the machine-readable report")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    return parser


def _apply_flags(inst: Instance, args):
    for name in ("n", "k", "N", "max_minor_size", "max_minors", "max_products", "max_generators", "max_points"):
        value = getattr(args, name)
        if value is not None:
            inst.params[name] = value
    if args.sharp:
        inst.params["sharp"] = True


def run(argv=None) -> tuple:
    """Parse arguments, execute, and return ``(exit_code, report, text)``."""
    args = build_parser().parse_args(argv)
    handler: Callable = COMMANDS[args.command][0]
    report = {"schema": SCHEMA_VERSION, "subcommand": args.command, "instance": None, "passed": False, "results": None, "error": None}
    start = time.perf_counter()
    try:
        inst = load_instance(args.instance)
        report["instance"] = inst.digest
        _apply_flags(inst, args)
        passed, results, lines = handler(inst, inst.guards())
        report["passed"] = bool(passed)
        report["results"] = results
        code = EXIT_PASS if passed else EXIT_FAIL
        text = "\n".join(lines + [f"{args.command}: {'PASS' if passed else 'FAIL'}"])
    except ParseError as exc:
        report["error"] = {"kind": "parse", "message": str(exc)}
        code, text = EXIT_USAGE, f"error: {exc}"
    except GuardExceeded as exc:
        report["error"] = {"kind": "guard", "message": str(exc)}
        code, text = EXIT_GUARD, f"guard: {exc}"
    except (PreconditionError, UnsupportedError) as exc:
        report["error"] = {"kind": "precondition", "message": str(exc)}
        code, text = EXIT_FAIL, f"{args.command}: FAIL: {exc}"
    except ReesError as exc:
        report["error"] = {"kind": "error", "message": str(exc)}
        code, text = EXIT_USAGE, f"error: {exc}"
    if args.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 6)}
    return code, report, text, args.json


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def main(argv=None) -> int:
    code, report, text, as_json = run(argv)
    if as_json:
        print(dumps_report(report))
    else:
        stream = sys.stdout if code in (EXIT_PASS, EXIT_FAIL) else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

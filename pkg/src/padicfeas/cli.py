"""Command-line entry point.

Every subcommand prints one JSON document (big integers as decimal
strings).  Exit codes: 0 feasible or success, 1 infeasible or failure,
2 unknown or budget exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .certify import Budget, Certificate, decide_general, verify_certificate
from .core.sparse import PolyParseError, parse_poly
from .experiments import PIPELINE_P_LIMIT, StageError, run_density, run_pipeline
from .hardness import (CnfFormula, DimacsError, PlaistedBasis, brute_force_sat,
                       final_gadget, reduce_cnf, sos_combine, unity_root_exists,
                       CongruenceError)
from .newton import build_polygon, polygon_svg
from .primegen import AgpConfig, agp_prime_search, deterministic_prime_search, primality
from .solve import GENERAL_P_LIMIT, decide

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

ENV_DEFAULTS = {
    "max_nodes": ("PADICFEAS_MAX_NODES", 10_000),
    "dense_cap": ("PADICFEAS_DENSE_CAP", 4096),
    "unity_cap": ("PADICFEAS_UNITY_CAP", 10 ** 5),
}


class InputError(Exception):
    pass


def _env_int(key: str) -> int:
    var, default = ENV_DEFAULTS[key]
    raw = os.environ.get(var)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {var} must be an integer") from None


def _budget(args) -> Budget:
    return Budget(max_nodes=args.max_nodes if args.max_nodes is not None else _env_int("max_nodes"),
                  dense_cap=args.dense_cap if args.dense_cap is not None else _env_int("dense_cap"))


def _read_poly(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return parse_poly(text)
    except PolyParseError as exc:
        raise InputError(f"cannot parse polynomial: {exc}") from None


def _check_prime(p: int) -> None:
    if p < 2:
        raise InputError(f"p = {p} is not a prime")
    verdict = primality(p)
    if not verdict.prime:
        raise InputError(f"p = {p} is composite ({verdict.witness})")


def _read_cnf(path: str) -> CnfFormula:
    try:
        with open(path, encoding="utf-8") as fh:
            return CnfFormula.from_dimacs(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None
    except (DimacsError, ValueError) as exc:
        raise InputError(f"bad DIMACS input: {exc}") from None


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _status_code(status: str) -> int:
    return {"feasible": EXIT_OK, "infeasible": EXIT_NO}.get(status, EXIT_UNKNOWN)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_feas(args) -> int:
    f = _read_poly(args.poly)
    _check_prime(args.p)
    t0 = time.perf_counter()
    dec = decide(f, args.p, _budget(args), ell=args.ell)
    doc = {
        "input": {"poly": f.to_text(), "p": str(args.p)},
        "feasible": dec.feasible if dec.status != "unknown" else None,
        "status": dec.status,
        "method": dec.method,
        "details": dec.details,
        "root_count": None if dec.root_count is None else str(dec.root_count),
        "certificate": dec.certificate.to_json() if dec.certificate else None,
        "timings": {"total_s": time.perf_counter() - t0},
    }
    _emit(doc)
    return _status_code(dec.status)


def cmd_certify(args) -> int:
    f = _read_poly(args.poly)
    _check_prime(args.p)
    if args.p > GENERAL_P_LIMIT:
        _emit({"input": {"poly": f.to_text(), "p": str(args.p)}, "status": "unknown",
               "reason": f"p above the search limit {GENERAL_P_LIMIT}", "certificate": None})
        return EXIT_UNKNOWN
    res = decide_general(f, args.p, _budget(args), ell=args.ell)
    _emit({"input": {"poly": f.to_text(), "p": str(args.p)}, "status": res.status,
           "reason": res.reason,
           "certificate": res.certificate.to_json() if res.certificate else None})
    return _status_code(res.status)


def cmd_verify(args) -> int:
    f = _read_poly(args.poly)
    raw = args.cert
    if raw == "-":
        raw = sys.stdin.read()
    elif os.path.exists(raw):
        with open(raw, encoding="utf-8") as fh:
            raw = fh.read()
    try:
        data = json.loads(raw)
        if "certificate" in data:
            data = data["certificate"]
        if data is None:
            raise InputError("report holds no certificate")
        cert = Certificate.from_json(data)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad certificate: {exc}") from None
    p = args.p if args.p is not None else cert.p
    ok = verify_certificate(f, p, cert)
    _emit({"input": {"poly": f.to_text(), "p": str(p)}, "certificate": cert.to_json(),
           "valid": ok})
    return EXIT_OK if ok else EXIT_NO


def cmd_polygon(args) -> int:
    f = _read_poly(args.poly)
    _check_prime(args.p)
    if f.is_zero:
        raise InputError("the zero polynomial has no Newton polygon")
    poly = build_polygon(f, args.p)
    doc = {"input": {"poly": f.to_text(), "p": str(args.p)}, **poly.to_json()}
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(polygon_svg(poly))
        doc["svg"] = args.svg
    _emit(doc)
    return EXIT_OK


def _basis_and_prime(formula: CnfFormula, p_arg, unity_cap: int):
    basis = PlaistedBasis.first(max(formula.n, 1))
    if basis.D > unity_cap:
        raise StageError("reduce", f"unity cap exceeded: D_P = {basis.D} > {unity_cap}")
    if p_arg is None:
        p = deterministic_prime_search(basis.D, basis.D * 10 ** 6)
    else:
        _check_prime(p_arg)
        p = p_arg
    return basis, p


def cmd_reduce(args) -> int:
    formula = _read_cnf(args.cnf)
    cap = args.unity_cap if args.unity_cap is not None else _env_int("unity_cap")
    basis, p = _basis_and_prime(formula, args.p, cap)
    red = reduce_cnf(formula, basis)
    red.combined = sos_combine(red.system + [red.unity])
    red.gadget = final_gadget(red.combined, basis.D, p)
    red.gadget_prime = p
    _emit({"input": {"cnf": formula.to_dimacs()}, **red.to_json()})
    return EXIT_OK


def cmd_oracle_sat(args) -> int:
    formula = _read_cnf(args.cnf)
    cap = args.unity_cap if args.unity_cap is not None else _env_int("unity_cap")
    basis, p = _basis_and_prime(formula, args.p, cap)
    red = reduce_cnf(formula, basis)
    try:
        j = unity_root_exists(red.system, basis.D, p, cap)
    except CongruenceError as exc:
        raise InputError(str(exc)) from None
    doc = {"input": {"cnf": formula.to_dimacs(), "p": str(p)},
           "basis": [str(q) for q in basis.primes], "D_P": str(basis.D),
           "satisfiable": j is not None, "root_index": None if j is None else str(j)}
    if formula.n <= 20:
        doc["brute_force_sat"] = brute_force_sat(formula) is not None
    _emit(doc)
    return EXIT_OK if j is not None else EXIT_NO


def cmd_primegen(args) -> int:
    try:
        cfg = AgpConfig(n=args.n, epsilon=Fraction(args.epsilon), x0=args.x0,
                        ell_agp=args.ell_agp, seed=args.seed, draws=args.draws)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    res = agp_prime_search(cfg)
    doc = res.to_json()
    doc["primes_block"] = doc.pop("primes")
    doc["size_bound_holds"] = res.size_bound_holds()
    _emit(doc)
    print(res.message, file=sys.stderr)
    return EXIT_OK if res.success else EXIT_NO


def cmd_density(args) -> int:
    try:
        support = [int(a) for a in args.support.split(",")]
    except ValueError:
        raise InputError("support must be comma-separated integers") from None
    try:
        rep = run_density(support, args.H, args.samples, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    doc = rep.to_json()
    if rep.vacuous:
        doc["note"] = "vacuous bound"
    _emit(doc)
    return EXIT_OK if rep.passes else EXIT_NO


def cmd_pipeline(args) -> int:
    formula = _read_cnf(args.cnf)
    cap = args.unity_cap if args.unity_cap is not None else _env_int("unity_cap")
    try:
        rep = run_pipeline(formula, seed=args.seed, unity_cap=cap, budget=_budget(args),
                           prime_mode=args.prime_mode, p_limit=args.p_limit)
    except StageError as exc:
        _emit({"input": {"cnf": formula.to_dimacs()}, "status": "error",
               "stage": exc.stage, "error": str(exc)})
        return EXIT_UNKNOWN
    _emit({"input": {"cnf": formula.to_dimacs(), "seed": args.seed}, **rep.to_json()})
    return _status_code(rep.status)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _add_budget(sp) -> None:
    sp.add_argument("--max-nodes", type=int, help="branch-node budget (env PADICFEAS_MAX_NODES)")
    sp.add_argument("--dense-cap", type=int, help="dense degree cap (env PADICFEAS_DENSE_CAP)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padicfeas", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    poly_help = "polynomial as 'c*x^e; ...' terms, a JSON list, or @file"

    sp = sub.add_parser("feas", help="decide whether a polynomial has a root in Q_p")
    sp.add_argument("poly", help=poly_help)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--ell", type=int, help="certificate precision override")
    _add_budget(sp)
    sp.set_defaults(func=cmd_feas)

    sp = sub.add_parser("certify", help="search for a Hensel certificate")
    sp.add_argument("poly", help=poly_help)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--ell", type=int, help="certificate precision override")
    _add_budget(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify", help="check a certificate (JSON text, file, or '-')")
    sp.add_argument("poly", help=poly_help)
    sp.add_argument("--cert", required=True)
    sp.add_argument("-p", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("polygon", help="print the p-adic Newton polygon")
    sp.add_argument("poly", help=poly_help)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--svg", help="also write the lower hull as SVG")
    sp.set_defaults(func=cmd_polygon)

    for name, func, text in (("reduce", cmd_reduce, "map a DIMACS 3CNF to polynomials"),
                             ("oracle-sat", cmd_oracle_sat, "roots-of-unity satisfiability")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("cnf")
        sp.add_argument("-p", type=int, help="prime = 1 mod D_P (default: smallest)")
        sp.add_argument("--unity-cap", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("primegen", help="randomized prime p = 1 + c * M_i")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--epsilon", default="1/3")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--x0", type=int, default=17)
    sp.add_argument("--ell-agp", type=int, default=1)
    sp.add_argument("--draws", type=int, help="override the number of draws J")
    sp.set_defaults(func=cmd_primegen)

    sp = sub.add_parser("density", help="Monte-Carlo density of p not dividing D_A(f)")
    sp.add_argument("--support", required=True, help="comma-separated exponents")
    sp.add_argument("--H", type=int, required=True)
    sp.add_argument("--samples", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("pipeline", help="CNF -> prime -> gadget -> p-adic decision")
    sp.add_argument("cnf")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--prime-mode", choices=("deterministic", "agp"), default="deterministic")
    sp.add_argument("--p-limit", type=int, default=PIPELINE_P_LIMIT,
                    help="skip the p-adic search above this prime")
    sp.add_argument("--unity-cap", type=int)
    _add_budget(sp)
    sp.set_defaults(func=cmd_pipeline)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StageError as exc:
        _emit({"status": "error", "stage": exc.stage, "error": str(exc)})
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())

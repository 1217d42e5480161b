"""Command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success, 1 domain or input error, 2 verification failure.
ARTIFACT_DPS sets the default decimal precision for numerical work.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

SCHEMA = "artifact-report/1"


class VerificationFailure(Exception):
    pass


class InputError(Exception):
    pass


def _default_dps():
    try:
        return int(os.environ.get("ARTIFACT_DPS", "40"))
    except ValueError:
        return 40


def _read_json(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise InputError(str(e))


def _field(d, key, where="input"):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing field '{key}' in {where}")
    return d[key]


def _char(spec):
    """Character from 'trivial', a JSON object, or 'M:e1,e2,..' generator exponents."""
    from .characters import DirichletCharacter, unit_group
    if spec is None or spec == "trivial":
        return DirichletCharacter.trivial(1)
    if isinstance(spec, dict):
        return DirichletCharacter.from_json(spec)
    if ":" in spec:
        M, exps = spec.split(":", 1)
        exps = [int(x) for x in exps.split(",") if x != ""]
        return DirichletCharacter.from_exponents(int(M), exps)
    M = int(spec)
    gens = unit_group(M)[0]
    if len(gens) != 1:
        raise InputError("a bare modulus needs a cyclic unit group")
    return DirichletCharacter.from_exponents(M, [1])


def _enc(x):
    from .exact_arith import CycNumber, PadicNumber
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, PadicNumber):
        return {"p": x.prime, "valuation": x.valuation, "lift": str(x.lift())}
    if isinstance(x, (list, tuple)):
        return [_enc(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _enc(v) for k, v in x.items()}
    return x


# ---------------------------------------------------------------------------
# subcommands

def cmd_crit(args):
    from .gl3_local import critical_set, _parity_int
    eta = _char(args.eta)
    par = _parity_int(args.omega_parity)
    return {"a": args.a, "minus": critical_set(args.a, par, eta, "minus"),
            "plus": critical_set(args.a, par, eta, "plus")}


def cmd_refine(args):
    from .gl3_local import LocalRepGL3, classify_refinements, is_ordinary, is_nearly_ordinary
    d = _read_json(args.input)
    rep = LocalRepGL3.from_json(_field(d, "rep") if "rep" in d else d)
    refs = classify_refinements(rep)
    out = {"kind": rep.kind, "refinements": [r.to_json() for r in refs]}
    for i in (1, 2):
        v = is_ordinary(rep, i)
        out[f"P{i}_ordinary"] = bool(v)
        out[f"P{i}_reason"] = v.reason
        out[f"P{i}_nearly_ordinary"] = bool(is_nearly_ordinary(rep, i))
    dual = classify_refinements(rep.dual())
    out["dual_refinement_count"] = len(dual)
    return out


def cmd_ep(args):
    from .gl3_local import e_p
    from .exact_arith import CycNumber
    alpha = Fraction(args.alpha)
    eta = _char(args.eta)
    val = e_p(alpha, eta if not eta.is_trivial() else None, args.j, args.p, args.a,
              args.omega_parity)
    return {"p": args.p, "j": args.j, "e_p": _enc(val)}


def cmd_einf(args):
    from .gl3_local import e_infty
    from .symsq import e_infty_ratio_holds
    e = e_infty(args.a, args.j)
    ok = e_infty_ratio_holds(args.a, args.j)
    if not ok:
        raise VerificationFailure("e_infty ratio identity fails")
    return {"a": args.a, "j": args.j, "e_infty": e.to_json(), "ratio_identity": ok}


def cmd_zeta(args):
    from .zeta_local import (ZetaInput, Y_bruteforce, Y_closed_form, Z_closed_display,
                             spherical_Z, Z_normalized)
    from .gl3_local import SatakeParams
    d = _read_json(args.input)
    if args.form == "spherical":
        sat = _field(d, "satake")
        s = SatakeParams(*[Fraction(x) for x in sat], int(_field(d, "p")), int(d.get("a", 0)))
        z = spherical_Z(s, Fraction(d.get("chi1_p", 1)), Fraction(d.get("chi2_p", 1)), args.N)
        zn = Z_normalized(z, s, Fraction(d.get("chi1_p", 1)), Fraction(d.get("chi2_p", 1)))
        return {"form": "spherical", "Z": z.to_json(), "Z_normalized": zn.to_json()}
    try:
        zi = ZetaInput.from_json(d)
    except KeyError as e:
        raise InputError(f"missing field {e} in ZetaInput")
    if args.form == "bruteforce":
        y = Y_bruteforce(zi)
        out = {"form": "bruteforce", "Y": y.to_json()}
        if args.check:
            if not (y == Y_closed_form(zi)):
                raise VerificationFailure("brute-force and closed-form Y differ")
            out["matches_closed_form"] = True
        return out
    if args.form == "closed":
        if args.j is None:
            return {"form": "closed", "Y": Y_closed_form(zi).to_json()}
        return {"form": "closed", "j": args.j, "Y_value": str(Y_closed_form(zi, args.j))}
    if args.form == "normalized":
        if args.j is None:
            raise InputError("--form normalized needs --j")
        return {"form": "normalized", "j": args.j, "Z_value": str(Z_closed_display(zi, args.j))}
    raise InputError(f"unknown form {args.form}")


def cmd_branch(args):
    from .branching import restrict_decompose, hom_space_dimension, br_map, check_equivariance
    dec = restrict_decompose(args.a)
    mult_one = {str(j): hom_space_dimension(args.a, j) for j in range(args.a + 1)}
    brs = {str(j): {"integral": br_map(args.a, j).is_integral(),
                    "equivariant": check_equivariance(args.a, j),
                    "distinguished_value": str(br_map(args.a, j).normaliser)}
           for j in range(args.a + 1)}
    out = {"decomposition": dec.to_json(), "all_ones": dec.is_all_ones(),
           "hom_dimensions": mult_one, "br_maps": brs}
    if not dec.is_all_ones() or any(v != 1 for v in mult_one.values()) or \
            not all(b["equivariant"] for b in brs.values()):
        raise VerificationFailure(json.dumps(out, sort_keys=True))
    return out


def cmd_eis(args):
    from .eisenstein import SchwartzData, qexp_eisenstein, schwartz_distribution_check
    if args.action == "check-distribution":
        ok, wit = schwartz_distribution_check(args.p, args.t)
        if not ok:
            raise VerificationFailure(f"distribution relation fails at {wit}")
        return {"p": args.p, "t": args.t, "distribution": True}
    d = _read_json(args.input)
    _field(d, "modulus")
    phi = SchwartzData.from_json(d)
    return {"j": args.j, "qexp": qexp_eisenstein(phi, args.j, args.trunc).to_json()}


def cmd_measure(args):
    from .iwasawa import Measure, MeasureTower, tower_to_measure, GroupRingElem, _dec
    d = _read_json(args.input)
    p = int(_field(d, "p"))
    levels = [GroupRingElem(p, int(_field(L, "n", "levels")),
                            {int(a): _dec(v, p) for a, v in _field(L, "coeffs", "levels").items()})
              for L in _field(d, "levels")]
    lam = _dec(d.get("eigenvalue", "1"), p)
    mu = tower_to_measure(MeasureTower(p, levels, lam, int(d.get("a", 0))))
    if not mu.is_compatible():
        raise VerificationFailure("rescaled tower is not norm-compatible")
    return {"measure": mu.to_json(), "compatible": True, "bounded": mu.bounded}


def cmd_symsq(args):
    from .symsq import ModFormData, load_delta, interpolation_rhs, algebraicity_check
    f = load_delta() if args.input in (None, "delta") else ModFormData.from_json(_read_json(args.input))
    eta = _char(args.eta)
    rep = interpolation_rhs(f, args.p, args.j, eta, N_terms=args.terms, dps=args.dps,
                            numeric=not args.no_numeric)
    out = rep.to_json()
    out = {k: v for k, v in out.items() if not k.startswith("_")}
    if not args.no_numeric and eta.is_trivial():
        out["algebraicity_result"] = algebraicity_check(f, args.j, args.p, N_terms=args.terms,
                                                        dps=args.dps).to_json()
    return out


def cmd_selftest(args):
    from . import selftest
    results = selftest.run(quick=not args.full)
    failed = [r for r in results if not r["ok"]]
    out = {"checks": results, "failed": len(failed)}
    if failed:
        raise VerificationFailure(json.dumps(out, sort_keys=True))
    return out


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crit", help="critical sets")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--omega-parity", default="even")
    p.add_argument("--eta", default=None)
    p.set_defaults(fn=cmd_crit)

    p = sub.add_parser("refine", help="refinements and ordinarity of a LocalRepGL3")
    p.add_argument("input", nargs="?")
    p.set_defaults(fn=cmd_refine)

    p = sub.add_parser("ep", help="modified Euler factor at p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--eta", default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--omega-parity", default=None)
    p.set_defaults(fn=cmd_ep)

    p = sub.add_parser("einf", help="modified Euler factor at infinity")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(fn=cmd_einf)

    p = sub.add_parser("zeta", help="local zeta integrals")
    p.add_argument("input", nargs="?")
    p.add_argument("--form", choices=["bruteforce", "closed", "normalized", "spherical"],
                   default="closed")
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--N", type=int, default=30)
    p.add_argument("--check", action="store_true")
    p.set_defaults(fn=cmd_zeta)

    p = sub.add_parser("branch", help="GL3 -> GL2 x GL1 branching")
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(fn=cmd_branch)

    p = sub.add_parser("eis", help="Eisenstein q-expansions")
    p.add_argument("action", nargs="?", default="qexp", choices=["qexp", "check-distribution"])
    p.add_argument("input", nargs="?")
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--trunc", type=int, default=10)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(fn=cmd_eis)

    p = sub.add_parser("measure", help="rescale a tower to a measure")
    p.add_argument("input", nargs="?")
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("symsq", help="symmetric-square interpolation report")
    p.add_argument("input", nargs="?", default="delta")
    p.add_argument("--p", type=int, default=11)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--eta", default=None)
    p.add_argument("--terms", type=int, default=150)
    p.add_argument("--dps", type=int, default=_default_dps())
    p.add_argument("--no-numeric", action="store_true")
    p.set_defaults(fn=cmd_symsq)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.add_argument("--full", action="store_true")
    p.set_defaults(fn=cmd_selftest)
    return ap


def run(argv=None) -> int:
    from .exact_arith import DomainError
    ap = build_parser()
    args = ap.parse_args(argv)
    status, payload = 0, None
    try:
        payload = {"schema": SCHEMA, "command": args.command, "status": "ok",
                   "result": _enc(args.fn(args))}
    except VerificationFailure as e:
        status = 2
        payload = {"schema": SCHEMA, "command": args.command, "status": "verification_failure",
                   "error": str(e)}
    except (DomainError, InputError, ValueError, ZeroDivisionError) as e:
        status = 1
        payload = {"schema": SCHEMA, "command": args.command, "status": "error",
                   "error": f"{type(e).__name__}: {e}"}
    text = json.dumps(payload, sort_keys=True, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

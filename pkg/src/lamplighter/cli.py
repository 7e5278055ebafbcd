"""Command-line front end.

Every command produces a result {command, status, payload}; status is one of
ok, check-failed, invalid-input, budget-exceeded and the exit code is 0 only
for ok.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import BudgetExceeded, InvalidInput, NeedsMoreDigits
from .exact import format_rational, parse_rational
from .groupring import FiniteAbelianGroup
from .numtheory import DEFAULT_BUDGET
from .products import (
    KappaParams,
    build_Z_and_check,
    dim_ker_TS,
    double_sum_interval,
    kappa_eval,
    rationality_probe,
    series_identity_check,
)
from .projections import rational_projection
from .series import diagonal_bridge_check, gap_witness, gcd_identity_check
from .spectral import (
    atoms,
    completeness_partial_sum,
    completeness_tail,
    make_setup,
    run_checks,
    spectral_measure,
)

SCHEMA = "1"
EXIT_CODES = {"ok": 0, "check-failed": 1, "invalid-input": 2, "budget-exceeded": 3}


def dual(x: Fraction, digits: int = 15) -> dict:
    x = Fraction(x)
    return {"exact": format_rational(x), "decimal": f"{float(x):.{digits}g}"}


def parse_mu(text: str):
    """'rot:m/n' (also '...rotation:m/n') for lambda_{m,n}, or a decimal literal."""
    m = re.fullmatch(r"\s*(?:rot|[\w/.-]*rotation):(\d+)/(\d+)\s*", text)
    if m:
        return int(m.group(1)), int(m.group(2))
    try:
        Decimal(text)
    except InvalidOperation:
        raise InvalidInput(f"cannot parse mu {text!r}; use rot:m/n or a decimal") from None
    return text.strip()


def parse_bound(text: str) -> int:
    """A positive integer given as digits, '1e100' or '10^100'."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\^(\d+)", text)
    if m:
        value = int(m.group(1)) ** int(m.group(2))
    else:
        try:
            d = Decimal(text)
        except InvalidOperation:
            raise InvalidInput(f"cannot parse bound {text!r}") from None
        if d != d.to_integral_value():
            raise InvalidInput("bound must be an integer")
        value = int(d)
    if value < 1:
        raise InvalidInput("bound must be positive")
    return value


def _setup_from_args(U_text: str | None, e_text: str):
    if e_text == "avg":
        U = FiniteAbelianGroup.parse(U_text or "C2")
        return make_setup(U), None
    if e_text.startswith("trace:"):
        cert = rational_projection(parse_rational(e_text[len("trace:"):]))
        U = cert.e.group
        if U_text is not None and FiniteAbelianGroup.parse(U_text) != U:
            raise InvalidInput(f"trace projection lives in Q[C{cert.n}], not Q[{U_text}]")
        return make_setup(U, cert.e), cert
    raise InvalidInput(f"unknown projection {e_text!r}; use avg or trace:q")


def _checked(payload: dict, checks: dict) -> tuple[str, dict]:
    payload["checks"] = checks
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        payload["failed"] = failed
        return "check-failed", payload
    return "ok", payload


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def cmd_spectrum(args) -> tuple[str, dict]:
    setup, cert = _setup_from_args(args.U, args.e)
    W = setup.W
    payload = {
        "U": repr(setup.U),
        "W": dual(W),
        "atoms": [a.to_json() | {"mass_decimal": f"{float(a.mass):.15g}"}
                  for a in atoms(W, args.nmax)],
        "completeness_partial_sum": dual(completeness_partial_sum(W, args.nmax)),
        "completeness_tail": dual(completeness_tail(W, args.nmax)),
    }
    if cert is not None:
        payload["projection"] = cert.to_json()
    if args.mu is not None:
        value = spectral_measure(W, parse_mu(args.mu))
        payload["mu"] = {
            "input": args.mu,
            "mass": dual(value.mass),
            "rotation": f"{value.rotation[0]}/{value.rotation[1]}" if value.rotation else None,
            "recognized": value.recognized,
        }
    if args.verify:
        return _checked(payload, run_checks(setup, args.nmax))
    return "ok", payload


def _kappa_params(args) -> KappaParams:
    return KappaParams(parse_rational(args.p), parse_rational(args.q), args.digits)


def cmd_kappa(args) -> tuple[str, dict]:
    report = kappa_eval(_kappa_params(args), terms=args.terms)
    body = report.to_json()
    if args.bound is not None:
        probe = rationality_probe(report, parse_bound(args.bound))
        body["verdict"] = probe.verdict
        body["probe"] = probe.to_json()
    return "ok", {"kappa": body}


def cmd_dimker(args) -> tuple[str, dict]:
    p, q = parse_rational(args.p), parse_rational(args.q)
    if not (0 < p < 1 and 0 < q < 1):
        raise InvalidInput("p and q must lie strictly between 0 and 1")
    X, Y = 1 / p, 1 / q
    partial, tail = dim_ker_TS(X, Y, args.N)
    interval = double_sum_interval(X, Y, args.N)
    payload = {
        "X": format_rational(X),
        "Y": format_rational(Y),
        "N": args.N,
        "partial": dual(partial),
        "tail_upper": f"{float(tail.upper()):.3e}",
        "interval": [f"{float(interval.lower()):.15g}", f"{float(interval.upper()):.15g}"],
    }
    checks = {}
    if args.cross_check:
        k = kappa_eval(KappaParams(p, q, 30))
        payload["kappa"] = k.value.to_decimal(30)
        checks["single_sum_agrees"] = interval.intersects(k.value)
    if args.Z:
        z = build_Z_and_check(p, q, args.nmax)
        payload["Z"] = {"m": z.m, "n": z.n, "multiplier": z.m * z.n,
                        "minimal_integral_multiplier": z.minimal_multiplier,
                        "terms": len(z.Z)}
        checks["Z_integral"] = z.integral
        checks["Z_eigen"] = all(z.eigen_checks.values())
    return _checked(payload, checks) if checks else ("ok", payload)


def cmd_projection(args) -> tuple[str, dict]:
    cert = rational_projection(parse_rational(args.q), args.n)
    return _checked({"certificate": cert.to_json()}, cert.verify())


def cmd_series(args) -> tuple[str, dict]:
    checks = {
        "gcd_identity": gcd_identity_check(args.K),
        "diagonal_bridge": diagonal_bridge_check(args.K),
        "series_identity_at_2_3": series_identity_check(2, 3, min(args.K, 30)),
    }
    return _checked({"K": args.K}, checks)


def cmd_gaps(args) -> tuple[str, dict]:
    w = gap_witness(args.Q, args.N, budget=args.budget, seed=args.seed)
    return "ok", w.to_json()


def cmd_check_all(args) -> tuple[str, dict]:
    from .numtheory import largeQ_threshold

    checks = {}
    for name in ("C2", "C3"):
        for key, ok in run_checks(make_setup(FiniteAbelianGroup.parse(name)), args.nmax).items():
            checks[f"spectral[{name}].{key}"] = ok
    checks["measure_rot_1_2"] = spectral_measure(2, (1, 2)).mass == Fraction(1, 3)
    checks["measure_rot_1_3"] = spectral_measure(2, (1, 3)).mass == Fraction(1, 7)
    checks["completeness_20"] = completeness_partial_sum(2, 20) == 1 - Fraction(21, 2 ** 20)
    k = kappa_eval(KappaParams(Fraction(1, 2), Fraction(1, 2), 10))
    checks["kappa_digits"] = k.value.to_decimal(10) == "0.1659457149"
    checks["double_sum_agrees"] = double_sum_interval(2, 2, 60).intersects(k.value)
    checks["projections"] = all(all(rational_projection(Fraction(m, n)).verify().values())
                                for n in range(1, 17) for m in range(n + 1))
    checks["Z"] = build_Z_and_check(Fraction(1, 2), Fraction(1, 2), 3).ok
    checks["series"] = gcd_identity_check(30) and diagonal_bridge_check(100)
    payload = {"largeQ_threshold_up_to_60": largeQ_threshold(60)}
    return _checked(payload, checks)


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lamplighter", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized factorization")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="factorization step budget")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="atoms of the spectral measure of T = e t + t^-1 e")
    p.add_argument("--U", default=None, help="finite abelian group, e.g. C2 or C2xC3")
    p.add_argument("--e", default="avg", help="avg, or trace:q for a projection of trace q")
    p.add_argument("--mu", default=None, help="rot:m/n or a decimal")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--verify", action="store_true", help="run the exact identity checks")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("kappa", help="certified kappa(p, q) and its continued fraction")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--terms", type=int, default=None, help="fix the number of series terms")
    p.add_argument("--bound", default=None, help="denominator bound for the rationality probe")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("dimker", help="the gcd double sum for dim ker(T - S)")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--N", type=int, default=60, help="truncation of the double sum")
    p.add_argument("--cross-check", action="store_true", help="compare with the single sum")
    p.add_argument("--Z", action="store_true", help="build Z = mn(T - S) and check it")
    p.add_argument("--nmax", type=int, default=2)
    p.set_defaults(func=cmd_dimker)

    p = sub.add_parser("projection", help="projection of rational trace in Q[C_n]")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_projection)

    p = sub.add_parser("series", help="gcd series identities")
    p.add_argument("--K", type=int, default=50)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("gaps", help="gap condition witness m_Q")
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("check-all", help="run a quick version of every check")
    p.add_argument("--nmax", type=int, default=4)
    p.set_defaults(func=cmd_check_all)
    return parser


def run(argv=None) -> dict:
    args = build_parser().parse_args(argv)
    try:
        status, payload = args.func(args)
    except (InvalidInput, NeedsMoreDigits) as exc:
        status, payload = "invalid-input", {"error": str(exc)}
    except BudgetExceeded as exc:
        status, payload = "budget-exceeded", {"error": str(exc)}
    return {"schema": SCHEMA, "command": args.command, "status": status, "payload": payload}


def _print_text(result: dict, out) -> None:
    print(f"{result['command']}: {result['status']}", file=out)

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}", file=out)
        elif isinstance(obj, list):
            if all(not isinstance(v, (dict, list)) for v in obj):
                print(pad + ", ".join(map(str, obj)), file=out)
            else:
                for v in obj:
                    walk(v, indent)
                    print(pad + "-", file=out)

    walk(result["payload"], 1)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    if "--json" in argv:
        json.dump(result, sys.stdout, indent=2)
        print()
    else:
        _print_text(result, sys.stdout)
    return EXIT_CODES[result["status"]]

"""Command line surface.

Subcommands: canon, decompose, chern, bergman, oracle, and verify with a
handful of named checks.  Machine-readable output goes to stdout (JSON, or
JSON-lines reports with fields check/status/lhs/rhs/dim/seed); the human
summary goes to stderr.  Exit codes: 0 success, 1 verification failure or a
not-co-exact input, 2 malformed input.

Set INVAR_TRUNCATION_AUDIT=1 to re-run kernel computations with enlarged
series caps and fail if any value moves.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from math import factorial

from .bergman import bergman_coefficients
from .calculus import integrates_to_zero
from .chern import chern_invariant, partitions_of
from .fourier import eval_integral, random_phi
from .geometry import kernel_coefficient_reference, named_scalar
from .invariants import Invariant
from .jets import Potential, fubini_study_jets, random_hermitian_jets
from .monomials import PHI
from .rationals import GaussRat
from .rings import GaussRing, GradedRing
from .solver import (
    NotCoexactError,
    decompose,
    random_coexact_invariant,
    verify_decomposition,
)

AUDIT_ENV = "INVAR_TRUNCATION_AUDIT"


def audit_enabled() -> bool:
    return os.environ.get(AUDIT_ENV, "").strip().lower() in ("1", "true", "yes", "on")


class Reporter:
    """JSON-lines check reports on stdout, counting failures."""

    def __init__(self):
        self.checks = 0
        self.failures = 0

    def line(self, check, ok, lhs, rhs, dim=None, seed=None):
        self.checks += 1
        if not ok:
            self.failures += 1
        print(
            json.dumps(
                {
                    "check": check,
                    "status": "ok" if ok else "failed",
                    "lhs": lhs,
                    "rhs": rhs,
                    "dim": dim,
                    "seed": seed,
                }
            )
        )

    def summary(self, text):
        status = "ok" if not self.failures else f"{self.failures} FAILED"
        sys.stderr.write(f"{text} [{self.checks} checks: {status}]\n")

    @property
    def exit_code(self):
        return 1 if self.failures else 0


# -- value rendering -------------------------------------------------------


def _fmt_gauss(c) -> str:
    if not c.im:
        return str(c.re)
    if not c.re:
        return f"{c.im}*i"
    sign = "+" if c.im > 0 else "-"
    return f"{c.re}{sign}{abs(c.im)}*i"


def _fmt_monomial(mono) -> str:
    if not mono:
        return "1"
    parts = []
    for (alpha, beta), e in mono:
        s = "a[{}|{}]".format(",".join(map(str, alpha)), ",".join(map(str, beta)))
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def _graded_total(x):
    total = GaussRat(0)
    for v in x.values():
        total = total + v
    return total


def fmt_element(ring, x, limit=None) -> str:
    """Human rendering of a ring element; optionally truncated."""
    if isinstance(ring, GaussRing):
        return _fmt_gauss(x)
    if isinstance(ring, GradedRing):
        return _fmt_gauss(_graded_total(x))
    if not x:
        return "0"
    parts = [f"({_fmt_gauss(c)})*{_fmt_monomial(m)}" for m, c in sorted(x.items())]
    out = " + ".join(parts)
    if limit and len(out) > limit:
        out = out[: limit - 20] + f" ... [{len(parts)} terms]"
    return out


def _element_json(ring, x):
    if isinstance(ring, GaussRing):
        return {"re": str(x.re), "im": str(x.im)}
    if isinstance(ring, GradedRing):
        total = _graded_total(x)
        return {"re": str(total.re), "im": str(total.im)}
    return [
        {
            "monomial": [
                {"alpha": list(a), "beta": list(b), "power": e} for (a, b), e in m
            ],
            "re": str(c.re),
            "im": str(c.im),
        }
        for m, c in sorted(x.items())
    ]


# -- input helpers ----------------------------------------------------------


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_invariant(path) -> Invariant:
    d = _load_json(path)
    try:
        return Invariant.from_json_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad invariant in {path}: {exc}") from exc


def _load_restriction(path):
    if path is None:
        return None
    d = _load_json(path)
    try:
        return tuple((int(a), int(b)) for a, b in d)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad restriction list in {path}: {exc}") from exc


def _emit(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- plain subcommands -------------------------------------------------------


def cmd_canon(args):
    inv = _load_invariant(args.invariant)
    _emit(args, inv.to_json_dict())
    return 0


def cmd_chern(args):
    try:
        parts = tuple(int(v) for v in args.partition.split(","))
    except ValueError as exc:
        raise InputError(f"bad partition {args.partition!r}") from exc
    if not parts or any(v < 1 for v in parts):
        raise InputError(f"bad partition {args.partition!r}")
    _emit(args, chern_invariant(tuple(sorted(parts, reverse=True))).to_json_dict())
    return 0


def cmd_decompose(args):
    inv = _load_invariant(args.invariant)
    restriction = _load_restriction(args.restrict)
    try:
        dec = decompose(inv, restriction)
    except NotCoexactError as exc:
        sys.stderr.write(f"not co-exact: {exc}\n")
        if exc.residue is not None:
            sys.stderr.write(
                "nonzero first-slot residue:\n"
                + json.dumps(exc.residue.to_json_dict(), sort_keys=True)
                + "\n"
            )
        return 1
    if not verify_decomposition(inv, dec):
        sys.stderr.write("internal error: witness failed re-verification\n")
        return 1
    _emit(args, dec.to_json_dict())
    sys.stderr.write("decomposed: witness verified exactly\n")
    return 0


def cmd_oracle(args):
    inv = _load_invariant(args.invariant)
    if inv.valence != (0, 0):
        raise InputError("the oracle integrates scalar invariants only")
    n = args.dim
    formal = integrates_to_zero(inv)
    rep = Reporter()
    witnessed = False
    sigma = max(inv.degrees(), default=1)
    for t in range(args.trials):
        seed = args.seed + t
        if inv.kind == PHI:
            phi = random_phi(n, args.mode_bound, seed)
        else:
            phi = [
                random_phi(n, args.mode_bound, seed * sigma + i) for i in range(sigma)
            ]
        value = eval_integral(inv, phi)
        ok = (not value) if formal else True
        witnessed = witnessed or bool(value)
        rep.line(
            "oracle-trial",
            ok,
            _fmt_gauss(value),
            "0" if formal else "generically nonzero",
            dim=n,
            seed=seed,
        )
    if formal:
        rep.summary(f"formally zero; {args.trials} trials evaluated")
    else:
        rep.line("oracle-witness", witnessed, "nonzero witnessed" if witnessed else "all zero", "nonzero", dim=n, seed=args.seed)
        rep.summary("formally nonzero; oracle sampled")
    return rep.exit_code


def cmd_bergman(args):
    order = args.order
    if args.symbolic:
        pot = Potential.symbolic(args.dim, order)
    elif args.fubini_study:
        pot = Potential.graded_numeric(
            args.dim, fubini_study_jets(args.dim, 2 * order + 2), order
        )
    else:
        if not args.potential:
            raise InputError("need --potential, --symbolic, or --fubini-study")
        raw = Potential.from_json_dict(_load_json(args.potential))
        if raw.n != args.dim:
            raise InputError(f"--dim {args.dim} but potential file has n={raw.n}")
        pot = Potential.graded_numeric(raw.n, raw.jets, order)
    coeffs = bergman_coefficients(pot, order)
    if audit_enabled():
        wider = _widened_potential(args, order)
        again = bergman_coefficients(wider, order)
        if again != coeffs:
            sys.stderr.write("truncation audit FAILED: values moved with the cap\n")
            return 1
        sys.stderr.write("truncation audit passed\n")
    if args.format == "json":
        _emit(
            args,
            {
                "dim": pot.n,
                "order": order,
                "coefficients": [_element_json(pot.ring, c) for c in coeffs],
            },
        )
    else:
        for j, c in enumerate(coeffs):
            print(f"a_{j} = {fmt_element(pot.ring, c, limit=2000)}")
    return 0


def _widened_potential(args, order):
    if args.symbolic:
        return Potential.symbolic(args.dim, order + 1)
    if args.fubini_study:
        return Potential.graded_numeric(
            args.dim, fubini_study_jets(args.dim, 2 * order + 4), order + 1
        )
    raw = Potential.from_json_dict(_load_json(args.potential))
    return Potential.graded_numeric(raw.n, raw.jets, order + 1)


# -- verify suites ------------------------------------------------------------


def _verify_a1(args, rep):
    for n in [args.dim] if args.dim else [1, 2]:
        pot = Potential.symbolic(n, 1)
        got = bergman_coefficients(pot, 1)[1]
        want = kernel_coefficient_reference(pot, 1)
        rep.line(
            "a1",
            got == want,
            fmt_element(pot.ring, got, 400),
            fmt_element(pot.ring, want, 400),
            dim=n,
        )
    rep.summary("a1 == S/2: exact" if not rep.failures else "a1 check")


def _verify_a2(args, rep):
    for n in [args.dim] if args.dim else [1, 2]:
        pot = Potential.symbolic(n, 2)
        got = bergman_coefficients(pot, 2)[2]
        want = kernel_coefficient_reference(pot, 2, extra=2 if audit_enabled() else 0)
        rep.line(
            "a2",
            got == want,
            fmt_element(pot.ring, got, 400),
            fmt_element(pot.ring, want, 400),
            dim=n,
        )
    rep.summary("a2 == P_2 + lap(S)/3: exact" if not rep.failures else "a2 check")


def _verify_a3(args, rep):
    n = args.dim or 2
    trials = args.trials or 3
    for t in range(trials):
        seed = args.seed + t
        rng = random.Random(seed)
        pot = Potential.graded_numeric(n, random_hermitian_jets(n, 3, rng), 3)
        got = bergman_coefficients(pot, 3)[3]
        want = kernel_coefficient_reference(pot, 3, extra=2 if audit_enabled() else 0)
        rep.line(
            "a3",
            got == want,
            fmt_element(pot.ring, got, 400),
            fmt_element(pot.ring, want, 400),
            dim=n,
            seed=seed,
        )
    rep.summary(
        "a3 == P_3 + div(Q) + lap^2(S)/8: exact"
        if not rep.failures
        else "a3 check"
    )


def _verify_linear(args, rep):
    n = args.dim or 1
    jmax = args.order or 5
    pot = Potential.symbolic(n, jmax, linear=True)
    coeffs = bergman_coefficients(pot, jmax)
    for j in range(1, jmax + 1):
        k = j - 1
        name = "S" if k == 0 else ("lap_S" if k == 1 else f"lap{k}_S")
        want = pot.ring.scale(named_scalar(pot, name), Fraction(j, factorial(j + 1)))
        rep.line(
            "linear",
            coeffs[j] == want,
            fmt_element(pot.ring, coeffs[j], 400),
            f"{j}/{j + 1}! * lap^{k}(S)",
            dim=n,
            seed=None,
        )
    rep.summary("linearized a_j == j/(j+1)! lap^(j-1) S: exact")


def _verify_chern_integrals(args, rep):
    max_sigma = args.order or 3
    trials = args.trials or 5
    for sigma in range(1, max_sigma + 1):
        n = args.dim or sigma
        for p in partitions_of(sigma):
            inv = chern_invariant(p)
            for t in range(trials):
                seed = args.seed + t
                value = eval_integral(inv, random_phi(n, args.mode_bound, seed))
                rep.line(
                    f"chern-integral[{','.join(map(str, p))}]",
                    not value,
                    _fmt_gauss(value),
                    "0",
                    dim=n,
                    seed=seed,
                )
    rep.summary("cycle invariants integrate to zero")


def _verify_roundtrip(args, rep):
    trials = args.trials or 10
    rng = random.Random(args.seed)
    done = 0
    while done < trials:
        sigma = rng.randint(1, 3)
        weight = rng.randint(max(2, sigma), 6)
        inv = random_coexact_invariant(weight, sigma, rng)
        if not inv:
            continue
        done += 1
        try:
            dec = decompose(inv)
            ok = verify_decomposition(inv, dec)
            msg = "witness reconstructs input"
        except Exception as exc:  # noqa: BLE001 - failure is the report
            ok = False
            msg = f"{type(exc).__name__}: {exc}"
        rep.line(
            "roundtrip",
            ok,
            msg,
            "exact reconstruction",
            dim=None,
            seed=args.seed,
        )
    rep.summary("decompose/verify round-trip")


VERIFY_SUITES = {
    "a1": _verify_a1,
    "a2": _verify_a2,
    "a3": _verify_a3,
    "linear": _verify_linear,
    "chern-integrals": _verify_chern_integrals,
    "roundtrip": _verify_roundtrip,
}


def cmd_verify(args):
    rep = Reporter()
    VERIFY_SUITES[args.suite](args, rep)
    return rep.exit_code


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="invar",
        description="exact local Kahler invariants: canonical forms, witnesses, kernel coefficients",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="canonicalize an invariant JSON file")
    p.add_argument("invariant")
    p.add_argument("--out")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("decompose", help="decompose a co-exact invariant")
    p.add_argument("invariant")
    p.add_argument("--restrict", help="JSON file with a list of [alpha, beta] caps")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("chern", help="emit a cycle invariant")
    p.add_argument("--partition", required=True, help="comma-separated parts, e.g. 2,1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("bergman", help="kernel expansion coefficients")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--potential", help="potential-jet JSON file")
    src.add_argument("--symbolic", action="store_true")
    src.add_argument("--fubini-study", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bergman)

    p = sub.add_parser("oracle", help="integrate an invariant over random Fourier data")
    p.add_argument("invariant")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--mode-bound", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(VERIFY_SUITES))
    p.add_argument("--dim", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--mode-bound", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

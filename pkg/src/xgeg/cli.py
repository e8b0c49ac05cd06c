"""Command-line front end.

Exit codes: 0 on success, 1 when an identity fails, 2 on invalid or
inadmissible input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from decimal import Context, Decimal, ROUND_HALF_EVEN
from typing import Callable, Iterable

from gmpy2 import mpq

from . import darboux, xop2
from .diffop import DiffOp
from .exceptions import ConsistencyError, XGegError
from .gegenbauer import HalfInt, classical_poly, eigenvalue, norm_nu, weight_poly, xgeg_operator
from .ratalg import Poly, Z, rat, rat_to_str

SCHEMA = "xgeg/1"
SUITES = ("eigen", "orth", "norms", "degrees", "positivity", "equivalence", "intertwine", "crum")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad or inadmissible command-line input (exit code 2)."""


# -- parsing ---------------------------------------------------------------


def _parse_alpha(s: str) -> HalfInt:
    try:
        return HalfInt.of(s)
    except (ValueError, TypeError) as e:
        raise InputError(f"--alpha: {e}") from None


def _parse_list(s: str | None, conv, flag: str) -> tuple:
    if s is None or not s.strip():
        return ()
    try:
        return tuple(conv(x.strip()) for x in s.split(","))
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{flag}: cannot parse {s!r} ({e})") from None


def _parse_int(x: str) -> int:
    v = int(x)
    if v < 0:
        raise ValueError("negative index")
    return v


def _family(args) -> xop2.XGegFamily:
    alpha = _parse_alpha(args.alpha)
    m = _parse_list(args.m, _parse_int, "--m")
    t = _parse_list(args.t, rat, "--t")
    if len(m) != len(t):
        raise InputError(f"--m has {len(m)} entries but --t has {len(t)}")
    if args.imax < 0:
        raise InputError("--imax must be non-negative")
    return xop2.XGegFamily(alpha, m, t)


def _require_admissible(fam: xop2.XGegFamily) -> None:
    bad = fam.violations()
    if bad:
        parts = [
            f"t_{x} = {rat_to_str(y)} violates t_{x} > -1/nu_{x} = {rat_to_str(b)}"
            for x, y, b in bad
        ]
        raise InputError("inadmissible parameters: " + "; ".join(parts))


# -- serialization ---------------------------------------------------------


def _coeffs(p: Poly) -> list[str]:
    return [rat_to_str(c) for c in p.coeffs]


def _header(fam: xop2.XGegFamily, kind: str) -> dict:
    return {
        "schema": SCHEMA,
        "kind": kind,
        "alpha": str(fam.alpha),
        "m": list(fam.m),
        "t": [rat_to_str(x) for x in fam.t],
    }


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dump_csv(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(str(c) for c in r) for r in rows)
    return "\n".join(lines) + "\n"


def decimal_string(x: mpq, digits: int) -> str:
    """``x`` correctly rounded to ``digits`` significant digits."""
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    d = ctx.divide(Decimal(int(x.numerator)), Decimal(int(x.denominator)))
    return format(d, "f") if -30 < d.adjusted() < 30 else str(d)


# -- commands --------------------------------------------------------------


def cmd_poly(args) -> tuple[int, str]:
    fam = _family(args)
    _require_admissible(fam)
    recs = []
    for i in range(args.imax + 1):
        p = fam.xpoly(i)
        recs.append({**_header(fam, "xpoly"), "i": i, "degree": p.degree, "coeffs": _coeffs(p)})
    if args.format == "csv":
        rows = [(r["i"], r["degree"], k, c) for r in recs for k, c in enumerate(r["coeffs"])]
        return EXIT_OK, _dump_csv(("i", "degree", "power", "coeff"), rows)
    return EXIT_OK, _dump_json(recs)


def cmd_tau(args) -> tuple[int, str]:
    fam = _family(args)
    _require_admissible(fam)
    tau = fam.tau
    if args.format == "csv":
        return EXIT_OK, _dump_csv(("power", "coeff"), enumerate(_coeffs(tau)))
    return EXIT_OK, _dump_json({**_header(fam, "tau"), "degree": tau.degree, "coeffs": _coeffs(tau)})


def cmd_weight(args) -> tuple[int, str]:
    fam = _family(args)
    _require_admissible(fam)
    num, den = weight_poly(fam.alpha), fam.tau * fam.tau
    if args.format == "csv":
        n = max(len(num), len(den))
        rows = [
            (k, rat_to_str(num[k]) if k < len(num) else "0", rat_to_str(den[k]) if k < len(den) else "0")
            for k in range(n)
        ]
        return EXIT_OK, _dump_csv(("power", "numerator", "denominator"), rows)
    rec = {**_header(fam, "weight"), "numerator": _coeffs(num), "denominator": _coeffs(den)}
    return EXIT_OK, _dump_json(rec)


def cmd_norms(args) -> tuple[int, str]:
    fam = _family(args)
    _require_admissible(fam)
    recs = []
    for i in range(args.imax + 1):
        recs.append(
            {
                **_header(fam, "norm"),
                "i": i,
                "norm": rat_to_str(xop2.norm(fam, i)),
                "classical": rat_to_str(norm_nu(fam.alpha, i)),
            }
        )
    if args.format == "csv":
        return EXIT_OK, _dump_csv(("i", "norm", "classical"), ((r["i"], r["norm"], r["classical"]) for r in recs))
    return EXIT_OK, _dump_json(recs)


def cmd_sample(args) -> tuple[int, str]:
    fam = _family(args)
    _require_admissible(fam)
    if args.npoints < 2:
        raise InputError("--npoints must be at least 2")
    if args.digits < 1:
        raise InputError("--digits must be positive")
    idx = _parse_list(args.i, _parse_int, "--i")
    funcs: list[tuple[str, Poly]] = [("value", fam.tau)] if not idx else [(f"C_{i}", fam.xpoly(i)) for i in idx]
    n = args.npoints - 1
    rows = []
    for k in range(args.npoints):
        z = mpq(2 * k, n) - 1
        rows.append([z] + [p(z) for _, p in funcs])
    header = ["z"] + [name for name, _ in funcs]
    if args.format == "json":
        recs = [
            {"schema": SCHEMA, **{h: decimal_string(v, args.digits) for h, v in zip(header, r)}}
            for r in rows
        ]
        return EXIT_OK, _dump_json(recs)
    return EXIT_OK, _dump_csv(header, ([decimal_string(v, args.digits) for v in r] for r in rows))


# check suites: each yields (label, thunk) where the thunk returns (ok, detail)

Check = tuple[str, Callable[[], tuple[bool, str]]]


def _suite_eigen(fam, imax) -> Iterable[Check]:
    for i in range(imax + 1):
        def run(i=i):
            lam = eigenvalue(fam.alpha, i)
            return xop2.eigencheck(fam, i), f"T C_{i} != {rat_to_str(lam)} C_{i}; C_{i} = {fam.xpoly(i)}"
        yield f"eigen i={i}", run


def _suite_orth(fam, imax) -> Iterable[Check]:
    for i in range(imax + 1):
        for j in range(i + 1, imax + 1):
            def run(i=i, j=j):
                v = xop2.rho_deformed(fam, i, j)(1)
                return v == 0, f"rho_{i}{j}(1) = {rat_to_str(v)}"
            yield f"orth ({i},{j})", run
        def deriv(i=i):
            j = (i + 1) % (imax + 1)
            return xop2.rho_derivative_check(fam, i, j), f"derivative identity fails for ({i},{j})"
        yield f"orth derivative i={i}", deriv


def _suite_norms(fam, imax) -> Iterable[Check]:
    for i in range(imax + 1):
        def run(i=i):
            xop2.norm(fam, i)
            return True, ""
        yield f"norm i={i}", run


def _suite_degrees(fam, imax) -> Iterable[Check]:
    for i in range(imax + 1):
        def run(i=i):
            xop2.degrees(fam, i)
            return True, ""
        yield f"degrees i={i}", run


def _suite_positivity(fam, imax) -> Iterable[Check]:
    def run():
        ok = xop2.positivity_verify(fam)
        return ok, "tau has a zero on [-1,1]"
    yield "positivity", run


def _suite_equivalence(fam, imax) -> Iterable[Check]:
    rec = xop2.family_recursive(fam.alpha, fam.m, fam.t)
    yield "equivalence tau", lambda: (fam.tau == rec.tau(), f"matrix {fam.tau} vs recursion {rec.tau()}")
    for i in range(imax + 1):
        def run(i=i):
            a, b = fam.xpoly(i), rec.xpoly(i)
            return a == b, f"matrix {a} vs recursion {b}"
        yield f"equivalence i={i}", run


def _suite_intertwine(fam, imax) -> Iterable[Check]:
    yield "intertwine", lambda: (xop2.intertwine_check(fam, imax), "confluent step identities fail")


def _suite_crum(fam, imax) -> Iterable[Check]:
    a = fam.alpha
    t0 = xgeg_operator(a, 1)
    idx = [i for i in range(1, min(imax, 3) + 1)] or [1]
    for n in range(1, len(idx) + 1):
        def run(n=n):
            seeds = [darboux.SeedSpec(classical_poly(a, i), eigenvalue(a, i)) for i in idx[:n]]
            ch = darboux.build_chain(t0, seeds)
            ok = all(
                darboux.factorization_check(ch, k) and darboux.riccati_residual(ch, k).is_zero()
                for k in range(1, n + 1)
            )
            gauged = darboux.build_chain(
                t0,
                [darboux.SeedSpec(s.phi, s.lam, Z + (k + 2)) for k, s in enumerate(seeds)],
            )
            return ok and darboux.gauge_check(gauged), f"chain of length {n} fails"
        yield f"crum chain n={n}", run
    def schrod():
        ch = darboux.build_chain(DiffOp([0, 0, -1]), [darboux.SeedSpec(Z, 0)])
        return darboux.crum_schrodinger_check(ch), "T_1 - T_0 != -2 (log z)''"
    yield "crum schrodinger", schrod


_SUITE_FUNCS = {
    "eigen": _suite_eigen,
    "orth": _suite_orth,
    "norms": _suite_norms,
    "degrees": _suite_degrees,
    "positivity": _suite_positivity,
    "equivalence": _suite_equivalence,
    "intertwine": _suite_intertwine,
    "crum": _suite_crum,
}


def _parse_suites(s: str | None) -> list[str]:
    if s is None or s.strip() == "all":
        return list(SUITES)
    names = [x.strip() for x in s.split(",") if x.strip()]
    unknown = [x for x in names if x not in SUITES]
    if unknown:
        raise InputError(f"--suites: unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    return names


def cmd_check(args) -> tuple[int, str]:
    fam = _family(args)
    suites = _parse_suites(args.suites)
    inadmissible = not fam.is_admissible()
    if inadmissible and not args.expect_inadmissible:
        _require_admissible(fam)
    if args.expect_inadmissible and not inadmissible:
        return EXIT_FAIL, "FAIL expect-inadmissible: parameters are admissible\n"
    report: dict[str, dict] = {}
    first_failure = None
    for name in suites:
        entry = {"passed": 0, "failed": 0, "status": "ok"}
        if inadmissible and name == "positivity":
            count = xop2.sturm_count(fam.tau, -1, 1, closed=True)
            entry["status"] = f"expected-fail: inadmissible, root count {count} >= 1"
            if count < 1:
                entry["failed"] = 1
                entry["status"] = "fail: inadmissible but no root on [-1,1]"
                first_failure = first_failure or (name, "positivity", "thresholds and Sturm count disagree")
            report[name] = entry
            continue
        if inadmissible and name == "norms":
            entry["status"] = "skipped: norms need admissible parameters"
            report[name] = entry
            continue
        for label, thunk in _SUITE_FUNCS[name](fam, args.imax):
            try:
                ok, detail = thunk()
            except (ConsistencyError, XGegError) as e:
                ok, detail = False, str(e)
            if ok:
                entry["passed"] += 1
            else:
                entry["failed"] += 1
                entry["status"] = "fail"
                if first_failure is None:
                    first_failure = (name, label, detail)
        report[name] = entry
    code = EXIT_FAIL if first_failure else EXIT_OK
    if args.format == "json":
        rec = {**_header(fam, "check"), "imax": args.imax, "suites": report, "ok": code == EXIT_OK}
        if first_failure:
            rec["first_failure"] = dict(zip(("suite", "check", "detail"), first_failure))
        return code, _dump_json(rec)
    lines = [f"family {fam}"]
    for name, e in report.items():
        lines.append(f"{name}: {e['passed']} passed, {e['failed']} failed [{e['status']}]")
    if first_failure:
        lines.append(f"first failure: {first_failure[1]}: {first_failure[2]}")
    lines.append("PASS" if code == EXIT_OK else "FAIL")
    return code, "\n".join(lines) + "\n"


def cmd_darboux_demo(args) -> tuple[int, str]:
    alpha = _parse_alpha(args.alpha)
    idx = _parse_list(args.m, _parse_int, "--m") or (1,)
    if len(set(idx)) != len(idx):
        raise InputError("--m indices for the demo chain must be distinct")
    t0 = xgeg_operator(alpha, 1)
    seeds = [darboux.SeedSpec(classical_poly(alpha, i), eigenvalue(alpha, i)) for i in idx]
    try:
        ch = darboux.build_chain(t0, seeds)
    except XGegError as e:
        raise InputError(str(e)) from None
    steps = []
    ok = True
    for k in range(1, ch.n + 1):
        fac = darboux.factorization_check(ch, k)
        ric = darboux.riccati_residual(ch, k).is_zero()
        ok = ok and fac and ric
        steps.append(
            {
                "k": k,
                "seed": idx[k - 1],
                "lambda": rat_to_str(ch.seeds[k - 1].lam),
                "A": str(ch.a[k - 1]),
                "B": str(darboux.partner(ch, k)),
                "T": str(ch.t[k]),
                "factorization": fac,
                "riccati_zero": ric,
            }
        )
    code = EXIT_OK if ok else EXIT_FAIL
    if args.format == "csv":
        rows = [(s["k"], s["seed"], s["lambda"], s["factorization"], s["riccati_zero"]) for s in steps]
        return code, _dump_csv(("k", "seed", "lambda", "factorization", "riccati_zero"), rows)
    rec = {"schema": SCHEMA, "kind": "darboux", "alpha": str(alpha), "T0": str(t0), "steps": steps, "ok": ok}
    return code, _dump_json(rec)


COMMANDS = {
    "poly": cmd_poly,
    "tau": cmd_tau,
    "weight": cmd_weight,
    "norms": cmd_norms,
    "check": cmd_check,
    "sample": cmd_sample,
    "darboux-demo": cmd_darboux_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", default="3/2", help="half-integer alpha, e.g. 3/2")
    common.add_argument("--m", default="", help="comma-separated indices, e.g. 4 or 1,3")
    common.add_argument("--t", default="", help="comma-separated rational parameters, e.g. 1/2")
    common.add_argument("--imax", type=int, default=4, help="largest polynomial index")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="xgeg", description="Exact exceptional Gegenbauer polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("poly", "tau", "weight", "norms", "darboux-demo"):
        sub.add_parser(name, parents=[common])
    chk = sub.add_parser("check", parents=[common])
    chk.add_argument("--suites", default="all", help=f"comma list from {','.join(SUITES)}, or 'all'")
    chk.add_argument("--expect-inadmissible", action="store_true")
    smp = sub.add_parser("sample", parents=[common])
    smp.add_argument("--npoints", type=int, default=101)
    smp.add_argument("--digits", type=int, default=20)
    smp.add_argument("--i", default=None, help="sample these C_{m;i} instead of tau")
    return parser


_NEG_VALUE = re.compile(r"^-\d[\d/,\-]*$")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--t -1/3`` into ``--t=-1/3`` so argparse does not read a flag."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1] in ("--t", "--m") and _NEG_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    if args.format is None:
        args.format = {"sample": "csv", "check": "text"}.get(args.command, "json")
    try:
        allowed = ("json", "text") if args.command == "check" else ("json", "csv")
        if args.format not in allowed:
            raise InputError(f"--format {args.format} is not available for {args.command}")
        code, text = COMMANDS[args.command](args)
    except InputError as e:
        print(f"xgeg: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

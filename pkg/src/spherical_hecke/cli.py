"""Command-line front end.

Exit codes: 0 when every assertion holds, 1 on an identity failure (the
report carries the counterexample), 2 on a usage error.  JSON reports carry
a ``schema`` tag and echo the validated configuration; q-powers are written
as integer v-exponents (``v^2 = q^-1``).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .charring import PCache, kostant_check
from .exactalg import LaurentScalar
from .hecke import (
    L_gamma_numeric,
    L_gamma_series,
    SatakeParameter,
    converge_target,
    id1_check,
    plancherel_check,
    satake_H,
)
from .laumon import stalk_table
from .rootdata import build_root_system, dominant_weights_up_to

SCHEMA = "spherical-hecke-report/1"
PRIMES = (2, 3, 5)


class UsageError(ValueError):
    pass


def _weight(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer weight: {text!r}")


def _numbers(text: str) -> tuple:
    try:
        return tuple(Fraction(x) for x in text.replace(" ", "").split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a list of rationals: {text!r}")


def _rs(args):
    label = args.rs or (f"GL{args.n}" if getattr(args, "n", None) else None)
    if label is None:
        raise UsageError("give --rs or --n")
    try:
        return build_root_system(label)
    except ValueError as exc:
        raise UsageError(str(exc))


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return val


def _gl_n(args) -> int:
    rs = _rs(args)
    if rs.family != "GL":
        raise UsageError("the p-adic oracle only handles GL_n")
    return rs.dim


def _check_p(args) -> int:
    if args.p not in PRIMES:
        raise UsageError(f"--p must be one of {PRIMES}")
    return args.p


def _weight_for(rs, w: tuple, name: str) -> tuple:
    try:
        return rs.check_weight(w)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}")


def _v_terms(c: LaurentScalar) -> list:
    return [[e, x if isinstance(x, int) else str(x)] for e, x in c.items()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_lk(args) -> dict:
    rs = _rs(args)
    lam = _weight_for(rs, _need(args, "lam"), "lambda")
    if not rs.is_dominant(lam):
        raise UsageError(f"{lam} is not dominant")
    cache = PCache(args.cache_dir)
    rows = []
    for mu in dominant_weights_up_to(rs, lam):
        P = cache.get(rs, lam, mu)
        rows.append({"mu": list(mu), "P": P})
    ok = rows[0]["P"] == [1] and all(min(r["P"]) >= 0 for r in rows)
    return {"claim": f"P_(mu,lam) for lam={list(lam)} in {rs.label}", "pass": ok, "rows": rows,
            "text": _table(["mu", "P(q) coefficients"], [(r["mu"], r["P"]) for r in rows])}


def cmd_satake(args) -> dict:
    rs = _rs(args)
    lam = _weight_for(rs, _need(args, "lam"), "lambda")
    if not rs.is_dominant(lam):
        raise UsageError(f"{lam} is not dominant")
    h = satake_H(rs, lam)
    data = h.to_json("c")
    lines = [f"H_{list(lam)} = sum over mu of coeff * c_mu   (coefficients as v-exponent: value)"]
    lines += [f"  {list(mu)}: {_v_terms(c)}" for mu, c in h.coeffs.items()]
    return {"claim": f"H_lam for lam={list(lam)} in {rs.label}", "pass": True, "element": data,
            "text": "\n".join(lines)}


def cmd_local_check(args) -> dict:
    from .padic.oracles import fourier_oracle, specialize, theorem_local_check

    n, p = _gl_n(args), _check_p(args)
    if args.lam is not None or args.nu is not None:
        lam, nu = _need(args, "lam"), _need(args, "nu")
        if len(lam) != n or len(nu) != n:
            raise UsageError("weights must have n entries")
        rs = build_root_system(f"GL{n}")
        raw = fourier_oracle(lam, nu, p, args.pole_bound, args.precision)
        got = specialize(raw, p)
        want = LaurentScalar.v(rs.two_pairing_rho(lam)).at_q(p) if tuple(lam) == tuple(nu) else 0
        return {"claim": f"Phi(H_{list(lam)})({list(nu)}(pi)) = q^-(lam,rho) delta", "pass": got == want,
                "lhs": [str(got.a), str(got.b)], "rhs": str(want)}
    deg = _need(args, "deg_max")
    return theorem_local_check(n, p, deg, args.max_part, jobs=args.jobs, stabilize=not args.no_stabilize,
                               sign=args.sign)


def cmd_fplus_check(args) -> dict:
    from .padic.oracles import fplus_check, fplus_suite

    n, p = _gl_n(args), _check_p(args)
    if args.nu is not None:
        if len(args.nu) != n:
            raise UsageError("--nu must have n entries")
        return fplus_check(args.nu, p, args.sign)
    return fplus_suite(n, p, _need(args, "deg_max"), args.max_part, args.sign)


def cmd_cs_check(args) -> dict:
    from .padic.oracles import cs_eigen_check

    n, p = _gl_n(args), _check_p(args)
    mu, nu = _need(args, "mu"), _need(args, "nu")
    if len(mu) != n or len(nu) != n:
        raise UsageError("weights must have n entries")
    return cs_eigen_check(mu, nu, p, args.sign)


def cmd_satake_oracle_check(args) -> dict:
    from .padic.oracles import satake_oracle_check

    return satake_oracle_check(_gl_n(args), _check_p(args), _need(args, "deg_max"))


def cmd_kostant_check(args) -> dict:
    return kostant_check(_rs(args), args.max_height, args.degree)


def cmd_id1_check(args) -> dict:
    rs = _rs(args)
    mu = _weight_for(rs, args.mu if args.mu is not None else (0,) * rs.dim, "mu")
    return id1_check(rs, mu, args.degree)


def cmd_plancherel_check(args) -> dict:
    return plancherel_check(_rs(args), args.degree, args.max_height)


def cmd_lgamma(args) -> dict:
    rs = _rs(args)
    if args.gamma is None:
        mu = _weight_for(rs, args.mu if args.mu is not None else (0,) * rs.dim, "mu")
        s = L_gamma_series(rs, mu, args.degree)
        coeffs = [[[list(w), c] for w, c in sorted(chi.items(), reverse=True)] for chi in s.coeffs]
        return {"claim": f"L_gamma({list(mu)}(pi)) through u^{args.degree}", "pass": True,
                "prefactor_v_exponent": rs.two_pairing_rho(mu), "series": coeffs}
    if args.q is None:
        raise UsageError("--q is required with --gamma")
    if len(args.gamma) != rs.dim:
        raise UsageError("--gamma needs one eigenvalue per torus coordinate")
    gamma = SatakeParameter(rs, args.gamma, "unitary", args.q)
    sums = L_gamma_numeric(rs, gamma, args.terms)
    target = converge_target(rs, gamma)
    rel = abs(float((sums[-1] - target) / target))
    return {"claim": f"partial sums of L_gamma(1) converge for gamma={[str(x) for x in args.gamma]}, q={args.q}",
            "pass": rel < args.tolerance, "lhs": float(sums[-1]), "rhs": float(target), "relative_error": rel,
            "enumerated": args.terms}


def cmd_stalks(args) -> dict:
    rs = _rs(args)
    lam = _weight_for(rs, _need(args, "lam"), "lambda")
    if not rs.is_dominant(lam):
        raise UsageError(f"{lam} is not dominant")
    table = stalk_table(rs, lam)
    return {"claim": f"IC stalks for lam={list(lam)} in {rs.label}", "pass": True, **table.to_json(),
            "text": table.to_csv()}


COMMANDS: dict[str, Callable] = {
    "lk": cmd_lk,
    "satake": cmd_satake,
    "local-check": cmd_local_check,
    "fplus-check": cmd_fplus_check,
    "cs-check": cmd_cs_check,
    "satake-oracle-check": cmd_satake_oracle_check,
    "kostant-check": cmd_kostant_check,
    "id1-check": cmd_id1_check,
    "plancherel-check": cmd_plancherel_check,
    "lgamma": cmd_lgamma,
    "stalks": cmd_stalks,
}


def _table(header: Sequence[str], rows: Sequence[tuple]) -> str:
    cells = [[str(x) for x in header]] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rs", help="root system, e.g. GL3, A2, B2")
    common.add_argument("--n", type=int, help="rank of GL_n (alternative to --rs)")
    common.add_argument("--p", type=int, default=2, help="residue characteristic (2, 3 or 5)")
    common.add_argument("--lambda", dest="lam", type=_weight, help="weight, comma separated")
    common.add_argument("--mu", type=_weight)
    common.add_argument("--nu", type=_weight)
    common.add_argument("--deg-max", type=int, help="largest |lambda| in a suite")
    common.add_argument("--max-part", type=int, help="largest lambda_1 in a suite")
    common.add_argument("--pole-bound", type=_weight, help="per-column pole bounds D")
    common.add_argument("--precision", type=int, help="precision m of the coset enumeration")
    common.add_argument("--no-stabilize", action="store_true", help="skip the enlarged-bounds rerun")
    common.add_argument("--sign", type=int, choices=(-1, 1), default=-1, help="exponent of Psi in the integrals")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--degree", type=int, default=8, help="truncation degree J in u")
    common.add_argument("--max-height", type=int, default=4)
    common.add_argument("--gamma", type=_numbers, help="numeric unitary Satake parameter")
    common.add_argument("--q", type=int)
    common.add_argument("--terms", type=int, default=50)
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--cache-dir", help=f"directory for cached P-polynomials (or ${PCache.ENV})")

    parser = argparse.ArgumentParser(prog="spherical-hecke", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _summary(report: dict) -> str:
    if "text" in report:
        return report["text"].rstrip("\n")
    lines = [f"{'PASS' if report.get('pass') else 'FAIL'}  {report.get('claim', '')}"]
    for key in ("enumerated", "elapsed"):
        if key in report:
            val = report[key]
            lines.append(f"  {key}: {val:.2f}s" if key == "elapsed" else f"  {key}: {val}")
    if not report.get("pass"):
        bad = report.get("failures") or [r for r in report.get("rows", []) if not r.get("pass", True)]
        for item in bad[:5]:
            lines.append(f"  counterexample: {json.dumps(item, default=str)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.setdefault("elapsed", time.perf_counter() - t0)
    config = {("lambda" if k == "lam" else k): (list(v) if isinstance(v, tuple) else v)
              for k, v in vars(args).items() if v is not None}
    if args.json:
        out: dict[str, Any] = {"schema": SCHEMA, "command": args.command,
                               "config": {k: ([str(x) for x in v] if k == "gamma" else v) for k, v in config.items()}}
        out.update({k: v for k, v in report.items() if k != "text"})
        print(json.dumps(out, default=str, indent=None))
    else:
        print(_summary(report))
    return 0 if report.get("pass") else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

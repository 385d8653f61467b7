"""Command-line front end.

Subcommands: ``compute`` evaluates the zeta function through the
semiquasihomogeneous driver (inputs with a constant term go straight to the
one-region recursive engine), ``oracle`` counts congruence solutions
exhaustively, and ``check`` cross-validates the two (plus the two-term
closed form when it applies).

Exit codes are stable: 0 success, 2 parse error, 3 no admissible weight
system, 4 recursion depth cap, 5 stabilization cap, 6 enumeration budget,
1 anything else.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from math import gcd
from typing import Optional

from . import analysis, spf, sqh
from .coeff import DEFAULT_BUDGET, LocalRing
from .errors import (
    BudgetExceeded,
    DepthExceeded,
    EngineError,
    InvalidHint,
    NotSemiQuasiHomogeneous,
    PolynomialSyntaxError,
    StabilizationNotReached,
)
from .poly import MultiPoly, parse
from .ratfun import RatFun
from .region import ResidueRegion

CACHE_ENV = "IGUSA_ZETA_CACHE_DIR"

EXIT_CODES = (
    (PolynomialSyntaxError, 2),
    ((NotSemiQuasiHomogeneous, InvalidHint), 3),
    (DepthExceeded, 4),
    (StabilizationNotReached, 5),
    (BudgetExceeded, 6),
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="igusa-zeta",
        description="exact Igusa local zeta functions of semiquasihomogeneous polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("poly", help='polynomial text, e.g. "x^2+y^3" (u = uniformizer in char p)')
        p.add_argument("--prime", type=int, required=True, help="residue characteristic p")
        p.add_argument("--char", choices=["0", "p"], default="0",
                       help="field characteristic: 0 for Q_p, p for F_p((u))")
        p.add_argument("--format", choices=["text", "json", "latex"], default="text")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="enumeration budget (points)")
        p.add_argument("--max-depth", type=int, default=64, help="dilatation recursion cap")
        p.add_argument("--max-iter", type=int, default=32, help="stabilization iteration cap")
        p.add_argument("--cache", default=None, help=f"result cache directory (or ${CACHE_ENV})")

    c = sub.add_parser("compute", help="compute Z(f, s) via the weight-system driver")
    common(c)
    c.add_argument("--weights", default=None, help='weight hint "a1,a2,...:d"')
    c.add_argument("--expand", type=int, default=4, metavar="J",
                   help="report congruence counts N_0..N_J extracted from P(t)")
    c.add_argument("--trace", default=None, metavar="FILE",
                   help="write the dilatation tree as JSON")

    o = sub.add_parser("oracle", help="count congruence solutions by brute force")
    common(o)
    o.add_argument("--levels", type=int, default=4, metavar="J", help="count N_0..N_J")

    k = sub.add_parser("check", help="cross-validate engine, oracle and closed form")
    common(k)
    k.add_argument("--weights", default=None, help='weight hint "a1,a2,...:d"')
    k.add_argument("--levels", type=int, default=4, metavar="J", help="comparison depth")
    return parser


def _parse_weights(text: Optional[str]) -> Optional[sqh.WeightSystem]:
    if text is None:
        return None
    try:
        alphas, d = text.split(":")
        alpha = tuple(int(a) for a in alphas.split(","))
        return sqh.WeightSystem(alpha, int(d))
    except (ValueError, TypeError) as exc:
        raise InvalidHint(f"cannot parse weight hint {text!r}: {exc}") from None


def _ring(args) -> LocalRing:
    return LocalRing(args.prime, positive_char=args.char == "p")


def _config(args) -> spf.SpfConfig:
    return spf.SpfConfig(
        max_depth=args.max_depth,
        budget=args.budget,
        max_iterations=args.max_iter,
        trace=getattr(args, "trace", None) is not None,
    )


def _cache_dir(args) -> Optional[str]:
    return args.cache or os.environ.get(CACHE_ENV)


def _cache_key(args, fields: dict) -> str:
    payload = {
        "command": args.command,
        "prime": args.prime,
        "char": args.char,
        "format": args.format,
        "budget": args.budget,
        "max_depth": args.max_depth,
        "max_iter": args.max_iter,
        **fields,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_load(directory: Optional[str], key: str) -> Optional[str]:
    if directory is None:
        return None
    path = os.path.join(directory, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path) as handle:
        return json.load(handle)["output"]


def _cache_store(directory: Optional[str], key: str, output: str):
    if directory is None:
        return
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, key + ".json")
    with open(path, "w") as handle:
        json.dump({"output": output}, handle)


def _frac(q: Fraction) -> str:
    return str(q)


def _render_compute(args, f: MultiPoly, Z: RatFun, report, counts) -> str:
    poincare = analysis.poincare_from_zeta(Z, f.n)
    if args.format == "json":
        doc = {
            "poly": f.render(),
            "prime": args.prime,
            "char": args.char,
            "zeta": Z.to_json(),
            "poincare": poincare.ratfun.to_json(),
            "pole_real_parts": [[q.numerator, q.denominator] for q in sorted(Z.pole_real_parts())],
            "N": counts,
        }
        if report is not None:
            doc["report"] = report.to_json()
        return json.dumps(doc, sort_keys=True)
    if args.format == "latex":
        return f"Z(f,s) = {Z.latex()}"
    lines = [f"Z(f, s) over {'F_%d((u))' % args.prime if args.char == 'p' else 'Q_%d' % args.prime}, t = {args.prime}^(-s)"]
    if report is not None:
        w = report.weights
        lines.append(f"  weights     alpha = {tuple(w.alpha)}, d = {w.d}  (|alpha| = {w.total})")
        lines.append(f"  k0          {report.k0}")
        lines.append(f"  tree        {report.tree_stats}")
    lines.append(f"  Z           {Z}")
    poles = sorted(Z.pole_real_parts())
    lines.append(f"  poles Re(s) {', '.join(map(_frac, poles)) if poles else '(none)'}")
    lines.append(f"  P(t)        {poincare.ratfun}")
    lines.append(f"  N_j (j<={len(counts) - 1})  {counts}")
    return "\n".join(lines)


def cmd_compute(args) -> int:
    ring = _ring(args)
    f = parse(args.poly, ring)
    hint = _parse_weights(args.weights)
    cfg = _config(args)
    cache = _cache_dir(args)
    key = _cache_key(
        args,
        {
            "poly": f.render(),
            "weights": args.weights,
            "expand": args.expand,
            "traced": args.trace is not None,
        },
    )
    cached = _cache_load(cache, key)
    if cached is not None:
        print(cached)
        return 0
    if not f.constant_term().is_zero():
        # a constant term rules out the weight driver; one recursion suffices
        Z, trace = spf.spf_zeta(f, ResidueRegion.full(ring.p, f.n), cfg)
        report = None
        trace_doc = trace.to_json()
    else:
        Z, report = sqh.zeta_semiquasihomogeneous(f, hint, cfg)
        trace_doc = {"tree_stats": report.tree_stats}
    counts = analysis.poincare_from_zeta(Z, f.n).counts(args.expand)
    output = _render_compute(args, f, Z, report, counts)
    if args.trace:
        with open(args.trace, "w") as handle:
            json.dump(trace_doc, handle, sort_keys=True)
    _cache_store(cache, key, output)
    print(output)
    return 0


def cmd_oracle(args) -> int:
    ring = _ring(args)
    f = parse(args.poly, ring)
    cache = _cache_dir(args)
    key = _cache_key(args, {"poly": f.render(), "levels": args.levels})
    cached = _cache_load(cache, key)
    if cached is not None:
        print(cached)
        return 0
    counts = analysis.oracle_counts(f, args.levels, args.budget)
    if args.format == "json":
        output = json.dumps({"p": args.prime, "n": f.n, "N": counts}, sort_keys=True)
    else:
        output = "\n".join(f"N_{j} = {c}" for j, c in enumerate(counts))
    _cache_store(cache, key, output)
    print(output)
    return 0


def _closed_form_shape(f: MultiPoly):
    """Detect alpha*x^n + beta*y^m with a unit coefficient, up to swapping axes."""
    if f.n != 2 or len(f.terms) != 2:
        return None
    exps = sorted(f.terms)
    (e1, e2) = exps
    if e1[0] != 0 or e1[1] < 2 or e2[1] != 0 or e2[0] < 2:
        return None
    m_y, n_x = e1[1], e2[0]
    if gcd(n_x, m_y) != 1:
        return None
    a, b = f.terms[e2], f.terms[e1]
    if a.valuation() == 0:
        return n_x, m_y, a, b, False
    if b.valuation() == 0:
        return m_y, n_x, b, a, True
    return None


def cmd_check(args) -> int:
    ring = _ring(args)
    f = parse(args.poly, ring)
    hint = _parse_weights(args.weights)
    cfg = _config(args)
    full = ResidueRegion.full(ring.p, f.n)
    if not f.constant_term().is_zero():
        Z, _ = spf.spf_zeta(f, full, cfg)
    else:
        Z, _ = sqh.zeta_semiquasihomogeneous(f, hint, cfg)
    results = []
    counts = analysis.oracle_counts(f, args.levels, args.budget)
    extracted = analysis.poincare_from_zeta(Z, f.n).counts(args.levels)
    results.append(("poincare counts == oracle counts", extracted == counts))
    results.append(
        ("series expansion == valuation fibers", spf.series_check(f, full, Z, args.levels, args.budget))
    )
    shape = _closed_form_shape(f)
    if shape is not None:
        n_x, m_y, a, b, _swapped = shape
        closed = analysis.two_term_closed_form(ring, n_x, m_y, a, b)
        results.append(("engine == closed form", closed == Z))
    ok = all(flag for _, flag in results)
    for label, flag in results:
        print(f"{'PASS' if flag else 'FAIL'}  {label}")
    print(f"checked N up to j={args.levels}: {counts}")
    return 0 if ok else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"compute": cmd_compute, "oracle": cmd_oracle, "check": cmd_check}
    try:
        return handlers[args.command](args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for types, code in EXIT_CODES:
            if isinstance(exc, types):
                return code
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():  # console-script shim
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())

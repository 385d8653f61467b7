"""Driver for semiquasihomogeneous polynomials.

A weight system (alpha, d) splits F into a quasihomogeneous part f (all
monomials of weighted degree exactly d) and a tail of strictly larger
weighted degree.  The full-space zeta integral then satisfies a functional
equation under the scaling x -> pi^alpha o x: the polydisc A_alpha maps onto
the full space, producing the factor q^(-|alpha|) t^d and replacing F by a
polynomial whose tail gained one more power of pi.  Iterating, the
complement integrals stabilize to the one for f alone, and the geometric
tail closes the sum:

    Z(F) = sum_{k < k0} u^k C_k  +  u^k0 C_inf / (1 - u),      u = q^(-|alpha|) t^d,

with C_k the complement integral of the k-th iterate and C_inf that of f.
Stabilization is detected dynamically (two consecutive iterates equal to
C_inf) rather than through an a priori bound; the series cross-check in the
analysis module certifies the result independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .errors import (
    InvalidHint,
    InvariantViolation,
    NotSemiQuasiHomogeneous,
    StabilizationNotReached,
    ZeroPolynomial,
)
from .poly import MultiPoly, weighted_degree
from .ratfun import DenomFactor, RatFun
from .region import Polydisc, cell_change_of_variables, complement_cells
from .spf import SpfConfig, SpfContext, spf_zeta


@dataclass(frozen=True)
class WeightSystem:
    """Coprime positive exponents alpha and the weighted degree d."""

    alpha: Tuple[int, ...]
    d: int

    def __post_init__(self):
        if not self.alpha or any(a < 1 for a in self.alpha):
            raise ValueError("weights must be positive")
        g = 0
        for a in self.alpha:
            g = gcd(g, a)
        if g != 1:
            raise ValueError("weights must be coprime")
        if self.d < 1:
            raise ValueError("weighted degree must be positive")

    @property
    def total(self) -> int:
        return sum(self.alpha)


@dataclass
class SqhDecomposition:
    """F = quasi + tail with the tail strictly above weighted degree d."""

    quasi: MultiPoly
    tail: MultiPoly
    weights: WeightSystem

    def __post_init__(self):
        alpha, d = self.weights.alpha, self.weights.d
        if self.quasi.is_zero():
            raise InvariantViolation("empty quasihomogeneous part")
        if any(weighted_degree(e, alpha) != d for e in self.quasi.terms):
            raise InvariantViolation("quasihomogeneous part off weight")
        if any(weighted_degree(e, alpha) <= d for e in self.tail.terms):
            raise InvariantViolation("tail monomial at or below weight")


def _split_by_weight(F: MultiPoly, w: WeightSystem) -> Tuple[MultiPoly, MultiPoly]:
    quasi = {e: c for e, c in F.terms.items() if weighted_degree(e, w.alpha) == w.d}
    tail = {e: c for e, c in F.terms.items() if weighted_degree(e, w.alpha) > w.d}
    return MultiPoly(F.ring, F.n, quasi), MultiPoly(F.ring, F.n, tail)


def detect_weights(F: MultiPoly, hint: Optional[WeightSystem] = None) -> SqhDecomposition:
    """Find (or validate) a weight system exhibiting F as semiquasihomogeneous.

    With a hint, every monomial must have weighted degree >= d and those
    equal to d must be nonempty.  Without one, weight vectors with entries
    up to the total degree are searched in order of |alpha| then
    lexicographically; a candidate is admissible when every variable occurs
    in the minimal-weight part (a cheap necessary condition for the origin
    to be the only singularity of that part -- the full condition refers to
    the algebraic closure and is asserted by the caller, not decided here).
    """
    if F.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    if not F.constant_term().is_zero():
        raise NotSemiQuasiHomogeneous("polynomial has a constant term")
    if hint is not None:
        degrees = {e: weighted_degree(e, hint.alpha) for e in F.terms}
        below = [e for e, deg in degrees.items() if deg < hint.d]
        if below:
            raise InvalidHint(
                f"monomial {below[0]} has weighted degree {degrees[below[0]]} < {hint.d}"
            )
        quasi, tail = _split_by_weight(F, hint)
        if quasi.is_zero():
            raise InvalidHint(f"no monomial of weighted degree exactly {hint.d}")
        return SqhDecomposition(quasi, tail, hint)

    n = F.n
    box = max(F.total_degree(), 1)
    candidates = sorted(
        (alpha for alpha in itertools.product(range(1, box + 1), repeat=n)
         if _gcd_all(alpha) == 1),
        key=lambda a: (sum(a), a),
    )
    needed = frozenset(range(n))
    for alpha in candidates:
        degrees = {e: weighted_degree(e, alpha) for e in F.terms}
        d = min(degrees.values())
        quasi_exps = [e for e, deg in degrees.items() if deg == d]
        covered = frozenset(i for e in quasi_exps for i in range(n) if e[i] > 0)
        if covered == needed:
            w = WeightSystem(tuple(alpha), d)
            quasi, tail = _split_by_weight(F, w)
            return SqhDecomposition(quasi, tail, w)
    raise NotSemiQuasiHomogeneous(
        f"no admissible weight system with entries up to {box}"
    )


def _gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def scale_step(F: MultiPoly, w: WeightSystem) -> MultiPoly:
    """The iterate pi^(-d) F(pi^alpha o x); exact by semiquasihomogeneity.

    Fixes the weight-d part and multiplies each tail monomial by
    pi^(weighted degree - d).
    """
    zero = [F.ring.zero()] * F.n
    return F.substitute_affine(zero, w.alpha).divide_by_uniformizer(w.d)


def zeta_on_complement(
    F: MultiPoly,
    w: WeightSystem,
    cfg: Optional[SpfConfig] = None,
    ctx: Optional[SpfContext] = None,
) -> RatFun:
    """Zeta integral of F over the complement of the polydisc A_alpha.

    Assembled as the signed sum over valuation cells, each rewritten onto a
    residue region and evaluated recursively.  The result of each cell has a
    single geometric denominator, so after cancellation the sum's
    denominator divides (1 - q^(-1) t); that is asserted.
    """
    if cfg is None:
        cfg = SpfConfig()
    if ctx is None:
        ctx = SpfContext(cfg)
    p = F.ring.p
    total = RatFun.zero(p)
    for sign, cell in complement_cells(Polydisc(w.alpha)):
        e, d_shift, f_cell, target = cell_change_of_variables(F, cell)
        value, _ = spf_zeta(f_cell, target, cfg, ctx)
        total = total + value.scale(Fraction(sign, p**d_shift), e)
    if not set(total.denom) <= {DenomFactor(1, 1)} or len(total.denom) > 1:
        raise InvariantViolation(
            f"complement integral has unexpected denominator {total.denom}"
        )
    return total


@dataclass
class SqhReport:
    """What the driver learned: weights, stabilization index, poles, sizes."""

    weights: WeightSystem
    k0: int
    zeta: RatFun
    pole_real_parts: list
    tree_stats: dict
    content_shift: int = 0

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights.alpha),
            "d": self.weights.d,
            "k0": self.k0,
            "zeta": self.zeta.to_json(),
            "pole_real_parts": [[q.numerator, q.denominator] for q in sorted(self.pole_real_parts)],
            "tree_stats": self.tree_stats,
            "content_shift": self.content_shift,
        }


def zeta_semiquasihomogeneous(
    F: MultiPoly,
    hint: Optional[WeightSystem] = None,
    cfg: Optional[SpfConfig] = None,
) -> Tuple[RatFun, SqhReport]:
    """Full-space zeta function of a semiquasihomogeneous polynomial.

    Returns the value and a report (weights, stabilization index k0, pole
    real parts, tree statistics).  The caller asserts that the origin is the
    only singularity over the algebraic closure; a violated assertion
    surfaces as DepthExceeded or StabilizationNotReached, never as a wrong
    value that the caps silently accept.
    """
    if cfg is None:
        cfg = SpfConfig()
    if F.is_zero():
        raise ZeroPolynomial("zeta integral of the zero polynomial diverges")
    e0 = F.content_valuation()
    if e0:
        F = F.divide_by_uniformizer(e0)
    dec = detect_weights(F, hint)
    w = dec.weights
    p = F.ring.p
    ctx = SpfContext(cfg)
    c_limit = zeta_on_complement(dec.quasi, w, cfg, ctx)
    u_scale = Fraction(1, p**w.total)

    if dec.tail.is_zero():
        k0 = 0
        value = c_limit.geometric_close(w.total, w.d)
    else:
        iterates: List[RatFun] = [zeta_on_complement(F, w, cfg, ctx)]
        current = F
        tail_level = dec.tail.content_valuation()
        k0 = None
        for k in range(1, cfg.max_iterations + 1):
            current = scale_step(current, w)
            tail_k = current - dec.quasi
            level = tail_k.content_valuation()
            if level <= tail_level:
                raise InvariantViolation("tail valuation failed to increase")
            tail_level = level
            iterates.append(zeta_on_complement(current, w, cfg, ctx))
            if k >= 2 and iterates[k - 1] == c_limit and iterates[k] == c_limit:
                k0 = k - 1
                break
        if k0 is None:
            raise StabilizationNotReached(
                f"no stabilization within {cfg.max_iterations} iterations"
            )
        value = RatFun.zero(p)
        for k in range(k0):
            value = value + iterates[k].scale(u_scale**k, w.d * k)
        value = value + c_limit.scale(u_scale**k0, w.d * k0).geometric_close(w.total, w.d)

    if e0:
        value = value.scale(1, e0)
    allowed = sorted([DenomFactor(1, 1), DenomFactor(w.total, w.d)])
    remaining = list(value.denom)
    for factor in allowed:
        if factor in remaining:
            remaining.remove(factor)
    if remaining:
        raise InvariantViolation(f"denominator {value.denom} outside the guaranteed shape")
    report = SqhReport(
        weights=w,
        k0=k0,
        zeta=value,
        pole_real_parts=sorted(value.pole_real_parts()),
        tree_stats=ctx.stats_dict(),
        content_shift=e0,
    )
    return value, report

"""Congruence counting, Poincare series, growth checks and closed forms.

This module is the verification side of the package: an exhaustive solution
counter independent of the recursive engine, the Poincare-series bridge
between counts and zeta values, a finite-range growth-trend report, and a
closed-form generator for two-term curves a*x^n + b*y^m that shares no code
with the engine path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, TYPE_CHECKING

import numpy as np

from . import _kernels
from .coeff import DEFAULT_BUDGET, LocalRing, LocalRingElement
from .errors import BudgetExceeded, InvalidParameters, InvariantViolation
from .poly import MultiPoly
from .ratfun import RatFun
from .region import ResidueRegion

if TYPE_CHECKING:  # pragma: no cover
    from .sqh import WeightSystem


def _region_mask(region: Optional[ResidueRegion]) -> Optional[np.ndarray]:
    if region is None or region.is_full():
        return None
    p, n = region.p, region.n
    if region.is_product():
        mask = np.zeros((p,) * n, dtype=np.uint8)
        rows = [np.array(sorted(a), dtype=np.int64) for a in region.allowed]
        mask[np.ix_(*rows)] = 1
        return mask.reshape(-1)
    mask = np.zeros(p**n, dtype=np.uint8)
    for point in region.explicit:
        flat = 0
        for a in point:
            flat = flat * p + a
        mask[flat] = 1
    return mask


def congruence_count(
    f: MultiPoly,
    j: int,
    region: Optional[ResidueRegion] = None,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Number of x in (O/pi^j)^n with f(x) = 0 mod pi^j and reduction in the region."""
    ring, n = f.ring, f.n
    p = ring.p
    if j == 0:
        return 1
    if p ** (n * j) > budget:
        raise BudgetExceeded(f"{p}^{n * j} points exceed budget {budget}")
    mask = _region_mask(region)
    if f.is_zero():
        total = p ** (n * j)
        return total if mask is None else int(mask.sum()) * p ** (n * (j - 1))
    exps = np.array(sorted(f.terms), dtype=np.int64).reshape(len(f.terms), n)
    if ring.positive_char:
        digits = np.zeros((len(f.terms), j), dtype=np.int64)
        for row, e in enumerate(sorted(f.terms)):
            payload = f.terms[e].payload[:j]
            digits[row, : len(payload)] = payload
        return _kernels.count_charp(exps, digits, p, j, mask)
    coeffs = np.array([f.terms[e].payload % p**j for e in sorted(f.terms)], dtype=np.int64)
    return _kernels.count_char0(exps, coeffs, p, j, mask)


def oracle_counts(f: MultiPoly, j_max: int, budget: int = DEFAULT_BUDGET) -> List[int]:
    """Exhaustive counts N_0..N_jmax of solutions mod pi^j; N_0 = 1."""
    return [congruence_count(f, j, None, budget) for j in range(j_max + 1)]


@dataclass
class PoincareSeries:
    """P(t) with nonnegative coefficients and N_j = p^(n j) [t^j] P integral."""

    ratfun: RatFun
    n: int
    p: int

    def __post_init__(self):
        c0 = self.ratfun.series_expand(0)
        if not c0 or c0[0] != 1:
            raise InvariantViolation("Poincare series must have constant term 1")

    def counts(self, j_max: int) -> List[int]:
        out = []
        for j, c in enumerate(self.ratfun.series_expand(j_max)):
            scaled = c * Fraction(self.p ** (self.n * j))
            if scaled.denominator != 1 or scaled < 0:
                raise InvariantViolation(
                    f"coefficient of t^{j} gives non-integral or negative count {scaled}"
                )
            out.append(int(scaled))
        return out

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "ratfun": self.ratfun.to_json()}


def poincare_from_zeta(Z: RatFun, n: int) -> PoincareSeries:
    """P(t) = (1 - t Z(t)) / (1 - t) for a full-region zeta function.

    The numerator of 1 - t Z always vanishes at t = 1 when Z integrates a
    nonzero polynomial over the whole space (mass one), so the division is
    exact; a perturbed Z fails here or in the count extraction.
    """
    one_minus = RatFun.const(Z.p, 1) - Z.scale(1, 1)
    return PoincareSeries(one_minus.divide_numerator_exactly(1, 1), n, Z.p)


def bound_check(N: Sequence[int], w: "WeightSystem", n: int, p: int) -> dict:
    """Finite-range growth trend of the counts against the weight bound.

    The asymptotic statement caps limsup N_j^(1/j) by p^(n - |alpha|/d) when
    |alpha| <= d and by p^(n-1) otherwise.  Fractional exponents are avoided
    by reporting N_j^d / p^(j(nd - |alpha|)) in the first branch (the d-th
    power of the natural ratio) and N_j / p^(j(n-1)) in the second.  This is
    a trend report over the computed range, not a proof of the limsup.
    """
    total, d = w.total, w.d
    branch = "le1" if total <= d else "gt1"
    stats: List[Fraction] = []
    for j in range(1, len(N)):
        if branch == "le1":
            stats.append(Fraction(N[j] ** d, p ** (j * (n * d - total))))
        else:
            stats.append(Fraction(N[j], p ** (j * (n - 1))))
    return {
        "branch": branch,
        "ratio_power": d if branch == "le1" else 1,
        "stats": stats,
        "max": max(stats) if stats else None,
    }


# -- closed form for a*x^n + b*y^m ---------------------------------------------


def _unit_square_nu_sigma(p: int, n: int, m: int, a_bar: int, mu_bar: int):
    """nu and sigma of a*x^n + mu*y^m over the unit square (F_p^*)^2."""
    nonvanishing = 0
    smooth = 0
    for x in range(1, p):
        xn = pow(x, n, p)
        dx = n % p * a_bar % p * pow(x, n - 1, p) % p
        for y in range(1, p):
            if (a_bar * xn + mu_bar * pow(y, m, p)) % p:
                nonvanishing += 1
            elif dx or (m % p * mu_bar % p * pow(y, m - 1, p)) % p:
                smooth += 1
            else:
                raise InvalidParameters(
                    "reduction is singular on the unit square; hypotheses violated"
                )
    return Fraction(nonvanishing, p * p), Fraction(smooth, p * p)


def two_term_closed_form(
    ring: LocalRing, n: int, m: int, alpha: LocalRingElement, beta: LocalRingElement
) -> RatFun:
    """Zeta function of alpha*x^n + beta*y^m by the piecewise valuation split.

    Valid for coprime n, m > 1 with alpha a unit and the residue
    characteristic not dividing both n and m (automatic from coprimality).
    The domain splits by (v(x), v(y)) into slabs where one term dominates,
    plus a balanced diagonal handled through one classification of the unit
    square.  This path shares nothing with the recursive engine and serves
    as its oracle.
    """
    p = ring.p
    if n <= 1 or m <= 1:
        raise InvalidParameters("exponents must exceed 1")
    if gcd(n, m) != 1:
        raise InvalidParameters("exponents must be coprime")
    if n % p == 0 and m % p == 0:
        raise InvalidParameters("residue characteristic divides both exponents")
    if alpha.ring != ring or beta.ring != ring:
        raise InvalidParameters("coefficients from the wrong ring")
    if alpha.valuation() != 0:
        raise InvalidParameters("x-coefficient must be a unit")
    if beta.is_zero():
        raise InvalidParameters("y-coefficient must be nonzero")

    v_beta = int(beta.valuation())
    mu = beta.divide_by_uniformizer(v_beta)
    nu_u, sigma_u = _unit_square_nu_sigma(p, n, m, alpha.reduce(), mu.reduce())
    # one application of the stationary phase formula on the unit square
    unit_int = RatFun.const(p, nu_u) + RatFun(p, (0, sigma_u * (1 - Fraction(1, p))), ((1, 1),))

    unit_frac = 1 - Fraction(1, p)
    total = RatFun.zero(p)

    def L(i: int, jj: int) -> int:
        return jj * m - i * n + v_beta

    def add_slab(i_range):
        nonlocal total
        for i in i_range:
            for jj in range(n):
                weight = Fraction(1, p ** (i + jj))
                val = L(i, jj)
                if val > 0:
                    total = total + RatFun.monomial(p, unit_frac**2 * weight, n * i)
                elif val < 0:
                    total = total + RatFun.monomial(p, unit_frac**2 * weight, v_beta + m * jj)
                else:
                    total = total + unit_int.scale(weight, n * i)

    # x-term dominates: v(x) < m, v(y) >= n
    for k in range(m):
        total = total + RatFun.monomial(p, unit_frac * Fraction(1, p ** (n + k)), k * n)

    # both coordinates small: v(x) < m, v(y) < n, split by the dominance sign
    add_slab(range(m))

    # y-term dominates: v(x) >= m + [v(beta)/n] + r, v(y) < n
    g, r = divmod(v_beta, n)
    shift = m + g + r
    for k in range(n):
        total = total + RatFun.monomial(
            p, unit_frac * Fraction(1, p ** (shift + k)), v_beta + m * k
        )

    # intermediate slab m <= v(x) < m + [v(beta)/n] + r, again split by sign
    add_slab(range(m, shift))

    # close the self-similarity of the polydisc v(x) >= m, v(y) >= n
    return total.geometric_close(n + m, n * m)

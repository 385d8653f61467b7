"""Singularity bookkeeping: point classification, dilatations, depth measures.

A dilatation recenters and rescales a polynomial, x -> P + pi^m o x, and
divides out the full power of the uniformizer (the arithmetic multiplicity
e).  Iterated dilatations at singular residue points drive the recursive
zeta evaluation; the measures l and L bound how deep that descent can go at
a given center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .coeff import DEFAULT_BUDGET, LocalRingElement
from .errors import BudgetExceeded, InvariantViolation, NotApplicable
from .poly import MultiPoly
from .region import ResidueRegion

INFINITY = math.inf


@dataclass
class PointClassification:
    """Exhaustive split of a residue region by the reduced hypersurface.

    nu and sigma already carry the q^(-n) normalization: nu is the measure
    of the residue classes where the reduction does not vanish, sigma of
    those where it vanishes to order one (a smooth point of the reduction).
    """

    nu: Fraction
    sigma: Fraction
    singular: List[Tuple[int, ...]]


def classify_points(
    f: MultiPoly, region: ResidueRegion, budget: int = DEFAULT_BUDGET
) -> PointClassification:
    """Classify every residue point of the region against the reduction of f.

    Requires unit content (so the reduction is defined and nonzero).
    """
    p, n = region.p, region.n
    if p**n > budget:
        raise BudgetExceeded(f"{p}^{n} residue points exceed budget {budget}")
    fbar = f.reduce_mod_pi()
    grad = fbar.gradient()
    nonvanishing = 0
    smooth = 0
    singular: List[Tuple[int, ...]] = []
    for point in region.points(budget):
        if fbar.evaluate(point) != 0:
            nonvanishing += 1
        elif any(g.evaluate(point) != 0 for g in grad):
            smooth += 1
        else:
            singular.append(point)
    total = p**n
    nu = Fraction(nonvanishing, total)
    sigma = Fraction(smooth, total)
    if nu + sigma + Fraction(len(singular), total) != region.measure():
        raise InvariantViolation("point classification does not partition the region")
    return PointClassification(nu, sigma, singular)


def dilate(
    f: MultiPoly, center: Sequence[LocalRingElement], m: Sequence[int]
) -> Tuple[MultiPoly, int]:
    """Dilatation of f at ``center`` with scaling vector m.

    Returns (f_P, e) with f(center + pi^m o x) = pi^e f_P(x) exactly and
    f_P of unit content.
    """
    substituted = f.substitute_affine(center, m)
    e = substituted.content_valuation()
    return substituted.divide_by_uniformizer(e), e


def L_measure(f: MultiPoly, point: Sequence[LocalRingElement]) -> Union[int, float]:
    """Minimum valuation among f(P) and all first partials at P.

    Infinite exactly when P is a singular point of the hypersurface over the
    ring itself.
    """
    values = [f.evaluate(point)]
    values.extend(f.partial_derivative(i).evaluate(point) for i in range(f.n))
    return min(v.valuation() for v in values)


def l_measure(f: MultiPoly, point: Sequence[LocalRingElement]) -> Union[int, float]:
    """Minimum valuation among the first partials only (no value term)."""
    return min(
        f.partial_derivative(i).evaluate(point).valuation() for i in range(f.n)
    )


def mu_procedure(
    f: MultiPoly, point: Sequence[LocalRingElement]
) -> Tuple[int, MultiPoly, int]:
    """Minimal scaling exponent that flattens a singular residue point.

    For P not singular over the ring but singular in the reduction, find the
    least mu >= 1 such that pi^(-e) f(P + pi^mu x) reduces to a nonzero
    constant or to a nonzero linear form without constant term.  Returns
    (mu, scaled polynomial, extracted content e).  The search is bounded by
    L(f, P) + 2, which always suffices.
    """
    L = L_measure(f, point)
    if L == INFINITY:
        raise NotApplicable("point is singular over the ring; no finite depth")
    if f.content_valuation() > 0:
        raise NotApplicable("polynomial must have unit content")
    fbar = f.reduce_mod_pi()
    pbar = tuple(c.reduce() for c in point)
    if fbar.evaluate(pbar) != 0 or any(g.evaluate(pbar) != 0 for g in fbar.gradient()):
        raise NotApplicable("residue point is not singular on the reduction")
    for mu in range(1, int(L) + 3):
        scaled, e = dilate(f, point, (mu,) * f.n)
        sbar = scaled.reduce_mod_pi()
        if sbar.is_nonzero_constant() or sbar.is_linear_without_constant_term():
            return mu, scaled, e
    raise InvariantViolation(f"no admissible scaling exponent up to L+2 = {int(L) + 2}")


@dataclass
class DilatationNode:
    """One step of the descendant tree built by the recursive engine."""

    center: Optional[Tuple[LocalRingElement, ...]]
    m: Optional[Tuple[int, ...]]
    e: int
    E_accum: int
    depth: int
    nu: Fraction
    sigma: Fraction
    singular_count: int
    region: str = "full"
    cached: bool = False
    children: List["DilatationNode"] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "center": None if self.center is None else [c.to_json() for c in self.center],
            "m": None if self.m is None else list(self.m),
            "e": self.e,
            "E_accum": self.E_accum,
            "depth": self.depth,
            "nu": str(self.nu),
            "sigma": str(self.sigma),
            "singular": self.singular_count,
            "region": self.region,
            "cached": self.cached,
            "children": [c.to_json() for c in self.children],
        }

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

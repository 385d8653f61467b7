"""Recursive evaluation of zeta integrals by the stationary phase formula.

One step of the formula splits the integral over a residue region into

* the mass of residue classes where the reduction does not vanish (a
  constant),
* the smooth zero classes, each contributing the closed geometric factor
  (1 - q^(-1)) t / (1 - q^(-1) t) times their mass, and
* one dilatation per singular zero class, recursing over the full space
  with weight q^(-n) t^e.

Descendant dilatations always use the scaling vector (1, ..., 1); general
scalings enter only through the region change of variables.  Termination is
guaranteed for regions bounded away from an isolated singularity, so the
depth cap is a diagnostic for violated hypotheses rather than a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import analysis
from .coeff import DEFAULT_BUDGET, Lifting
from .errors import DepthExceeded, ZeroPolynomial
from .neron import DilatationNode, classify_points, dilate
from .poly import MultiPoly
from .ratfun import RatFun
from .region import ResidueRegion


@dataclass
class SpfConfig:
    """Caps and switches for the recursive engine.

    max_depth bounds the dilatation recursion (no effective a priori bound
    is computed; see module docs).  max_iterations caps the perturbation
    iteration of the semiquasihomogeneous driver.  trace disables the node
    cache so the exported tree is complete.
    """

    max_depth: int = 64
    budget: int = DEFAULT_BUDGET
    max_iterations: int = 32
    trace: bool = False
    lifting: Optional[Lifting] = None
    cache: bool = True

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass
class SpfTrace:
    """Dilatation tree of one engine run plus aggregate statistics."""

    root: DilatationNode
    stats: dict

    def to_json(self) -> dict:
        return {"stats": self.stats, "tree": self.root.to_json()}


class SpfContext:
    """Per-computation state: node cache, statistics, collected trees."""

    def __init__(self, cfg: SpfConfig):
        self.cfg = cfg
        self.cache: Dict[tuple, tuple] = {}
        self.nodes = 0
        self.cache_hits = 0
        self.max_depth_seen = 0
        self.calls = 0
        self.roots: List[DilatationNode] = []

    def stats_dict(self) -> dict:
        return {
            "spf_calls": self.calls,
            "nodes": self.nodes,
            "max_depth": self.max_depth_seen,
            "cache_hits": self.cache_hits,
        }


def spf_zeta(
    f: MultiPoly,
    region: ResidueRegion,
    cfg: Optional[SpfConfig] = None,
    ctx: Optional[SpfContext] = None,
) -> Tuple[RatFun, SpfTrace]:
    """Exact value of the zeta integral of f over the region.

    Content is normalized first: pi^e0 g contributes t^e0 times the value
    for g.  Raises DepthExceeded when the descent does not flatten within
    the configured depth (suspected non-isolated singularity on the region).
    """
    if cfg is None:
        cfg = SpfConfig()
    if ctx is None:
        ctx = SpfContext(cfg)
    ctx.calls += 1
    if f.is_zero():
        raise ZeroPolynomial("zeta integral of the zero polynomial diverges")
    e0 = f.content_valuation()
    if e0:
        f = f.divide_by_uniformizer(e0)
    value, root = _spf(f, region, 0, e0, None, None, e0, ctx)
    if e0:
        value = value.scale(1, e0)
    root.region = region.describe()
    ctx.roots.append(root)
    return value, SpfTrace(root, ctx.stats_dict())


def sigma_term(p: int, sigma: Fraction) -> RatFun:
    """The smooth-zero contribution sigma (1 - q^(-1)) t / (1 - q^(-1) t)."""
    return RatFun(p, (0, sigma * (1 - Fraction(1, p))), ((1, 1),))


def _spf(
    f: MultiPoly,
    region: ResidueRegion,
    depth: int,
    e_accum: int,
    center,
    m,
    e_in: int,
    ctx: SpfContext,
) -> Tuple[RatFun, DilatationNode]:
    cfg = ctx.cfg
    if depth > cfg.max_depth:
        raise DepthExceeded(f"dilatation depth exceeded {cfg.max_depth}")
    ctx.max_depth_seen = max(ctx.max_depth_seen, depth)
    p, n = f.ring.p, f.n

    key = (f.key(), region.key())
    if cfg.cache and not cfg.trace and key in ctx.cache:
        value, nu, sigma, n_sing = ctx.cache[key]
        ctx.cache_hits += 1
        node = DilatationNode(center, m, e_in, e_accum, depth, nu, sigma, n_sing, cached=True)
        return value, node

    cls = classify_points(f, region, cfg.budget)
    total = RatFun.const(p, cls.nu)
    if cls.sigma:
        total = total + sigma_term(p, cls.sigma)
    node = DilatationNode(
        center, m, e_in, e_accum, depth, cls.nu, cls.sigma, len(cls.singular)
    )
    ctx.nodes += 1
    if cls.singular:
        lifting = cfg.lifting if cfg.lifting is not None else Lifting(f.ring)
        full = ResidueRegion.full(p, n)
        ones = (1,) * n
        weight = Fraction(1, p**n)
        for pbar in cls.singular:
            lifted = lifting.lift_point(pbar)
            f_desc, e_desc = dilate(f, lifted, ones)
            sub, child = _spf(
                f_desc, full, depth + 1, e_accum + e_desc, lifted, ones, e_desc, ctx
            )
            total = total + sub.scale(weight, e_desc)
            node.children.append(child)
    if cfg.cache:
        ctx.cache[key] = (total, cls.nu, cls.sigma, len(cls.singular))
    return total, node


def series_check(
    f: MultiPoly,
    region: ResidueRegion,
    Z: RatFun,
    J: int,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Compare the expansion of Z with exhaustively measured valuation fibers.

    The coefficient of t^j in the zeta integral is the measure of the set of
    points of the region where f has valuation exactly j, which equals
    N_j p^(-n j) - N_{j+1} p^(-n (j+1)) in terms of restricted solution
    counts.  Checks orders 0..J-1.
    """
    if J <= 0:
        return True
    p, n = f.ring.p, f.n
    masses = [region.measure()]
    for j in range(1, J + 1):
        count = analysis.congruence_count(f, j, region, budget)
        masses.append(Fraction(count, p ** (n * j)))
    expected = [masses[j] - masses[j + 1] for j in range(J)]
    return Z.series_expand(J - 1) == expected

from fractions import Fraction

import pytest

from igusa_zeta import (
    DenomFactor,
    DepthExceeded,
    Lifting,
    LocalRing,
    MultiPoly,
    RatFun,
    ResidueRegion,
    SpfConfig,
    ZeroPolynomial,
    parse,
    series_check,
    spf_zeta,
)
from igusa_zeta.spf import sigma_term

from _util import brute_valuation_masses

Z5 = LocalRing(5)
Z3 = LocalRing(3)
F5PI = LocalRing(5, positive_char=True)


def test_single_smooth_zero():
    Z, trace = spf_zeta(parse("x", Z5), ResidueRegion.full(5, 1))
    assert Z == RatFun(5, (Fraction(4, 5),), ((1, 1),))
    assert trace.root.singular_count == 0


def test_unit_constant_is_measure():
    region = ResidueRegion.product(5, [frozenset({1, 2, 3}), frozenset(range(5))])
    Z, _ = spf_zeta(MultiPoly.constant(Z5, 2, 1), region)
    assert Z == RatFun.const(5, Fraction(3, 5))


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        spf_zeta(MultiPoly.zero(Z5, 1), ResidueRegion.full(5, 1))


def test_content_normalization():
    # |pi^2 g|^s = t^2 |g|^s
    f = parse("25*x", Z5)
    Z, _ = spf_zeta(f, ResidueRegion.full(5, 1))
    base, _ = spf_zeta(parse("x", Z5), ResidueRegion.full(5, 1))
    assert Z == base.scale(1, 2)


def test_cusp_on_unit_square_against_brute_force():
    f = parse("x^2+y^3", Z5)
    units2 = ResidueRegion.product(5, [frozenset(range(1, 5))] * 2)
    Z, _ = spf_zeta(f, units2)
    # pure-python measures of { v(f) = j } on unit residues, j <= 2
    level = 3
    masses = brute_valuation_masses(
        f, level, member=lambda q: q[0] % 5 != 0 and q[1] % 5 != 0
    )
    assert Z.series_expand(level - 1) == masses
    # deeper check through the counting kernels
    assert series_check(f, units2, Z, 5)


def test_depth_one_denominator_shape():
    # no singular descendants: denominator divides (1 - q^-1 t)
    for text, region in [
        ("x", ResidueRegion.full(5, 1)),
        ("x^2+y^3", ResidueRegion.product(5, [frozenset(range(1, 5))] * 2)),
        ("x^2+5", ResidueRegion.full(5, 1)),
    ]:
        Z, _ = spf_zeta(parse(text, Z5), region)
        assert set(Z.denom) <= {DenomFactor(1, 1)} and len(Z.denom) <= 1


def test_series_check_positive_and_negative():
    f = parse("x", Z5)
    region = ResidueRegion.full(5, 1)
    good = RatFun(5, (Fraction(4, 5),), ((1, 1),))
    assert series_check(f, region, good, 4)
    perturbed = good + RatFun.monomial(5, Fraction(1, 7), 2)
    assert not series_check(f, region, perturbed, 4)


def test_trace_reconstructs_expansion():
    # summing nu/sigma contributions with weights q^(-kn) t^E over the tree
    # reproduces the value (the iterated-formula expansion)
    cases = [
        (parse("x^2+5", Z5), ResidueRegion.full(5, 1)),
        (parse("x^2+y^3", Z5), ResidueRegion.product(5, [frozenset(range(1, 5)), frozenset(range(5))])),
        (parse("x^2+u^3", F5PI), ResidueRegion.full(5, 1)),
    ]
    for f, region in cases:
        cfg = SpfConfig(trace=True)
        Z, trace = spf_zeta(f, region, cfg)
        p, n = f.ring.p, f.n
        total = RatFun.zero(p)
        for node in trace.root.walk():
            weight = Fraction(1, p ** (node.depth * n))
            piece = RatFun.const(p, node.nu)
            if node.sigma:
                piece = piece + sigma_term(p, node.sigma)
            total = total + piece.scale(weight, node.E_accum)
        assert total == Z


def test_trace_E_accum_increases():
    cfg = SpfConfig(trace=True)
    f = parse("x^2+y^3", Z5)
    region = ResidueRegion.product(5, [frozenset(range(5)), frozenset(range(1, 5))])
    _, trace = spf_zeta(f, region, cfg)

    def check(node):
        for child in node.children:
            assert child.E_accum == node.E_accum + child.e
            assert child.e >= 1
            check(child)

    check(trace.root)


def test_depth_cap_detects_nonisolated_singularity():
    # the singular locus of x^2 y is a whole line; the descent cannot flatten
    f = parse("x^2*y", Z3)
    with pytest.raises(DepthExceeded):
        spf_zeta(f, ResidueRegion.full(3, 2), SpfConfig(max_depth=12))


def test_result_independent_of_lifting():
    # representatives a + 5a of a in F_5 form another valid lifting
    table = {a: Z5.from_int(a + 5 * a) for a in range(5)}
    custom = SpfConfig(lifting=Lifting(Z5, table))
    f = parse("x^2+y^3", Z5)
    region = ResidueRegion.product(5, [frozenset(range(5)), frozenset(range(1, 5))])
    default_val, _ = spf_zeta(f, region)
    custom_val, _ = spf_zeta(f, region, custom)
    assert default_val == custom_val


def test_cache_does_not_change_result():
    f = parse("x^2+y^3", Z5)
    region = ResidueRegion.product(5, [frozenset(range(5)), frozenset(range(1, 5))])
    cached, _ = spf_zeta(f, region, SpfConfig(cache=True))
    uncached, _ = spf_zeta(f, region, SpfConfig(cache=False))
    assert cached == uncached


def test_charp_smooth_zero():
    Z, _ = spf_zeta(parse("x", F5PI), ResidueRegion.full(5, 1))
    assert Z == RatFun(5, (Fraction(4, 5),), ((1, 1),))

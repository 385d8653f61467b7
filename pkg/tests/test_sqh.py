from fractions import Fraction

import pytest

from igusa_zeta import (
    DenomFactor,
    InvalidHint,
    LocalRing,
    NotSemiQuasiHomogeneous,
    RatFun,
    ResidueRegion,
    SpfConfig,
    StabilizationNotReached,
    WeightSystem,
    ZeroPolynomial,
    detect_weights,
    parse,
    scale_step,
    series_check,
    spf_zeta,
    zeta_on_complement,
    zeta_semiquasihomogeneous,
)
from igusa_zeta.poly import MultiPoly
from igusa_zeta.region import Polydisc, cell_change_of_variables, complement_cells

Z5 = LocalRing(5)
Z7 = LocalRing(7)
F5PI = LocalRing(5, positive_char=True)


# -- weight detection --------------------------------------------------------


def test_weight_system_validation():
    WeightSystem((3, 2), 6)
    with pytest.raises(ValueError):
        WeightSystem((2, 4), 6)  # gcd 2
    with pytest.raises(ValueError):
        WeightSystem((0, 1), 1)
    with pytest.raises(ValueError):
        WeightSystem((1, 1), 0)


def test_detect_cusp():
    dec = detect_weights(parse("x^2+y^3", Z5))
    assert dec.weights == WeightSystem((3, 2), 6)
    assert dec.tail.is_zero()


def test_detect_with_tail():
    dec = detect_weights(parse("x^2+y^3+x*y^2", Z5))
    assert dec.weights == WeightSystem((3, 2), 6)
    assert dec.quasi == parse("x^2+y^3", Z5)
    assert dec.tail == parse("x*y^2", Z5, n_hint=2)


def test_detect_examples_more():
    assert detect_weights(parse("x", Z5)).weights == WeightSystem((1,), 1)
    assert detect_weights(parse("x^2+y^2+z^2", Z5)).weights == WeightSystem((1, 1, 1), 2)
    assert detect_weights(parse("x^3+y^4", Z5)).weights == WeightSystem((4, 3), 12)
    assert detect_weights(parse("x^2+5*y^3", Z5)).weights == WeightSystem((3, 2), 6)


def test_detect_rejects_constant_term():
    with pytest.raises(NotSemiQuasiHomogeneous):
        detect_weights(parse("x^2+5", Z5))
    with pytest.raises(ZeroPolynomial):
        detect_weights(MultiPoly.zero(Z5, 1))


def test_hint_validation():
    f = parse("x^2+y^3+x*y", Z5)
    with pytest.raises(InvalidHint):
        detect_weights(f, WeightSystem((3, 2), 6))  # x*y has weight 5 < 6
    with pytest.raises(InvalidHint):
        detect_weights(parse("x^2+y^3", Z5), WeightSystem((3, 2), 5))  # nothing at 5
    dec = detect_weights(f, WeightSystem((2, 1), 3))
    assert dec.quasi == parse("y^3+x*y", Z5)


def test_detect_without_hint_finds_alternative():
    # x^2+y^3+x*y is not quasihomogeneous for (3,2) but carries other valid
    # systems; the search returns (1,1) with the nodal part x^2 + x*y
    f = parse("x^2+y^3+x*y", Z5)
    dec = detect_weights(f)
    assert dec.weights == WeightSystem((1, 1), 2)
    assert dec.quasi == parse("x^2+x*y", Z5)
    # the zeta function does not depend on the admissible system chosen
    Z_auto, _ = zeta_semiquasihomogeneous(f)
    Z_hint, _ = zeta_semiquasihomogeneous(f, WeightSystem((2, 1), 3))
    assert Z_auto == Z_hint


# -- scale step ----------------------------------------------------------------


def test_scale_step_fixed_point():
    f = parse("x^2+y^3", Z5)
    assert scale_step(f, WeightSystem((3, 2), 6)) == f


def test_scale_step_gains_powers():
    w = WeightSystem((3, 2), 6)
    f = parse("x^2+y^3+x*y^2", Z5)
    assert scale_step(f, w) == parse("x^2+y^3+5*x*y^2", Z5)
    g = parse("x^2+y^3+x^3", Z5)
    assert scale_step(g, w) == parse("x^2+y^3+125*x^3", Z5)


def test_scale_step_tail_valuation_strictly_increases():
    w = WeightSystem((3, 2), 6)
    quasi = parse("x^2+y^3", Z5)
    current = parse("x^2+y^3+x*y^2", Z5)
    levels = []
    for _ in range(5):
        current = scale_step(current, w)
        levels.append((current - quasi).content_valuation())
    assert levels == sorted(set(levels))  # strictly increasing


# -- complement integrals ---------------------------------------------------------


def test_zeta_on_complement_line():
    value = zeta_on_complement(parse("x", Z5), WeightSystem((1,), 1))
    assert value == RatFun.const(5, Fraction(4, 5))


def test_zeta_on_complement_denominator_shape():
    value = zeta_on_complement(parse("x^2+y^3", Z5), WeightSystem((3, 2), 6))
    assert set(value.denom) <= {DenomFactor(1, 1)}


def test_complement_signed_cells_equal_direct_spf():
    # for r = (1,1) the complement is the preimage of F_p^2 minus the origin
    f = parse("x^2+y^3", Z5)
    disc = Polydisc((1, 1))
    total = RatFun.zero(5)
    for sign, cell in complement_cells(disc):
        e, d, fb, target = cell_change_of_variables(f, cell)
        value, _ = spf_zeta(fb, target)
        total = total + value.scale(Fraction(sign, 5**d), e)
    punctured = ResidueRegion.explicit_set(
        5, 2, [q for q in __import__("itertools").product(range(5), repeat=2) if q != (0, 0)]
    )
    direct, _ = spf_zeta(f, punctured)
    assert total == direct


# -- the full driver -----------------------------------------------------------------


def test_quasihomogeneous_shortcut():
    f = parse("x^2+y^3", Z5)
    Z, report = zeta_semiquasihomogeneous(f)
    assert report.k0 == 0
    c_inf = zeta_on_complement(f, report.weights)
    assert c_inf.geometric_close(5, 6) == Z


def test_driver_with_tail_stabilizes():
    f = parse("x^2+y^3+x*y^2", Z7)
    Z, report = zeta_semiquasihomogeneous(f)
    assert report.weights == WeightSystem((3, 2), 6)
    assert report.k0 >= 1
    allowed = {DenomFactor(1, 1), DenomFactor(5, 6)}
    assert set(Z.denom) <= allowed
    assert series_check(f, ResidueRegion.full(7, 2), Z, 4)
    assert sorted(Z.pole_real_parts()) in (
        [Fraction(-1)],
        [Fraction(-5, 6)],
        [Fraction(-1), Fraction(-5, 6)],
        sorted({Fraction(-1), Fraction(-5, 6)}),
    )


def test_driver_diagonal():
    f = parse("x^2+y^2+z^2", Z5)
    Z, report = zeta_semiquasihomogeneous(f)
    assert report.weights == WeightSystem((1, 1, 1), 2)
    assert set(Z.denom) <= {DenomFactor(1, 1), DenomFactor(3, 2)}
    assert series_check(f, ResidueRegion.full(5, 3), Z, 3)


def test_driver_content_normalization():
    # 5 * (x^2 + y^3): overall content contributes t^1
    f = parse("5*x^2+5*y^3", Z5)
    Z, report = zeta_semiquasihomogeneous(f)
    base, _ = zeta_semiquasihomogeneous(parse("x^2+y^3", Z5))
    assert Z == base.scale(1, 1)
    assert report.content_shift == 1


def test_driver_charp():
    f = parse("x^2+y^3", F5PI)
    Z, report = zeta_semiquasihomogeneous(f)
    assert report.k0 == 0
    assert series_check(f, ResidueRegion.full(5, 2), Z, 3)


def test_driver_charp_with_pi_tail():
    f = parse("x^2+y^3+u*x*y^2", F5PI)
    Z, _ = zeta_semiquasihomogeneous(f)
    assert series_check(f, ResidueRegion.full(5, 2), Z, 3)


def test_stabilization_cap():
    f = parse("x^2+y^3+x*y^2", Z7)
    with pytest.raises(StabilizationNotReached):
        zeta_semiquasihomogeneous(f, cfg=SpfConfig(max_iterations=0))


def test_driver_needs_two_exceptional_terms():
    # the perturbation still changes the complement integral after one
    # scaling step, so the exceptional sum keeps two terms (k0 = 2)
    cases = [("x^3+y^3+y^4", LocalRing(3)), ("x^2+y^2+y^3", LocalRing(2))]
    for text, ring in cases:
        f = parse(text, ring)
        Z, report = zeta_semiquasihomogeneous(f)
        assert report.k0 == 2
        assert series_check(f, ResidueRegion.full(ring.p, 2), Z, 3)


def test_constant_coefficient_is_nonvanishing_mass():
    # c_0 of Z equals the measure of { v(F) = 0 }, i.e. the density of
    # residue classes where the reduction does not vanish
    import itertools

    for text, ring in [("x^2+y^3", Z5), ("x^2+y^3+x*y^2", Z7), ("x^2+y^2+z^2", Z5)]:
        f = parse(text, ring)
        Z, _ = zeta_semiquasihomogeneous(f)
        fbar = f.reduce_mod_pi()
        p, n = ring.p, f.n
        nonzero = sum(
            1 for q in itertools.product(range(p), repeat=n) if fbar.evaluate(q) != 0
        )
        assert Z.series_expand(0)[0] == Fraction(nonzero, p**n)


def test_report_json_schema():
    _, report = zeta_semiquasihomogeneous(parse("x^2+y^3", Z5))
    doc = report.to_json()
    assert doc["weights"] == [3, 2]
    assert doc["d"] == 6
    assert doc["k0"] == 0
    assert {"num", "denom"} <= set(doc["zeta"])
    assert doc["pole_real_parts"] == [[-1, 1], [-5, 6]]
    assert "nodes" in doc["tree_stats"]

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digifix.contraction import (
    ConditionSpec,
    check_condition,
    constant_collapse_bound,
    oaa_beta_margin,
    ratio_L,
    ratio_r,
    tightest_coefficient,
)
from digifix.errors import InvalidConditionError, PreconditionError
from digifix.falsify import doubling_family
from digifix.lattice import DigitalImage, SelfMap
from digifix.metrics import MetricSpec, build_space

from oracle import matrix, naive_holds

ALL_CONDITIONS = [
    ConditionSpec.banach(0.7),
    ConditionSpec.quasi(0.4),
    ConditionSpec.sum_type(0.2, 0.25),
    ConditionSpec.rational(0.3, 0.5, 0.4),
    ConditionSpec.expansive(1.5),
    ConditionSpec.oaa_g(0.3, 0.3, 0.3),
    ConditionSpec.oaa_iterated(0.2, 0.2, 0.1, 0.1, 0.1),
    ConditionSpec.saljah(0, math.sqrt(0.9), 0.3),
]


def interval_space(a, b, p=1):
    return build_space(DigitalImage.interval(a, b), MetricSpec.lp(p))


def test_saljah_involution_example():
    space = interval_space(0, 1)
    rep = check_condition(space, SelfMap((1, 0)), ConditionSpec.saljah(0, math.sqrt(0.9), 0.3))
    assert rep.holds
    assert rep.tightest == (0, 1)
    assert rep.lhs == 1
    assert rep.rhs == pytest.approx(1.89, abs=1e-9)
    assert rep.margin == pytest.approx(0.89, abs=1e-9)


def test_quasi_rejects_identity():
    space = interval_space(0, 3)
    rep = check_condition(space, SelfMap.identity(4), ConditionSpec.quasi(0.4))
    assert not rep.holds
    assert rep.witness == (0, 1)
    assert rep.margin < 0


@pytest.mark.parametrize("cond", ALL_CONDITIONS, ids=lambda c: c.variant)
def test_constant_map_passes_every_contractive_variant(cond):
    space = build_space(DigitalImage.of([0, 1, 3, 7]), MetricSpec.lp(1))
    f = SelfMap.constant(4, 2)
    rep = check_condition(space, f, cond)
    # the exhaustive oracle decides, including the rational a*d(y,fx) sub-case
    assert rep.holds == naive_holds(matrix(space), f.table, cond.variant, cond.coefficients)
    if cond.variant != "expansive":
        assert rep.holds


def test_rational_constant_map_subcase():
    # LHS reduces to a*d(y,fx); with a large relative to b and c this can fail
    space = build_space(DigitalImage.of([0, 1, 10]), MetricSpec.lp(1))
    f = SelfMap.constant(3, 0)
    cond = ConditionSpec.rational(5.0, 0.0, 0.5)
    assert check_condition(space, f, cond).holds == naive_holds(matrix(space), f.table, "rational", (5.0, 0.0, 0.5))
    assert not check_condition(space, f, cond).holds


def test_expansive_on_doubling_window():
    fam = doubling_family(4)
    rep = fam.check(ConditionSpec.expansive(1.5))
    assert rep.holds
    assert rep.pairs_checked == 16
    assert fam.tightest("expansive") == 2.0


def test_tightest_coefficient_examples():
    space = interval_space(0, 3)
    assert tightest_coefficient(space, SelfMap.constant(4, 1), "quasi") == 0
    # identity: ratio 1, so no alpha < 1 is admissible
    assert tightest_coefficient(space, SelfMap.identity(4), "banach") == 1.0
    assert tightest_coefficient(space, SelfMap((0, 0, 1, 1)), "banach") == 1.0
    spread = build_space(DigitalImage.of([0, 1, 5]), MetricSpec.lp(1))
    # pairs (0,5) -> 1/5 and (1,5) -> 1/4
    assert tightest_coefficient(spread, SelfMap((0, 0, 1)), "banach") == 0.25
    with pytest.raises(InvalidConditionError):
        tightest_coefficient(space, SelfMap.identity(4), "sum_type")


def test_ratio_L_examples():
    assert ratio_L(0.25) == (pytest.approx(1 / 3), True)
    assert ratio_L(0.5) == (1.0, False)
    assert ratio_L(0) == (0, True)
    with pytest.raises(InvalidConditionError):
        ratio_L(1)
    with pytest.raises(InvalidConditionError):
        ratio_L(-0.1)


def test_ratio_r_examples():
    exact = ratio_r(*(Fraction(s) for s in ("0.3", "0", "0.2", "0.4", "0")))
    assert exact == (Fraction(7, 4), True, False)
    flt = ratio_r(0.3, 0, 0.2, 0.4, 0)
    assert flt.value == pytest.approx(1.75, abs=1e-12)
    assert flt.sum_ok and not flt.r_lt_1
    assert ratio_r(0, 0, 0, 0, 0) == (0, True, True)
    # (0.1 + 0.1 + 0.1) / (1 - 0.2) computed by hand with exact rationals
    tenth = ratio_r(*[Fraction(1, 10)] * 5)
    assert tenth == (Fraction(3, 8), True, True)
    with pytest.raises(InvalidConditionError):
        ratio_r(0, 0, 0.5, 0.5, 0)


def test_constant_collapse_bound_examples():
    assert constant_collapse_bound(interval_space(0, 1)) == 1.0
    assert constant_collapse_bound(build_space(DigitalImage.of([0, 1, 3]), MetricSpec.lp(1))) == pytest.approx(1 / 3)
    assert constant_collapse_bound(build_space(DigitalImage.of([2, 4, 8, 16]), MetricSpec.lp(1))) == pytest.approx(1 / 7)
    with pytest.raises(PreconditionError):
        constant_collapse_bound(build_space(DigitalImage.of([0]), MetricSpec.lp(1)))


@pytest.mark.parametrize(
    "variant,coeffs",
    [
        ("banach", (1.0,)),
        ("quasi", (0.5,)),
        ("sum_type", (0.25, 0.25)),
        ("rational", (0, 0.5, 0.5)),
        ("oaa_g", (0.5, 0.3, 0.2)),
        ("oaa_iterated", (0.2, 0.2, 0.2, 0.2, 0.2)),
        ("saljah", (0.5, 0.5, 0.71)),
        ("quasi", (-0.1,)),
        ("quasi", (0.1, 0.1)),
        ("nope", (0.1,)),
    ],
)
def test_invalid_coefficients_rejected(variant, coeffs):
    with pytest.raises(InvalidConditionError):
        ConditionSpec(variant, coeffs)


def test_condition_dict_roundtrip():
    cond = ConditionSpec.rational(0.1, 0.2, 0.3)
    assert ConditionSpec.from_dict("rational", cond.as_dict()) == cond
    assert cond["b"] == 0.2
    with pytest.raises(InvalidConditionError):
        ConditionSpec.from_dict("rational", {"a": 0.1, "b": 0.2})


def test_banach_is_strict():
    # on {0, 1, 5}, f = (0, 0, 1) attains d(fx,fy) = d(x,y)/4 at the pair (1, 5)
    space = build_space(DigitalImage.of([0, 1, 5]), MetricSpec.lp(1))
    f = SelfMap((0, 0, 1))
    rep = check_condition(space, f, ConditionSpec.banach(0.25))
    assert not rep.holds and rep.witness == (1, 2) and rep.margin == 0
    assert check_condition(space, f, ConditionSpec.banach(0.26)).holds


def test_oaa_beta_margin_is_reported():
    space = interval_space(0, 2)
    assert oaa_beta_margin(space, SelfMap.constant(3, 1), 0.5) > 0
    assert oaa_beta_margin(space, SelfMap.identity(3), 0.5) < 0


# ---- properties


def _random_case(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    pts = rng.sample(list(itertools.product(range(4), repeat=2)), n)
    spec = rng.choice([MetricSpec.lp(1), MetricSpec.lp(2)])
    space = build_space(DigitalImage(tuple(pts), 1), spec)
    f = SelfMap(tuple(rng.randrange(n) for _ in range(n)))
    return rng, space, f


@settings(max_examples=300)
@given(st.integers(0, 2 ** 32), st.sampled_from(ALL_CONDITIONS))
def test_verdict_matches_bruteforce_oracle(seed, cond):
    _, space, f = _random_case(seed)
    assert check_condition(space, f, cond).holds == naive_holds(matrix(space), f.table, cond.variant, cond.coefficients)


@settings(max_examples=150)
@given(st.integers(0, 2 ** 32), st.sampled_from(["banach", "quasi", "expansive"]), st.floats(0.1, 10))
def test_scaling_table_metric_keeps_verdict(seed, family, lam):
    rng, space, f = _random_case(seed)
    n = len(space)
    rows = [[space.d(i, j) for j in range(n)] for i in range(n)]
    scaled = build_space(space.image, MetricSpec.table([[lam * v for v in r] for r in rows]))
    base = build_space(space.image, MetricSpec.table(rows))
    coef = {"banach": 0.6, "quasi": 0.35, "expansive": 1.2}[family]
    cond = ConditionSpec(family, (coef,))
    a, b = check_condition(base, f, cond), check_condition(scaled, f, cond)
    assert a.holds == b.holds
    if a.margin is not None:
            assert b.margin == pytest.approx(lam * a.margin, rel=1e-9, abs=1e-9)


def test_ratio_L_monotone_and_threshold():
    grid = [Fraction(k, 1000) for k in range(1000)]
    values = [ratio_L(c).value for c in grid]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(ratio_L(c).is_contractive == (c < Fraction(1, 2)) for c in grid)

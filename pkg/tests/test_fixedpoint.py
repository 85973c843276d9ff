import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digifix.contraction import ConditionSpec, check_condition
from digifix.errors import BudgetExceededError, InvalidConditionError, PreconditionError
from digifix.falsify import generate_collapse_map, generate_contraction, random_space
from digifix.fixedpoint import (
    check_constant_collapse,
    commuting_collapse,
    fixed_points,
    has_fpp,
    picard_orbit,
    solve_unique_fixed_point,
)
from digifix.lattice import DigitalImage, SelfMap, is_digitally_continuous
from digifix.metrics import MetricSpec, build_space

from oracle import matrix, naive_holds


def lp1(points):
    return build_space(DigitalImage.of(points), MetricSpec.lp(1))


def test_fixed_points_examples():
    space = lp1(range(4))
    assert fixed_points(space, SelfMap.identity(4)) == [(0,), (1,), (2,), (3,)]
    assert fixed_points(lp1([0, 1]), SelfMap((1, 0))) == []
    assert fixed_points(space, SelfMap.constant(4, 2)) == [(2,)]


def test_picard_orbit_examples():
    space = lp1(range(3))
    orb = picard_orbit(space, SelfMap.constant(3, 1), 0)
    assert orb.orbit == [0, 1, 1]
    assert orb.constancy_index == 1 and orb.fixed_point == (1,)
    assert picard_orbit(space, SelfMap.identity(3), 2).constancy_index == 0
    swap = picard_orbit(lp1([0, 1]), SelfMap((1, 0)), 0, max_iter=8)
    assert swap.orbit == [0, 1] * 4 + [0]
    assert swap.constancy_index is None and swap.fixed_point is None
    assert swap.iterations == 8


def test_solve_unique_fixed_point_examples():
    space = lp1(range(3))
    assert solve_unique_fixed_point(space, SelfMap.constant(3, 2), ConditionSpec.quasi(0.4)) == (2,)
    f = SelfMap((1, 1, 1))
    cond = ConditionSpec.sum_type(0.2, 0.2)
    assert naive_holds(matrix(space), f.table, "sum_type", (0.2, 0.2))
    assert solve_unique_fixed_point(space, f, cond) == (1,)


def test_solve_unique_fixed_point_preconditions():
    space = lp1(range(3))
    with pytest.raises(PreconditionError):
        solve_unique_fixed_point(space, SelfMap.identity(3), ConditionSpec.quasi(0.4))
    with pytest.raises(InvalidConditionError):
        solve_unique_fixed_point(space, SelfMap.identity(3), ConditionSpec.expansive(1.0))


@pytest.mark.parametrize("seed", range(40))
def test_generated_banach_map_solves_to_scan_singleton(seed):
    space = lp1(range(5))
    gen = generate_contraction(space, "banach", seed)
    assert naive_holds(matrix(space), gen.map.table, "banach", gen.condition.coefficients)
    (only,) = fixed_points(space, gen.map)
    assert solve_unique_fixed_point(space, gen.map, gen.condition) == only


def _bruteforce_fpp(img):
    for table in itertools.product(range(len(img)), repeat=len(img)):
        cont = all(
            table[i] == table[j] or img.adjacent_indices(table[i], table[j]) for i, j in img.edges()
        )
        if cont and all(t != i for i, t in enumerate(table)):
            return False, table
    return True, None


def test_has_fpp_examples():
    assert has_fpp(DigitalImage.of([3])).has_fpp
    two = has_fpp(DigitalImage.interval(0, 1))
    assert not two.has_fpp and two.witness.table == (1, 0)
    three = DigitalImage.interval(0, 2)
    rep = has_fpp(three)
    # enumeration oracle over all 27 maps gives the same verdict and first witness
    assert (rep.has_fpp, rep.witness.table) == _bruteforce_fpp(three)
    stated = SelfMap((1, 2, 1))
    assert is_digitally_continuous(three, stated).holds and not fixed_points(three, stated)


def test_has_fpp_budget():
    nine = DigitalImage.interval(0, 8)
    with pytest.raises(BudgetExceededError):
        has_fpp(nine)
    assert not has_fpp(nine, budget=9 ** 9).has_fpp


@settings(max_examples=40, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=5), st.integers(1, 2))
def test_has_fpp_matches_bruteforce(pts, u):
    img = DigitalImage(tuple(sorted(pts)), u)
    rep = has_fpp(img)
    expected = _bruteforce_fpp(img)
    assert rep.has_fpp == expected[0]
    if not rep.has_fpp:
        assert rep.witness.table == expected[1]


def test_check_constant_collapse_examples():
    space = lp1([0, 1])
    assert check_constant_collapse(space, SelfMap.constant(2, 1), 0)
    with pytest.raises(PreconditionError):
        check_constant_collapse(space, SelfMap.identity(2), 0.5)
    with pytest.raises(PreconditionError):
        check_constant_collapse(lp1([0, 1, 3]), SelfMap.constant(3, 0), 0.5)
    assert check_constant_collapse(lp1([7]), SelfMap((0,)), 0.9)


@pytest.mark.parametrize("seed", range(30))
def test_random_collapse_map_on_0_1_3(seed):
    space = lp1([0, 1, 3])
    f, a = generate_collapse_map(space, seed)
    assert check_constant_collapse(space, f, a)


def test_commuting_collapse():
    space = lp1([0, 1, 3])
    g, p = SelfMap.constant(3, 2), SelfMap.constant(3, 2)
    assert commuting_collapse(space, g, p, 0.1) is True
    assert commuting_collapse(space, g, SelfMap.constant(3, 0), 0.1) is None


@pytest.mark.parametrize("seed", range(60))
def test_eventual_constancy_and_uniqueness(seed):
    rng = random.Random(seed)
    space = random_space(rng, 10)
    family = ["banach", "quasi", "sum_type", "rational"][seed % 4]
    gen = generate_contraction(space, family, seed)
    assert check_condition(space, gen.map, gen.condition).holds
    (fp,) = fixed_points(space, gen.map)
    for x0 in space.points:
        orb = picard_orbit(space, gen.map, x0)
        assert orb.fixed_point == fp
        assert orb.constancy_index <= len(space)
        assert gen.map(space.image.index(fp)) == space.image.index(fp)
        assert len(orb.orbit) <= 4 * len(space) + 1

"""Reproduction checklist: every corrected theorem and counterexample, machine-checked."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from .contraction import (
    ConditionSpec,
    check_condition,
    constant_collapse_bound,
    ratio_L,
    ratio_r,
    tightest_coefficient,
)
from .falsify import (
    BoxPool,
    WindowPool,
    box_images,
    builtin_doubling_counterexample,
    builtin_involution_counterexample,
    doubling_family,
    generate_collapse_map,
    generate_contraction,
    propose_map,
    random_space,
    search_counterexample,
)
from .fixedpoint import fixed_points, has_fpp, picard_orbit
from .lattice import DigitalImage, SelfMap, find_path, is_digitally_continuous
from .metrics import TOLERANCE, MetricSpec, build_space, is_metrically_continuous


@dataclass(frozen=True)
class ChecklistItem:
    claim: str
    expected: bool
    observed: bool
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class SweepResult:
    trials: int
    failures: int
    detail: str

    @property
    def ok(self) -> bool:
        return self.failures == 0


def fpp_dichotomy_sweep(max_points: int = 5) -> SweepResult:
    """has_fpp(X) == (#X == 1) over connected images in the 3 x 3 box, u in {1, 2}."""
    trials = failures = 0
    for u in (1, 2):
        for img in box_images((0, 0), (2, 2), max_points, u, connected_only=True):
            trials += 1
            rep = has_fpp(img)
            sound = rep.has_fpp or (
                is_digitally_continuous(img, rep.witness).holds and not fixed_points(img, rep.witness)
            )
            if rep.has_fpp != (len(img) == 1) or not sound:
                failures += 1
    return SweepResult(trials, failures, f"{trials} connected images")


FAMILIES = ("banach", "quasi", "sum_type", "rational")


def contraction_property_sweep(trials: int = 1000, seed: int = 0, max_points: int = 12) -> SweepResult:
    """Generated contractions have one fixed point, reached from every start within |X| steps."""
    rng = random.Random(seed)
    failures = nonconstant = 0
    for t in range(trials):
        space = random_space(rng, max_points)
        gen = generate_contraction(space, FAMILIES[t % len(FAMILIES)], seed=rng.randrange(2 ** 32))
        f = gen.map
        nonconstant += not f.is_constant()
        if not check_condition(space, f, gen.condition).holds:
            failures += 1
            continue
        fps = fixed_points(space, f)
        if len(fps) != 1:
            failures += 1
            continue
        for x0 in space.points:
            orbit = picard_orbit(space, f, x0)
            if orbit.fixed_point != fps[0] or orbit.constancy_index > len(space):
                failures += 1
                break
    return SweepResult(trials, failures, f"{nonconstant} non-constant maps")


def collapse_sweep(trials: int = 200, seed: int = 0) -> SweepResult:
    """Maps with d(fx,fy) <= a d(x,y), a < min_separation / diameter, are constant;
    commuting pairs of them share their value."""
    rng = random.Random(seed)
    failures = eligible = commuting = 0
    for _ in range(trials):
        space = random_space(rng, 10)
        while len(space) < 2:
            space = random_space(rng, 10)
        bound = constant_collapse_bound(space)
        f = propose_map(rng, len(space), space)
        if tightest_coefficient(space, f, "banach") < bound:
            eligible += 1
            failures += not f.is_constant()
        g, _ = generate_collapse_map(space, rng.randrange(2 ** 32))
        p, _ = generate_collapse_map(space, rng.randrange(2 ** 32))
        if not (g.is_constant() and p.is_constant()):
            failures += 1
        elif g.commutes_with(p):
            commuting += 1
            failures += g.table[0] != p.table[0]
    return SweepResult(trials, failures, f"{eligible} eligible random maps, {commuting} commuting pairs")


def metric_oracle_sweep(trials: int = 200, seed: int = 0, max_points: int = 15) -> SweepResult:
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        space = random_space(rng, max_points)
        n, d = len(space), space.d
        ok = all(
            d(i, j) == d(j, i) and (d(i, j) == 0) == (i == j) and d(i, k) <= d(i, j) + d(j, k) + TOLERANCE
            for i in range(n)
            for j in range(n)
            for k in range(n)
        )
        if space.metric.kind == "shortest_path":
            img = space.image
            ok &= all(
                find_path(img, x, y).length == d(img.index(x), img.index(y))
                for x in img.points
                for y in img.points
            )
        elif n >= 2:
            ok &= space.min_separation >= 1
        failures += not ok
    return SweepResult(trials, failures, "axioms, path lengths, separation")


NEGATIVE_SEARCH_CONDITIONS = (
    ConditionSpec.banach(0.9),
    ConditionSpec.quasi(0.3),
    ConditionSpec.quasi(0.49),
    ConditionSpec.sum_type(0.2, 0.2),
    ConditionSpec.rational(0.0, 0.5, 0.45),
)


def negative_search_pools():
    return (
        BoxPool((0, 0), (1, 2), 4, 1, MetricSpec.lp(1)),
        BoxPool((0, 0), (1, 2), 4, 2, MetricSpec.lp(2)),
        BoxPool((0, 0), (1, 2), 4, 1, MetricSpec.shortest_path()),
    )


def run_demo(seed: int = 0, window: int = 10, trials: int = 1000) -> List[ChecklistItem]:
    items: List[ChecklistItem] = []

    def add(claim: str, expected: bool, fn: Callable):
        observed, detail = fn()
        items.append(ChecklistItem(claim, expected, bool(observed), detail))

    add("ratio_L(0.25) < 1", True, lambda: (ratio_L(0.25).is_contractive, f"value {ratio_L(0.25).value:.6g}"))
    add("ratio_L(0.5) < 1 (flawed claim)", False, lambda: (ratio_L(0.5).is_contractive, f"value {ratio_L(0.5).value}"))
    add(
        "ratio_L(c) < 1 iff c < 1/2 on c = 0, 0.1, ..., 0.9",
        True,
        lambda: (all(ratio_L(Fraction(k, 10)).is_contractive == (k < 5) for k in range(10)), "exact rationals"),
    )
    rr = ratio_r(*(Fraction(s) for s in ("0.3", "0", "0.2", "0.4", "0")))
    add("e+f+g+h+i < 1 for (0.3, 0, 0.2, 0.4, 0)", True, lambda: (rr.sum_ok, "sum 9/10"))
    add("r = (e+f+h)/(1-g-h) < 1 (flawed claim)", False, lambda: (rr.r_lt_1, f"r = {rr.value}"))

    for K in sorted({4, window, 30}):
        rep = builtin_doubling_counterexample(K)
        add(
            f"doubling window K={K}: d(fx,fy) = 2 d(x,y) >= 1.5 d(x,y), no fixed point",
            True,
            lambda rep=rep: (rep.refutes and rep.relation.holds, f"{rep.pairs_checked} pairs, ratio {rep.ratio}"),
        )

    inv = builtin_involution_counterexample()
    add("k1^2 + k2^2 + k3^2 = 0.99 < 1", True, lambda: (inv.sum_ok and inv.coefficient_sum == Fraction(99, 100), str(inv.coefficient_sum)))
    add(
        "T(x) = 1 - x: pair (0,1) has LHS 1 < RHS 1.89",
        True,
        lambda: (inv.lhs == 1 and abs(inv.rhs - 1.89) <= TOLERANCE and inv.check.holds, f"margin {inv.margin:.12g}"),
    )
    add("T(x) = 1 - x has a fixed point", False, lambda: (bool(inv.fixed_points), "none"))

    def rediscover():
        found = search_counterexample(inv.condition, BoxPool((0,), (1,), 2, 1, MetricSpec.lp(1)))
        return found is not None and found.map.table == (1, 0), "search over subsets of [0,1]_Z"

    add("search rediscovers T(x) = 1 - x", True, rediscover)

    def rediscover_doubling():
        pool = WindowPool(tuple(doubling_family(K) for K in range(2, 8)))
        found = search_counterexample(ConditionSpec.expansive(1.5), pool)
        return found is not None and found.space.name == "doubling", "window pool"

    add("search finds the doubling map for d(fx,fy) >= 1.5 d(x,y)", True, rediscover_doubling)

    def continuity_gap():
        space = build_space(DigitalImage.interval(0, 2), MetricSpec.lp(1))
        f = SelfMap((0, 2, 2))
        metric_ok, delta = is_metrically_continuous(space, f)
        return metric_ok and not is_digitally_continuous(space.image, f).holds, f"delta = {delta}"

    add("a metrically continuous map need not be digitally continuous", True, continuity_gap)

    sweeps = [
        ("FPP holds iff #X = 1 (connected images in a 3x3 box)", lambda: fpp_dichotomy_sweep()),
        ("corrected quasi/sum/rational/Banach theorems: unique fixed point", lambda: contraction_property_sweep(trials, seed)),
        ("small-coefficient maps collapse to equal constants", lambda: collapse_sweep(200, seed)),
        ("metric axioms and uniform discreteness", lambda: metric_oracle_sweep(200, seed)),
    ]
    for claim, run in sweeps:
        add(claim, True, lambda run=run: (lambda r: (r.ok, f"{r.trials} trials, {r.failures} failures; {r.detail}"))(run()))

    for cond in NEGATIVE_SEARCH_CONDITIONS:
        label = ", ".join(f"{k}={v:g}" for k, v in cond.as_dict().items())
        add(
            f"fixed-point-free {cond.variant}({label}) map exists in small boxes",
            False,
            lambda cond=cond: (
                any(search_counterexample(cond, pool) is not None for pool in negative_search_pools()),
                "exhaustive",
            ),
        )
    return items

"""Counterexamples, random generators and exhaustive counterexample search."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog

from .contraction import (
    ConditionSpec,
    scan_condition,
    tightest_coefficient,
    tightest_on,
    check_condition,
    constant_collapse_bound,
)
from .errors import InvalidConditionError, InvalidImageError, SamplingBudgetExhausted
from .fixedpoint import fixed_points
from .lattice import DigitalImage, SelfMap, cu_adjacent
from .metrics import DigitalMetricSpace, MetricSpec, build_space
from .report import CheckReport


@dataclass(frozen=True)
class WindowedFamily:
    """A finite window x_start, ..., x_{start+K-1} of an infinite subset of Z.

    ``member`` decides membership in the ambient infinite set, so a map rule may
    leave the window and still land in the space. Distances are |x - y| on exact
    Python ints.
    """

    name: str
    K: int
    point_rule: Callable[[int], int]
    map_rule: Callable[[int], int]
    member: Callable[[int], bool]
    start: int = 1

    @property
    def points(self) -> List[int]:
        return [self.point_rule(n) for n in range(self.start, self.start + self.K)]

    @staticmethod
    def dist(a: int, b: int) -> int:
        return abs(a - b)

    def defined_points(self) -> List[int]:
        """Window points whose image is a point of the ambient space."""
        return [x for x in self.points if self.member(self.map_rule(x))]

    def ordered_pairs(self):
        pts = self.defined_points()
        return [(x, y) for x in pts for y in pts]

    def check(self, cond: ConditionSpec) -> CheckReport:
        return scan_condition(self.ordered_pairs(), self.map_rule, self.dist, cond)

    def tightest(self, family: str) -> float:
        return tightest_on(self.ordered_pairs(), self.map_rule, self.dist, family)

    def fixed_points(self) -> List[int]:
        return [x for x in self.points if self.map_rule(x) == x]


def _is_power_of_two(v: int) -> bool:
    return v >= 2 and v & (v - 1) == 0


def doubling_family(K: int) -> WindowedFamily:
    """X = {2^n : n >= 1} with f(x) = 2x, windowed to n = 1..K."""
    return WindowedFamily("doubling", K, lambda n: 2 ** n, lambda x: 2 * x, _is_power_of_two)


@dataclass(frozen=True)
class DoublingReport:
    K: int
    pairs_checked: int
    ratio: Fraction
    ratio_exact: bool
    relation_holds: bool
    relation: CheckReport
    fixed_points: List[int]

    @property
    def refutes(self) -> bool:
        return self.ratio_exact and self.relation_holds and not self.fixed_points


def builtin_doubling_counterexample(K: int) -> DoublingReport:
    """Doubling on powers of two: d(fx, fy) = 2 d(x, y), so d(fx,fy) >= 1.5 d(x,y)
    holds with delta1 = delta2 = 0, delta3 = 1.5, yet nothing is fixed."""
    if K < 2:
        raise InvalidImageError(f"window needs K >= 2, got {K}")
    fam = doubling_family(K)
    pts = fam.points
    f, d = fam.map_rule, fam.dist
    ratios = set()
    relation_ok = True
    pairs = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            x, y = pts[i], pts[j]
            pairs += 1
            ratios.add(Fraction(d(f(x), f(y)), d(x, y)))
            # 1.5 d(x, y) <= d(fx, fy), cleared of fractions
            relation_ok &= 3 * d(x, y) <= 2 * d(f(x), f(y))
    ratio = ratios.pop() if len(ratios) == 1 else Fraction(-1)
    return DoublingReport(
        K=K,
        pairs_checked=pairs,
        ratio=ratio,
        ratio_exact=ratio == 2 and not ratios,
        relation_holds=relation_ok,
        relation=fam.check(ConditionSpec.expansive(1.5)),
        fixed_points=fam.fixed_points(),
    )


@dataclass(frozen=True)
class InvolutionReport:
    space: DigitalMetricSpace
    map: SelfMap
    condition: ConditionSpec
    coefficient_sum: Fraction
    sum_ok: bool
    check: CheckReport
    lhs: float
    rhs: float
    margin: float
    fixed_points: list

    @property
    def refutes(self) -> bool:
        return self.sum_ok and self.check.holds and not self.fixed_points


def builtin_involution_counterexample() -> InvolutionReport:
    """T(x) = 1 - x on [0, 1]_Z with k1 = 0, k2 = sqrt(0.9), k3 = 0.3."""
    squares = (Fraction(0), Fraction(9, 10), Fraction(9, 100))
    total = sum(squares)
    cond = ConditionSpec.saljah(*(math.sqrt(s) for s in squares))
    space = build_space(DigitalImage.interval(0, 1), MetricSpec.lp(1))
    T = SelfMap.from_function(space.image, lambda p: (1 - p[0],))
    report = check_condition(space, T, cond)
    d, t = space.d, T.table
    (lhs, rhs), = cond.terms(d(0, 1), d(0, t[0]), d(1, t[1]), d(0, t[1]), d(1, t[0]), d(t[0], t[1]))
    return InvolutionReport(
        space=space,
        map=T,
        condition=cond,
        coefficient_sum=total,
        sum_ok=total < 1,
        check=report,
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
        fixed_points=fixed_points(space, T),
    )


# ---------------------------------------------------------------- generators


def _shrink_map(rng: random.Random, space: DigitalMetricSpace) -> SelfMap:
    """Send each point to a point at most a random fraction of its distance from a centre."""
    n = len(space)
    c = rng.randrange(n)
    rho = rng.uniform(0.1, 0.6)
    farthest = rng.random() < 0.5
    table = []
    for x in range(n):
        closer = [y for y in range(n) if space.d(y, c) <= rho * space.d(x, c)]
        if farthest:
            table.append(max(closer, key=lambda y: space.d(y, c)))
        else:
            table.append(rng.choice(closer))
    table[c] = c
    return SelfMap(tuple(table))


def propose_map(rng: random.Random, n: int, space: Optional[DigitalMetricSpace] = None) -> SelfMap:
    r = rng.random()
    if r < 0.1 or n == 1:
        return SelfMap.constant(n, rng.randrange(n))
    if space is not None and r < 0.55:
        return _shrink_map(rng, space)
    if r < 0.8:
        # mostly one attractor, a few strays into a small target set
        targets = rng.sample(range(n), min(n, rng.randint(2, 3)))
        main = targets[0]
        stray = rng.random() * 0.5
        return SelfMap(tuple(main if rng.random() > stray else rng.choice(targets) for _ in range(n)))
    return SelfMap(tuple(rng.randrange(n) for _ in range(n)))


def _all_distances(space, f, x, y):
    d, t = space.d, f.table
    fx, fy = t[x], t[y]
    return d(x, y), d(x, fx), d(y, fy), d(x, fy), d(y, fx), d(fx, fy)


def _min_sum_lp(rows) -> Optional[np.ndarray]:
    """Minimise u + v subject to u*s + v*t >= l, u, v >= 0, for rows (s, t, l)."""
    rows = [r for r in rows if r[2] > 0]
    if not rows:
        return np.zeros(2)
    A = -np.array([[s, t] for s, t, _ in rows], dtype=float)
    b = -np.array([l for _, _, l in rows], dtype=float)
    res = linprog([1.0, 1.0], A_ub=A, b_ub=b, bounds=[(0, None), (0, None)], method="highs")
    return np.clip(res.x, 0.0, None) if res.status == 0 else None


def _scaled(coeffs, bound):
    """Scale non-negative ``coeffs`` so their sum sits midway below ``bound``."""
    coeffs = [float(c) for c in coeffs]
    s = sum(coeffs)
    target = (s + bound) / 2
    if s == 0:
        return [target / len(coeffs)] * len(coeffs)
    return [c * target / s for c in coeffs]


def fit_coefficients(space: DigitalMetricSpace, f: SelfMap, family: str) -> Optional[ConditionSpec]:
    """Valid coefficients under which ``f`` passes ``family``, or ``None``.

    Coefficients are placed midway between the tightest feasible value and the
    family's bound, then re-checked exhaustively.
    """
    try:
        cond = _fit(space, f, family)
    except InvalidConditionError:
        # rounding pushed a near-boundary fit onto the bound
        return None
    if cond is not None and check_condition(space, f, cond).holds:
        return cond
    return None


def _fit(space, f, family):
    n = len(space)
    pairs = [(x, y) for x in range(n) for y in range(n)]
    cond = None
    if family == "banach":
        r = tightest_coefficient(space, f, "banach")
        if r < 1:
            cond = ConditionSpec.banach((r + 1) / 2)
    elif family == "quasi":
        r = tightest_coefficient(space, f, "quasi")
        if r < 0.5:
            cond = ConditionSpec.quasi((r + 0.5) / 2)
    elif family == "sum_type":
        rows = []
        for x, y in pairs:
            dxy, dxfx, dyfy, dxfy, dyfx, dfxfy = _all_distances(space, f, x, y)
            rows.append((dxfx + dyfy, dxfy + dyfx, dfxfy))
        sol = _min_sum_lp(rows)
        if sol is not None and sol.sum() < 0.5:
            cond = ConditionSpec.sum_type(*_scaled(list(sol), 0.5))
    elif family == "rational":
        rows = []
        for x, y in pairs:
            if x == y:
                continue
            dxy, dxfx, dyfy, dxfy, dyfx, dfxfy = _all_distances(space, f, x, y)
            rows.append((dxfx * dxfx / dxy, dxy, dfxfy))
        sol = _min_sum_lp(rows)
        if sol is not None and sol.sum() < 1:
            b, c = _scaled(list(sol), 1.0)
            cond = ConditionSpec.rational(0.0, b, c)
    elif family == "oaa_g":
        tight = [0.0, 0.0, 0.0]
        for x, y in pairs:
            dxy, dxfx, dyfy, dxfy, dyfx, dfxfy = _all_distances(space, f, x, y)
            if dfxfy == 0:
                continue
            for k, den in enumerate((dxy, dxfx + dyfy, dxfy + dyfx)):
                tight[k] = max(tight[k], dfxfy / den if den > 0 else math.inf)
        if sum(tight) < 1:
            slack = (1 - sum(tight)) / 6
            cond = ConditionSpec.oaa_g(*(t + slack for t in tight))
    else:
        raise ValueError(f"cannot generate maps for family {family!r}")
    return cond


@dataclass(frozen=True)
class GeneratedMap:
    map: SelfMap
    condition: ConditionSpec
    attempts: int
    seed: int


def generate_contraction(
    space: DigitalMetricSpace, family: str, seed: int, budget: int = 500
) -> GeneratedMap:
    """Rejection-sample a self-map passing ``family`` with some valid coefficients."""
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        f = propose_map(rng, len(space), space)
        cond = fit_coefficients(space, f, family)
        if cond is not None:
            return GeneratedMap(f, cond, attempt, seed)
    raise SamplingBudgetExhausted(f"no {family} map accepted in {budget} draws")


def generate_collapse_map(space: DigitalMetricSpace, seed: int, budget: int = 500) -> Tuple[SelfMap, float]:
    """A map with d(fx,fy) <= a d(x,y) for some a below min_separation / diameter.

    Returns the map and that ``a``.
    """
    rng = random.Random(seed)
    bound = constant_collapse_bound(space)
    for _ in range(budget):
        f = propose_map(rng, len(space), space)
        r = tightest_coefficient(space, f, "banach")
        if r < bound:
            return f, (r + bound) / 2
    raise SamplingBudgetExhausted(f"no collapse-eligible map in {budget} draws")


def random_space(
    rng: random.Random,
    max_points: int = 12,
    metric: Optional[MetricSpec] = None,
    extent: int = 6,
) -> DigitalMetricSpace:
    """A random small space in Z^1 or Z^2 under l_1, l_2 or the shortest-path metric.

    Shortest-path spaces are grown as connected sets by attaching c_u neighbours.
    """
    if metric is None:
        metric = rng.choice([MetricSpec.lp(1), MetricSpec.lp(2), MetricSpec.shortest_path()])
    q = rng.choice([1, 2])
    u = rng.randint(1, q)
    n = rng.randint(1, max_points)
    box = list(itertools.product(range(extent), repeat=q))
    if metric.kind == "shortest_path":
        pts = [box[rng.randrange(len(box))]]
        while len(pts) < n:
            base = rng.choice(pts)
            cand = [p for p in box if p not in pts and cu_adjacent(base, p, u)]
            if not cand:
                frontier = [p for p in box if p not in pts and any(cu_adjacent(s, p, u) for s in pts)]
                if not frontier:
                    break
                cand = frontier
            pts.append(rng.choice(cand))
    else:
        pts = rng.sample(box, min(n, len(box)))
    return build_space(DigitalImage(tuple(pts), u), metric)


# ------------------------------------------------------------------- search


def box_images(
    lo: Sequence[int], hi: Sequence[int], max_size: int, u: int = 1, connected_only: bool = False
) -> Iterator[DigitalImage]:
    """Every subset of the box [lo, hi] (inclusive, per axis) with at most
    ``max_size`` points, by increasing size then lexicographic point set."""
    axes = [range(a, b + 1) for a, b in zip(lo, hi)]
    box = list(itertools.product(*axes))
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(box, size):
            img = DigitalImage(combo, u)
            if connected_only and not img.is_connected:
                continue
            yield img


@dataclass(frozen=True)
class BoxPool:
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]
    max_size: int
    u: int = 1
    metric: MetricSpec = field(default_factory=lambda: MetricSpec.lp(1))

    def spaces(self) -> Iterator[DigitalMetricSpace]:
        connected = self.metric.kind == "shortest_path"
        for img in box_images(self.lo, self.hi, self.max_size, self.u, connected):
            yield build_space(img, self.metric)


@dataclass(frozen=True)
class WindowPool:
    families: Tuple[WindowedFamily, ...]


@dataclass(frozen=True)
class Counterexample:
    space: Union[DigitalMetricSpace, WindowedFamily]
    map: Optional[SelfMap]
    report: CheckReport
    seed: int
    spaces_scanned: int
    maps_checked: int


def _fixed_point_free_maps(n: int, maps_per_space: int, rng: random.Random) -> Iterator[SelfMap]:
    if n == 1:
        return
    if n ** n <= maps_per_space:
        for table in itertools.product(range(n), repeat=n):
            if all(t != i for i, t in enumerate(table)):
                yield SelfMap(table)
        return
    for _ in range(maps_per_space):
        # uniform over fixed-point-free tables
        yield SelfMap(tuple((i + 1 + rng.randrange(n - 1)) % n for i in range(n)))


def search_counterexample(
    cond: ConditionSpec,
    pool: Union[BoxPool, WindowPool],
    maps_per_space: int = 4096,
    seed: int = 0,
) -> Optional[Counterexample]:
    """First fixed-point-free map satisfying ``cond`` in the pool, or ``None``.

    Box pools are scanned in canonical image order; a space with at most
    ``maps_per_space`` self-maps is enumerated exhaustively in numeral order,
    larger ones are sampled with ``seed``.
    """
    rng = random.Random(seed)
    scanned = checked = 0
    if isinstance(pool, WindowPool):
        for fam in pool.families:
            scanned += 1
            if fam.fixed_points():
                continue
            checked += 1
            report = fam.check(cond)
            if report.holds:
                return Counterexample(fam, None, report, seed, scanned, checked)
        return None
    for space in pool.spaces():
        scanned += 1
        for f in _fixed_point_free_maps(len(space), maps_per_space, rng):
            checked += 1
            report = check_condition(space, f, cond)
            if report.holds:
                return Counterexample(space, f, report, seed, scanned, checked)
    return None

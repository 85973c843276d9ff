"""Fixed points: Picard orbits, exhaustive scans, uniqueness and the FPP test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .contraction import (
    FIXED_POINT_FAMILIES,
    ConditionSpec,
    check_condition,
    check_g1,
    constant_collapse_bound,
)
from .errors import (
    BudgetExceededError,
    InternalInconsistencyError,
    InvalidConditionError,
    PreconditionError,
)
from .lattice import DigitalImage, Point, PointLike, SelfMap, is_digitally_continuous
from .metrics import DigitalMetricSpace

# 8 ** 8 self-maps of an 8-point image.
DEFAULT_MAP_BUDGET = 8 ** 8


@dataclass(frozen=True)
class OrbitResult:
    orbit: List[int]
    constancy_index: Optional[int]
    fixed_point: Optional[Point]
    iterations: int

    @property
    def converged(self) -> bool:
        return self.constancy_index is not None


@dataclass(frozen=True)
class FppReport:
    has_fpp: bool
    witness: Optional[SelfMap]
    maps_enumerated: int


def fixed_points(space, f: SelfMap) -> List[Point]:
    """Points with f(x) = x, in index order. ``space`` may be an image or a metric space."""
    img = space.image if isinstance(space, DigitalMetricSpace) else space
    return [img.points[i] for i, t in enumerate(f.table) if t == i]


def picard_orbit(space, f: SelfMap, x0: PointLike, max_iter: Optional[int] = None) -> OrbitResult:
    """Iterate x_{i+1} = f(x_i) from ``x0`` until two consecutive terms agree.

    ``constancy_index`` is the first N with x_{N+1} = x_N; since the step is
    deterministic the orbit is constant from N on. ``max_iter`` defaults to
    4 * |X| applications of f.
    """
    img = space.image if isinstance(space, DigitalMetricSpace) else space
    if max_iter is None:
        max_iter = 4 * len(img)
    cur = img.index(x0)
    orbit = [cur]
    for step in range(max_iter):
        nxt = f.table[cur]
        orbit.append(nxt)
        if nxt == cur:
            return OrbitResult(orbit, step, img.points[cur], step + 1)
        cur = nxt
    return OrbitResult(orbit, None, None, max_iter)


def solve_unique_fixed_point(space: DigitalMetricSpace, f: SelfMap, cond: ConditionSpec) -> Point:
    """The unique fixed point of ``f`` guaranteed by ``cond``.

    Found by Picard iteration from index 0, then certified by an exhaustive
    scan that must return exactly that point.
    """
    if cond.variant not in FIXED_POINT_FAMILIES:
        raise InvalidConditionError(f"{cond.variant} does not guarantee a fixed point")
    report = check_condition(space, f, cond)
    if not report.holds:
        raise PreconditionError(f"{cond.variant} condition fails at pair {report.witness}")
    orbit = picard_orbit(space, f, space.image.points[0], max_iter=max(4 * len(space), 1))
    found = fixed_points(space, f)
    if orbit.fixed_point is None or found != [orbit.fixed_point]:
        raise InternalInconsistencyError(
            f"orbit limit {orbit.fixed_point} vs fixed points {found} under {cond}"
        )
    return orbit.fixed_point


def has_fpp(img: DigitalImage, budget: int = DEFAULT_MAP_BUDGET) -> FppReport:
    """Decide the fixed point property by enumerating self-maps.

    Maps are visited as base-|X| numerals of their tables (entry 0 most
    significant). Assignment is depth-first with continuity checked on every
    edge back to an already assigned point, so discontinuous branches are cut
    without changing the visiting order of continuous maps. ``maps_enumerated``
    counts complete continuous maps examined before the verdict.
    """
    n = len(img)
    if n ** n > budget:
        raise BudgetExceededError(f"{n}^{n} self-maps exceed the budget of {budget}")
    back = [tuple(j for j in img.adjacency[i] if j < i) for i in range(n)]
    table = [0] * n
    count = 0

    def assign(i):
        nonlocal count
        if i == n:
            count += 1
            return all(table[k] != k for k in range(n))
        for v in range(n):
            ok = True
            for j in back[i]:
                w = table[j]
                if w != v and not img.adjacent_indices(v, w):
                    ok = False
                    break
            if ok:
                table[i] = v
                if assign(i + 1):
                    return True
        return False

    if assign(0):
        witness = SelfMap(tuple(table))
        if not is_digitally_continuous(img, witness).holds or fixed_points(img, witness):
            raise InternalInconsistencyError(f"unsound FPP witness {witness.table}")
        return FppReport(False, witness, count)
    return FppReport(True, None, count)


def check_constant_collapse(space: DigitalMetricSpace, f: SelfMap, a: float) -> bool:
    """True iff ``f`` is constant, given d(fx,fy) <= a d(x,y) with a below min_separation / diameter.

    Raises PreconditionError if either hypothesis fails. A singleton is trivially constant.
    """
    if len(space) == 1:
        return True
    if not a >= 0:
        raise PreconditionError(f"a = {a} must be non-negative")
    bound = constant_collapse_bound(space)
    if not a < bound:
        raise PreconditionError(f"a = {a} is not below the collapse bound {bound}")
    report = check_g1(space, f, a)
    if not report.holds:
        raise PreconditionError(f"d(fx,fy) <= {a} d(x,y) fails at pair {report.witness}")
    return f.is_constant()


def commuting_collapse(space: DigitalMetricSpace, g: SelfMap, p: SelfMap, a: float) -> Optional[bool]:
    """For two collapse-eligible maps: ``None`` if they do not commute, otherwise
    whether their constant values coincide."""
    if not (check_constant_collapse(space, g, a) and check_constant_collapse(space, p, a)):
        raise InternalInconsistencyError("a collapse-eligible map is not constant")
    if not g.commutes_with(p):
        return None
    return g.table[0] == p.table[0]

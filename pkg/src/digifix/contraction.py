"""Contraction-type inequality templates and exhaustive pair checks.

Each template compares two sides built from the six distances among x, y, fx
and fy. A check scans every ordered pair ``(x, y)`` in index order, records the
first violating pair and the pair with the least slack (RHS - LHS).
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Tuple

from .errors import InvalidConditionError, PreconditionError
from .lattice import SelfMap
from .metrics import TOLERANCE, DigitalMetricSpace
from .report import CheckReport

COEFFICIENT_NAMES = {
    "banach": ("alpha",),
    "quasi": ("c",),
    "sum_type": ("a", "b"),
    "rational": ("a", "b", "c"),
    "expansive": ("delta3",),
    "oaa_g": ("a", "b", "c"),
    "oaa_iterated": ("e", "f", "g", "h", "i"),
    "saljah": ("k1", "k2", "k3"),
}

# Variants whose inequality is strict; all others use "<=" (or ">=" for expansive).
STRICT = frozenset({"banach"})
# Variants only quantified over distinct x, y.
DISTINCT_ONLY = frozenset({"banach", "rational"})
# Variants with a guaranteed unique fixed point on a uniformly discrete space.
FIXED_POINT_FAMILIES = ("banach", "quasi", "sum_type", "rational")


@dataclass(frozen=True)
class ConditionSpec:
    variant: str
    coefficients: Tuple[float, ...]

    def __post_init__(self):
        if self.variant not in COEFFICIENT_NAMES:
            raise InvalidConditionError(f"unknown condition variant {self.variant!r}")
        coeffs = tuple(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        names = COEFFICIENT_NAMES[self.variant]
        if len(coeffs) != len(names):
            raise InvalidConditionError(
                f"{self.variant} takes {len(names)} coefficients {names}, got {len(coeffs)}"
            )
        for name, v in zip(names, coeffs):
            if not isinstance(v, numbers.Real) or isinstance(v, bool) or not math.isfinite(v):
                raise InvalidConditionError(f"{name}={v!r} is not a finite real")
            if v < 0:
                raise InvalidConditionError(f"{name}={v} must be non-negative")
        _check_domain(self.variant, coeffs)

    def __getitem__(self, name: str) -> float:
        return self.coefficients[COEFFICIENT_NAMES[self.variant].index(name)]

    def as_dict(self) -> dict:
        return dict(zip(COEFFICIENT_NAMES[self.variant], self.coefficients))

    @classmethod
    def from_dict(cls, variant: str, coefficients) -> "ConditionSpec":
        if variant not in COEFFICIENT_NAMES:
            raise InvalidConditionError(f"unknown condition variant {variant!r}")
        if isinstance(coefficients, dict):
            names = COEFFICIENT_NAMES[variant]
            unknown = set(coefficients) - set(names)
            if unknown:
                raise InvalidConditionError(f"unknown coefficients {sorted(unknown)} for {variant}")
            try:
                coefficients = [coefficients[n] for n in names]
            except KeyError as exc:
                raise InvalidConditionError(f"{variant} is missing coefficient {exc}") from None
        return cls(variant, tuple(coefficients))

    @classmethod
    def banach(cls, alpha):
        return cls("banach", (alpha,))

    @classmethod
    def quasi(cls, c):
        return cls("quasi", (c,))

    @classmethod
    def sum_type(cls, a, b):
        return cls("sum_type", (a, b))

    @classmethod
    def rational(cls, a, b, c):
        return cls("rational", (a, b, c))

    @classmethod
    def expansive(cls, delta3):
        return cls("expansive", (delta3,))

    @classmethod
    def oaa_g(cls, a, b, c):
        return cls("oaa_g", (a, b, c))

    @classmethod
    def oaa_iterated(cls, e, f, g, h, i):
        return cls("oaa_iterated", (e, f, g, h, i))

    @classmethod
    def saljah(cls, k1, k2, k3):
        return cls("saljah", (k1, k2, k3))

    def terms(self, dxy, dxfx, dyfy, dxfy, dyfx, dfxfy):
        """``(lhs, rhs)`` pairs that must satisfy ``lhs <= rhs`` (``<`` when strict)."""
        k = self.coefficients
        v = self.variant
        if v == "banach":
            return [(dfxfy, k[0] * dxy)]
        if v == "quasi":
            return [(dfxfy, k[0] * max(dxy, dxfx, dyfy, dxfy, dyfx))]
        if v == "sum_type":
            a, b = k
            return [(dfxfy, a * (dxfx + dyfy) + b * (dxfy + dyfx))]
        if v == "rational":
            a, b, c = k
            return [(dfxfy + a * dyfx, b * dxfx * dxfx / dxy + c * dxy)]
        if v == "expansive":
            return [(k[0] * dxy, dfxfy)]
        if v == "oaa_g":
            a, b, c = k
            return [
                (dfxfy, a * dxy),
                (dfxfy, b * (dxfx + dyfy)),
                (dfxfy, c * (dxfy + dyfx)),
            ]
        if v == "oaa_iterated":
            # evaluated at base points (fx, fy); see scan_condition
            e, f, g, h, i = k
            return [(dfxfy, e * dxy + f * dxfx + g * dyfy + h * dxfy + i * dyfx)]
        k1, k2, k3 = k
        return [
            (dfxfy, k1 * k1 * dxy + k2 * k2 * (dxfx + dyfy) + k3 * k3 * math.sqrt(dxy * min(dxfx, dyfy)))
        ]


def _check_domain(variant, k):
    if variant == "banach" and not k[0] < 1:
        raise InvalidConditionError(f"banach needs alpha < 1, got {k[0]}")
    if variant == "quasi" and not k[0] < 0.5:
        raise InvalidConditionError(f"quasi needs c < 1/2, got {k[0]}")
    if variant == "sum_type" and not k[0] + k[1] < 0.5:
        raise InvalidConditionError(f"sum_type needs a + b < 1/2, got {k[0] + k[1]}")
    if variant == "rational" and not k[1] + k[2] < 1:
        raise InvalidConditionError(f"rational needs b + c < 1, got {k[1] + k[2]}")
    if variant == "oaa_g" and not sum(k) < 1:
        raise InvalidConditionError(f"oaa_g needs a + b + c < 1, got {sum(k)}")
    if variant == "oaa_iterated" and not sum(k) < 1:
        raise InvalidConditionError(f"oaa_iterated needs e + f + g + h + i < 1, got {sum(k)}")
    if variant == "saljah" and not sum(x * x for x in k) < 1:
        raise InvalidConditionError("saljah needs k1^2 + k2^2 + k3^2 < 1")


def scan_terms(
    pairs: Iterable[tuple],
    f: Callable,
    dist: Callable,
    terms: Callable,
    *,
    strict: bool = False,
    distinct_only: bool = False,
    iterate: bool = False,
    tol: float = TOLERANCE,
) -> CheckReport:
    """Generic exhaustive scan.

    ``terms(dxy, dxfx, dyfy, dxfy, dyfx, dfxfy)`` returns ``(lhs, rhs)`` pairs.
    With ``iterate`` the template is evaluated at the base points ``(fx, fy)``.
    A non-strict pair fails when its margin is below ``-tol``; a strict pair
    fails unless its margin exceeds ``tol``.
    """
    holds = True
    witness = tightest = None
    best = (math.inf, None, None)
    checked = 0
    for x, y in pairs:
        if distinct_only and x == y:
            continue
        bx, by = (f(x), f(y)) if iterate else (x, y)
        fx, fy = f(bx), f(by)
        sides = terms(dist(bx, by), dist(bx, fx), dist(by, fy), dist(bx, fy), dist(by, fx), dist(fx, fy))
        checked += 1
        pair_margin, pair_sides = math.inf, None
        for lhs, rhs in sides:
            m = rhs - lhs
            if m < pair_margin:
                pair_margin, pair_sides = m, (lhs, rhs)
        failed = pair_margin <= tol if strict else pair_margin < -tol
        if failed and holds:
            holds, witness = False, (x, y)
        if pair_margin < best[0]:
            best = (pair_margin, pair_sides, (x, y))
            tightest = (x, y)
    margin, sides, _ = best
    lhs, rhs = sides if sides else (None, None)
    return CheckReport(
        holds,
        witness=witness,
        margin=margin if checked else None,
        pairs_checked=checked,
        tightest=tightest,
        lhs=lhs,
        rhs=rhs,
    )


def scan_condition(pairs, f, dist, cond: ConditionSpec, tol: float = TOLERANCE) -> CheckReport:
    """Check ``cond`` over explicit pairs with arbitrary ``f`` and ``dist`` callables."""
    return scan_terms(
        pairs,
        f,
        dist,
        cond.terms,
        strict=cond.variant in STRICT,
        distinct_only=cond.variant in DISTINCT_ONLY,
        iterate=cond.variant == "oaa_iterated",
        tol=tol,
    )


def _ordered_pairs(n):
    return ((i, j) for i in range(n) for j in range(n))


def check_condition(
    space: DigitalMetricSpace, f: SelfMap, cond: ConditionSpec, tol: float = TOLERANCE
) -> CheckReport:
    """Exhaustive check of ``cond`` for ``f`` over all ordered index pairs."""
    return scan_condition(_ordered_pairs(len(space)), f.table.__getitem__, space.d, cond, tol)


def check_g1(space: DigitalMetricSpace, f: SelfMap, a: float, tol: float = TOLERANCE) -> CheckReport:
    """The single clause d(fx, fy) <= a * d(x, y) for all pairs."""
    return scan_terms(
        _ordered_pairs(len(space)),
        f.table.__getitem__,
        space.d,
        lambda dxy, dxfx, dyfy, dxfy, dyfx, dfxfy: [(dfxfy, a * dxy)],
        tol=tol,
    )


def oaa_beta_margin(space: DigitalMetricSpace, f: SelfMap, beta: float) -> float:
    """Least slack of beta * max{d(x,y), mean self-gap, mean cross-gap} - d(fx,fy)
    over distinct pairs. Reported only; beta has no admissible range to test against."""
    n = len(space)
    d, t = space.d, f.table
    margin = math.inf
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            kernel = max(d(x, y), (d(x, t[x]) + d(y, t[y])) / 2, (d(x, t[y]) + d(y, t[x])) / 2)
            margin = min(margin, beta * kernel - d(t[x], t[y]))
    return margin


def tightest_on(pairs, f, dist, family: str) -> float:
    """Extremal coefficient of a one-coefficient family over the given pairs.

    banach: max d(fx,fy)/d(x,y) over x != y (0 if there are none).
    quasi: max d(fx,fy)/max-of-five over all pairs.
    expansive: min d(fx,fy)/d(x,y) over x != y (inf if there are none).
    A zero denominator under a nonzero numerator yields ``math.inf``.
    """
    if family not in ("banach", "quasi", "expansive"):
        raise InvalidConditionError(f"no single tightest coefficient for family {family!r}")
    best = math.inf if family == "expansive" else 0.0
    for x, y in pairs:
        if family != "quasi" and x == y:
            continue
        fx, fy = f(x), f(y)
        num = dist(fx, fy)
        if family == "quasi":
            den = max(dist(x, y), dist(x, fx), dist(y, fy), dist(x, fy), dist(y, fx))
        else:
            den = dist(x, y)
        if den == 0:
            if num == 0:
                continue
            ratio = math.inf
        else:
            ratio = num / den
        best = min(best, ratio) if family == "expansive" else max(best, ratio)
    return best


def tightest_coefficient(space: DigitalMetricSpace, f: SelfMap, family: str) -> float:
    return tightest_on(_ordered_pairs(len(space)), f.table.__getitem__, space.d, family)


class RatioL(NamedTuple):
    value: float
    is_contractive: bool


class RatioR(NamedTuple):
    value: float
    sum_ok: bool
    r_lt_1: bool


def ratio_L(c) -> RatioL:
    """Orbit step ratio c / (1 - c) obtained from a quasi-contraction with constant c.

    It is below 1 exactly when c < 1/2. Accepts floats or ``Fraction``.
    """
    if not 0 <= c < 1:
        raise InvalidConditionError(f"c must lie in [0, 1), got {c}")
    value = c / (1 - c)
    return RatioL(value, value < 1)


def ratio_r(e, f, g, h, i) -> RatioR:
    """r = (e + f + h) / (1 - g - h), alongside whether e+f+g+h+i < 1 and r < 1.

    The first test does not imply the second; (0.3, 0, 0.2, 0.4, 0) gives r = 1.75.
    """
    coeffs = (e, f, g, h, i)
    if any(x < 0 for x in coeffs):
        raise InvalidConditionError("coefficients must be non-negative")
    if g + h >= 1:
        raise InvalidConditionError(f"g + h must be below 1, got {g + h}")
    value = (e + f + h) / (1 - g - h)
    return RatioR(value, sum(coeffs) < 1, value < 1)


def constant_collapse_bound(space: DigitalMetricSpace) -> float:
    """min_separation / diameter; below it any map with d(fx,fy) <= a d(x,y) is constant."""
    if len(space) < 2:
        raise PreconditionError("collapse bound is undefined on a singleton")
    return space.min_separation / space.diameter

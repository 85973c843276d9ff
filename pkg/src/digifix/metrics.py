"""Metrics on digital images and the digital metric space aggregate."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import DimensionMismatchError, DisconnectedImageError, InvalidMetricError
from .lattice import DigitalImage, PointLike, SelfMap, as_point

# Absolute slack applied to every floating-point inequality downstream.
TOLERANCE = 1e-9


def lp_distance(x: PointLike, y: PointLike, p: float) -> float:
    """The l_p distance between two lattice points.

    Integer ``p`` is evaluated as an exact integer power sum before the root.
    """
    x, y = as_point(x), as_point(y)
    if len(x) != len(y):
        raise DimensionMismatchError(f"points {x} and {y} differ in dimension")
    if p < 1:
        raise InvalidMetricError(f"l_p needs p >= 1, got {p}")
    gaps = [abs(a - b) for a, b in zip(x, y)]
    if p == 1:
        return float(sum(gaps))
    if p == 2:
        return math.sqrt(sum(g * g for g in gaps))
    if float(p).is_integer():
        return float(sum(g ** int(p) for g in gaps)) ** (1.0 / p)
    return sum(g ** p for g in gaps) ** (1.0 / p)


def shortest_path_distance(img: DigitalImage, x: PointLike, y: PointLike) -> int:
    if not img.is_connected:
        raise DisconnectedImageError("shortest-path metric needs a connected image")
    return img.bfs_distances(img.index(x))[img.index(y)]


@dataclass(frozen=True)
class MetricSpec:
    """Which metric to put on an image: ``lp``, ``shortest_path`` or ``table``."""

    kind: str
    p: Optional[float] = None
    rows: Optional[Tuple[Tuple[float, ...], ...]] = None

    def __post_init__(self):
        if self.kind == "lp":
            if self.p is None or not self.p >= 1 or math.isinf(self.p):
                raise InvalidMetricError(f"l_p metric needs finite p >= 1, got {self.p}")
        elif self.kind == "table":
            if self.rows is None:
                raise InvalidMetricError("table metric needs rows")
            rows = tuple(tuple(float(v) for v in row) for row in self.rows)
            object.__setattr__(self, "rows", rows)
        elif self.kind != "shortest_path":
            raise InvalidMetricError(f"unknown metric kind {self.kind!r}")

    @classmethod
    def lp(cls, p: float = 2) -> "MetricSpec":
        return cls("lp", p=p)

    @classmethod
    def shortest_path(cls) -> "MetricSpec":
        return cls("shortest_path")

    @classmethod
    def table(cls, rows) -> "MetricSpec":
        return cls("table", rows=tuple(tuple(r) for r in rows))


def validate_table(rows, n: int) -> None:
    """Raise unless ``rows`` is an n x n metric: symmetric, zero diagonal,
    positive off the diagonal and triangle-respecting (to within TOLERANCE)."""
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidMetricError(f"table must be {n} x {n}")
    for i in range(n):
        if rows[i][i] != 0:
            raise InvalidMetricError(f"d({i},{i}) = {rows[i][i]} is not zero")
        for j in range(n):
            v = rows[i][j]
            if not math.isfinite(v) or v < 0:
                raise InvalidMetricError(f"d({i},{j}) = {v} is not a finite non-negative real")
            if i != j and v <= 0:
                raise InvalidMetricError(f"d({i},{j}) = 0 for distinct points")
            if abs(v - rows[j][i]) > TOLERANCE:
                raise InvalidMetricError(f"table is not symmetric at ({i},{j})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if rows[i][k] > rows[i][j] + rows[j][k] + TOLERANCE:
                    raise InvalidMetricError(f"triangle inequality fails at ({i},{j},{k})")


@dataclass(frozen=True)
class DigitalMetricSpace:
    """An image, a metric on it, and the full distance matrix.

    ``min_separation`` is ``math.inf`` for a singleton (no distinct pair).
    """

    image: DigitalImage
    metric: MetricSpec
    dist: Tuple[Tuple[float, ...], ...] = field(repr=False)
    min_separation: float
    diameter: float

    def __len__(self) -> int:
        return len(self.image)

    def d(self, i: int, j: int) -> float:
        return self.dist[i][j]

    def distance(self, x: PointLike, y: PointLike) -> float:
        return self.dist[self.image.index(x)][self.image.index(y)]

    @property
    def points(self):
        return self.image.points


def build_space(img: DigitalImage, spec: MetricSpec) -> DigitalMetricSpace:
    n = len(img)
    if spec.kind == "lp":
        rows = [[lp_distance(a, b, spec.p) for b in img.points] for a in img.points]
    elif spec.kind == "shortest_path":
        if not img.is_connected:
            raise DisconnectedImageError("shortest-path metric needs a connected image")
        rows = [[float(h) for h in img.bfs_distances(i)] for i in range(n)]
    else:
        validate_table(spec.rows, n)
        rows = [list(r) for r in spec.rows]
    off_diag = [rows[i][j] for i in range(n) for j in range(n) if i != j]
    eps = min(off_diag) if off_diag else math.inf
    diam = max(off_diag) if off_diag else 0.0
    if eps <= 0:
        raise InvalidMetricError("distinct points at distance zero")
    return DigitalMetricSpace(img, spec, tuple(tuple(r) for r in rows), eps, diam)


def min_separation(space: DigitalMetricSpace) -> float:
    """Smallest distance between distinct points; ``math.inf`` for a singleton."""
    return space.min_separation


def diameter(space: DigitalMetricSpace) -> float:
    return space.diameter


def is_metrically_continuous(space: DigitalMetricSpace, f: SelfMap) -> Tuple[bool, float]:
    """Epsilon-delta continuity of ``f``, returned with its uniform witness delta.

    On a uniformly discrete space delta = min_separation works for every epsilon:
    d(x, y) < delta forces x = y and so d(fx, fy) = 0. The scan below confirms
    that no pair inside delta moves apart, so any map passes.
    """
    delta = space.min_separation
    n = len(space)
    for i in range(n):
        for j in range(n):
            if space.dist[i][j] < delta and space.dist[f.table[i]][f.table[j]] > 0:
                return False, delta
    return True, delta

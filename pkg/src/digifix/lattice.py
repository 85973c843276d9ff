"""Digital images in Z^q with c_u adjacency, paths, components and continuity.

Points are tuples of ints. An image interns its points: the position of a point
in ``DigitalImage.points`` is its index, and self-maps are tables over those
indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from .errors import (
    DimensionMismatchError,
    InvalidImageError,
    InvalidMapError,
    PointNotInImageError,
)
from .report import CheckReport

Point = Tuple[int, ...]
PointLike = Union[int, Sequence[int]]


def as_point(x: PointLike) -> Point:
    """Coerce ``x`` to a lattice point; a bare int is a point of Z^1."""
    if isinstance(x, bool):
        raise TypeError("booleans are not lattice coordinates")
    if isinstance(x, int):
        return (x,)
    coords = tuple(x)
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"lattice coordinates must be integers, got {c!r}")
    if not coords:
        raise InvalidImageError("a lattice point needs at least one coordinate")
    return coords


def cu_adjacent(x: PointLike, y: PointLike, u: int) -> bool:
    """True iff ``x`` and ``y`` are c_u-adjacent.

    That is: ``x != y``, at most ``u`` coordinates differ by exactly 1 and every
    other coordinate is equal.
    """
    x, y = as_point(x), as_point(y)
    if len(x) != len(y):
        raise DimensionMismatchError(f"points {x} and {y} differ in dimension")
    if not 1 <= u <= len(x):
        raise InvalidImageError(f"u={u} outside [1, {len(x)}]")
    unit_steps = 0
    for a, b in zip(x, y):
        gap = abs(a - b)
        if gap == 1:
            unit_steps += 1
        elif gap != 0:
            return False
    return 0 < unit_steps <= u


@dataclass(frozen=True)
class DigitalImage:
    """A finite, non-empty point set of Z^q together with c_u adjacency."""

    points: Tuple[Point, ...]
    u: int = 1

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InvalidImageError("a digital image must be non-empty")
        q = len(pts[0])
        if any(len(p) != q for p in pts):
            raise DimensionMismatchError("all points of an image must share one dimension")
        if len(set(pts)) != len(pts):
            raise InvalidImageError("image points must be pairwise distinct")
        if not 1 <= self.u <= q:
            raise InvalidImageError(f"u={self.u} outside [1, {q}]")

    @classmethod
    def interval(cls, a: int, b: int) -> "DigitalImage":
        """The digital interval [a, b]_Z with c_1 adjacency."""
        if b < a:
            raise InvalidImageError(f"empty interval [{a}, {b}]")
        return cls(tuple((i,) for i in range(a, b + 1)), 1)

    @classmethod
    def of(cls, points: Iterable[PointLike], u: int = 1) -> "DigitalImage":
        return cls(tuple(as_point(p) for p in points), u)

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x) -> bool:
        try:
            return as_point(x) in self._index
        except (TypeError, InvalidImageError):
            return False

    @cached_property
    def _index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, x: PointLike) -> int:
        p = as_point(x)
        try:
            return self._index[p]
        except KeyError:
            raise PointNotInImageError(f"{p} is not a point of the image") from None

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted neighbor index lists, one per point."""
        n = len(self.points)
        nbrs = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if cu_adjacent(self.points[i], self.points[j], self.u):
                    nbrs[i].append(j)
                    nbrs[j].append(i)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def adjacent_indices(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def edges(self) -> Iterable[Tuple[int, int]]:
        """Unordered adjacent index pairs (i < j) in index order."""
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if i < j:
                    yield i, j

    def bfs_distances(self, source: int) -> list:
        """Hop counts from ``source``; ``None`` marks unreachable points."""
        dist = [None] * len(self.points)
        dist[source] = 0
        queue = deque([source])
        while queue:
            i = queue.popleft()
            for j in self.adjacency[i]:
                if dist[j] is None:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        return dist

    @cached_property
    def is_connected(self) -> bool:
        return all(d is not None for d in self.bfs_distances(0))


@dataclass(frozen=True)
class DigitalPath:
    vertices: Tuple[Point, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class SelfMap:
    """A total self-map stored as an index table: index ``i`` maps to ``table[i]``."""

    table: Tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise InvalidMapError("a self-map needs at least one entry")
        for i, t in enumerate(table):
            if not 0 <= t < n:
                raise InvalidMapError(f"entry {i} maps to {t}, outside [0, {n})")

    @classmethod
    def identity(cls, n: int) -> "SelfMap":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, value: int) -> "SelfMap":
        return cls((value,) * n)

    @classmethod
    def from_function(cls, img: DigitalImage, fn: Callable) -> "SelfMap":
        """Tabulate ``fn`` (point -> point) over ``img``."""
        return cls(tuple(img.index(fn(p)) for p in img.points))

    @classmethod
    def from_points(cls, img: DigitalImage, mapping) -> "SelfMap":
        """Build from a dict point -> point; every point must be a key."""
        mapping = {as_point(k): as_point(v) for k, v in dict(mapping).items()}
        missing = [p for p in img.points if p not in mapping]
        if missing:
            raise InvalidMapError(f"map undefined at {missing[0]}")
        return cls(tuple(img.index(mapping[p]) for p in img.points))

    def __len__(self) -> int:
        return len(self.table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def compose(self, other: "SelfMap") -> "SelfMap":
        """``self ∘ other``: apply ``other`` first."""
        if len(other) != len(self):
            raise InvalidMapError("cannot compose maps on different images")
        return SelfMap(tuple(self.table[t] for t in other.table))

    def image_size(self) -> int:
        return len(set(self.table))

    def is_constant(self) -> bool:
        return self.image_size() == 1

    def commutes_with(self, other: "SelfMap") -> bool:
        return self.compose(other) == other.compose(self)


def _require_map(img: DigitalImage, f: SelfMap) -> None:
    if len(f) != len(img):
        raise InvalidMapError(f"map has {len(f)} entries, image has {len(img)} points")


def neighbors(img: DigitalImage, x: PointLike) -> frozenset:
    i = img.index(x)
    return frozenset(img.points[j] for j in img.adjacency[i])


def components(img: DigitalImage) -> list:
    """Maximal c_u-connected subsets, each a list of points in index order.

    Components are ordered by their smallest index.
    """
    seen = [False] * len(img)
    parts = []
    for start in range(len(img)):
        if seen[start]:
            continue
        dist = img.bfs_distances(start)
        members = [i for i, d in enumerate(dist) if d is not None]
        for i in members:
            seen[i] = True
        parts.append([img.points[i] for i in members])
    return parts


def find_path(img: DigitalImage, x: PointLike, y: PointLike) -> Optional[DigitalPath]:
    """A shortest c_u-path from ``x`` to ``y``, or ``None`` if none exists.

    Among shortest paths the one whose index sequence is lexicographically
    smallest is returned.
    """
    src, dst = img.index(x), img.index(y)
    to_dst = img.bfs_distances(dst)
    if to_dst[src] is None:
        return None
    route = [src]
    cur = src
    while cur != dst:
        cur = next(j for j in img.adjacency[cur] if to_dst[j] == to_dst[cur] - 1)
        route.append(cur)
    return DigitalPath(tuple(img.points[i] for i in route))


def is_digitally_continuous(img: DigitalImage, f: SelfMap) -> CheckReport:
    """Edge test for digital continuity: adjacent points go to equal or adjacent points.

    On failure the witness is the first offending edge ``(i, j)`` as indices.
    """
    _require_map(img, f)
    checked = 0
    for i, j in img.edges():
        checked += 1
        fi, fj = f.table[i], f.table[j]
        if fi != fj and not img.adjacent_indices(fi, fj):
            return CheckReport(False, witness=(i, j), pairs_checked=checked)
    return CheckReport(True, pairs_checked=checked)

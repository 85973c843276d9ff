"""JSON space documents: one image, metric, optional map and optional condition.

Example::

    {
      "dimension": 1,
      "points": [[0], [1]],
      "adjacency": {"kind": "c_u", "u": 1},
      "metric": {"kind": "lp", "p": 1},
      "map": {"kind": "table", "pairs": [[0, 1], [1, 0]]},
      "condition": {"variant": "saljah",
                    "coefficients": {"k1": 0, "k2": 0.9486832980505138, "k3": 0.3}}
    }

Map pairs name points either by index or by coordinate list. Structural
problems raise ``DocumentParseError`` carrying a position; well-formed
documents describing invalid objects raise the usual digifix errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .contraction import ConditionSpec
from .errors import DigifixError, InvalidMapError
from .lattice import DigitalImage, SelfMap
from .metrics import MetricSpec


class DocumentParseError(DigifixError):
    def __init__(self, message: str, position: str):
        super().__init__(f"{position}: {message}")
        self.position = position


@dataclass(frozen=True)
class SpaceDocument:
    image: DigitalImage
    metric: MetricSpec
    map: Optional[SelfMap] = None
    condition: Optional[ConditionSpec] = None

    def to_dict(self) -> dict:
        doc = {
            "dimension": self.image.dimension,
            "points": [list(p) for p in self.image.points],
            "adjacency": {"kind": "c_u", "u": self.image.u},
            "metric": _metric_to_dict(self.metric),
        }
        if self.map is not None:
            doc["map"] = {"kind": "table", "pairs": [[i, t] for i, t in enumerate(self.map.table)]}
        if self.condition is not None:
            doc["condition"] = {
                "variant": self.condition.variant,
                "coefficients": self.condition.as_dict(),
            }
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _metric_to_dict(m: MetricSpec) -> dict:
    if m.kind == "lp":
        return {"kind": "lp", "p": m.p}
    if m.kind == "table":
        return {"kind": "table", "rows": [list(r) for r in m.rows]}
    return {"kind": "shortest_path"}


def _expect(cond, message, position):
    if not cond:
        raise DocumentParseError(message, position)


def _int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _real(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _field(obj, key, position):
    _expect(isinstance(obj, dict), "expected an object", position)
    _expect(key in obj, f"missing field {key!r}", position)
    return obj[key]


def _point(v, q, position):
    _expect(isinstance(v, list) and all(_int(c) for c in v), "a point is a list of integers", position)
    _expect(len(v) == q, f"point has {len(v)} coordinates, dimension is {q}", position)
    return tuple(v)


def parse_document(text: str) -> SpaceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(raw)


def from_dict(raw) -> SpaceDocument:
    _expect(isinstance(raw, dict), "document must be a JSON object", "$")
    q = _field(raw, "dimension", "$")
    _expect(_int(q) and q >= 1, "dimension must be a positive integer", "$.dimension")
    pts = _field(raw, "points", "$")
    _expect(isinstance(pts, list) and pts, "points must be a non-empty list", "$.points")
    points = tuple(_point(p, q, f"$.points[{k}]") for k, p in enumerate(pts))

    adj = _field(raw, "adjacency", "$")
    _expect(_field(adj, "kind", "$.adjacency") == "c_u", "only c_u adjacency is supported", "$.adjacency.kind")
    u = _field(adj, "u", "$.adjacency")
    _expect(_int(u), "u must be an integer", "$.adjacency.u")
    image = DigitalImage(points, u)

    met = _field(raw, "metric", "$")
    kind = _field(met, "kind", "$.metric")
    if kind == "lp":
        p = _field(met, "p", "$.metric")
        _expect(_real(p), "p must be a number", "$.metric.p")
        metric = MetricSpec.lp(p)
    elif kind == "shortest_path":
        metric = MetricSpec.shortest_path()
    elif kind == "table":
        rows = _field(met, "rows", "$.metric")
        _expect(
            isinstance(rows, list) and all(isinstance(r, list) and all(_real(v) for v in r) for r in rows),
            "rows must be a list of numeric lists",
            "$.metric.rows",
        )
        metric = MetricSpec.table(rows)
    else:
        raise DocumentParseError(f"unknown metric kind {kind!r}", "$.metric.kind")

    fmap = None
    if "map" in raw:
        m = raw["map"]
        _expect(_field(m, "kind", "$.map") == "table", "map kind must be 'table'", "$.map.kind")
        pairs = _field(m, "pairs", "$.map")
        _expect(isinstance(pairs, list), "pairs must be a list", "$.map.pairs")
        table = [None] * len(points)
        for k, pair in enumerate(pairs):
            pos = f"$.map.pairs[{k}]"
            _expect(isinstance(pair, list) and len(pair) == 2, "a pair is [source, target]", pos)
            src, dst = (_ref(image, v, q, f"{pos}[{s}]") for s, v in enumerate(pair))
            if table[src] is not None:
                raise InvalidMapError(f"{pos}: point {points[src]} is mapped twice")
            table[src] = dst
        missing = [points[i] for i, t in enumerate(table) if t is None]
        if missing:
            raise InvalidMapError(f"map is undefined at {missing[0]}")
        fmap = SelfMap(tuple(table))

    cond = None
    if "condition" in raw:
        c = raw["condition"]
        variant = _field(c, "variant", "$.condition")
        _expect(isinstance(variant, str), "variant must be a string", "$.condition.variant")
        coeffs = _field(c, "coefficients", "$.condition")
        values = coeffs.values() if isinstance(coeffs, dict) else coeffs
        _expect(
            isinstance(coeffs, (dict, list)) and all(_real(v) for v in values),
            "coefficients must be numbers, by name or in order",
            "$.condition.coefficients",
        )
        cond = ConditionSpec.from_dict(variant, coeffs)
    return SpaceDocument(image, metric, fmap, cond)


def _ref(image, v, q, position) -> int:
    if _int(v):
        if not 0 <= v < len(image):
            raise InvalidMapError(f"{position}: index {v} out of range")
        return v
    return image.index(_point(v, q, position))

"""Finite graphs as decomposition spaces and the chaotic map they carry.

A graph is a union of r arcs meeting only at nodes.  Arc i owns the prefix
cylinder 1^(i-1)0 (the last arc absorbs the leftover 1^(r-1) block, so the
r cylinders partition sequence space), and a point on arc i is addressed by
the prefix followed by a binary expansion of its parameter.  The shift then
induces a map that walks points down the arc ladder; node fibers and the
two midpoint fibers on arcs 1 and r form the exceptional set, held fixed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Sequence, Tuple, Union

from .decomposition import Fiber, InducedSystem, induced_apply, induced_system
from .streams import StreamWord
from .words import (
    Word,
    bits_of,
    drop_bits,
    leading_ones,
    prepend_bits,
    shift_map,
    word_metric,
    word_value,
)

__all__ = [
    "GraphError",
    "Arc",
    "GraphSpec",
    "GraphPoint",
    "Interior",
    "Node",
    "GraphSystem",
    "parse_graph",
    "graph_system",
    "encode_point",
    "decode_word",
    "graph_map",
    "exceptional_points",
    "graph_orbit",
    "graph_metric",
    "EXAMPLE_GRAPHS",
]

HALF = Fraction(1, 2)

_ID_RE = re.compile(r"^[A-Za-z0-9_]+$")


class GraphError(ValueError):
    """Malformed graph description."""


class Arc(NamedTuple):
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class GraphSpec:
    """Parsed graph: ordered nodes and arcs; arc order fixes the prefixes."""

    nodes: Tuple[str, ...]
    arcs: Tuple[Arc, ...]

    @property
    def r(self) -> int:
        return len(self.arcs)

    def arc(self, i: int) -> Arc:
        """1-based arc lookup."""
        return self.arcs[i - 1]


@dataclass(frozen=True)
class Interior:
    """A point strictly inside arc `arc` (1-based) at parameter t."""

    arc: int
    t: Fraction

    def __post_init__(self):
        if not 0 < self.t < 1:
            raise ValueError(f"interior parameter {self.t} not in (0, 1)")

    def __repr__(self) -> str:
        return f"Interior({self.arc}, {self.t})"


@dataclass(frozen=True)
class Node:
    """A node of the graph."""

    id: str

    def __repr__(self) -> str:
        return f"Node({self.id!r})"


GraphPoint = Union[Interior, Node]


def parse_graph(text: str) -> GraphSpec:
    """Parse the line-oriented DSL: `node <id>` and `arc <id> <tail> <head>`.

    Arcs are numbered 1..r in file order.  Loops are allowed and the graph
    need not be connected, but every declared node must be an endpoint of
    some arc (an isolated node would have an empty fiber).
    """
    nodes: List[str] = []
    arcs: List[Arc] = []
    seen_ids: set = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "node":
            if len(parts) != 2:
                raise GraphError(f"line {ln}: expected 'node <id>'")
            name = parts[1]
            if not _ID_RE.match(name):
                raise GraphError(f"line {ln}: bad identifier {name!r}")
            if name in seen_ids:
                raise GraphError(f"line {ln}: duplicate id {name!r}")
            seen_ids.add(name)
            nodes.append(name)
        elif parts[0] == "arc":
            if len(parts) != 4:
                raise GraphError(f"line {ln}: expected 'arc <id> <tail> <head>'")
            aid, tail, head = parts[1:]
            if not _ID_RE.match(aid):
                raise GraphError(f"line {ln}: bad identifier {aid!r}")
            if aid in seen_ids:
                raise GraphError(f"line {ln}: duplicate id {aid!r}")
            for endpoint in (tail, head):
                if endpoint not in nodes:
                    raise GraphError(f"line {ln}: unknown node {endpoint!r}")
            seen_ids.add(aid)
            arcs.append(Arc(aid, tail, head))
        else:
            raise GraphError(f"line {ln}: unknown directive {parts[0]!r}")
    if not arcs:
        raise GraphError("empty graph: at least one arc is required")
    used = {a.tail for a in arcs} | {a.head for a in arcs}
    for name in nodes:
        if name not in used:
            raise GraphError(f"node {name!r} is not an endpoint of any arc")
    return GraphSpec(tuple(nodes), tuple(arcs))


class GraphSystem:
    """A graph together with its address codec and induced shift map."""

    def __init__(self, spec: GraphSpec):
        self.spec = spec
        r = spec.r
        # prefix of arc i: 1^(i-1) 0 for i < r, 1^(r-1) for the last arc
        self.prefixes: List[Tuple[int, ...]] = []
        for i in range(1, r + 1):
            if i < r:
                self.prefixes.append((1,) * (i - 1) + (0,))
            else:
                self.prefixes.append((1,) * (r - 1))
        self._arc_index: Dict[str, int] = {a.id: i + 1 for i, a in enumerate(spec.arcs)}
        self.exceptional: Tuple[GraphPoint, ...] = self._exceptional()
        self.induced: InducedSystem = induced_system(
            "graph", shift_map, self, designated=None,
            pinned_points=self.exceptional)

    def _exceptional(self) -> Tuple[GraphPoint, ...]:
        points: List[GraphPoint] = [Node(v) for v in self.spec.nodes]
        points.append(Interior(1, HALF))
        if self.spec.r > 1:
            points.append(Interior(self.spec.r, HALF))
        return tuple(points)

    def arc_index(self, arc_id: str) -> int:
        try:
            return self._arc_index[arc_id]
        except KeyError:
            raise GraphError(f"unknown arc {arc_id!r}") from None

    # -- codec protocol -------------------------------------------------

    def encode(self, point: GraphPoint) -> Fiber:
        if isinstance(point, Interior):
            if not 1 <= point.arc <= self.spec.r:
                raise GraphError(f"arc index {point.arc} out of range 1..{self.spec.r}")
            prefix = self.prefixes[point.arc - 1]
            return Fiber(prepend_bits(w, prefix) for w in bits_of(point.t))
        if isinstance(point, Node):
            if point.id not in self.spec.nodes:
                raise GraphError(f"unknown node {point.id!r}")
            words = []
            for i, arc in enumerate(self.spec.arcs, start=1):
                prefix = self.prefixes[i - 1]
                if arc.tail == point.id:
                    words.append(prepend_bits(Word([], [0]), prefix))
                if arc.head == point.id:
                    words.append(prepend_bits(Word([], [1]), prefix))
            if not words:
                raise GraphError(f"node {point.id!r} has no incident arcs")
            return Fiber(words)
        raise TypeError(f"not a graph point: {point!r}")

    def decode(self, word: Word) -> GraphPoint:
        i, tail = self._split(word)
        t = word_value(tail)
        arc = self.spec.arc(i)
        if t == 0:
            return Node(arc.tail)
        if t == 1:
            return Node(arc.head)
        return Interior(i, t)

    def _split(self, word: Word) -> Tuple[int, Word]:
        """Arc index addressed by the word and the parameter tail."""
        r = self.spec.r
        ones = leading_ones(word, r - 1)
        if ones < r - 1:
            return ones + 1, drop_bits(word, ones + 1)
        return r, drop_bits(word, r - 1)

    def fiber_of(self, word: Word) -> Fiber:
        return self.encode(self.decode(word))

    def point_key(self, word: Word) -> GraphPoint:
        return self.decode(word)

    def point_json(self, point: GraphPoint):
        if isinstance(point, Node):
            return {"node": point.id}
        return {"arc": self.spec.arc(point.arc).id, "t": str(point.t)}

    def stream_excludes_all(self, sw: StreamWord, points: Sequence[GraphPoint],
                            precision: int) -> bool:
        r = self.spec.r
        bits = sw.prefix(r - 1 + precision)
        ones = 0
        while ones < r - 1 and bits[ones] == 1:
            ones += 1
        arc = ones + 1 if ones < r - 1 else r
        skip = ones + 1 if ones < r - 1 else r - 1
        v = 0
        for b in bits[skip:skip + precision]:
            v = (v << 1) | b
        lo = Fraction(v, 1 << precision)
        hi = Fraction(v + 1, 1 << precision)
        for pt in points:
            if isinstance(pt, Node):
                # on any arc, a node means parameter 0 or 1
                if lo <= 0 or hi >= 1:
                    return False
            else:
                if pt.arc == arc and lo <= pt.t <= hi:
                    return False
        return True


def graph_system(spec: GraphSpec) -> GraphSystem:
    return GraphSystem(spec)


def encode_point(sys: GraphSystem, point: GraphPoint) -> Fiber:
    """All address words of a point: prefixed expansions for an interior
    point, one eventually constant word per incident arc end for a node."""
    return sys.encode(point)


def decode_word(sys: GraphSystem, word: Word) -> GraphPoint:
    """Point addressed by a word; endpoint parameters collapse to nodes."""
    return sys.decode(word)


def exceptional_points(sys: GraphSystem) -> List[GraphPoint]:
    """All nodes plus the midpoints of the first and last arcs."""
    return list(sys.exceptional)


def graph_map(sys: GraphSystem, point: GraphPoint) -> GraphPoint:
    """The induced chaotic map: shift through fibers, exceptional set fixed."""
    fib = sys.encode(point)
    out = induced_apply(sys.induced, fib)
    return sys.decode(out.words[0])


def graph_orbit(sys: GraphSystem, point: GraphPoint, n: int) -> List[GraphPoint]:
    """[point, F(point), ..., F^n(point)]."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    orbit = [point]
    for _ in range(n):
        orbit.append(graph_map(sys, orbit[-1]))
    return orbit


def graph_metric(sys: GraphSystem, p: GraphPoint, q: GraphPoint) -> Fraction:
    """Hausdorff distance between the two fibers under the word metric."""
    fa, fb = sys.encode(p), sys.encode(q)
    dist = {(a, b): word_metric(a, b) for a in fa for b in fb}
    forward = max(min(dist[(a, b)] for b in fb) for a in fa)
    backward = max(min(dist[(a, b)] for a in fa) for b in fb)
    return max(forward, backward)


EXAMPLE_GRAPHS: Dict[str, str] = {
    "k3": "node a\nnode b\nnode c\narc E1 a b\narc E2 b c\narc E3 c a\n",
    "path2": "node a\nnode b\nnode c\narc E1 a b\narc E2 b c\n",
    "loop1": "node a\narc E1 a a\n",
    "figure8": "node a\narc E1 a a\narc E2 a a\n",
    "two_segments": "node a\nnode b\nnode c\nnode d\narc E1 a b\narc E2 c d\n",
}

"""Fibers, the star condition, and induced maps with exceptional overrides.

A Fiber is one element of the decomposition of sequence space attached to a
codec: the full set of words encoding a single space point.  A symbolic map
descends to the decomposition exactly when it sends each fiber inside a
single fiber (the star condition); where that fails -- or on an explicitly
pinned exceptional set -- an override policy patches the induced map,
either fixing the fiber or redirecting it to a designated point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Protocol, Sequence, Tuple, Union

from .streams import StreamWord
from .words import Word

__all__ = [
    "Fiber",
    "SingleFiber",
    "Violation",
    "StarOutcome",
    "InducedSystem",
    "induced_system",
    "star_check",
    "induced_apply",
    "semiconjugacy_check",
    "outcome_to_json",
]


class Fiber:
    """Nonempty finite set of Words encoding one space point.

    Members are stored deduplicated and sorted by (preperiod, period)
    lexicographic order, so Fibers compare and hash as sets.
    """

    __slots__ = ("words",)

    def __init__(self, words: Iterable[Word]):
        uniq = sorted(set(words))
        if not uniq:
            raise ValueError("fiber must be nonempty")
        self.words = tuple(uniq)

    def __iter__(self):
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self.words

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fiber):
            return NotImplemented
        return self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def __repr__(self) -> str:
        return "Fiber({%s})" % ", ".join(str(w) for w in self.words)


class Codec(Protocol):
    """Bridge between words and points of a concrete space."""

    def encode(self, point) -> Fiber: ...

    def decode(self, word: Word): ...

    def fiber_of(self, word: Word) -> Fiber: ...

    def point_key(self, word: Word): ...

    def point_json(self, point): ...

    def stream_excludes_all(self, sw: StreamWord, points: Sequence, precision: int) -> bool: ...


@dataclass(frozen=True)
class SingleFiber:
    target: Fiber


@dataclass(frozen=True)
class Violation:
    images: Tuple[Tuple[Word, Any], ...]


StarOutcome = Union[SingleFiber, Violation]


@dataclass(frozen=True, eq=False)
class InducedSystem:
    """A symbolic map, a codec, and the override data for the induced map.

    The override policy (identity when `designated` is None, otherwise the
    fiber of the designated point) applies on every pinned fiber and on any
    fiber where the star condition fails.
    """

    name: str
    symbolic_map: Callable[[Word], Word]
    codec: Any
    designated: Any = None
    pinned_points: Tuple = ()
    pinned_fibers: frozenset = field(default_factory=frozenset)


def induced_system(name: str, symbolic_map: Callable[[Word], Word], codec,
                   designated=None, pinned_points: Sequence = ()) -> InducedSystem:
    fibers = frozenset(codec.encode(pt) for pt in pinned_points)
    return InducedSystem(name, symbolic_map, codec, designated,
                         tuple(pinned_points), fibers)


def star_check(sys: InducedSystem, fib: Fiber) -> StarOutcome:
    """Apply the symbolic map memberwise and test the star condition.

    Image words are compared as space points (two expansions of one dyadic
    are the same point, not a violation).  Returns the full fiber of the
    common point, or the list of disagreeing images.
    """
    codec = sys.codec
    images = [sys.symbolic_map(w) for w in fib]
    keys = {codec.point_key(w) for w in images}
    if len(keys) == 1:
        return SingleFiber(codec.fiber_of(images[0]))
    return Violation(tuple((w, codec.decode(w)) for w in images))


def induced_apply(sys: InducedSystem, fib: Fiber) -> Fiber:
    """The induced map on fibers, with the override policy applied."""
    if fib in sys.pinned_fibers:
        return fib if sys.designated is None else sys.codec.encode(sys.designated)
    outcome = star_check(sys, fib)
    if isinstance(outcome, SingleFiber):
        return outcome.target
    return fib if sys.designated is None else sys.codec.encode(sys.designated)


_STREAM_PRECISIONS = (64, 128, 256, 512)


def semiconjugacy_check(sys: InducedSystem, w: Union[Word, StreamWord]) -> bool:
    """Does the induced map commute with projection at w?

    For a Word this is checked exactly on fibers.  For a StreamWord the
    point is irrational, so its fiber is a singleton and the two routes
    agree automatically unless the fiber is exceptional; the check refines
    the value enclosure until every pinned point is excluded (equality at
    enclosure precision), failing if the precision cap cannot separate
    them.
    """
    if isinstance(w, StreamWord):
        if not sys.pinned_points:
            return True
        for precision in _STREAM_PRECISIONS:
            if sys.codec.stream_excludes_all(w, sys.pinned_points, precision):
                return True
        return False
    fib = sys.codec.fiber_of(w)
    lhs = induced_apply(sys, fib)
    rhs = sys.codec.fiber_of(sys.symbolic_map(w))
    return lhs == rhs


def outcome_to_json(outcome: StarOutcome, codec) -> dict:
    """Serialize a star outcome: kind plus (word, point) image pairs."""
    if isinstance(outcome, SingleFiber):
        return {
            "kind": "single",
            "target": [str(w) for w in outcome.target],
            "images": [{"word": str(w), "point": codec.point_json(codec.decode(w))}
                       for w in outcome.target],
        }
    return {
        "kind": "violation",
        "images": [{"word": str(w), "point": codec.point_json(pt)}
                   for w, pt in outcome.images],
    }

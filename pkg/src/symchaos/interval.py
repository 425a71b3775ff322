"""The unit interval as a decomposition space: tent and baker maps.

The fiber over y in [0, 1] is the set of binary expansions of y (two words
for interior dyadics, one otherwise).  The complementing symbolic map
descends through these fibers without exception and induces the tent map;
the plain shift fails the star condition exactly over 1/2 and induces the
baker map once that fiber is redirected to the fiber of 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .decomposition import Fiber, InducedSystem, induced_apply, induced_system
from .streams import StreamWord
from .words import Word, bits_of, c_map, r_map, shift_map, word_value

__all__ = [
    "as_unit",
    "interval_fiber",
    "tent",
    "baker",
    "induced_tent",
    "induced_baker",
    "conjugate_via_r",
    "tent_system",
    "baker_system",
    "INTERVAL_CODEC",
]

ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_unit(y) -> Fraction:
    y = Fraction(y)
    if y < 0 or y > 1:
        raise ValueError(f"point {y} outside [0, 1]")
    return y


class IntervalCodec:
    """Word/point bridge for [0, 1]; all comparisons stay word-level."""

    def encode(self, point: Fraction) -> Fiber:
        return Fiber(bits_of(as_unit(point)))

    def decode(self, word: Word, den_hint: int | None = None) -> Fraction:
        return word_value(word, den_hint)

    def fiber_of(self, word: Word) -> Fiber:
        twin = _dyadic_twin(word)
        return Fiber([word] if twin is None else [word, twin])

    def point_key(self, word: Word) -> Word:
        # canonical word per point: the ...10^inf expansion for dyadics
        if word.period_len == 1 and word.period == 1 and word.pre_len:
            return _dyadic_twin(word)
        return word

    def point_json(self, point: Fraction) -> str:
        return str(point)

    def stream_excludes_all(self, sw: StreamWord, points: Sequence[Fraction],
                            precision: int) -> bool:
        v = sw.window_int(precision)
        lo = Fraction(v, 1 << precision)
        hi = Fraction(v + 1, 1 << precision)
        return all(pt < lo or pt > hi for pt in points)


def _dyadic_twin(word: Word) -> Word | None:
    """The other expansion of the same point, if there is one."""
    if word.pre_len == 0:
        return None
    if word.period_len == 1 and word.period == 0:
        # pre ends in 1: ...10^inf  ->  ...01^inf
        return Word._from_packed(word.pre_len, word.pre - 1, 1, 1)
    if word.period_len == 1 and word.period == 1:
        # pre ends in 0: ...01^inf  ->  ...10^inf
        return Word._from_packed(word.pre_len, word.pre + 1, 1, 0)
    return None


INTERVAL_CODEC = IntervalCodec()


def interval_fiber(y) -> Fiber:
    """The fiber over y: all binary expansions, as a Fiber."""
    return INTERVAL_CODEC.encode(y)


def tent(y) -> Fraction:
    y = as_unit(y)
    return 2 * y if y <= HALF else 2 * (1 - y)


def baker(y) -> Fraction:
    y = as_unit(y)
    return 2 * y if y <= HALF else 2 * y - 1


@lru_cache(maxsize=1)
def tent_system() -> InducedSystem:
    return induced_system("tent", c_map, INTERVAL_CODEC)


@lru_cache(maxsize=1)
def baker_system() -> InducedSystem:
    return induced_system("baker", shift_map, INTERVAL_CODEC,
                          designated=ONE, pinned_points=(HALF,))


def _decode_fiber(fib: Fiber, den_hint: int | None = None) -> Fraction:
    return word_value(fib.words[0], den_hint)


def induced_tent(y) -> Fraction:
    """Tent map computed through the fiber route.

    The equality with the closed form is the whole point; it is asserted
    here and exercised exhaustively by the acceptance suite.
    """
    y = as_unit(y)
    out = induced_apply(tent_system(), interval_fiber(y))
    value = _decode_fiber(out, den_hint=y.denominator)
    assert value == tent(y)
    return value


def induced_baker(y) -> Fraction:
    """Baker map through the fiber route, with the override over 1/2."""
    y = as_unit(y)
    out = induced_apply(baker_system(), interval_fiber(y))
    value = _decode_fiber(out, den_hint=y.denominator)
    assert value == baker(y)
    return value


def conjugate_via_r(y) -> Fraction:
    """Value of the adjacent-XOR transform of y's expansion.

    For dyadics the ...10^inf expansion is used (first in bits_of order);
    the two expansions transport to different words, so the choice matters
    and is fixed here.
    """
    y = as_unit(y)
    return word_value(r_map(bits_of(y)[0]))

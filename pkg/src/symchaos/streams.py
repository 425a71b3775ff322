"""Lazily generated binary sequences: the dense word and its exact iterates.

The dense word is the concatenation of all finite binary words ordered by
length then lexicographically (0, 1, 00, 01, 10, 11, 000, ...).  Its shift
orbit visits every cylinder, which is what the dense-orbit checks consume.

A StreamWord never materialises the whole sequence: it is a (generator tag,
offset, flip) triple whose bits are read from a shared, lock-guarded prefix
cache of the generator.  The flip flag makes iterates of the complementing
map exact as well: the n-th such iterate of a sequence w is the n-fold
shift of w XOR w(n), a single global bit flip.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

__all__ = [
    "StreamWord",
    "dense_word",
    "dense_prefix",
    "dense_bit",
    "stream_shift",
    "stream_c_step",
    "stream_prefix",
    "value_enclosure",
]

_cache_lock = threading.Lock()
_cache: List[int] = []


def _generate(n: int) -> List[int]:
    bits: List[int] = []
    length = 1
    while len(bits) < n:
        for v in range(1 << length):
            bits.extend((v >> (length - 1 - i)) & 1 for i in range(length))
            if len(bits) >= n:
                break
        length += 1
    return bits


def _ensure(n: int) -> List[int]:
    global _cache
    if len(_cache) < n:
        with _cache_lock:
            if len(_cache) < n:
                _cache = _generate(max(n, 2 * len(_cache), 1024))
    return _cache


def dense_prefix(n: int) -> List[int]:
    """First n bits of the dense word (copy of the cached prefix)."""
    return _ensure(n)[:n]


def dense_bit(i: int) -> int:
    """Bit i (1-based) of the dense word."""
    if i < 1:
        raise IndexError("bit positions are 1-based")
    return dense_prefix(i)[i - 1]


@dataclass(frozen=True)
class StreamWord:
    """A shifted (and possibly complemented) view of a generated sequence."""

    tag: str = "DENSE"
    offset: int = 0
    flip: int = 0

    def bit(self, i: int) -> int:
        return dense_bit(self.offset + i) ^ self.flip

    def prefix(self, n: int) -> List[int]:
        bits = _ensure(self.offset + n)[self.offset:self.offset + n]
        if self.flip:
            bits = [b ^ 1 for b in bits]
        return bits

    def window_int(self, n: int) -> int:
        """First n bits packed into an int (first bit most significant)."""
        value = 0
        for b in self.prefix(n):
            value = (value << 1) | b
        return value


def dense_word() -> StreamWord:
    return StreamWord()


def stream_shift(sw: StreamWord) -> StreamWord:
    return StreamWord(sw.tag, sw.offset + 1, sw.flip)


def stream_c_step(sw: StreamWord) -> StreamWord:
    """One step of the complementing map: shift, then flip if bit 1 was 1."""
    return StreamWord(sw.tag, sw.offset + 1, sw.flip ^ sw.bit(1))


def stream_prefix(sw: StreamWord, n: int) -> List[int]:
    if n < 1:
        raise ValueError("n must be positive")
    return sw.prefix(n)


def value_enclosure(sw: StreamWord, p: int) -> Tuple[Fraction, Fraction]:
    """[lo, lo + 2^-p] with lo the value of the first p bits."""
    if p < 1:
        raise ValueError("p must be positive")
    v = sw.window_int(p)
    return Fraction(v, 1 << p), Fraction(v + 1, 1 << p)

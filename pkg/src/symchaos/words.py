"""Exact elements of the binary sequence space and the basic symbolic maps.

A :class:`Word` is an eventually periodic one-sided binary sequence
w(1), w(2), ... stored in canonical form (primitive period, minimal
preperiod), so equality of Words is equality of sequences.  Bit fields are
packed into Python ints (first bit = most significant), which keeps the
maps cheap even when a rational's expansion has a period of ~10^6 bits.

Bit positions are 1-based throughout, matching the weight 2^-i of bit i in
the valuation sum(w(i)/2^i).
"""

from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

__all__ = [
    "Word",
    "parse_word",
    "shift_map",
    "c_map",
    "r_map",
    "r_inverse",
    "word_value",
    "word_metric",
    "bits_of",
    "periodic_words",
    "prefix_int",
    "prepend_bits",
    "drop_bits",
    "leading_ones",
    "max_bits_bound",
]

_WORD_RE = re.compile(r"^([01]*):([01]+)$")

DEFAULT_MAX_BITS = 24


def max_bits_bound() -> int:
    """Enumeration cap, overridable through SYMCHAOS_MAX_BITS."""
    raw = os.environ.get("SYMCHAOS_MAX_BITS")
    if raw is None:
        return DEFAULT_MAX_BITS
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"SYMCHAOS_MAX_BITS must be an integer, got {raw!r}") from exc


def _pack(bits: Iterable[int]) -> Tuple[int, int]:
    length = 0
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b!r}")
        value = (value << 1) | b
        length += 1
    return length, value


def _unpack(length: int, value: int) -> Tuple[int, ...]:
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))


def _rot_right(value: int, length: int, n: int = 1) -> int:
    if length == 0:
        return 0
    n %= length
    if n == 0:
        return value
    mask = (1 << length) - 1
    return ((value & ((1 << n) - 1)) << (length - n)) | (value >> n) & mask


def _rot_left(value: int, length: int, n: int = 1) -> int:
    return _rot_right(value, length, length - (n % length)) if length else 0


def _repeat_block(block: int, width: int, times: int) -> int:
    # block repeated `times`: block * (2^(width*times) - 1) / (2^width - 1)
    if times == 1:
        return block
    return block * (((1 << (width * times)) - 1) // ((1 << width) - 1))


def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class Word:
    """Canonical eventually periodic binary sequence.

    Canonical form: the period block is primitive (not a power of a shorter
    block) and the preperiod is minimal (its last bit differs from the last
    period bit, so no preperiod bit can be absorbed into the cycle).
    """

    __slots__ = ("pre_len", "pre", "period_len", "period")

    def __init__(self, pre: Iterable[int] = (), period: Iterable[int] = ()):
        m, p = _pack(pre)
        k, q = _pack(period)
        if k == 0:
            raise ValueError("period must be nonempty")
        m, p, k, q = _canonical(m, p, k, q, primitive=False)
        self.pre_len = m
        self.pre = p
        self.period_len = k
        self.period = q

    @classmethod
    def _from_packed(cls, pre_len: int, pre: int, period_len: int, period: int,
                     *, primitive: bool = False) -> "Word":
        # primitive=True: caller guarantees the period block is primitive
        # (true for rotations/complements of canonical periods).
        w = object.__new__(cls)
        m, p, k, q = _canonical(pre_len, pre, period_len, period, primitive=primitive)
        w.pre_len = m
        w.pre = p
        w.period_len = k
        w.period = q
        return w

    def bit(self, i: int) -> int:
        """The i-th bit, 1-based."""
        if i < 1:
            raise IndexError("bit positions are 1-based")
        if i <= self.pre_len:
            return (self.pre >> (self.pre_len - i)) & 1
        j = (i - self.pre_len - 1) % self.period_len
        return (self.period >> (self.period_len - 1 - j)) & 1

    def prefix(self, n: int) -> Tuple[int, ...]:
        return _unpack(n, prefix_int(self, n))

    def pre_bits(self) -> Tuple[int, ...]:
        return _unpack(self.pre_len, self.pre)

    def period_bits(self) -> Tuple[int, ...]:
        return _unpack(self.period_len, self.period)

    def is_purely_periodic(self) -> bool:
        return self.pre_len == 0

    def __str__(self) -> str:
        pre = "".join(map(str, self.pre_bits()))
        per = "".join(map(str, self.period_bits()))
        return f"{pre}:{per}"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (self.pre_len == other.pre_len and self.pre == other.pre
                and self.period_len == other.period_len and self.period == other.period)

    def __hash__(self) -> int:
        return hash((self.pre_len, self.pre, self.period_len, self.period))

    def __lt__(self, other: "Word") -> bool:
        # (preperiod, period) lexicographic, bitstring order.
        c = _cmp_bitstring(self.pre_len, self.pre, other.pre_len, other.pre)
        if c != 0:
            return c < 0
        return _cmp_bitstring(self.period_len, self.period,
                              other.period_len, other.period) < 0


def _cmp_bitstring(len_a: int, a: int, len_b: int, b: int) -> int:
    c = min(len_a, len_b)
    head_a = a >> (len_a - c) if c else 0
    head_b = b >> (len_b - c) if c else 0
    if head_a != head_b:
        return -1 if head_a < head_b else 1
    if len_a != len_b:
        return -1 if len_a < len_b else 1
    return 0


def _canonical(m: int, p: int, k: int, q: int, *, primitive: bool) -> Tuple[int, int, int, int]:
    if not primitive:
        for d in _divisors(k):
            if d == k:
                break
            block = q >> (k - d)
            if _repeat_block(block, d, k // d) == q:
                k, q = d, block
                break
    # absorb preperiod bits that already match the cycle
    while m and ((p ^ q) & 1) == 0:
        m -= 1
        p >>= 1
        q = ((q & 1) << (k - 1)) | (q >> 1)
    return m, p, k, q


def parse_word(text: str) -> Word:
    """Parse the `pre:period` text syntax, e.g. '1:0' for 10^inf."""
    match = _WORD_RE.match(text.strip())
    if not match:
        raise ValueError(f"malformed word {text!r}; expected bits in the form pre:period")
    pre, per = match.groups()
    return Word([int(c) for c in pre], [int(c) for c in per])


def prefix_int(w: Word, n: int) -> int:
    """First n bits of w packed into an int (first bit most significant)."""
    if n <= 0:
        return 0
    if n <= w.pre_len:
        return w.pre >> (w.pre_len - n)
    tail = n - w.pre_len
    reps = -(-tail // w.period_len)
    rep = _repeat_block(w.period, w.period_len, reps)
    rep >>= reps * w.period_len - tail
    return (w.pre << tail) | rep


def shift_map(w: Word) -> Word:
    """Drop the first bit: result(i) = w(i+1)."""
    if w.pre_len:
        return Word._from_packed(w.pre_len - 1, w.pre & ((1 << (w.pre_len - 1)) - 1),
                                 w.period_len, w.period, primitive=True)
    return Word._from_packed(0, 0, w.period_len,
                             _rot_left(w.period, w.period_len), primitive=True)


def complement(w: Word) -> Word:
    """Flip every bit."""
    return Word._from_packed(w.pre_len, w.pre ^ ((1 << w.pre_len) - 1),
                             w.period_len, w.period ^ ((1 << w.period_len) - 1),
                             primitive=True)


def c_map(w: Word) -> Word:
    """Shift, complemented when the leading bit is 1.

    Equivalently result(i) = w(i+1) XOR w(1).
    """
    s = shift_map(w)
    return complement(s) if w.bit(1) else s


def r_map(w: Word) -> Word:
    """Adjacent-XOR transform: result(i) = w(i) XOR w(i+1).

    This closed form agrees with reading off the first bits of the iterated
    c_map; the test suite checks the two against each other.
    """
    m, p, k, q = w.pre_len, w.pre, w.period_len, w.period
    out_per = q ^ _rot_left(q, k)
    if m:
        shifted = ((p & ((1 << (m - 1)) - 1)) << 1) | (q >> (k - 1))
        out_pre = p ^ shifted
    else:
        out_pre = 0
    return Word._from_packed(m, out_pre, k, out_per)


def r_inverse(w: Word) -> Word:
    """The r_map preimage whose first bit is 0 (cumulative XOR from 0)."""
    m, k = w.pre_len, w.period_len
    n = m + 2 * k
    bits = w.prefix(n)
    x = [0]
    for b in bits[:-1]:
        x.append(x[-1] ^ b)
    parity = 0
    for b in w.period_bits():
        parity ^= b
    period_len = k if parity == 0 else 2 * k
    return Word(x[:m], x[m:m + period_len])


def word_value(w: Word, den_hint: int | None = None) -> Fraction:
    """Exact value of the binary expansion, in [0, 1].

    den_hint, when given, is tried as a denominator before falling back to a
    full gcd; for huge periods (orders of 2 near 10^6) the hint path avoids
    a multi-second reduction.
    """
    mask = (1 << w.period_len) - 1
    num = w.pre * mask + w.period
    den = mask << w.pre_len
    if den_hint:
        t = num * den_hint
        a, r = divmod(t, den)
        if r == 0:
            return Fraction(a, den_hint)
    g = math.gcd(num, den)
    return Fraction(num // g, den // g)


def word_metric(a: Word, b: Word) -> Fraction:
    """d(a, b) = sum |a(i) - b(i)| / 2^i, exactly.

    Cost is governed by lcm of the two period lengths.
    """
    m = max(a.pre_len, b.pre_len)
    k = math.lcm(a.period_len, b.period_len)
    diff_pre = prefix_int(a, m) ^ prefix_int(b, m)
    diff_per = _aligned_period(a, m, k) ^ _aligned_period(b, m, k)
    return word_value(Word._from_packed(m, diff_pre, k, diff_per))


def _aligned_period(w: Word, start: int, k: int) -> int:
    # period block of length k describing w from position start+1 onwards
    rot = (start - w.pre_len) % w.period_len
    block = _rot_left(w.period, w.period_len, rot)
    return _repeat_block(block, w.period_len, k // w.period_len)


_SMALL_PRIMES: List[int] = []


def _small_primes(limit: int = 1001) -> List[int]:
    global _SMALL_PRIMES
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * limit
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(limit ** 0.5) + 1):
            if sieve[i]:
                sieve[i * i::i] = b"\x00" * len(sieve[i * i::i])
        _SMALL_PRIMES = [i for i in range(limit) if sieve[i]]
    return _SMALL_PRIMES


def _factorize(n: int) -> dict:
    factors: dict = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _order_of_two(q: int) -> int:
    """Multiplicative order of 2 modulo odd q > 1."""
    lam = 1
    for p, e in _factorize(q).items():
        lam = math.lcm(lam, (p - 1) * p ** (e - 1))
    order = lam
    for p in _factorize(lam):
        while order % p == 0 and pow(2, order // p, q) == 1:
            order //= p
    return order


def bits_of(t: Fraction) -> List[Word]:
    """All binary expansions of t in [0, 1].

    Two expansions (ordered [...10^inf, ...01^inf]) exactly when t is a
    dyadic l/2^n strictly inside (0, 1); otherwise one.
    """
    if t < 0 or t > 1:
        raise ValueError(f"value {t} outside [0, 1]")
    p, q = t.numerator, t.denominator
    if p == q:
        return [Word([], [1])]
    a = (q & -q).bit_length() - 1  # power of 2 in q
    q_odd = q >> a
    if q_odd == 1:
        if p == 0:
            return [Word([], [0])]
        # terminating expansion: a bits of p, last bit 1 (p odd in lowest terms)
        w1 = Word._from_packed(a, p, 1, 0)
        w2 = Word._from_packed(a, p - 1, 1, 1)
        return [w1, w2]
    head = p // q_odd
    s = p % q_odd
    k = _order_of_two(q_odd)
    block = s * ((1 << k) - 1) // q_odd
    return [Word._from_packed(a, head, k, block, primitive=True)]


def periodic_words(n: int) -> List[Word]:
    """All words fixed by the n-fold shift (period dividing n); 2^n of them."""
    if n < 1:
        raise ValueError("n must be positive")
    bound = max_bits_bound()
    if n > bound:
        raise ValueError(f"periodic_words bound exceeded: n={n} > {bound}")
    return [Word._from_packed(0, 0, n, seed) for seed in range(1 << n)]


def prepend_bits(w: Word, bits: Sequence[int]) -> Word:
    """Word whose sequence is bits followed by w."""
    n, b = _pack(bits)
    return Word._from_packed(w.pre_len + n, (b << w.pre_len) | w.pre,
                             w.period_len, w.period, primitive=True)


def drop_bits(w: Word, n: int) -> Word:
    """n-fold shift in one step."""
    if n <= w.pre_len:
        return Word._from_packed(w.pre_len - n, w.pre & ((1 << (w.pre_len - n)) - 1),
                                 w.period_len, w.period, primitive=True)
    d = n - w.pre_len
    return Word._from_packed(0, 0, w.period_len,
                             _rot_left(w.period, w.period_len, d), primitive=True)


def leading_ones(w: Word, cap: int) -> int:
    """Length of the leading run of 1s, counted up to cap."""
    count = 0
    while count < cap and w.bit(count + 1) == 1:
        count += 1
    return count

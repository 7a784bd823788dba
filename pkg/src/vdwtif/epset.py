"""Eventually periodic subsets of N = {1, 2, 3, ...}.

A set is stored as a preperiod word ``w`` of length ``a`` and a period word
``v`` of length ``p``, both packed into Python ints little-endian by
position: bit ``i`` of ``w`` is membership of ``i + 1``, and for ``n > a``
membership of ``n`` is bit ``(n - a - 1) % p`` of ``v``.

Every constructor returns the canonical form: ``v`` is primitive (not a
power of a shorter word) and ``a`` is minimal. Two sets are equal as subsets
of N iff their canonical fields are identical, so ``==`` and ``hash`` are
plain field comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
import re

__all__ = [
    "EpSet",
    "ResourceLimitError",
    "NAT",
    "EMPTY",
    "res",
    "finite",
    "interval",
    "from_bits",
    "parse_ep",
    "set_lcm_cap",
    "get_lcm_cap",
    "union",
    "intersect",
    "difference",
    "complement",
    "union_all",
    "intersect_all",
    "shift_left",
    "rotation_and",
]

DEFAULT_LCM_CAP = 1 << 16
_lcm_cap = DEFAULT_LCM_CAP


class ResourceLimitError(RuntimeError):
    """A configured size limit (period lcm, window horizon, stage budget) was hit."""


def set_lcm_cap(cap: int) -> None:
    global _lcm_cap
    if cap < 1:
        raise ValueError("lcm cap must be positive")
    _lcm_cap = cap


def get_lcm_cap() -> int:
    return _lcm_cap


def _mask(n: int) -> int:
    return (1 << n) - 1


def _repeat(word: int, p: int, length: int) -> int:
    """Tile the p-bit ``word`` over ``length`` bits."""
    if length <= 0:
        return 0
    q = -(-length // p)
    tiled = word * (_mask(p * q) // _mask(p))
    return tiled & _mask(length)


def _rot_left(v: int, p: int, r: int) -> int:
    # rotation that makes old bit r the new bit 0
    r %= p
    if r == 0:
        return v
    return ((v >> r) | (v << (p - r))) & _mask(p)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _canon(a: int, w: int, p: int, v: int) -> tuple[int, int, int, int]:
    w &= _mask(a)
    v &= _mask(p)
    for d in _divisors(p):
        if d == p:
            break
        if _repeat(v & _mask(d), d, p) == v:
            p, v = d, v & _mask(d)
            break
    while a > 0 and ((w >> (a - 1)) & 1) == ((v >> (p - 1)) & 1):
        a -= 1
        w &= _mask(a)
        top = (v >> (p - 1)) & 1
        v = ((v << 1) | top) & _mask(p)
    return a, w, p, v


@dataclass(frozen=True)
class EpSet:
    a: int
    w: int
    p: int
    v: int

    def __post_init__(self):
        if self.a < 0 or self.p < 1:
            raise ValueError(f"invalid EpSet shape a={self.a} p={self.p}")

    @classmethod
    def make(cls, a: int, w: int, p: int, v: int) -> "EpSet":
        """Build the canonical set for an arbitrary (a, w, p, v)."""
        if a < 0 or p < 1:
            raise ValueError(f"invalid EpSet shape a={a} p={p}")
        return cls(*_canon(a, w, p, v))

    # -- queries -----------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        return self.member(n)

    def member(self, n: int) -> bool:
        if n < 1:
            raise ValueError("N starts at 1")
        if n <= self.a:
            return bool((self.w >> (n - 1)) & 1)
        return bool((self.v >> ((n - self.a - 1) % self.p)) & 1)

    def bits(self, start: int, length: int) -> int:
        """Membership of ``start .. start+length-1`` packed into an int."""
        if length <= 0:
            return 0
        out = 0
        if start <= self.a:
            n_pre = min(length, self.a - start + 1)
            out = (self.w >> (start - 1)) & _mask(n_pre)
        else:
            n_pre = 0
        rest = length - n_pre
        if rest > 0:
            first = start + n_pre
            rot = _rot_left(self.v, self.p, first - self.a - 1)
            out |= _repeat(rot, self.p, rest) << n_pre
        return out

    def members(self, upto: int) -> list[int]:
        word = self.bits(1, upto)
        return [i + 1 for i in range(upto) if (word >> i) & 1]

    def min(self) -> int | None:
        if self.is_empty():
            return None
        if self.w:
            return (self.w & -self.w).bit_length()
        return self.a + (self.v & -self.v).bit_length()

    def max_finite(self) -> int:
        """Largest member of a finite set (0 when empty)."""
        if not self.is_finite():
            raise ValueError("set is infinite")
        return self.w.bit_length()

    def max_missing(self) -> int:
        """Largest non-member of a cofinite set (0 when the set is N)."""
        if not self.is_cofinite():
            raise ValueError("set is not cofinite")
        return (~self.w & _mask(self.a)).bit_length()

    def is_empty(self) -> bool:
        return self.w == 0 and self.v == 0

    def is_finite(self) -> bool:
        return self.v == 0

    def is_cofinite(self) -> bool:
        return self.v == _mask(self.p)

    def issubset(self, other: "EpSet") -> bool:
        return intersect(self, complement(other)).is_empty()

    def isdisjoint(self, other: "EpSet") -> bool:
        return intersect(self, other).is_empty()

    # -- operators ---------------------------------------------------------

    def __or__(self, other: "EpSet") -> "EpSet":
        return union(self, other)

    def __and__(self, other: "EpSet") -> "EpSet":
        return intersect(self, other)

    def __sub__(self, other: "EpSet") -> "EpSet":
        return intersect(self, complement(other))

    def __invert__(self) -> "EpSet":
        return complement(self)

    def __lshift__(self, n: int) -> "EpSet":
        return shift_left(self, n)

    # -- text --------------------------------------------------------------

    def pre_bits(self) -> str:
        return "".join("1" if (self.w >> i) & 1 else "0" for i in range(self.a))

    def per_bits(self) -> str:
        return "".join("1" if (self.v >> i) & 1 else "0" for i in range(self.p))

    def to_text(self) -> str:
        return f"ep(a={self.a};w={self.pre_bits()};per={self.per_bits()})"

    def __str__(self) -> str:
        return self.to_text()


def from_bits(pre: str, per: str) -> EpSet:
    """``from_bits("01", "1")`` is N minus {1}."""
    if not per or any(c not in "01" for c in pre + per):
        raise ValueError(f"bad bit words {pre!r} / {per!r}")
    w = sum(1 << i for i, c in enumerate(pre) if c == "1")
    v = sum(1 << i for i, c in enumerate(per) if c == "1")
    return EpSet.make(len(pre), w, len(per), v)


_EP_RE = re.compile(r"^ep\(a=(\d+);w=([01]*);per=([01]+)\)$")


def parse_ep(text: str) -> EpSet:
    m = _EP_RE.match(text.strip())
    if not m:
        raise ValueError(f"not an ep(...) literal: {text!r}")
    a, pre, per = int(m.group(1)), m.group(2), m.group(3)
    if a != len(pre):
        raise ValueError(f"a={a} but preperiod word has {len(pre)} bits")
    return from_bits(pre, per)


NAT = EpSet(0, 0, 1, 1)
EMPTY = EpSet(0, 0, 1, 0)


def res(r: int, m: int) -> EpSet:
    """Residue class {n >= 1 : n = r (mod m)}."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m > _lcm_cap:
        raise ResourceLimitError(f"modulus {m} exceeds lcm cap {_lcm_cap}")
    r %= m
    # position n = 1 + j sits at period index j
    return EpSet.make(0, 0, m, 1 << ((r - 1) % m))


def finite(elements) -> EpSet:
    elements = sorted(set(elements))
    if any(e < 1 for e in elements):
        raise ValueError("elements of N are positive")
    if not elements:
        return EMPTY
    w = 0
    for e in elements:
        w |= 1 << (e - 1)
    return EpSet.make(elements[-1], w, 1, 0)


def interval(lo: int, hi: int) -> EpSet:
    if lo < 1 or lo > hi:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    return EpSet.make(hi, _mask(hi) ^ _mask(lo - 1), 1, 0)


# -- algebra ---------------------------------------------------------------


def _align(s: EpSet, a: int, p: int) -> tuple[int, int]:
    return s.bits(1, a), s.bits(a + 1, p)


def _common_shape(x: EpSet, y: EpSet) -> tuple[int, int]:
    p = x.p * y.p // gcd(x.p, y.p)
    if p > _lcm_cap:
        raise ResourceLimitError(f"period lcm {p} exceeds cap {_lcm_cap}")
    return max(x.a, y.a), p


def _binary(x: EpSet, y: EpSet, op) -> EpSet:
    if x.p == y.p and x.a == y.a:
        return EpSet.make(x.a, op(x.w, y.w), x.p, op(x.v, y.v))
    a, p = _common_shape(x, y)
    xw, xv = _align(x, a, p)
    yw, yv = _align(y, a, p)
    return EpSet.make(a, op(xw, yw), p, op(xv, yv))


def union(x: EpSet, y: EpSet) -> EpSet:
    return _binary(x, y, lambda s, t: s | t)


def intersect(x: EpSet, y: EpSet) -> EpSet:
    return _binary(x, y, lambda s, t: s & t)


def difference(x: EpSet, y: EpSet) -> EpSet:
    return intersect(x, complement(y))


def complement(x: EpSet) -> EpSet:
    return EpSet(x.a, x.w ^ _mask(x.a), x.p, x.v ^ _mask(x.p))


def union_all(sets, start: EpSet = EMPTY) -> EpSet:
    out = start
    for s in sets:
        out = union(out, s)
    return out


def intersect_all(sets, start: EpSet = NAT) -> EpSet:
    out = start
    for s in sets:
        out = intersect(out, s)
        if out.is_empty():
            break
    return out


def shift_left(s: EpSet, n: int) -> EpSet:
    """The leftward shift ``s - n = {m >= 1 : m + n in s}``; drops members <= n."""
    if n < 0:
        raise ValueError("shift must be non-negative")
    if n == 0:
        return s
    if n <= s.a:
        return EpSet.make(s.a - n, s.w >> n, s.p, s.v)
    return EpSet.make(0, 0, s.p, _rot_left(s.v, s.p, n - s.a))


def rotation_and(s: EpSet) -> EpSet:
    """Purely periodic set whose word is the AND of all rotations of the period.

    This is N when ``s`` is cofinite and empty otherwise.
    """
    acc = _mask(s.p)
    for r in range(s.p):
        acc &= _rot_left(s.v, s.p, r)
    return EpSet.make(0, 0, s.p, acc)

"""Finite-horizon sets over {1..H}: the brute-force ground truth.

Every verdict here is relative to the window. A run of ``L`` ones found in
``1..H`` says nothing about ``n > H``; callers label such results as holding
up to the horizon.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .epset import EpSet, ResourceLimitError

DEFAULT_MAX_HORIZON = 1 << 22


class Progression(NamedTuple):
    """Terms ``start + i*gap`` for ``i = 0..length``."""

    start: int
    gap: int
    length: int

    def terms(self) -> list[int]:
        return [self.start + i * self.gap for i in range(self.length + 1)]


@dataclass(frozen=True, eq=False)
class WindowSet:
    horizon: int
    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.horizon < 1 or self.bits.shape != (self.horizon,):
            raise ValueError("bits must have exactly `horizon` entries")

    @classmethod
    def from_string(cls, text: str) -> "WindowSet":
        if text.startswith("win:"):
            text = text[4:]
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"bad window literal {text!r}")
        return cls(len(text), np.frombuffer(text.encode(), dtype=np.uint8) == ord("1"))

    @classmethod
    def from_members(cls, members, horizon: int) -> "WindowSet":
        bits = np.zeros(horizon, dtype=bool)
        for n in members:
            if 1 <= n <= horizon:
                bits[n - 1] = True
        return cls(horizon, bits)

    def member(self, n: int) -> bool:
        if not 1 <= n <= self.horizon:
            raise IndexError(f"{n} outside window 1..{self.horizon}")
        return bool(self.bits[n - 1])

    __contains__ = member

    def members(self) -> list[int]:
        return (np.flatnonzero(self.bits) + 1).tolist()

    def tail(self, offset: int) -> "WindowSet":
        """The window of positions ``offset+1 .. H`` relabelled from 1."""
        if not 0 <= offset < self.horizon:
            raise ValueError("offset outside window")
        return WindowSet(self.horizon - offset, self.bits[offset:].copy())

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __eq__(self, other):
        return (
            isinstance(other, WindowSet)
            and self.horizon == other.horizon
            and bool(np.array_equal(self.bits, other.bits))
        )

    def __repr__(self):
        return f"WindowSet(win:{self.to_string()})"


def materialize(s: EpSet, horizon: int, max_horizon: int = DEFAULT_MAX_HORIZON) -> WindowSet:
    if horizon < 1:
        raise ValueError("horizon must be positive")
    if horizon > max_horizon:
        raise ResourceLimitError(f"horizon {horizon} exceeds limit {max_horizon}")
    word = s.bits(1, horizon)
    raw = np.frombuffer(word.to_bytes((horizon + 7) // 8, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[:horizon].astype(bool)
    return WindowSet(horizon, bits)


def oracle_thick(win: WindowSet, length: int) -> bool:
    """Does the window contain ``length`` consecutive members?"""
    if not 1 <= length <= win.horizon:
        raise ValueError(f"interval length {length} not in 1..{win.horizon}")
    return int(_kernels.longest_run(win.bits)) >= length


def oracle_gap_bound(win: WindowSet) -> int | None:
    """Least g such that every length-g subinterval of 1..H meets the set.

    ``None`` when the window has no member.
    """
    g = int(_kernels.gap_bound(win.bits))
    return g or None


def oracle_syndetic(win: WindowSet, g: int) -> bool:
    """Every length-``g`` subinterval of the window meets the set."""
    got = oracle_gap_bound(win)
    return got is not None and got <= g


def oracle_find_ap(win: WindowSet, k: int) -> Progression | None:
    """Least (x, y) with x, x+y, ..., x+ky all in the window set."""
    if k < 1:
        raise ValueError("k must be positive")
    bits = win.bits
    H = win.horizon
    for x in range(1, H + 1):
        if not bits[x - 1]:
            continue
        for y in range(1, (H - x) // k + 1):
            if all(bits[x + i * y - 1] for i in range(1, k + 1)):
                return Progression(x, y, k)
    return None

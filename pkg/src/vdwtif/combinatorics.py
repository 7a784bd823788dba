"""Thick / syndetic / piecewise syndetic decisions for eventually periodic sets.

For an eventually periodic S with canonical shape (a, p):

* thick iff cofinite. If the period word has a 0, every run of members in
  the tail is shorter than p and a run starting in the preperiod is shorter
  than a + p, so intervals are bounded. A cofinite set is trivially thick.
* syndetic iff piecewise syndetic iff infinite. A nonzero period word puts
  a member in every p consecutive tail positions, so gaps are at most
  a + p. A finite set has an infinite gap, and no union of its shifts is
  thick.

The agreement of these shortcuts with the definitions is checked against
the window oracles in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .epset import EpSet, shift_left, union_all
from .windowset import WindowSet, materialize

DEFAULT_REPORT_FACTOR = 16


class NotApplicableError(ValueError):
    """The input set does not have the property the operation needs."""


def is_thick(s: EpSet) -> bool:
    return s.is_cofinite()


def is_syndetic(s: EpSet) -> bool:
    return not s.is_finite()


def is_piecewise_syndetic(s: EpSet) -> bool:
    return not s.is_finite()


def gap_bound(s: EpSet) -> int:
    """Least g such that every g consecutive naturals contain a member."""
    if not is_syndetic(s):
        raise NotApplicableError(f"{s} is not syndetic")
    # every zero run ends at a member no later than a + 2p
    span = s.a + 2 * s.p
    word = s.bits(1, span)
    worst = cur = 0
    for i in range(span):
        if (word >> i) & 1:
            worst = max(worst, cur)
            cur = 0
        else:
            cur += 1
    return worst + 1


def _prefix_cover(masks: list[int], full: int) -> list[int]:
    """Shortest prefix ``0..m`` of candidates covering ``full``, then drop
    shifts that are redundant, smallest first.

    The result is irredundant and deterministic; it costs O(m^2) mask ORs.
    """
    acc = 0
    chosen = []
    for i, m in enumerate(masks):
        chosen.append(i)
        acc |= m
        if acc == full:
            break
    else:
        raise AssertionError("candidates do not cover")
    for i in list(chosen):
        rest = 0
        for j in chosen:
            if j != i:
                rest |= masks[j]
        if rest == full:
            chosen.remove(i)
    return chosen


def pws_witness(s: EpSet) -> list[int]:
    """Shifts n_1 < ... < n_k with a cofinite (hence thick) union of ``s - n_i``.

    Candidates are the residues 0..p-1; any shift beyond the preperiod is a
    rotation of the period word, and the union only needs a full period.
    """
    if not is_piecewise_syndetic(s):
        raise NotApplicableError(f"{s} is not piecewise syndetic")
    full = (1 << s.p) - 1
    rot = [((s.v >> r) | (s.v << (s.p - r))) & full for r in range(s.p)]
    return _prefix_cover(rot, full)


def syndetic_cover(s: EpSet) -> list[int]:
    """Shifts whose leftward shifts of ``s`` union to all of N."""
    if not is_syndetic(s):
        raise NotApplicableError(f"{s} is not syndetic")
    # shifts >= a repeat with period p; positions 1..a+p decide coverage
    span = s.a + s.p
    return _prefix_cover([s.bits(1 + n, span) for n in range(span)], (1 << span) - 1)


def shift_union(s: EpSet, shifts) -> EpSet:
    return union_all(shift_left(s, n) for n in shifts)


# ---------------------------------------------------------------------------
# k-good intervals and the Ramsey property


@dataclass(frozen=True)
class GoodIntervalReport:
    k: int
    intervals: tuple[tuple[int, int], ...]
    piece: int
    horizon: int


def is_k_good(piece: WindowSet, start: int, length: int, k: int) -> bool:
    """Every length-k sub-interval of [start, start+length-1] meets ``piece``."""
    end = start + length - 1
    if start < 1 or length < 1 or end > piece.horizon:
        raise IndexError(f"interval [{start}, {end}] outside window 1..{piece.horizon}")
    if k < 1:
        raise ValueError("k must be positive")
    if k > length:
        return True
    return all(piece.bits[j - 1 : j - 1 + k].any() for j in range(start, end - k + 2))


def check_partition(whole: EpSet, pieces: list[EpSet]) -> None:
    if not pieces:
        raise ValueError("empty partition")
    for i, j in combinations(range(len(pieces)), 2):
        if not pieces[i].isdisjoint(pieces[j]):
            raise ValueError(f"pieces {i + 1} and {j + 1} overlap")
    if union_all(pieces) != whole:
        raise ValueError("pieces do not cover the whole set")


def ramsey_piece(
    whole: EpSet, pieces: list[EpSet], horizon: int | None = None
) -> tuple[int, GoodIntervalReport]:
    """Index (0-based) of the first piecewise syndetic piece, with h-good intervals.

    The report lists intervals [1, h], [1, 2h], [1, 4h], ... inside the
    horizon, each h-good for the chosen piece, h being its gap bound.
    """
    check_partition(whole, pieces)
    if not is_piecewise_syndetic(whole):
        raise NotApplicableError(f"{whole} is not piecewise syndetic")
    idx = next(i for i, c in enumerate(pieces) if is_piecewise_syndetic(c))
    chosen = pieces[idx]
    h = gap_bound(chosen)
    if horizon is None:
        horizon = DEFAULT_REPORT_FACTOR * (chosen.a + chosen.p) + h
    win = materialize(chosen, horizon)
    intervals = []
    length = h
    while length <= horizon:
        if is_k_good(win, 1, length, h):
            intervals.append((1, length))
        length *= 2
    return idx, GoodIntervalReport(h, tuple(intervals), idx, horizon)


def classify(s: EpSet) -> dict:
    syn = is_syndetic(s)
    pws = is_piecewise_syndetic(s)
    return {
        "thick": is_thick(s),
        "syndetic": syn,
        "gap": gap_bound(s) if syn else None,
        "pws": pws,
        "witness": pws_witness(s) if pws else None,
    }


__all__ = [
    "GoodIntervalReport",
    "NotApplicableError",
    "check_partition",
    "classify",
    "gap_bound",
    "is_k_good",
    "is_piecewise_syndetic",
    "is_syndetic",
    "is_thick",
    "pws_witness",
    "ramsey_piece",
    "shift_union",
    "syndetic_cover",
]

"""Arithmetic progressions: AP_k, the iterative progression finder, and the
end-to-end pipeline from a piecewise syndetic set to a piecewise syndetic
AP_k.

Conventions
-----------
``AP_k(A)`` is the set of ``x in A`` with some ``y >= 1`` and
``x + i*y in A`` for ``i = 1..k``, so a witness is a (k+1)-term progression.
``Progression(start, gap, length)`` has terms ``i = 0..length``; the
finder returns ``length == k``. Shifted views ``i = 1..k`` relative to a base
``l`` are obtained as ``l' = start - gap - l``.

Progression finder
------------------
``claim_find_ap(U, B, l, k)`` runs the induction on ``k`` literally, in
absolute coordinates. ``B_U = {n : B - n in U}``.

* level 1: the least ``e`` in ``B_U - l`` gives ``(l1, y1) = (e - 1, 1)``;
* level ``k + 1``: with ``F = {0, ..., g}`` (``g`` the gap bound of
  ``B_U - l``, 0 included), take the level-k answer ``(l1, y1)``, set
  ``x0 = 0`` and base ``beta = l + l1``; each round picks the least
  ``x in F`` with ``beta + x in B_U``. A repeat closes the progression
  ``beta + x + i*(y_{m+1} + ... + y_n)``. Otherwise the round intersects
  ``B - x_j`` with ``B - x_m - i*Y_m`` (``Y_m`` the gap sum since round m),
  recurses at level k on that set from ``beta``, and advances
  ``beta += l``.

The level-k answer must be expressed as ``l + l' + i*y`` for ``i = 1..k``
with ``l' >= 0``. A progression whose first term sits closer than one gap to
the base has no such form; in that case the search is restarted from a later
base in ``B_U`` (a *rebase*), which keeps all shifts non-negative. Each
restart is counted in the trace.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .algebra import SetAlgebra
from .combinatorics import (
    NotApplicableError,
    check_partition,
    gap_bound,
    is_piecewise_syndetic,
    pws_witness,
    ramsey_piece,
    shift_union,
)
from .epset import NAT, EpSet, intersect_all, shift_left
from .filters import (
    DEFAULT_STAGES,
    FipFamily,
    StagedFilter,
    b_sub_u_ep,
    build_maximal_tif,
    build_ultrafilter,
)
from .windowset import Progression, WindowSet, materialize

__all__ = [
    "Progression",
    "ClaimTrace",
    "ClaimError",
    "ap_k",
    "ap_witness",
    "oracle_ap_k",
    "claim_find_ap",
    "theorem_main",
    "corollary_coloring",
    "vdw_check",
]

MAX_REBASES = 32


class ClaimError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# AP_k


def ap_k(a_set: EpSet, k: int) -> EpSet:
    """Exact ``AP_k`` of an eventually periodic set.

    With shape (a, p), gaps ``y`` in ``1..a+p`` suffice: once ``x + y > a``
    every later term lies in the periodic tail and only ``y mod p`` matters,
    and ``[a-x+1, a-x+p]`` holds every residue. Membership of ``x`` is
    periodic past ``a`` with period ``p``, so ``x in 1..a+p`` decides all.
    """
    if k < 1:
        raise ValueError("k must be positive")
    span = a_set.a + a_set.p
    horizon = span + k * span
    bits = materialize(a_set, horizon).bits.astype(np.uint8)
    hit = _kernels.ap_scan(bits, span, span, k)
    w = sum(1 << i for i in range(a_set.a) if hit[i])
    v = sum(1 << i for i in range(a_set.p) if hit[a_set.a + i])
    return EpSet.make(a_set.a, w, a_set.p, v)


def ap_witness(a_set: EpSet, k: int, x: int) -> int | None:
    """Least gap ``y`` with ``x, x+y, ..., x+ky`` in the set, if any."""
    if not a_set.member(x):
        return None
    for y in range(1, a_set.a + a_set.p + 1):
        if all(a_set.member(x + i * y) for i in range(1, k + 1)):
            return y
    return None


def oracle_ap_k(a_set: EpSet, k: int, horizon: int) -> WindowSet:
    """Brute force: x qualifies iff some progression of gap y stays inside 1..H."""
    b = materialize(a_set, horizon).bits
    H = horizon
    out = np.zeros(H, dtype=bool)
    for y in range(1, H):
        ok = b.copy()
        for i in range(1, k + 1):
            shifted = np.zeros(H, dtype=bool)
            if i * y < H:
                shifted[: H - i * y] = b[i * y :]
            ok &= shifted
        out |= ok
    return WindowSet(H, out)


# ---------------------------------------------------------------------------
# the progression finder


@dataclass
class Round:
    shift: int  # l_i
    gap: int  # y_i
    pick: int  # x_i
    intersection: EpSet | None  # B_i as written, before shifting by the base


@dataclass
class ClaimTrace:
    base: int
    k: int
    F: tuple[int, ...]
    rounds: list[Round] = field(default_factory=list)
    repeat: tuple[int, int] | None = None
    calls: int = 0
    rebases: int = 0

    def rebuild(self, b: EpSet) -> list[EpSet]:
        """Recompute each round's intersection from the picks and gaps."""
        out = []
        xs = [self.rounds[0].pick]
        sums = [self.rounds[0].gap]
        for r in self.rounds[1:]:
            if r.intersection is None:
                break
            pieces = [shift_left(b, r.pick)]
            for x_m, y_m in zip(xs, sums):
                pieces.extend(shift_left(b, x_m + i * y_m) for i in range(1, self.k + 1))
            out.append(intersect_all(pieces))
            xs.append(r.pick)
            sums = [s + r.gap for s in sums] + [r.gap]
        return out


class _Finder:
    def __init__(self, u: StagedFilter):
        self.u = u
        self.calls = 0
        self.rebases = 0
        self._bu: dict[EpSet, EpSet] = {}

    def bu(self, c: EpSet) -> EpSet:
        got = self._bu.get(c)
        if got is None:
            got = b_sub_u_ep(self.u, c).value
            self._bu[c] = got
        return got

    def first_at_least(self, c: EpSet, lo: int) -> int:
        """Least t >= lo with C - t in U (t = 0 allowed only via C in U)."""
        if lo == 0 and self.u.member(c):
            return 0
        t = self.bu(c)
        shifted = shift_left(t, max(lo - 1, 0))
        m = shifted.min()
        if m is None:
            raise ClaimError("B_U is empty above the base")
        return max(lo - 1, 0) + m

    def level(self, c: EpSet, base: int, k: int) -> tuple[int, int]:
        """(l, y) with l >= 0 and C - (base + l + i*y) in U for i = 1..k."""
        self.calls += 1
        if k == 1:
            e = self.first_at_least(c, base + 1)
            return e - base - 1, 1
        cur = base
        for _ in range(MAX_REBASES):
            prog, _trace = self.step(c, cur, k - 1)
            ell = prog.start - prog.gap - base
            if ell >= 0:
                return ell, prog.gap
            self.rebases += 1
            cur = self.first_at_least(c, base + prog.gap)
        raise ClaimError(f"no rebased progression after {MAX_REBASES} restarts")

    def step(self, c: EpSet, base: int, k: int) -> tuple[Progression, ClaimTrace]:
        """A (k+1)-term progression in C_U above ``base``; requires C - base in U."""
        cu = self.bu(c)
        rel = shift_left(cu, base)
        if rel.is_finite():
            raise ClaimError("B_U - l is not syndetic; is the filter over a maximal TIF?")
        g = gap_bound(rel)
        F = tuple(range(g + 1))
        trace = ClaimTrace(base, k, F)
        ell, y = self.level(c, base, k)
        beta = base + ell
        xs = [0]
        sums = [y]
        trace.rounds.append(Round(ell, y, 0, None))
        while True:
            x = next((x for x in F if x + beta >= 1 and self.u.member(shift_left(c, beta + x))), None)
            if x is None:
                raise ClaimError("no pick in F; syndetic bound violated")
            if x in xs:
                m = xs.index(x)
                trace.repeat = (m, len(xs))
                trace.rounds.append(Round(0, 0, x, None))
                return Progression(beta + x, sums[m], k), trace
            if len(xs) > len(F):
                raise AssertionError("more rounds than |F| without a repeat")
            pieces = [shift_left(c, x)]
            for x_m, y_m in zip(xs, sums):
                pieces.extend(shift_left(c, x_m + i * y_m) for i in range(1, k + 1))
            b_j = intersect_all(pieces)
            ell, y = self.level(b_j, beta, k)
            trace.rounds.append(Round(ell, y, x, b_j))
            beta += ell
            xs.append(x)
            sums = [s + y for s in sums] + [y]


def claim_find_ap(u: StagedFilter, b: EpSet, ell: int, k: int) -> tuple[Progression, ClaimTrace]:
    """A (k+1)-term progression inside ``B_U``, all terms at least ``ell``.

    Requires ``B - ell`` in ``u`` and ``u`` extending a maximal TIF.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not u.member(shift_left(b, ell)):
        raise ValueError("precondition: B - l must belong to the ultrafilter")
    finder = _Finder(u)
    prog, trace = finder.step(b, ell, k)
    trace.calls = finder.calls
    trace.rebases = finder.rebases
    return prog, trace


# ---------------------------------------------------------------------------
# pipelines


@dataclass
class TheoremEvidence:
    a_set: EpSet
    k: int
    witness: list[int]
    thick_union: EpSet
    tif: StagedFilter
    ultrafilter: StagedFilter
    n_j: int
    progression: Progression
    trace: ClaimTrace
    terms_in_bu: bool
    containment_set: EpSet
    containment_ok: bool
    containment_in_u: bool
    apk: EpSet
    apk_pws: bool

    @property
    def verdict(self) -> bool:
        return self.terms_in_bu and self.containment_ok and self.containment_in_u and self.apk_pws

    def lines(self, trace: bool = False) -> list[str]:
        out = [
            f"A={self.a_set}",
            f"k={self.k}",
            f"witness={_fmt_list(self.witness)}",
            f"T={self.thick_union}",
            f"T_in_M={str(self.tif.member(self.thick_union)).lower()}",
            f"M_stages={self.tif.stages} M_accepted={sum(d.accepted for d in self.tif.decisions)}",
            f"U_stages={self.ultrafilter.stages} U_atom={self.ultrafilter.atom}",
            f"n_j={self.n_j}",
            f"F={_fmt_list(self.trace.F)} rounds={len(self.trace.rounds)} "
            f"repeat={_fmt_list(self.trace.repeat or ())} calls={self.trace.calls} rebases={self.trace.rebases}",
            f"progression=({self.progression.start},{self.progression.gap},{self.progression.length}) "
            f"terms={_fmt_list(self.progression.terms())}",
            f"terms_in_B_U={str(self.terms_in_bu).lower()}",
            f"X={self.containment_set}",
            f"X_subset_APk_shift={str(self.containment_ok).lower()} X_in_U={str(self.containment_in_u).lower()}",
            f"APk={self.apk}",
        ]
        if trace:
            for i, r in enumerate(self.trace.rounds):
                out.append(
                    f"round={i} l={r.shift} y={r.gap} x={r.pick} "
                    f"B={r.intersection if r.intersection is not None else '-'}"
                )
        out.append(f"APK_PWS={str(self.apk_pws).lower()}")
        return out


def _fmt_list(xs) -> str:
    return "[" + ",".join(str(x) for x in xs) + "]"


def build_filters(a_set: EpSet, stages: int = DEFAULT_STAGES):
    """Algebra of shifts of A, the maximal TIF over the thick union, and an
    ultrafilter extending it."""
    witness = pws_witness(a_set)
    t = shift_union(a_set, witness)
    algebra = SetAlgebra([a_set])
    tif = build_maximal_tif(algebra, FipFamily(shift_roots=[t]), stages)
    uf = build_ultrafilter(algebra, tif.as_family(), stages, parent=tif)
    return witness, t, tif, uf


def theorem_main(a_set: EpSet, k: int, stages: int = DEFAULT_STAGES) -> TheoremEvidence:
    if k < 1:
        raise ValueError("k must be positive")
    if not is_piecewise_syndetic(a_set):
        raise NotApplicableError(f"{a_set} is not piecewise syndetic")
    witness, t, tif, uf = build_filters(a_set, stages)
    n_j = next(n for n in witness if uf.member(shift_left(a_set, n)))
    prog, trace = claim_find_ap(uf, a_set, n_j, k)
    terms_ok = all(uf.member(shift_left(a_set, t_)) for t_ in prog.terms())
    # X = intersection of A - t_i sits inside AP_k(A) - start
    x_set = intersect_all(shift_left(a_set, t_) for t_ in prog.terms())
    apk = ap_k(a_set, k)
    contained = x_set.issubset(shift_left(apk, prog.start))
    in_u = uf.member(x_set)
    return TheoremEvidence(
        a_set, k, witness, t, tif, uf, n_j, prog, trace, terms_ok,
        x_set, contained, in_u, apk, is_piecewise_syndetic(apk),
    )


@dataclass
class ColoringEvidence:
    index: int
    report: object
    theorem: TheoremEvidence


def corollary_coloring(pieces: list[EpSet], k: int, stages: int = DEFAULT_STAGES) -> ColoringEvidence:
    check_partition(NAT, pieces)
    idx, report = ramsey_piece(NAT, pieces)
    return ColoringEvidence(idx, report, theorem_main(pieces[idx], k, stages))


# ---------------------------------------------------------------------------
# small van der Waerden numbers


def vdw_check(n: int, k: int) -> tuple[int, int | None]:
    """Count 2-colorings of [1, n] with no monochromatic (k+1)-term progression.

    Returns the count and one such coloring as a bitmask (bit i colors i+1).
    """
    count, first = _kernels.count_ap_free_colorings(n, k)
    return int(count), (int(first) if first >= 0 else None)


"""Staged ultrafilter and maximal translation-invariant filter constructions.

Families are kept finite: a ``FipFamily`` lists *shift roots* (each standing
for the whole family ``{R - k : k >= 0}``) and *singles*.

FIP decision
------------
A non-cofinite root already fails: with its shape (a, p) it has no run of
``a + p`` members, so ``R, R-1, ..., R-(a+p-1)`` meet in the empty set. For
a cofinite root with largest missing point ``d`` the intersection of all
its shifts is ``N minus [1, d]`` and is reached by the shifts ``0..d``.
So with every root cofinite the family has the FIP iff the *core*
``(intersection of singles) minus [1, max d]`` is nonempty; the core is
itself the intersection of a finite subfamily, which serves as the
certificate either way.

Staged constructions
--------------------
``build_maximal_tif`` and ``build_ultrafilter`` walk ``algebra.element(1),
element(2), ...`` exactly as the recursion prescribes, storing a
certificate for every decision. On eventually periodic carriers the
limit objects are explicit:

* every member of a translation-invariant filter is thick, hence cofinite,
  and the cofinite members of a shift-closed algebra form such a filter,
  so the maximal TIF is the set of cofinite members of the algebra;
* the algebra is finite, so after the requested stages the ultrafilter
  recursion is continued over the atoms (a valid re-enumeration of the same
  algebra). The first atom meeting the core is accepted, after which every
  later stage is forced; membership is then ``atom <= S``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import threading

from .algebra import SetAlgebra
from .combinatorics import is_piecewise_syndetic, is_syndetic, gap_bound, pws_witness, shift_union
from .epset import (
    NAT,
    EpSet,
    complement,
    interval,
    intersect,
    intersect_all,
    shift_left,
)
from .windowset import WindowSet

DEFAULT_STAGES = 200

__all__ = [
    "FipFamily",
    "FipResult",
    "StageDecision",
    "StagedFilter",
    "PeriodicityError",
    "fip",
    "build_ultrafilter",
    "build_maximal_tif",
    "b_sub_u",
    "b_sub_u_ep",
    "verify_prop_syndetic",
]


class PeriodicityError(RuntimeError):
    pass


@dataclass(frozen=True)
class FipFamily:
    shift_roots: tuple[EpSet, ...] = ()
    singles: tuple[EpSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "shift_roots", tuple(self.shift_roots))
        object.__setattr__(self, "singles", tuple(self.singles))

    def with_root(self, s: EpSet) -> "FipFamily":
        return FipFamily(self.shift_roots + (s,), self.singles)

    def with_single(self, s: EpSet) -> "FipFamily":
        return FipFamily(self.shift_roots, self.singles + (s,))


@dataclass(frozen=True)
class FipResult:
    ok: bool
    core: EpSet | None = None
    counterexample: tuple[EpSet, ...] = ()

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"core:{self.core}"
        return "empty:[" + ",".join(str(s) for s in self.counterexample) + "]"


def _prune(sets: list[EpSet]) -> list[EpSet]:
    """Drop members whose removal keeps the intersection empty."""
    keep = list(dict.fromkeys(sets))
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1 :]
        if trial and intersect_all(trial).is_empty():
            keep = trial
        else:
            i += 1
    return keep


def fip(f: FipFamily) -> FipResult:
    for root in f.shift_roots:
        if not root.is_cofinite():
            shifts = []
            acc = NAT
            for k in range(root.a + root.p):
                sk = shift_left(root, k)
                shifts.append(sk)
                acc = intersect(acc, sk)
                if acc.is_empty():
                    return FipResult(False, counterexample=tuple(shifts))
            raise AssertionError("non-cofinite root must fail within a+p shifts")
    depth = max((r.max_missing() for r in f.shift_roots), default=0)
    core = intersect_all(dict.fromkeys(f.singles))
    if depth:
        core = intersect(core, complement(interval(1, depth)))
    if not core.is_empty():
        return FipResult(True, core=core)
    sets = []
    for r in f.shift_roots:
        sets.extend(shift_left(r, k) for k in range(r.max_missing() + 1))
    sets.extend(f.singles)
    return FipResult(False, counterexample=tuple(_prune(sets)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StageDecision:
    n: int
    candidate: EpSet
    accepted: bool
    certificate: FipResult
    completion: bool = False

    def line(self) -> str:
        label = f"atom{self.n}" if self.completion else str(self.n)
        return (
            f"n={label} B={self.candidate} accept={str(self.accepted).lower()} "
            f"cert={self.certificate.describe()}"
        )


@dataclass
class StagedFilter:
    kind: str  # "ultrafilter" | "maximal-tif"
    base: FipFamily
    algebra: SetAlgebra
    decisions: list[StageDecision] = field(default_factory=list)
    family: FipFamily = field(default=None)
    parent: "StagedFilter | None" = None
    atom: EpSet | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.family is None:
            self.family = self.base

    @property
    def stages(self) -> int:
        return sum(1 for d in self.decisions if not d.completion)

    def core(self) -> EpSet:
        res = fip(self.family)
        assert res.ok
        return res.core

    # -- stage machinery -------------------------------------------------

    def _trial(self, b: EpSet) -> FipFamily:
        if self.kind == "ultrafilter":
            return self.family.with_single(b)
        return self.family.with_root(b)

    def _decide(self, n: int, b: EpSet, completion: bool = False) -> StageDecision:
        trial = self._trial(b)
        cert = fip(trial)
        if cert.ok:
            self.family = trial
        d = StageDecision(n, b, cert.ok, cert, completion)
        self.decisions.append(d)
        return d

    def run(self, stages: int) -> "StagedFilter":
        with self._lock:
            if self.atom is not None:
                raise RuntimeError("filter already completed")
            start = self.stages
            for n in range(start + 1, stages + 1):
                self._decide(n, self.algebra.element(n))
        return self

    def complete(self) -> "StagedFilter":
        """Continue the ultrafilter recursion over the atoms of the algebra."""
        if self.kind != "ultrafilter":
            raise TypeError("only ultrafilters are completed over atoms")
        with self._lock:
            if self.atom is not None:
                return self
            for i, atom in enumerate(self.algebra.atoms(), 1):
                d = self._decide(i, atom, completion=True)
                if d.accepted and self.atom is None:
                    self.atom = atom
            assert self.atom is not None
        return self

    def replay(self) -> list[tuple[int, bool]]:
        """Re-run the recorded stages from the base; returns (n, accepted)."""
        fresh = StagedFilter(self.kind, self.base, self.algebra)
        out = []
        for d in self.decisions:
            out.append((d.n, fresh._decide(d.n, d.candidate, d.completion).accepted))
        return out

    # -- membership ------------------------------------------------------

    def member(self, s: EpSet) -> bool:
        if not self.algebra.contains(s):
            raise ValueError(f"{s} is not in the algebra")
        if self.kind == "maximal-tif":
            return s.is_cofinite()
        if self.atom is not None:
            return self.atom.issubset(s)
        core = self.core()
        if core.issubset(s):
            return True
        if core.isdisjoint(s):
            return False
        raise RuntimeError("membership undecided before completion")

    __contains__ = member

    def as_family(self) -> FipFamily:
        """Finite stand-in for the limit filter, usable as a FIP base.

        For the maximal TIF this is the accepted roots plus the complement of
        the finite atoms: an algebra set meets every cofinite member iff it
        meets that root's shift core.
        """
        if self.kind == "maximal-tif":
            cof = complement(self.algebra.finite_part())
            return FipFamily(self.family.shift_roots + (cof,), ())
        return self.family


def build_maximal_tif(algebra: SetAlgebra, base: FipFamily, stages: int = DEFAULT_STAGES) -> StagedFilter:
    if base.singles or not base.shift_roots:
        raise ValueError("a TIF base must be given as nonempty shift roots only")
    if not fip(base):
        raise ValueError("base family lacks the finite intersection property")
    return StagedFilter("maximal-tif", base, algebra).run(stages)


def build_ultrafilter(
    algebra: SetAlgebra,
    base: FipFamily,
    stages: int = DEFAULT_STAGES,
    parent: StagedFilter | None = None,
    complete: bool = True,
) -> StagedFilter:
    if not fip(base):
        raise ValueError("base family lacks the finite intersection property")
    uf = StagedFilter("ultrafilter", base, algebra, parent=parent).run(stages)
    return uf.complete() if complete else uf


# ---------------------------------------------------------------------------
# B_U = {n : B - n in U}


def b_sub_u(u: StagedFilter, b: EpSet, horizon: int) -> WindowSet:
    import numpy as np

    bits = np.array([u.member(shift_left(b, n)) for n in range(1, horizon + 1)], dtype=bool)
    return WindowSet(horizon, bits)


@dataclass(frozen=True)
class BSubU:
    value: EpSet
    horizon: int


def b_sub_u_ep(u: StagedFilter, b: EpSet, horizon: int | None = None) -> BSubU:
    """Detect ``n -> [B - n in U]`` as an eventually periodic set.

    Past ``a_B`` the shift ``B - n`` depends on ``n`` only mod ``p_B``, so
    the default horizon ``a_B + 4 p_B + 4`` leaves room to verify any
    preperiod <= a_B and period dividing p_B over three full periods.
    """
    if horizon is None:
        horizon = b.a + 4 * b.p + 4
    win = b_sub_u(u, b, horizon)
    seq = win.bits
    for total in range(1, horizon + 1):
        for q in range(1, total + 1):
            pre = total - q
            if pre + 3 * q > horizon:
                continue
            body = seq[pre:]
            if all(body[i] == body[i + q] for i in range(len(body) - q)):
                w = sum(1 << i for i in range(pre) if seq[i])
                v = sum(1 << i for i in range(q) if seq[pre + i])
                return BSubU(EpSet.make(pre, w, q, v), horizon)
    raise PeriodicityError(f"no eventual period verified within horizon {horizon}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SyndeticCheck:
    b: EpSet
    in_u: bool
    pws: bool | None = None
    b_u: EpSet | None = None
    gap: int | None = None
    cover: tuple[int, ...] = ()
    cover_in_m: bool | None = None

    @property
    def passed(self) -> bool:
        if not self.in_u:
            return True
        return bool(self.pws and self.gap is not None and self.cover_in_m)


def verify_prop_syndetic(u: StagedFilter, sample, tif: StagedFilter | None = None) -> list[SyndeticCheck]:
    """Members of an ultrafilter over a maximal TIF are piecewise syndetic,
    and each ``B_U`` is syndetic. Non-members of ``u`` are reported as skipped."""
    tif = tif or u.parent
    if tif is None or tif.kind != "maximal-tif":
        raise ValueError("need the maximal TIF the ultrafilter extends")
    out = []
    for b in sample:
        if not u.member(b):
            out.append(SyndeticCheck(b, False))
            continue
        pws = is_piecewise_syndetic(b)
        bu = b_sub_u_ep(u, b).value
        gap = gap_bound(bu) if is_syndetic(bu) else None
        cover = tuple(pws_witness(b)) if pws else ()
        cover_in_m = tif.member(shift_union(b, cover)) if cover else False
        out.append(SyndeticCheck(b, True, pws, bu, gap, cover, cover_in_m))
    return out


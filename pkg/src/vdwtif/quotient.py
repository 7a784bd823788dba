"""Finite cyclic quotient model of the ultrafilter semigroup.

The algebra of unions of residue classes mod P has 2**P members, encoded
as P-bit masks: bit r set means the residue class of r (mod P) is included.
Its ultrafilters are the P principal ones ``U_r = {S : r in S}`` (atoms),
and the leftward shift acts by rotation: ``S - n`` has residue set
``{r : r + n in S}``.

Everything here is decided by exhaustive enumeration. Topological closure
is the identity on this finite discrete space and the pseudosum turns the
atoms into the group Z/P, so the union of minimal left ideals is all of
it. Both facts are reported rather than hidden.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .epset import EpSet

DEFAULT_MAX_MODULUS = 8


class ModulusError(ValueError):
    pass


def _check(P: int, bound: int = DEFAULT_MAX_MODULUS) -> None:
    if P < 1:
        raise ModulusError("modulus must be positive")
    if P > bound:
        raise ModulusError(f"modulus {P} exceeds bound {bound}")


@dataclass(frozen=True)
class CyclicAlgebra:
    modulus: int

    @property
    def full(self) -> int:
        return (1 << self.modulus) - 1

    def sets(self) -> range:
        return range(1 << self.modulus)

    def shift(self, mask: int, n: int) -> int:
        P = self.modulus
        return sum(1 << r for r in range(P) if (mask >> ((r + n) % P)) & 1)

    def to_epset(self, mask: int) -> EpSet:
        # residue r of n corresponds to period index (n - 1) mod P
        P = self.modulus
        v = sum(1 << ((r - 1) % P) for r in range(P) if (mask >> r) & 1)
        return EpSet.make(0, 0, P, v)


@dataclass(frozen=True)
class QuotientUltrafilter:
    modulus: int
    residue: int

    def contains(self, mask: int) -> bool:
        return bool((mask >> self.residue) & 1)


def _preimage(alg: CyclicAlgebra, a: int, v: QuotientUltrafilter) -> int:
    """Residue mask of {n : A - n in V}."""
    return sum(1 << n for n in range(alg.modulus) if v.contains(alg.shift(a, n)))


def pseudosum(u: QuotientUltrafilter, v: QuotientUltrafilter) -> QuotientUltrafilter:
    if u.modulus != v.modulus:
        raise ModulusError("modulus mismatch")
    alg = CyclicAlgebra(u.modulus)
    found = []
    for w in range(alg.modulus):
        cand = QuotientUltrafilter(alg.modulus, w)
        if all(cand.contains(a) == u.contains(_preimage(alg, a, v)) for a in alg.sets()):
            found.append(cand)
    if len(found) != 1:
        raise AssertionError(f"pseudosum not a unique atom: {found}")
    return found[0]


@lru_cache(maxsize=None)
def _table(P: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(pseudosum(QuotientUltrafilter(P, r), QuotientUltrafilter(P, s)).residue for s in range(P))
        for r in range(P)
    )


def pseudosum_table(P: int) -> list[list[int]]:
    _check(P)
    return [list(row) for row in _table(P)]


# ---------------------------------------------------------------------------
# filters and left ideals


def is_filter(P: int, fam: frozenset[int]) -> bool:
    """Proper filter: nonempty, no empty set, intersection- and upward-closed."""
    alg = CyclicAlgebra(P)
    if not fam or 0 in fam:
        return False
    for a in fam:
        for b in fam:
            if a & b not in fam:
                return False
        for b in alg.sets():
            if b & a == a and b not in fam:
                return False
    return True


def principal(P: int, gen: int) -> frozenset[int]:
    alg = CyclicAlgebra(P)
    return frozenset(s for s in alg.sets() if s & gen == gen)


def enumerate_filters(P: int) -> list[frozenset[int]]:
    """All proper filters; on a finite algebra each is principal."""
    _check(P)
    alg = CyclicAlgebra(P)
    return [principal(P, g) for g in alg.sets() if g]


def is_tif(P: int, fam: frozenset[int]) -> bool:
    alg = CyclicAlgebra(P)
    return all(alg.shift(a, 1) in fam for a in fam)


def is_left_ideal(P: int, atoms: frozenset[int]) -> bool:
    if not atoms:
        return False
    table = _table(P)
    return all(table[r][s] in atoms for s in atoms for r in range(P))


def enumerate_left_ideals(P: int) -> list[frozenset[int]]:
    _check(P)
    out = []
    for bits in product((0, 1), repeat=P):
        atoms = frozenset(r for r in range(P) if bits[r])
        if is_left_ideal(P, atoms):
            out.append(atoms)
    return out


def closed_set_of(P: int, fam: frozenset[int]) -> frozenset[int]:
    """Atoms extending the family."""
    return frozenset(r for r in range(P) if all((a >> r) & 1 for a in fam))


def filter_of(P: int, atoms: frozenset[int]) -> frozenset[int]:
    """Intersection of the atoms' ultrafilters."""
    alg = CyclicAlgebra(P)
    return frozenset(a for a in alg.sets() if all((a >> r) & 1 for r in atoms))


def _maximal(items):
    return [x for x in items if not any(x < y for y in items)]


def _minimal(items):
    return [x for x in items if not any(y < x for y in items)]


@dataclass
class CorrespondenceReport:
    modulus: int
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    n_filters: int = 0
    n_tifs: int = 0
    n_left_ideals: int = 0
    smallest_ideal: frozenset[int] = frozenset()

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def check_correspondence(P: int) -> CorrespondenceReport:
    _check(P)
    rep = CorrespondenceReport(P)
    table = pseudosum_table(P)
    rep.checks["pseudosum_is_addition"] = all(
        table[r][s] == (r + s) % P for r in range(P) for s in range(P)
    )
    rep.checks["pseudosum_associative"] = all(
        table[table[r][s]][t] == table[r][table[s][t]]
        for r in range(P)
        for s in range(P)
        for t in range(P)
    )
    filters = enumerate_filters(P)
    tifs = [f for f in filters if is_tif(P, f)]
    ideals = enumerate_left_ideals(P)
    rep.n_filters, rep.n_tifs, rep.n_left_ideals = len(filters), len(tifs), len(ideals)

    nonempty = [frozenset(r for r in range(P) if (m >> r) & 1) for m in range(1, 1 << P)]
    rep.checks["C_of_TIF_is_left_ideal"] = all(is_left_ideal(P, closed_set_of(P, f)) for f in tifs)
    rep.checks["F_of_left_ideal_is_TIF"] = all(is_tif(P, filter_of(P, L)) for L in ideals)
    rep.checks["C_F_X_is_closure_X"] = all(closed_set_of(P, filter_of(P, X)) == X for X in nonempty)
    rep.checks["F_C_filter_is_filter"] = all(filter_of(P, closed_set_of(P, f)) == f for f in filters)

    max_tifs = _maximal(tifs)
    min_ideals = _minimal(ideals)
    rep.checks["maximal_TIF_iff_minimal_ideal"] = all(
        (f in max_tifs) == (closed_set_of(P, f) in min_ideals) for f in tifs
    )
    rep.checks["minimal_ideal_iff_F_maximal"] = all(
        (L in min_ideals) == (filter_of(P, L) in max_tifs) for L in ideals
    )
    k_atoms = frozenset().union(*min_ideals) if min_ideals else frozenset()
    rep.smallest_ideal = k_atoms
    rep.checks["extends_maximal_TIF_iff_in_K"] = all(
        any(all((a >> r) & 1 for a in m) for m in max_tifs) == (r in k_atoms) for r in range(P)
    )
    rep.checks["K_is_all_atoms"] = k_atoms == frozenset(range(P))
    rep.notes.append("closure is the identity on a finite discrete space; 'closed' is vacuous")
    rep.notes.append("the atoms form the group Z/P under pseudosum, so K is every atom")
    return rep

"""Enumeration of the algebra of sets generated by shift families of roots.

Indexing scheme
---------------
``generator(i)``: ``i - 1`` is unpaired with the Cantor diagonal
``z -> (j, n)`` where ``w = floor((sqrt(8z + 1) - 1) / 2)``,
``j = z - w(w + 1)/2`` and ``n = w - j``; the result is
``roots[j mod r] - n``. Its inverse is ``z = (j + n)(j + n + 1)/2 + j``.
Folding ``j`` modulo the number of roots keeps the map total, at the cost
of repeats.

``element(n)``: the 1-bits of ``n`` give a finite set of clause indices
(``finite_set_of_index``). A clause index ``c >= 1`` is read in base 3,
digit ``k`` (from the least significant, 1-based) saying whether generator
``k`` is absent (0), present (1) or present complemented (2). That is a
bijection between ``c >= 1`` and nonempty signed finite sets. The element
is the union over clauses of the intersection of the clause's literals.

Repeats are allowed; ``index_of`` reports the least index.

Because a shift of an eventually periodic set beyond its preperiod is a
rotation, each root contributes at most ``a + p`` distinct generators and
the generated algebra is finite. Its atoms give an exact membership test
(``contains``) that does not need to search the enumeration.
"""
from __future__ import annotations

from math import isqrt
import threading

from .epset import EMPTY, NAT, EpSet, complement, intersect, shift_left, union

__all__ = ["SetAlgebra", "finite_set_of_index", "cantor_pair", "cantor_unpair"]


def finite_set_of_index(n: int) -> frozenset[int]:
    if n < 1:
        raise ValueError("index must be positive")
    return frozenset(k + 1 for k in range(n.bit_length()) if (n >> k) & 1)


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    j = z - w * (w + 1) // 2
    return j, w - j


def cantor_pair(j: int, n: int) -> int:
    return (j + n) * (j + n + 1) // 2 + j


def clause_literals(c: int) -> list[tuple[int, bool]]:
    """(generator index, positive?) pairs of clause ``c``."""
    if c < 1:
        raise ValueError("clause index must be positive")
    out = []
    k = 1
    while c:
        c, d = divmod(c, 3)
        if d:
            out.append((k, d == 1))
        k += 1
    return out


class SetAlgebra:
    def __init__(self, roots):
        roots = tuple(roots)
        if not roots:
            raise ValueError("need at least one root")
        self.roots = roots
        self._lock = threading.Lock()
        self._gen: dict[int, EpSet] = {}
        self._clause: dict[int, EpSet] = {}
        self._elem: dict[int, EpSet] = {}
        self._atoms: tuple[EpSet, ...] | None = None

    def __repr__(self):
        return f"SetAlgebra(roots=[{', '.join(map(str, self.roots))}])"

    def decode_generator(self, i: int) -> tuple[int, int]:
        """0-based root index and shift for generator ``i``."""
        if i < 1:
            raise ValueError("index must be positive")
        j, n = cantor_unpair(i - 1)
        return j % len(self.roots), n

    def generator(self, i: int) -> EpSet:
        g = self._gen.get(i)
        if g is None:
            j, n = self.decode_generator(i)
            g = shift_left(self.roots[j], n)
            with self._lock:
                self._gen[i] = g
        return g

    def clause(self, c: int) -> EpSet:
        s = self._clause.get(c)
        if s is None:
            s = NAT
            for k, positive in clause_literals(c):
                g = self.generator(k)
                s = intersect(s, g if positive else complement(g))
            with self._lock:
                self._clause[c] = s
        return s

    def decode_element(self, n: int) -> list[list[tuple[int, bool]]]:
        return [clause_literals(c) for c in sorted(finite_set_of_index(n))]

    def element(self, n: int) -> EpSet:
        s = self._elem.get(n)
        if s is None:
            s = EMPTY
            for c in sorted(finite_set_of_index(n)):
                s = union(s, self.clause(c))
            with self._lock:
                self._elem[n] = s
        return s

    def index_of(self, s: EpSet, search_bound: int) -> int | None:
        for n in range(1, search_bound + 1):
            if self.element(n) == s:
                return n
        return None

    # -- finite structure ----------------------------------------------------

    def distinct_generators(self) -> list[EpSet]:
        out: list[EpSet] = []
        seen = set()
        for root in self.roots:
            for n in range(root.a + root.p):
                g = shift_left(root, n)
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def atoms(self) -> tuple[EpSet, ...]:
        """The minimal nonempty members, ordered by least element."""
        if self._atoms is None:
            parts = [NAT]
            for g in self.distinct_generators():
                nxt = []
                for part in parts:
                    for piece in (intersect(part, g), intersect(part, complement(g))):
                        if not piece.is_empty():
                            nxt.append(piece)
                parts = nxt
            parts.sort(key=lambda s: (s.min(), s.to_text()))
            with self._lock:
                self._atoms = tuple(parts)
        return self._atoms

    def contains(self, s: EpSet) -> bool:
        """Exact membership: ``s`` is a union of atoms."""
        for atom in self.atoms():
            meet = intersect(atom, s)
            if not (meet.is_empty() or meet == atom):
                return False
        return True

    def finite_part(self) -> EpSet:
        """Union of the finite atoms."""
        s = EMPTY
        for atom in self.atoms():
            if atom.is_finite():
                s = union(s, atom)
        return s

"""Permutation groups: membership, order, elements, orbits.

Order and membership go through a deterministically built stabilizer chain
(base points chosen in increasing point order, orbits explored breadth-first
with generators in list order), so every run of every operation is
reproducible.  Full element enumeration is available below a configured cap
and doubles as an independent cross-check of the chain in the test suite.
"""

from __future__ import annotations

import threading
from typing import Callable, Iterable, Sequence

from .errors import CapExceeded, DegreeMismatch, NotASubgroup
from .limits import LIMITS
from .perms import Permutation


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        # orbit point -> u with base^u = point
        self.transversal: dict[int, Permutation] = {}


class StabilizerChain:
    """Incremental deterministic Schreier-Sims."""

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def contains(self, p: Permutation) -> bool:
        residue, _ = self._strip(p, 0)
        return residue.is_identity()

    def _gens_at(self, i: int) -> list[Permutation]:
        return [g for lv in self.levels[i:] for g in lv.gens]

    def _strip(self, p: Permutation, start: int) -> tuple[Permutation, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            image = p.images[lv.point]
            u = lv.transversal.get(image)
            if u is None:
                return p, i
            p = p * u.inverse()
        return p, len(self.levels)

    def _rebuild_orbit(self, i: int) -> None:
        lv = self.levels[i]
        gens = self._gens_at(i)
        lv.transversal = {lv.point: Permutation.identity(self.degree)}
        queue = [lv.point]
        while queue:
            x = queue.pop(0)
            ux = lv.transversal[x]
            for g in gens:
                y = g.images[x]
                if y not in lv.transversal:
                    lv.transversal[y] = ux * g
                    queue.append(y)

    def _place(self, residue: Permutation, i: int) -> None:
        if i == len(self.levels):
            self.levels.append(_Level(min(residue.moved_points())))
        self.levels[i].gens.append(residue)

    def _close(self, i: int) -> None:
        # Requires levels below (index > i) to be closed already; keeps them so.
        self._rebuild_orbit(i)
        lv = self.levels[i]
        while True:
            changed = False
            for x in sorted(lv.transversal):
                ux = lv.transversal[x]
                for s in self._gens_at(i):
                    schreier = ux * s * lv.transversal[s.images[x]].inverse()
                    if schreier.is_identity():
                        continue
                    residue, j = self._strip(schreier, i + 1)
                    if residue.is_identity():
                        continue
                    self._place(residue, j)
                    for k in range(j, i, -1):
                        self._close(k)
                    self._rebuild_orbit(i)
                    changed = True
                    break
                if changed:
                    break
            if not changed:
                return

    def extend(self, p: Permutation) -> bool:
        """Add a generator; returns True when the group grew."""
        residue, i = self._strip(p, 0)
        if residue.is_identity():
            return False
        self._place(residue, i)
        for k in range(i, -1, -1):
            self._close(k)
        return True


class PermGroup:
    """A finite permutation group given by generators.

    Instances are immutable values; the stabilizer chain and the element
    enumeration are built lazily under a lock, so concurrent readers observe
    either an absent or a fully built cache.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        gens: list[Permutation] = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
            if g.is_identity() or g in gens:
                continue
            gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._chain: StabilizerChain | None = None
        self._elements: tuple[Permutation, ...] | None = None
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __getstate__(self):
        return (self.degree, self.generators)

    def __setstate__(self, state):
        degree, generators = state
        self.degree = degree
        self.generators = generators
        self._chain = None
        self._elements = None
        self._cache = {}
        self._lock = threading.Lock()

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    chain = StabilizerChain(self.degree)
                    for g in self.generators:
                        chain.extend(g)
                    self._chain = chain
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"degree {p.degree} vs group degree {self.degree}")
        return self.chain.contains(p)

    def elements(self, cap: int | None = None) -> tuple[Permutation, ...]:
        """All elements, sorted by the package-wide element ordering."""
        if self._elements is None:
            limit = cap if cap is not None else LIMITS.max_elements
            if self.order() > limit:
                raise CapExceeded(f"group order {self.order()} exceeds enumeration cap {limit}")
            with self._lock:
                if self._elements is None:
                    seen = {self.identity}
                    queue = [self.identity]
                    while queue:
                        g = queue.pop()
                        for s in self.generators:
                            h = g * s
                            if h not in seen:
                                seen.add(h)
                                queue.append(h)
                    self._elements = tuple(sorted(seen))
        return self._elements

    def element_set(self) -> frozenset[Permutation]:
        cached = self._cache.get("element_set")
        if cached is None:
            cached = frozenset(self.elements())
            self._cache["element_set"] = cached
        return cached

    def contains_subgroup(self, other: "PermGroup") -> bool:
        return other.degree == self.degree and all(g in self for g in other.generators)

    def is_normal_in(self, ambient: "PermGroup") -> bool:
        """self ⊴ ambient (containment checked too)."""
        if not ambient.contains_subgroup(self):
            return False
        for g in ambient.generators:
            for s in self.generators:
                if s.conjugated_by(g) not in self:
                    return False
        return True

    def conjugated_by(self, g: Permutation) -> "PermGroup":
        return PermGroup(self.degree, [s.conjugated_by(g) for s in self.generators])

    def is_abelian(self) -> bool:
        cached = self._cache.get("abelian")
        if cached is None:
            gens = self.generators
            cached = all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])
            self._cache["abelian"] = cached
        return cached

    def same_elements(self, other: "PermGroup") -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.contains_subgroup(other)
        )

    def orbit(self, point: int) -> tuple[int, ...]:
        """The orbit of one point, sorted."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside degree {self.degree}")
        seen = {point}
        queue = [point]
        while queue:
            x = queue.pop(0)
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        out = []
        remaining = set(range(self.degree))
        while remaining:
            orb = self.orbit(min(remaining))
            out.append(orb)
            remaining -= set(orb)
        return tuple(out)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def generated_by(degree: int, perms: Iterable[Permutation]) -> PermGroup:
    return PermGroup(degree, perms)


def from_elements(degree: int, elems: Iterable[Permutation]) -> PermGroup:
    """Group generated by an element collection, with a small generating set.

    Elements are scanned in increasing element order and kept only when not
    already generated, so the resulting generator list is deterministic.
    """
    chain = StabilizerChain(degree)
    gens: list[Permutation] = []
    for x in sorted(set(elems)):
        if x.is_identity():
            continue
        if not chain.contains(x):
            chain.extend(x)
            gens.append(x)
    return PermGroup(degree, gens)


def group_order(G: PermGroup) -> int:
    return G.order()


def closure_order(G: PermGroup, cap: int | None = None) -> int:
    """Order by exhaustive closure; the chain-independent cross-check."""
    limit = cap if cap is not None else LIMITS.max_elements
    seen = {G.identity}
    queue = [G.identity]
    while queue:
        g = queue.pop()
        for s in G.generators:
            h = g * s
            if h not in seen:
                if len(seen) >= limit:
                    raise CapExceeded(f"closure exceeds cap {limit}")
                seen.add(h)
                queue.append(h)
    return len(seen)


def subgroup_of(ambient: PermGroup, gens: Sequence[Permutation]) -> PermGroup:
    sub = PermGroup(ambient.degree, gens)
    for g in sub.generators:
        if g not in ambient:
            raise NotASubgroup(f"{g!r} not in ambient group")
    return sub


def orbit_partition(
    G: PermGroup,
    objects: Sequence,
    action: Callable,
) -> list[list]:
    """Partition `objects` into G-orbits under `action(obj, g)`.

    The action is sanity-checked: the identity must fix every object, and
    compatibility action(action(o, g), h) == action(o, g*h) is spot-checked
    on the first few object/generator combinations.
    """
    e = G.identity
    for obj in objects:
        if action(obj, e) != obj:
            raise ValueError("not a group action: identity moves an object")
    gens = G.generators
    for obj in list(objects)[:3]:
        for g in gens[:2]:
            for h in gens[:2]:
                if action(action(obj, g), h) != action(obj, g * h):
                    raise ValueError("not a group action: compatibility fails")

    remaining = list(objects)
    out: list[list] = []
    while remaining:
        seed = remaining[0]
        orbit = [seed]
        seen = {_obj_key(seed)}
        queue = [seed]
        while queue:
            obj = queue.pop(0)
            for g in gens:
                nxt = action(obj, g)
                key = _obj_key(nxt)
                if key not in seen:
                    seen.add(key)
                    orbit.append(nxt)
                    queue.append(nxt)
        out.append(orbit)
        remaining = [obj for obj in remaining if _obj_key(obj) not in seen]
    return out


def _obj_key(obj):
    return obj if isinstance(obj, (int, frozenset, tuple, Permutation)) else id(obj)

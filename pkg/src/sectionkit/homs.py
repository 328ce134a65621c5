"""Homomorphisms given by generator images; quotients via coset actions.

A map is validated exactly, not probabilistically: the image table is built
by closing the generator pairs over the source group, and every Cayley-graph
edge is checked, so an ill-defined assignment is always detected.
"""

from __future__ import annotations

import threading
from typing import NamedTuple

from .construct import DirectProduct, direct_product, intersection
from .errors import CapExceeded, InternalCheckError, NotASubgroup, NotNormal
from .groups import PermGroup, from_elements
from .limits import LIMITS
from .perms import Permutation


class GroupHom:
    """A homomorphism `source -> target` defined on source generators.

    ``images[i]`` is the image of ``source.generators[i]``.  The full value
    table (and with it well-definedness) is computed lazily and cached.
    """

    def __init__(self, source: PermGroup, target: PermGroup, images):
        images = tuple(images)
        if len(images) != len(source.generators):
            raise ValueError("one image per source generator required")
        for im in images:
            if im not in target:
                raise NotASubgroup("generator image outside the target group")
        self.source = source
        self.target = target
        self.images = images
        self._table: dict[Permutation, Permutation] | None = None
        self._valid: bool | None = None
        self._lock = threading.Lock()

    def __getstate__(self):
        return (self.source, self.target, self.images)

    def __setstate__(self, state):
        self.source, self.target, self.images = state
        self._table = None
        self._valid = None
        self._lock = threading.Lock()

    def _build_table(self) -> None:
        with self._lock:
            if self._table is not None:
                return
            table = {self.source.identity: self.target.identity}
            queue = [self.source.identity]
            valid = True
            pairs = list(zip(self.source.generators, self.images))
            while queue and valid:
                g = queue.pop()
                img = table[g]
                for s, s_img in pairs:
                    h = g * s
                    h_img = img * s_img
                    known = table.get(h)
                    if known is None:
                        table[h] = h_img
                        queue.append(h)
                    elif known != h_img:
                        valid = False
                        break
            self._valid = valid
            self._table = table

    def is_homomorphism(self) -> bool:
        if self._valid is None:
            self._build_table()
        return bool(self._valid)

    @property
    def table(self) -> dict[Permutation, Permutation]:
        if self._table is None:
            self._build_table()
        if not self._valid:
            raise InternalCheckError("generator images do not extend to a homomorphism")
        return self._table

    def __call__(self, g: Permutation) -> Permutation:
        img = self.table.get(g)
        if img is None:
            raise NotASubgroup("element outside the source group")
        return img

    def kernel(self) -> PermGroup:
        e = self.target.identity
        return from_elements(self.source.degree, [g for g, im in self.table.items() if im == e])

    def image(self) -> PermGroup:
        return PermGroup(self.target.degree, self.images)

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self.image().order() == self.target.order()

    def is_bijective(self) -> bool:
        return (
            self.is_homomorphism()
            and self.source.order() == self.target.order()
            and self.is_injective()
        )

    def preimage_rep(self, t: Permutation) -> Permutation:
        """Least source element mapping to t."""
        rep = self._fibers().get(t)
        if rep is None:
            raise NotASubgroup("element outside the image")
        return rep

    def _fibers(self) -> dict[Permutation, Permutation]:
        fibers = getattr(self, "_fiber_reps", None)
        if fibers is None:
            fibers = {}
            for g in sorted(self.table):
                fibers.setdefault(self.table[g], g)
            self._fiber_reps = fibers
        return fibers

    def preimage_subgroup(self, S: PermGroup) -> PermGroup:
        """Full preimage of a subgroup of the image."""
        gens = list(self.kernel().generators)
        gens.extend(self.preimage_rep(s) for s in S.generators)
        return PermGroup(self.source.degree, gens)

    def then(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, other.target, [other(im) for im in self.images])

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise InternalCheckError("only bijective homomorphisms can be inverted")
        back = {im: g for g, im in self.table.items()}
        return GroupHom(self.target, self.source, [back[t] for t in self.target.generators])

    def __repr__(self) -> str:
        return f"GroupHom({self.source!r} -> {self.target!r})"


def hom_through(pi: GroupHom, psi: GroupHom) -> GroupHom:
    """The map Q -> T induced by psi: G -> T through a surjection pi: G -> Q.

    Q must be pi's image group; well-definedness (ker pi ⊆ ker psi) is
    verified exactly by the resulting hom's table check.
    """
    if pi.source is not psi.source:
        raise ValueError("pi and psi must share their source")
    quotient_group = pi.image()
    images = []
    for gen in quotient_group.generators:
        idx = pi.images.index(gen)
        images.append(psi.images[idx])
    induced = GroupHom(quotient_group, psi.target, images)
    if not induced.is_homomorphism():
        raise InternalCheckError("map does not factor through the quotient")
    return induced


class QuotientResult(NamedTuple):
    group: PermGroup
    projection: GroupHom


def quotient(G: PermGroup, N: PermGroup, cap: int | None = None) -> QuotientResult:
    """G/N as the image of the right-coset action of G.

    Cosets are labelled 0..index-1 in increasing order of their least
    element, so quotients (and everything built on them) are reproducible.
    """
    if not N.is_normal_in(G):
        raise NotNormal("quotient requires a normal subgroup")
    limit = cap if cap is not None else LIMITS.max_quotient_index
    index = G.order() // N.order()
    if index > limit:
        raise CapExceeded(f"quotient index {index} exceeds cap {limit}")

    n_elems = N.elements()
    rep_cache: dict[Permutation, Permutation] = {}

    def rep(g: Permutation) -> Permutation:
        r = rep_cache.get(g)
        if r is None:
            r = min(n * g for n in n_elems)
            for n in n_elems:
                rep_cache[n * g] = r
        return r

    reps = [rep(G.identity)]
    seen = {reps[0]}
    pos = 0
    while pos < len(reps):
        base = reps[pos]
        pos += 1
        for s in G.generators:
            r = rep(base * s)
            if r not in seen:
                seen.add(r)
                reps.append(r)
    reps.sort()
    index_of = {r: i for i, r in enumerate(reps)}

    coset_perms = []
    for s in G.generators:
        coset_perms.append(Permutation._raw(tuple(index_of[rep(r * s)] for r in reps)))
    Q = PermGroup(index, coset_perms)
    pi = GroupHom(G, Q, coset_perms)
    if Q.order() != index:
        raise InternalCheckError("coset action order mismatch")
    return QuotientResult(Q, pi)


class RemakResult(NamedTuple):
    product: DirectProduct
    embedding: GroupHom


def remak_embed(G: PermGroup, N1: PermGroup, N2: PermGroup) -> RemakResult:
    """The subdirect embedding of G/(N1∩N2) into G/N1 × G/N2.

    The combined map g ↦ (gN1, gN2) has kernel N1∩N2, so the induced map on
    G/(N1∩N2) is injective, and it projects onto each factor.
    """
    q1 = quotient(G, N1)
    q2 = quotient(G, N2)
    dp = direct_product(q1.group, q2.group)
    combined = GroupHom(
        G,
        dp.group,
        [dp.pair(q1.projection(g), q2.projection(g)) for g in G.generators],
    )
    meet = intersection(N1, N2)
    q12 = quotient(G, meet)
    embedding = hom_through(q12.projection, combined)
    return RemakResult(dp, embedding)

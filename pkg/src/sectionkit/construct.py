"""Constructions: metacyclic targets, direct products, subgroup arithmetic.

The target family consists of the nontrivial semidirect products
C_{p^n} ⋊ C_q with p, q distinct primes.  Such a group is realized
faithfully by affine maps x ↦ r^j·x + i on Z/p^n, where r is a unit of
multiplicative order q: the translation x ↦ x+1 generates the normal cyclic
part, the multiplier x ↦ r·x generates an order-q complement acting
nontrivially on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numth
from .errors import DegreeMismatch, InvalidSpec, NotASubgroup
from .groups import PermGroup, from_elements, generated_by
from .limits import LIMITS
from .perms import Permutation


@dataclass(frozen=True)
class MetacyclicSpec:
    """Parameters (p, n, q, r) of a nontrivial C_{p^n} ⋊ C_q.

    Validity: p, q distinct primes, n ≥ 1, 1 < r < p^n with r^q ≡ 1 mod p^n.
    Since q is prime, r then has multiplicative order exactly q, which is the
    nontriviality of the action.
    """

    p: int
    n: int
    q: int
    r: int

    def __post_init__(self):
        if not numth.is_prime(self.p):
            raise InvalidSpec(f"p = {self.p} is not prime")
        if not numth.is_prime(self.q):
            raise InvalidSpec(f"q = {self.q} is not prime")
        if self.p == self.q:
            raise InvalidSpec("p and q must be distinct")
        if self.n < 1:
            raise InvalidSpec(f"n = {self.n} must be positive")
        m = self.modulus
        if not 1 < self.r < m:
            raise InvalidSpec(f"r = {self.r} outside 2..{m - 1} (the action must be nontrivial)")
        if pow(self.r, self.q, m) != 1:
            raise InvalidSpec(f"r = {self.r} does not satisfy r^q ≡ 1 mod {m}")

    @property
    def modulus(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.modulus * self.q

    @classmethod
    def canonical(cls, p: int, n: int, q: int) -> "MetacyclicSpec":
        """The spec with the least valid r; error when no valid r exists."""
        m = p**n
        for r in range(2, m):
            if pow(r, q, m) == 1:
                return cls(p, n, q, r)
        raise InvalidSpec(f"no action exponent: q = {q} does not divide phi({p}^{n})")

    @classmethod
    def all_specs(cls, max_order: int) -> list["MetacyclicSpec"]:
        """Every valid (p, n, q, r) with p^n · q ≤ max_order, deterministic order."""
        out = []
        for p in range(2, max_order + 1):
            if not numth.is_prime(p):
                continue
            n = 1
            while p**n * 2 <= max_order:
                m = p**n
                for q in range(2, max_order // m + 1):
                    if q == p or not numth.is_prime(q):
                        continue
                    for r in range(2, m):
                        if pow(r, q, m) == 1:
                            out.append(cls(p, n, q, r))
                n += 1
        return out


@dataclass(frozen=True)
class Metacyclic:
    """A constructed target group with its distinguished generators."""

    spec: MetacyclicSpec
    group: PermGroup
    translation: Permutation  # x ↦ x + 1, generates the normal cyclic part
    multiplier: Permutation  # x ↦ r·x, generates the acting complement
    cyclic_part: PermGroup
    complement: PermGroup


def construct_metacyclic(spec: MetacyclicSpec) -> Metacyclic:
    """Realize the target as affine maps on p^n points.

    An affine map r^j·x + i is the identity only when i = 0 and r^j ≡ 1, so
    the representation is faithful and the group has order p^n · q.
    """
    m = spec.modulus
    translation = Permutation(tuple((x + 1) % m for x in range(m)))
    multiplier = Permutation(tuple(spec.r * x % m for x in range(m)))
    group = generated_by(m, [translation, multiplier])
    return Metacyclic(
        spec=spec,
        group=group,
        translation=translation,
        multiplier=multiplier,
        cyclic_part=generated_by(m, [translation]),
        complement=generated_by(m, [multiplier]),
    )


@dataclass(frozen=True)
class DirectProduct:
    """F = X × Y realized on the disjoint union of the factors' points."""

    x: PermGroup
    y: PermGroup
    group: PermGroup

    @property
    def degree(self) -> int:
        return self.group.degree

    def embed_x(self, p: Permutation) -> Permutation:
        dx = self.x.degree
        return Permutation._raw(p.images + tuple(range(dx, dx + self.y.degree)))

    def embed_y(self, p: Permutation) -> Permutation:
        dx = self.x.degree
        return Permutation._raw(tuple(range(dx)) + tuple(i + dx for i in p.images))

    def pair(self, px: Permutation, py: Permutation) -> Permutation:
        dx = self.x.degree
        return Permutation._raw(px.images + tuple(i + dx for i in py.images))

    def embed_x_group(self, S: PermGroup) -> PermGroup:
        return PermGroup(self.degree, [self.embed_x(g) for g in S.generators])

    def embed_y_group(self, S: PermGroup) -> PermGroup:
        return PermGroup(self.degree, [self.embed_y(g) for g in S.generators])

    def project_x(self, p: Permutation) -> Permutation:
        dx = self.x.degree
        block = p.images[:dx]
        if sorted(block) != list(range(dx)):
            raise NotASubgroup("element does not preserve the X block")
        return Permutation._raw(tuple(block))

    def project_y(self, p: Permutation) -> Permutation:
        dx = self.x.degree
        block = tuple(i - dx for i in p.images[dx:])
        if sorted(block) != list(range(self.y.degree)):
            raise NotASubgroup("element does not preserve the Y block")
        return Permutation._raw(block)

    def project(self, p: Permutation, side: str) -> Permutation:
        return self.project_x(p) if side == "X" else self.project_y(p)

    def side_group(self, side: str) -> PermGroup:
        if side not in ("X", "Y"):
            raise ValueError(f"side must be 'X' or 'Y', got {side!r}")
        return self.x if side == "X" else self.y


def direct_product(X: PermGroup, Y: PermGroup) -> DirectProduct:
    dx, dy = X.degree, Y.degree
    gens = [Permutation._raw(g.images + tuple(range(dx, dx + dy))) for g in X.generators]
    gens += [Permutation._raw(tuple(range(dx)) + tuple(i + dx for i in g.images)) for g in Y.generators]
    return DirectProduct(x=X, y=Y, group=PermGroup(dx + dy, gens))


def projection_of_subgroup(dp: DirectProduct, S: PermGroup, side: str) -> PermGroup:
    """S_X (or S_Y): the component-extraction image of S ≤ F in a factor."""
    if S.degree != dp.degree or not all(g in dp.group for g in S.generators):
        raise NotASubgroup("S is not contained in the ambient product")
    return PermGroup(dp.side_group(side).degree, [dp.project(g, side) for g in S.generators])


def kernel_intersections(dp: DirectProduct, G: PermGroup) -> tuple[PermGroup, PermGroup]:
    """(K1, K2): elements of G acting trivially on the Y (resp. X) points.

    K1 is the kernel of G → Y-component, K2 of G → X-component; both are
    normal in G and intersect trivially.
    """
    dx = dp.x.degree
    identity_y = tuple(range(dx, dp.degree))
    identity_x = tuple(range(dx))
    k1, k2 = [], []
    for g in G.elements():
        if g.images[dx:] == identity_y:
            k1.append(g)
        if g.images[:dx] == identity_x:
            k2.append(g)
    return from_elements(dp.degree, k1), from_elements(dp.degree, k2)


def intersection(A: PermGroup, B: PermGroup) -> PermGroup:
    if A.degree != B.degree:
        raise DegreeMismatch("intersecting groups of different degree")
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    return from_elements(A.degree, [g for g in small.elements() if g in big])


def normal_closure(ambient: PermGroup, S: PermGroup) -> PermGroup:
    """Smallest normal subgroup of `ambient` containing S."""
    if not ambient.contains_subgroup(S):
        raise NotASubgroup("S is not contained in the ambient group")
    from .groups import StabilizerChain

    conjugators = list(ambient.generators) + [g.inverse() for g in ambient.generators]
    chain = StabilizerChain(ambient.degree)
    gens: list[Permutation] = []
    queue = list(S.generators)
    while queue:
        s = queue.pop(0)
        if chain.contains(s):
            continue
        chain.extend(s)
        gens.append(s)
        queue.extend(s.conjugated_by(g) for g in conjugators)
    closed = PermGroup(ambient.degree, gens)
    closed._chain = chain
    return closed


def commutator_subgroup(A: PermGroup, B: PermGroup, ambient: PermGroup) -> PermGroup:
    """[A, B]: normal closure in ⟨A, B⟩ of all a⁻¹·aᵇ over the generators."""
    if not (ambient.contains_subgroup(A) and ambient.contains_subgroup(B)):
        raise NotASubgroup("A and B must lie in the ambient group")
    joint = PermGroup(ambient.degree, list(A.generators) + list(B.generators))
    seeds = [a.inverse() * a.conjugated_by(b) for a in A.generators for b in B.generators]
    return normal_closure(joint, PermGroup(ambient.degree, seeds))


def centralizer_in(A: PermGroup, B: PermGroup) -> PermGroup:
    """C_A(B) = {a ∈ A : aᵇ = a for every generator b of B}."""
    if A.degree != B.degree:
        raise DegreeMismatch("groups of different degree")
    fixed = [a for a in A.elements() if all(a.conjugated_by(b) == a for b in B.generators)]
    return from_elements(A.degree, fixed)


def product_order(A: PermGroup, B: PermGroup) -> int:
    """Size of the set product A·B (a subgroup or not): |A||B| / |A∩B|."""
    return A.order() * B.order() // intersection(A, B).order()


def conjugate_union_size(met: Metacyclic) -> int:
    """Number of elements in the union of all conjugates of the complement."""
    union: set[Permutation] = set()
    for a in met.cyclic_part.elements():
        union.update(b.conjugated_by(a) for b in met.complement.elements())
    return len(union)

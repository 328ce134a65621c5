"""Structural queries: Sylow subgroups, normal subgroups, lattices, isomorphism.

Everything here is exact and deterministic.  Costs are bounded by the caps in
`limits`; the algorithms are chosen for auditability at desk scale, not for
asymptotics.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass

from . import numth
from .construct import centralizer_in, commutator_subgroup, intersection, normal_closure
from .errors import CapExceeded, InternalCheckError, NotASubgroup
from .groups import PermGroup, StabilizerChain, from_elements
from .homs import GroupHom, quotient
from .limits import LIMITS
from .perms import Permutation


# ---------------------------------------------------------------------------
# cached per-group basics


def _cached(G: PermGroup, key: str, build):
    value = G._cache.get(key)
    if value is None:
        value = build()
        G._cache[key] = value
    return value


def element_orders(G: PermGroup) -> dict[Permutation, int]:
    return _cached(G, "element_orders", lambda: {g: g.order() for g in G.elements()})


def order_histogram(G: PermGroup) -> tuple[tuple[int, int], ...]:
    def build():
        counts = Counter(element_orders(G).values())
        return tuple(sorted(counts.items()))

    return _cached(G, "order_histogram", build)


def conjugacy_classes(G: PermGroup) -> list[tuple[Permutation, ...]]:
    """Conjugacy classes as sorted tuples, ordered by their least member."""

    def build():
        remaining = set(G.elements())
        gens = list(G.generators) + [g.inverse() for g in G.generators]
        classes = []
        while remaining:
            seed = min(remaining)
            cls = {seed}
            queue = [seed]
            while queue:
                x = queue.pop(0)
                for g in gens:
                    y = x.conjugated_by(g)
                    if y not in cls:
                        cls.add(y)
                        queue.append(y)
            remaining -= cls
            classes.append(tuple(sorted(cls)))
        return classes

    return _cached(G, "conjugacy_classes", build)


def center(G: PermGroup) -> PermGroup:
    return _cached(G, "center", lambda: centralizer_in(G, G))


def derived_subgroup(G: PermGroup) -> PermGroup:
    return _cached(G, "derived", lambda: commutator_subgroup(G, G, G))


def is_solvable(G: PermGroup) -> bool:
    def build():
        current = G
        while current.order() > 1:
            nxt = derived_subgroup(current)
            if nxt.order() == current.order():
                return False
            current = nxt
        return True

    return _cached(G, "solvable", build)


# ---------------------------------------------------------------------------
# Sylow subgroups and normalizers


def is_p_group(G: PermGroup, p: int) -> bool:
    """Whether |G| is a power of p (the trivial group counts)."""
    n = G.order()
    while n % p == 0:
        n //= p
    return n == 1


def conjugation_orbit(G: PermGroup, S: PermGroup) -> set[frozenset[Permutation]]:
    """All G-conjugates of S, as element sets."""
    base = S.element_set()
    seen = {base}
    queue = [base]
    gens = G.generators
    while queue:
        current = queue.pop(0)
        for g in gens:
            moved = frozenset(x.conjugated_by(g) for x in current)
            if moved not in seen:
                seen.add(moved)
                queue.append(moved)
    return seen


def conjugation_orbit_and_normalizer(
    G: PermGroup, S: PermGroup
) -> tuple[set[frozenset[Permutation]], PermGroup]:
    """The conjugates of S in G together with N_G(S).

    Orbit-stabilizer: a breadth-first orbit walk with a transversal yields
    Schreier generators for the stabilizer, which here is the normalizer.
    The expected order |G| / |orbit| tells us when to stop extending.
    """
    base = S.element_set()
    transversal: dict[frozenset[Permutation], Permutation] = {base: G.identity}
    queue = [base]
    schreier: list[Permutation] = []
    gens = G.generators
    while queue:
        current = queue.pop(0)
        t = transversal[current]
        for g in gens:
            moved = frozenset(x.conjugated_by(g) for x in current)
            known = transversal.get(moved)
            if known is None:
                transversal[moved] = t * g
                queue.append(moved)
            else:
                schreier.append(t * g * known.inverse())
    expected = G.order() // len(transversal)
    chain = StabilizerChain(G.degree)
    norm_gens: list[Permutation] = []
    for cand in list(S.generators) + schreier:
        if chain.order() >= expected:
            break
        if chain.extend(cand):
            norm_gens.append(cand)
    if chain.order() != expected:
        raise InternalCheckError("normalizer order mismatch in orbit-stabilizer")
    normalizer = PermGroup(G.degree, norm_gens)
    normalizer._chain = chain
    return set(transversal), normalizer


def normalizer_in(G: PermGroup, S: PermGroup) -> PermGroup:
    """N_G(S) = {g ∈ G : S^g = S}."""
    if not G.contains_subgroup(S):
        raise NotASubgroup("S must be a subgroup of G")
    if G.is_abelian():
        return G
    _, normalizer = conjugation_orbit_and_normalizer(G, S)
    return normalizer


def sylow(G: PermGroup, r: int) -> PermGroup:
    """A Sylow r-subgroup, computed deterministically.

    Start from the least r-element of maximal order and climb: while the
    current r-subgroup P is not full, its normalizer quotient N_G(P)/P has
    order divisible by r, so an r-element of the quotient pulls back to a
    proper extension of P.
    """
    full = numth.p_part(G.order(), r)
    if full == 1:
        return PermGroup(G.degree, [])

    orders = element_orders(G)
    best = max(o for o in orders.values() if _is_power_of(o, r))
    seed = min(g for g, o in orders.items() if o == best)
    P = PermGroup(G.degree, [seed])

    while P.order() < full:
        N = normalizer_in(G, P)
        Q, pi = quotient(N, P)
        q_orders = {z: z.order() for z in Q.elements()}
        z = min(z for z, o in q_orders.items() if o == r)
        h = pi.preimage_rep(z)
        m = h.order()
        while m % r == 0:
            m //= r
        g = h**m  # r-element with the same nontrivial coset image
        P = PermGroup(G.degree, list(P.generators) + [g])
        if not _is_power_of(P.order(), r):
            raise InternalCheckError("Sylow climb left the r-subgroup family")
    return P


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# normal subgroups and chains


def normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """All normal subgroups, sorted by order (then by element set).

    Every normal subgroup is a union of conjugacy classes, hence the join of
    the normal closures of the classes it contains; so the closures of single
    classes generate the whole lattice of normal subgroups under joins.
    """

    def build():
        degree = G.degree
        trivial = PermGroup(degree, [])
        found: dict[frozenset, PermGroup] = {trivial.element_set(): trivial}
        for cls in conjugacy_classes(G):
            closure = normal_closure(G, PermGroup(degree, [cls[0]]))
            found.setdefault(closure.element_set(), closure)
        frontier = list(found)
        while frontier:
            fresh = []
            for a in frontier:
                for b, b_group in list(found.items()):
                    # comparable pairs join to the bigger one, already present
                    if a <= b or b <= a:
                        continue
                    joined = PermGroup(degree, list(found[a].generators) + list(b_group.generators))
                    key = joined.element_set()
                    if key not in found:
                        found[key] = joined
                        fresh.append(key)
            frontier = fresh
        return sorted(found.values(), key=lambda N: (N.order(), [p.images for p in N.elements()]))

    return _cached(G, "normal_subgroups", build)


def is_chain(subgroups: list[PermGroup]) -> bool:
    """Whether the list is totally ordered by inclusion."""
    ordered = sorted(subgroups, key=lambda S: S.order())
    for small, big in zip(ordered, ordered[1:]):
        if not big.contains_subgroup(small):
            return False
        if small.order() == big.order() and not small.contains_subgroup(big):
            return False
    return True


# ---------------------------------------------------------------------------
# subgroup enumeration up to conjugacy


def perfect_subgroups(G: PermGroup) -> list[PermGroup]:
    """Nontrivial perfect subgroups up to conjugacy.

    Empty for solvable G.  Otherwise found by closing pairs (class
    representative, element): every perfect group small enough to fit under
    the caps is 2-generated, so pair closures reach them all.
    """
    if is_solvable(G):
        return []
    reps = [cls[0] for cls in conjugacy_classes(G) if not cls[0].is_identity()]
    seen: set[frozenset[Permutation]] = set()
    out: list[PermGroup] = []
    for x in reps:
        for y in G.elements():
            if y.is_identity():
                continue
            S = PermGroup(G.degree, [x, y])
            key = S.element_set()
            if key in seen:
                continue
            seen |= conjugation_orbit(G, S)
            if derived_subgroup(S).order() == S.order() > 1:
                out.append(S)
    out.sort(key=lambda S: (S.order(), [p.images for p in S.elements()]))
    return out


def iter_subgroup_classes(G: PermGroup, cap: int | None = None):
    """Yield one representative per conjugacy class of subgroups, by order.

    Layered cyclic extension: pop the smallest undone class U, extend it by
    elements mapping onto the prime-order cyclic subgroups of N_G(U)/U,
    deduplicate whole conjugation orbits.  Perfect subgroups cannot arise as
    such extensions, so they are seeded explicitly; every subgroup then sits
    above its own perfect residual through prime-index normal steps and is
    reached.
    """
    limit = cap if cap is not None else LIMITS.max_subgroup_order
    if G.order() > limit:
        raise CapExceeded(f"order {G.order()} exceeds subgroup enumeration cap {limit}")

    seen: set[frozenset[Permutation]] = set()
    heap: list[tuple] = []
    counter = 0

    def push(S: PermGroup, size: int):
        nonlocal counter
        key = S.element_set()
        if key in seen:
            return
        seen.update(conjugation_orbit(G, S))
        heapq.heappush(heap, ((size, [p.images for p in S.elements()]), counter, S))
        counter += 1

    push(PermGroup(G.degree, []), 1)
    for S in perfect_subgroups(G):
        push(S, S.order())

    while heap:
        (size, _), _, U = heapq.heappop(heap)
        yield U
        if size == G.order():
            continue
        if G.is_abelian():
            N = G
        else:
            _, N = conjugation_orbit_and_normalizer(G, U)
        Q, pi = quotient(N, U)
        u_elems = U.elements()
        for z in _prime_order_reps(Q):
            g = pi.preimage_rep(z)
            r = z.order()
            # U ⊴ ⟨U, g⟩ with cyclic quotient of order r, so the extension is
            # exactly the union of the cosets U·g^i, no closure needed.
            v_elems = set(u_elems)
            power = g
            for _ in range(r - 1):
                v_elems.update(u * power for u in u_elems)
                power = power * g
            V = PermGroup(G.degree, list(U.generators) + [g])
            V._elements = tuple(sorted(v_elems))
            push(V, size * r)


def _prime_order_reps(Q: PermGroup) -> list[Permutation]:
    """One generator per prime-order cyclic subgroup of Q, up to Q-conjugacy."""
    picked: list[Permutation] = []
    covered: set[frozenset[Permutation]] = set()
    for cls in conjugacy_classes(Q):
        rep = cls[0]
        if not numth.is_prime(rep.order()):
            continue
        sub = frozenset(rep**k for k in range(rep.order()))
        if sub in covered:
            continue
        covered |= conjugation_orbit(Q, PermGroup(Q.degree, [rep]))
        picked.append(rep)
    return picked


def subgroups_up_to_conjugacy(G: PermGroup, order_filter=None, cap: int | None = None) -> list[PermGroup]:
    def build():
        return list(iter_subgroup_classes(G, cap))

    classes = _cached(G, "subgroup_classes", build) if cap is None else build()
    if order_filter is None:
        return list(classes)
    return [S for S in classes if order_filter(S.order())]


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: GroupHom | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def fingerprint(G: PermGroup):
    """Cheap isomorphism invariants: order, abelianness, order histogram,
    center order, derived-subgroup order."""

    def build():
        return (
            G.order(),
            G.is_abelian(),
            order_histogram(G),
            center(G).order(),
            derived_subgroup(G).order(),
        )

    return _cached(G, "fingerprint", build)


def _generating_sequence(G: PermGroup) -> list[Permutation]:
    """Deterministic short generating sequence: greedily add the least element
    of maximal order that enlarges the generated subgroup."""
    seq: list[Permutation] = []
    current = PermGroup(G.degree, [])
    by_order = sorted(element_orders(G).items(), key=lambda kv: (-kv[1], kv[0]))
    while current.order() < G.order():
        for g, _ in by_order:
            if g not in current:
                seq.append(g)
                current = PermGroup(G.degree, seq)
                break
        else:
            raise InternalCheckError("failed to generate the group from its elements")
    return seq


def is_isomorphic(G1: PermGroup, G2: PermGroup, cap: int | None = None) -> IsoResult:
    """Exact isomorphism test with an explicit witness.

    Fast rejection by fingerprint, then a backtracking search mapping a fixed
    generating sequence of G1 to order- and centralizer-compatible candidates
    in G2, validating partial maps by exact pair closure.
    """
    limit = cap if cap is not None else LIMITS.max_iso_order
    if G1.order() > limit or G2.order() > limit:
        raise CapExceeded(f"isomorphism test beyond cap {limit}")
    if fingerprint(G1) != fingerprint(G2):
        return IsoResult(False)

    seq = _generating_sequence(G1)
    profile1 = [_element_profile(G1, g) for g in seq]
    candidates = [
        sorted(g for g in G2.elements() if _element_profile(G2, g) == prof)
        for prof in profile1
    ]

    assignment: list[Permutation] = []

    def extend() -> dict | None:
        depth = len(assignment)
        if depth == len(seq):
            return _pair_closure(G1, G2, seq, assignment)
        for choice in candidates[depth]:
            assignment.append(choice)
            if _pair_closure(G1, G2, seq, assignment) is not None:
                result = extend()
                if result is not None:
                    return result
            assignment.pop()
        return None

    table = extend()
    if table is None:
        return IsoResult(False)
    witness = GroupHom(G1, G2, [table[g] for g in G1.generators])
    if not (witness.is_homomorphism() and witness.is_bijective()):
        raise InternalCheckError("isomorphism search produced an invalid witness")
    return IsoResult(True, witness)


def _element_profile(G: PermGroup, g: Permutation):
    key = "centralizer_sizes"
    sizes = G._cache.get(key)
    if sizes is None:
        elems = G.elements()
        sizes = {}
        for x in elems:
            sizes[x] = sum(1 for y in elems if x * y == y * x)
        G._cache[key] = sizes
    return (g.order(), sizes[g])


def _pair_closure(G1, G2, seq, assignment) -> dict | None:
    """Close the partial generator map; None when it is not an injective
    homomorphism on the subgroup generated so far."""
    table = {G1.identity: G2.identity}
    reverse = {G2.identity: G1.identity}
    queue = [G1.identity]
    pairs = list(zip(seq[: len(assignment)], assignment))
    while queue:
        g = queue.pop()
        img = table[g]
        for s, s_img in pairs:
            h = g * s
            h_img = img * s_img
            known = table.get(h)
            if known is None:
                if h_img in reverse:
                    return None
                table[h] = h_img
                reverse[h_img] = h
                queue.append(h)
            elif known != h_img:
                return None
    return table


# ---------------------------------------------------------------------------
# identities used throughout the reduction arguments


def frattini_holds(G: PermGroup, H: PermGroup, S: PermGroup) -> bool:
    """Whether G = H · N_G(S) as a set product."""
    N = normalizer_in(G, S)
    size = H.order() * N.order() // intersection(H, N).order()
    return size == G.order()

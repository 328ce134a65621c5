import pytest

from sectionkit import CapExceeded, PermGroup, Permutation, generated_by, orbit_partition
from sectionkit.catalog import cyclic, dihedral, symmetric
from sectionkit.groups import closure_order, from_elements


def perm(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


class TestOrderAndMembership:
    def test_symmetric_group_by_closure(self):
        # exhaustive closure is the independent oracle for the chain order
        G = generated_by(4, [perm(4, (0, 1)), perm(4, (0, 1, 2, 3))])
        assert closure_order(G) == 24
        assert G.order() == 24

    def test_trivial_group(self):
        G = PermGroup(5, [])
        assert G.order() == 1
        assert G.is_trivial()
        assert list(G.elements()) == [Permutation.identity(5)]

    def test_chain_matches_closure_on_catalog(self, catalog60):
        for name, G in catalog60:
            assert G.order() == closure_order(G), name

    def test_membership_agreement(self, small_groups):
        for name, G in small_groups:
            elems = set(G.elements())
            for x in list(elems)[:40]:
                assert x in G, name
            # a point-moving permutation outside the group
            outside = Permutation(tuple(range(1, G.degree)) + (0,)) if G.degree > 2 else None
            if outside is not None and outside not in elems:
                assert outside not in G

    def test_contains_examples(self):
        G = generated_by(3, [perm(3, (0, 1, 2))])
        assert perm(3, (0, 2, 1)) in G
        assert perm(3, (0, 1)) not in G
        assert Permutation.identity(3) in G

    def test_elements_cap(self):
        G = symmetric(5)
        with pytest.raises(CapExceeded):
            G.elements(cap=100)

    def test_elements_sorted_deterministically(self):
        G = dihedral(8)
        elems = G.elements()
        assert list(elems) == sorted(elems)

    def test_d18_has_18_elements(self, d18):
        assert len(d18.elements()) == 18

    def test_from_elements_small_generating_set(self):
        C6 = cyclic(6)
        rebuilt = from_elements(6, C6.elements())
        assert rebuilt.same_elements(C6)
        assert len(rebuilt.generators) <= 2


class TestSubgroupPredicates:
    def test_contains_subgroup(self):
        S4 = symmetric(4)
        A = generated_by(4, [perm(4, (0, 1, 2))])
        assert S4.contains_subgroup(A)
        assert not A.contains_subgroup(S4)

    def test_is_normal_in(self):
        S3 = symmetric(3)
        C3 = generated_by(3, [perm(3, (0, 1, 2))])
        C2 = generated_by(3, [perm(3, (0, 1))])
        assert C3.is_normal_in(S3)
        assert not C2.is_normal_in(S3)

    def test_conjugated_by(self):
        S3 = symmetric(3)
        C2 = generated_by(3, [perm(3, (0, 1))])
        moved = C2.conjugated_by(perm(3, (0, 1, 2)))
        assert S3.contains_subgroup(moved)
        assert not moved.same_elements(C2)


class TestOrbits:
    def test_trivial_group_singletons(self):
        G = PermGroup(4, [])
        assert G.orbits() == ((0,), (1,), (2,), (3,))

    def test_three_cycle_single_orbit(self):
        G = generated_by(3, [perm(3, (0, 1, 2))])
        assert G.orbit(0) == (0, 1, 2)

    def test_orbit_sizes_divide_group_order(self, small_groups):
        for name, G in small_groups:
            for orbit in G.orbits():
                assert G.order() % len(orbit) == 0, name

    def test_klein_in_d8_conjugation_orbits(self):
        # brute-force oracle: conjugate each order-2 subgroup of the Klein
        # subgroup of D8 by each element of an order-2 complement
        D8 = dihedral(8)
        r2 = perm(4, (0, 2), (1, 3))
        s = Permutation(tuple((-i) % 4 for i in range(4)))
        subs = [
            frozenset({Permutation.identity(4), r2}),
            frozenset({Permutation.identity(4), s}),
            frozenset({Permutation.identity(4), r2 * s}),
        ]
        Q = generated_by(4, [s])

        def conj_action(sub, g):
            return frozenset(x.conjugated_by(g) for x in sub)

        parts = orbit_partition(Q, subs, conj_action)
        brute = set()
        for sub in subs:
            orbit = frozenset(conj_action(sub, g) for g in Q.elements())
            brute.add(orbit)
        assert {frozenset(p) for p in parts} == brute
        assert sorted(len(p) for p in parts) == [1, 1, 1]

    def test_orbit_partition_rejects_non_action(self):
        G = generated_by(3, [perm(3, (0, 1, 2))])
        with pytest.raises(ValueError):
            orbit_partition(G, [0, 1, 2], lambda obj, g: (obj + 1) % 3)

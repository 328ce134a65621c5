import pytest

from sectionkit import (
    GroupHom,
    NotNormal,
    PermGroup,
    Permutation,
    is_isomorphic,
    quotient,
    remak_embed,
)
from sectionkit.catalog import cyclic, dihedral, symmetric
from sectionkit.homs import hom_through


def perm(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


class TestGroupHom:
    def test_valid_hom_table(self):
        C6 = cyclic(6)
        C3 = cyclic(3)
        h = GroupHom(C6, C3, [C3.generators[0]])
        assert h.is_homomorphism()
        assert h.kernel().order() == 2
        assert h.image().order() == 3

    def test_invalid_assignment_detected(self):
        C4 = cyclic(4)
        C3 = cyclic(3)
        h = GroupHom(C4, C3, [C3.generators[0]])  # no hom C4 -> C3 with this image
        assert not h.is_homomorphism()

    def test_evaluation_and_fibers(self):
        C6 = cyclic(6)
        C2 = cyclic(2)
        g = C6.generators[0]
        h = GroupHom(C6, C2, [C2.generators[0]])
        assert h(g * g).is_identity()
        assert h.preimage_rep(C2.generators[0]) == min(x for x in C6.elements() if not h(x).is_identity())

    def test_preimage_subgroup(self):
        C6 = cyclic(6)
        C2 = cyclic(2)
        h = GroupHom(C6, C2, [C2.generators[0]])
        pre = h.preimage_subgroup(C2)
        assert pre.order() == 6
        pre_triv = h.preimage_subgroup(PermGroup(2, []))
        assert pre_triv.order() == 3

    def test_inverse_of_bijective(self):
        S3 = symmetric(3)
        conj = S3.generators[0]
        auto = GroupHom(S3, S3, [g.conjugated_by(conj) for g in S3.generators])
        back = auto.inverse()
        for g in S3.elements():
            assert back(auto(g)) == g


class TestQuotient:
    def test_index_two(self, met18):
        Q, pi = quotient(met18.group, met18.cyclic_part)
        assert Q.order() == 2
        assert pi.kernel().same_elements(met18.cyclic_part)

    def test_trivial_kernel(self, met18):
        Q, pi = quotient(met18.group, PermGroup(9, []))
        assert Q.order() == 18
        assert is_isomorphic(Q, met18.group).isomorphic

    def test_order_three_kernel_gives_s3(self, met18):
        C3 = PermGroup(9, [met18.translation ** 3])
        Q, pi = quotient(met18.group, C3)
        assert Q.order() == 6
        assert is_isomorphic(Q, symmetric(3)).isomorphic

    def test_order_product(self, small_groups):
        from sectionkit import normal_subgroups

        for name, G in small_groups:
            if G.order() > 30:
                continue
            for N in normal_subgroups(G):
                Q, pi = quotient(G, N)
                assert Q.order() * N.order() == G.order(), name
                assert pi.kernel().same_elements(N), name
                assert pi.is_surjective(), name

    def test_rejects_non_normal(self):
        S3 = symmetric(3)
        C2 = PermGroup(3, [perm(3, (0, 1))])
        with pytest.raises(NotNormal):
            quotient(S3, C2)

    def test_quotient_relabeling_is_deterministic(self, met18):
        C3 = PermGroup(9, [met18.translation ** 3])
        q1, _ = quotient(met18.group, C3)
        q2, _ = quotient(met18.group, C3)
        assert q1.generators == q2.generators


class TestRemak:
    def test_coprime_crt_case(self):
        C6 = cyclic(6)
        g = C6.generators[0]
        res = remak_embed(C6, PermGroup(6, [g**3]), PermGroup(6, [g**2]))
        assert res.product.group.order() == 6
        assert res.embedding.is_bijective()

    def test_klein_subdirect(self):
        from sectionkit import direct_product

        V = direct_product(cyclic(2), cyclic(2)).group
        a, b = V.generators
        res = remak_embed(V, PermGroup(4, [a]), PermGroup(4, [b]))
        assert res.embedding.is_injective()
        assert res.embedding.image().order() == 4

    def test_repeated_factor_collapses(self, met18):
        res = remak_embed(met18.group, met18.cyclic_part, met18.cyclic_part)
        assert res.embedding.source.order() == 2
        assert res.embedding.image().order() == 2
        assert res.embedding.is_injective()

    def test_injectivity_iff_trivial_intersection(self, small_groups):
        from sectionkit import intersection, normal_subgroups

        checked = 0
        for name, G in small_groups:
            if G.order() > 24:
                continue
            normals = normal_subgroups(G)
            for N1 in normals:
                for N2 in normals:
                    res = remak_embed(G, N1, N2)
                    trivial_meet = intersection(N1, N2).is_trivial()
                    assert res.embedding.is_injective() == trivial_meet, name
                    checked += 1
        assert checked >= 30


class TestHomThrough:
    def test_factoring(self):
        C6 = cyclic(6)
        g = C6.generators[0]
        pi = quotient(C6, PermGroup(6, [g**3])).projection
        psi = GroupHom(C6, cyclic(3), [cyclic(3).generators[0]])
        induced = hom_through(pi, psi)
        assert induced.is_homomorphism()
        for x in C6.elements():
            assert induced(pi(x)) == psi(x)

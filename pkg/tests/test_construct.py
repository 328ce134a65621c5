import pytest

from sectionkit import (
    InvalidSpec,
    MetacyclicSpec,
    NotASubgroup,
    PermGroup,
    Permutation,
    centralizer_in,
    commutator_subgroup,
    construct_metacyclic,
    direct_product,
    intersection,
    is_isomorphic,
    kernel_intersections,
    normal_closure,
    projection_of_subgroup,
)
from sectionkit.catalog import cyclic, symmetric
from sectionkit.construct import conjugate_union_size, product_order


def perm(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


class TestMetacyclicSpec:
    def test_valid(self):
        spec = MetacyclicSpec(3, 2, 2, 8)
        assert spec.order == 18
        assert spec.modulus == 9

    def test_trivial_action_rejected(self):
        with pytest.raises(InvalidSpec):
            MetacyclicSpec(3, 2, 2, 1)

    def test_wrong_exponent_rejected(self):
        with pytest.raises(InvalidSpec):
            MetacyclicSpec(3, 2, 2, 5)

    def test_non_prime_rejected(self):
        with pytest.raises(InvalidSpec):
            MetacyclicSpec(4, 1, 3, 3)
        with pytest.raises(InvalidSpec):
            MetacyclicSpec(3, 1, 3, 2)

    def test_no_valid_exponent_for_p2(self):
        # q = 3 never divides 2^(n-1), so no action exists on a cyclic 2-group
        with pytest.raises(InvalidSpec):
            MetacyclicSpec.canonical(2, 2, 3)

    def test_canonical_picks_least(self):
        assert MetacyclicSpec.canonical(3, 2, 2).r == 8
        assert MetacyclicSpec.canonical(7, 1, 3).r == 2

    def test_all_specs_bounded(self):
        specs = MetacyclicSpec.all_specs(54)
        assert all(s.order <= 54 for s in specs)
        assert MetacyclicSpec(3, 2, 2, 8) in specs
        assert MetacyclicSpec(7, 1, 3, 2) in specs
        assert MetacyclicSpec(7, 1, 3, 4) in specs


class TestConstructMetacyclic:
    def test_order_18_dihedral(self, met18):
        assert met18.group.order() == 18
        assert met18.cyclic_part.order() == 9
        assert met18.complement.order() == 2
        assert met18.cyclic_part.is_normal_in(met18.group)

    def test_s3_case(self):
        met = construct_metacyclic(MetacyclicSpec(3, 1, 2, 2))
        assert is_isomorphic(met.group, symmetric(3)).isomorphic

    def test_faithful(self, met18):
        assert met18.translation.order() == 9
        assert met18.multiplier.order() == 2
        assert not (met18.translation * met18.multiplier).is_identity()

    def test_same_order_exponents_give_isomorphic_groups(self):
        # for each (p, n, q) all valid action exponents yield the same group
        for p, n, q in [(7, 1, 3), (5, 1, 2), (13, 1, 3), (3, 2, 2)]:
            specs = [s for s in MetacyclicSpec.all_specs(200) if (s.p, s.n, s.q) == (p, n, q)]
            assert specs
            base = construct_metacyclic(specs[0]).group
            for other in specs[1:]:
                assert is_isomorphic(base, construct_metacyclic(other).group).isomorphic


class TestDirectProduct:
    def test_klein(self):
        dp = direct_product(cyclic(2), cyclic(2))
        assert dp.group.order() == 4
        assert all(g.order() <= 2 for g in dp.group.elements())

    def test_d18_squared(self, d18):
        dp = direct_product(d18, d18)
        assert dp.group.order() == 324
        assert dp.degree == 18

    def test_trivial_factor(self, d18):
        dp = direct_product(PermGroup(1, []), d18)
        assert dp.group.order() == 18

    def test_projection_embedding_identities(self, d18):
        dp = direct_product(d18, cyclic(3))
        for g in d18.generators:
            assert dp.project_x(dp.embed_x(g)) == g
            assert dp.project_y(dp.embed_x(g)).is_identity()

    def test_embed_group_orders(self, d18):
        dp = direct_product(d18, cyclic(3))
        assert dp.embed_x_group(d18).order() == 18
        assert dp.embed_y_group(cyclic(3)).order() == 3


class TestSubgroupProjection:
    def test_diagonal_projects_onto_factor(self, d18):
        dp = direct_product(d18, d18)
        diag = PermGroup(dp.degree, [dp.pair(g, g) for g in d18.generators])
        assert projection_of_subgroup(dp, diag, "X").order() == 18
        assert projection_of_subgroup(dp, diag, "Y").order() == 18

    def test_embedded_factor_has_trivial_other_projection(self, d18):
        dp = direct_product(d18, d18)
        gx = dp.embed_x_group(d18)
        assert projection_of_subgroup(dp, gx, "Y").is_trivial()

    def test_full_product_projects_onto_factor(self, d18):
        dp = direct_product(d18, d18)
        assert projection_of_subgroup(dp, dp.group, "X").order() == 18

    def test_rejects_non_subgroup(self, d18):
        dp = direct_product(d18, d18)
        stranger = PermGroup(dp.degree, [perm(dp.degree, tuple(range(36)))])
        with pytest.raises(NotASubgroup):
            projection_of_subgroup(dp, stranger, "X")


class TestKernelIntersections:
    def test_diagonal_has_trivial_kernels(self, d18):
        dp = direct_product(d18, d18)
        diag = PermGroup(dp.degree, [dp.pair(g, g) for g in d18.generators])
        k1, k2 = kernel_intersections(dp, diag)
        assert k1.is_trivial() and k2.is_trivial()

    def test_full_product(self, d18):
        dp = direct_product(d18, cyclic(2))
        k1, k2 = kernel_intersections(dp, dp.group)
        assert k1.order() == 18
        assert k2.order() == 2

    def test_embedded_factor(self, d18):
        dp = direct_product(d18, d18)
        gx = dp.embed_x_group(d18)
        k1, k2 = kernel_intersections(dp, gx)
        assert k1.order() == 18
        assert k2.is_trivial()


class TestCommutatorsAndCentralizers:
    def test_d18_commutator_is_cyclic_part(self, met18):
        comm = commutator_subgroup(met18.cyclic_part, met18.complement, met18.group)
        assert comm.same_elements(met18.cyclic_part)

    def test_commuting_groups(self):
        dp = direct_product(cyclic(3), cyclic(5))
        A = dp.embed_x_group(cyclic(3))
        B = dp.embed_y_group(cyclic(5))
        assert commutator_subgroup(A, B, dp.group).is_trivial()

    def test_trivial_partner(self, met18):
        triv = PermGroup(9, [])
        assert commutator_subgroup(met18.cyclic_part, triv, met18.group).is_trivial()

    def test_d18_centralizer_trivial(self, met18):
        assert centralizer_in(met18.cyclic_part, met18.complement).is_trivial()

    def test_centralizer_of_trivial_is_whole(self, met18):
        triv = PermGroup(9, [])
        cz = centralizer_in(met18.cyclic_part, triv)
        assert cz.same_elements(met18.cyclic_part)

    def test_abelian_self_centralizer(self):
        C9 = cyclic(9)
        assert centralizer_in(C9, C9).same_elements(C9)


class TestNormalClosure:
    def test_complement_closure_is_whole_group(self, met18):
        closure = normal_closure(met18.group, met18.complement)
        assert closure.order() == 18

    def test_normal_subgroup_is_fixed(self, met18):
        assert normal_closure(met18.group, met18.cyclic_part).same_elements(met18.cyclic_part)

    def test_trivial(self, met18):
        assert normal_closure(met18.group, PermGroup(9, [])).is_trivial()


class TestCountingInvariants:
    @pytest.mark.parametrize("spec", MetacyclicSpec.all_specs(100), ids=str)
    def test_conjugate_union_count(self, spec):
        met = construct_metacyclic(spec)
        expected = 1 + spec.modulus * (spec.q - 1)
        assert conjugate_union_size(met) == expected
        assert 2 * expected > spec.order

    def test_product_order(self, met18):
        assert product_order(met18.cyclic_part, met18.complement) == 18
        assert product_order(met18.cyclic_part, met18.cyclic_part) == 9


class TestIntersection:
    def test_disjoint_primes(self):
        C6 = cyclic(6)
        g = C6.generators[0]
        A = PermGroup(6, [g**2])
        B = PermGroup(6, [g**3])
        assert intersection(A, B).is_trivial()

    def test_nested(self, met18):
        a = met18.translation
        C3 = PermGroup(9, [a**3])
        assert intersection(met18.cyclic_part, C3).same_elements(C3)

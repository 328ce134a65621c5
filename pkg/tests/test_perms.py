import pytest
from hypothesis import given, strategies as st

from sectionkit import DegreeMismatch, InvalidPermutation, Permutation, compose, inverse


def perm(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


class TestComposition:
    def test_apply_left_first_canary(self):
        # (0 1) then (1 2): 0->1->2, 1->0->0, 2->2->1, i.e. (0 2 1).
        p = perm(3, (0, 1))
        q = perm(3, (1, 2))
        assert compose(p, q) == perm(3, (0, 2, 1))
        assert (p * q).images == (2, 0, 1)

    def test_identity_neutral(self):
        q = perm(4, (0, 2, 3))
        e = Permutation.identity(4)
        assert e * q == q
        assert q * e == q

    def test_involution_squares_to_identity(self):
        p = perm(3, (0, 1))
        assert (p * p).is_identity()

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            perm(3, (0, 1)) * perm(4, (0, 1))


class TestInverse:
    def test_three_cycle(self):
        assert inverse(perm(3, (0, 1, 2))) == perm(3, (0, 2, 1))

    def test_identity(self):
        e = Permutation.identity(5)
        assert e.inverse() == e

    def test_involution_is_self_inverse(self):
        p = perm(6, (0, 3), (1, 4))
        assert p.inverse() == p

    def test_inverse_cancels(self):
        p = perm(7, (0, 4, 2), (1, 6))
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()


class TestBasics:
    def test_validation(self):
        with pytest.raises(InvalidPermutation):
            Permutation((0, 0, 1))
        with pytest.raises(InvalidPermutation):
            Permutation((1, 2, 3))

    def test_from_cycles_rejects_repeats(self):
        with pytest.raises(InvalidPermutation):
            perm(3, (0, 1), (1, 2))
        with pytest.raises(InvalidPermutation):
            perm(3, (0, 5))

    def test_order(self):
        assert Permutation.identity(4).order() == 1
        assert perm(6, (0, 1), (2, 3, 4)).order() == 6

    def test_cycle_string(self):
        assert Permutation.identity(3).cycle_string() == "()"
        assert perm(5, (0, 1, 2), (3, 4)).cycle_string() == "(0 1 2)(3 4)"

    def test_conjugation_convention(self):
        # a^b sends b(w) to b(a(w)).
        a = perm(4, (0, 1, 2))
        b = perm(4, (2, 3))
        assert a.conjugated_by(b) == b.inverse() * a * b

    def test_power(self):
        p = perm(5, (0, 1, 2, 3, 4))
        assert p**5 == Permutation.identity(5)
        assert p**-2 == (p.inverse()) ** 2

    def test_total_order(self):
        ps = sorted([perm(3, (0, 1, 2)), Permutation.identity(3), perm(3, (0, 1))])
        assert ps[0].is_identity()
        assert ps == sorted(ps)


small_perms = st.integers(1, 6).flatmap(
    lambda d: st.lists(st.integers(0, d - 1), min_size=d, max_size=d, unique=True).map(
        Permutation
    )
)


@given(st.integers(2, 6), st.data())
def test_group_axioms_on_random_words(degree, data):
    draw = lambda: Permutation(data.draw(st.permutations(range(degree))))
    g, h, k = draw(), draw(), draw()
    assert (g * h) * k == g * (h * k)
    assert (g * g.inverse()).is_identity()
    assert (g * h).inverse() == h.inverse() * g.inverse()


@given(st.integers(2, 6), st.data())
def test_inverse_is_two_sided(degree, data):
    g = Permutation(data.draw(st.permutations(range(degree))))
    assert g.inverse().inverse() == g
    assert g.conjugated_by(g) == g

import pytest

from sectionkit import CapExceeded, is_isomorphic
from sectionkit.catalog import (
    abelian,
    alternating,
    catalog_group,
    cyclic,
    dihedral,
    generate_catalog,
    metacyclic_group,
    quaternion,
    symmetric,
)


class TestConstructions:
    def test_cyclic(self):
        assert cyclic(1).order() == 1
        assert cyclic(12).order() == 12

    def test_abelian(self):
        assert abelian([2, 9]).order() == 18
        assert abelian([2, 9]).is_abelian()
        assert is_isomorphic(abelian([2, 9]), cyclic(18)).isomorphic

    def test_dihedral(self):
        assert dihedral(18).order() == 18
        assert not dihedral(8).is_abelian()
        with pytest.raises(ValueError):
            dihedral(7)

    def test_symmetric_alternating(self):
        assert symmetric(4).order() == 24
        assert alternating(4).order() == 12
        assert alternating(5).order() == 60

    def test_quaternion(self):
        Q8 = quaternion()
        assert Q8.order() == 8
        assert not Q8.is_abelian()
        # one involution only, six elements of order 4
        orders = sorted(g.order() for g in Q8.elements())
        assert orders == [1, 2, 4, 4, 4, 4, 4, 4]

    def test_metacyclic_group(self):
        assert metacyclic_group(3, 2, 2).order() == 18
        assert metacyclic_group(7, 1, 3).order() == 21


class TestCatalog:
    def test_small(self):
        names = [e.name for e in generate_catalog(18)]
        for expected in ("C18", "D18", "C3xS3", "C2xC2", "Q8", "A4", "S3"):
            assert expected in names

    def test_max_order_one(self):
        assert [e.name for e in generate_catalog(1)] == ["C1"]

    def test_orders_respect_bound(self):
        for name, G in generate_catalog(40):
            assert G.order() <= 40, name

    def test_includes_a5_at_60(self):
        assert any(e.name == "A5" for e in generate_catalog(60))

    def test_names_stable(self):
        first = [e.name for e in generate_catalog(36)]
        second = [e.name for e in generate_catalog(36)]
        assert first == second

    def test_no_cyclic_duplicates_in_abelian_names(self):
        names = [e.name for e in generate_catalog(20)]
        assert "C3xC2" not in names  # that would just be C6
        assert "C2xC2" in names

    def test_cap(self):
        with pytest.raises(CapExceeded):
            generate_catalog(500)

    def test_lookup(self):
        assert catalog_group("D18").order() == 18
        with pytest.raises(KeyError):
            catalog_group("Nope")

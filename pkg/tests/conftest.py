import pytest

from sectionkit import MetacyclicSpec, construct_metacyclic, direct_product
from sectionkit.catalog import (
    alternating,
    cyclic,
    dihedral,
    generate_catalog,
    quaternion,
    symmetric,
)
from sectionkit.pipeline import SectionTarget


@pytest.fixture(scope="session")
def met18():
    return construct_metacyclic(MetacyclicSpec(3, 2, 2, 8))


@pytest.fixture(scope="session")
def d18(met18):
    return met18.group


@pytest.fixture(scope="session")
def target18(met18):
    return SectionTarget.from_metacyclic(met18)


@pytest.fixture(scope="session")
def catalog60():
    return generate_catalog(60)


@pytest.fixture(scope="session")
def small_groups():
    """A deterministic grab bag used by sampling tests."""
    return [
        ("C1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C6", cyclic(6)),
        ("C9", cyclic(9)),
        ("C18", cyclic(18)),
        ("S3", symmetric(3)),
        ("S4", symmetric(4)),
        ("A4", alternating(4)),
        ("D8", dihedral(8)),
        ("D18", dihedral(18)),
        ("Q8", quaternion()),
        ("C3xS3", direct_product(cyclic(3), symmetric(3)).group),
    ]

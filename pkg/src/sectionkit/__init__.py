"""Finite-group toolkit for descending metacyclic sections of direct products.

Given F = X × Y, a subgroup G ≤ F and a normal H ⊴ G with G/H isomorphic to
a nontrivial C_{p^n} ⋊ C_q (p, q distinct primes), the pipeline produces an
explicit, independently checkable witness that the target is a section of X
alone or of Y alone.  A brute-force oracle validates the descent exhaustively
at small orders.
"""

from .construct import (
    DirectProduct,
    Metacyclic,
    MetacyclicSpec,
    centralizer_in,
    commutator_subgroup,
    construct_metacyclic,
    direct_product,
    intersection,
    kernel_intersections,
    normal_closure,
    projection_of_subgroup,
)
from .analysis import (
    IsoResult,
    is_chain,
    is_isomorphic,
    is_p_group,
    normal_subgroups,
    normalizer_in,
    subgroups_up_to_conjugacy,
    sylow,
)
from .errors import (
    CapExceeded,
    ConfigError,
    DegreeMismatch,
    FormatError,
    InternalCheckError,
    InvalidPermutation,
    InvalidSpec,
    NotASubgroup,
    NotNormal,
    SectionKitError,
)
from .groups import PermGroup, from_elements, generated_by, orbit_partition
from .homs import GroupHom, quotient, remak_embed
from .limits import LIMITS, Limits
from .oracle import (
    OracleReport,
    enumerate_section_configs,
    is_section_bruteforce,
    theorem_sweep,
    verify_witness,
)
from .perms import Permutation, compose, inverse
from .pipeline import (
    PipelineTrace,
    SectionConfig,
    SectionTarget,
    SectionWitness,
    check_target_structure,
    cyclic_cover_search,
    run_pipeline,
    section_config,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

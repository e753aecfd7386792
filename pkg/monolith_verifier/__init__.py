"""
monolith_verifier: normal structure, conjugate product witnesses and the
subdirect irreducibility sentence for members of the variety of a finite
nilpotent group.
"""
from .config import DEFAULT_LIMITS, Limits
from .construct import (
    Recipe,
    VarietyMember,
    direct_power,
    quotient,
    replay,
    sample_variety_members,
    subgroup_generated,
)
from .errors import VerifierError
from .group import (
    FiniteGroup,
    Permutation,
    commutator,
    conjugate,
    exponent,
    from_multiplication_table,
    from_permutation_generators,
    named_group,
    validate,
)
from .lattice import (
    ElementSet,
    analyze,
    atoms,
    center,
    chief_factor_sizes,
    is_subdirectly_irreducible,
    monolith,
    normal_closure,
    normal_subgroups,
    upper_central_series,
    verify_class_identity,
)
from .pipeline import VarietyPipeline
from .witness import ConjugateProductTerm, atom_bound_check, compose_chain, descend, minimal_witness

__version__ = "0.1.0"

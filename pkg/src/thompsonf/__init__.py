"""Exact computation and verification toolkit for Thompson's group F.

Elements are reduced tree diagrams stored as branch pairs of binary words.
The package provides the group calculus (multiply, invert, evaluate,
slopes, normal forms), the abelianization onto Z^2 with lattice-index
computations, a bounded saturation engine for branch-word equivalence
relations, and a verification suite replaying the structural facts about
the subgroups generated by powers of the two standard generators.
"""

from .words import (
    CapacityError,
    Dyadic,
    MAX_WORD_LENGTH,
    append,
    check_word,
    interval_of,
    is_prefix,
    word_from_text,
    word_to_text,
)
from .elements import (
    Element,
    IDENTITY,
    MalformedDiagram,
    commutator,
    conjugate,
    evaluate,
    format_branch_pairs,
    from_pairs,
    generating_pair,
    generator,
    has_branch_pair,
    identity,
    in_derived_subgroup,
    invert,
    multiply,
    parse_branch_pairs,
    power,
    power_subgroup_generators,
    slope_log2,
    slope_log2_at,
    to_dot,
)
from .presentation import (
    GroupWord,
    ParseError,
    element_of,
    normal_form,
    parse_expression,
    verify_defining_relations,
)
from .abelian import (
    AbelianImage,
    IndexCertificate,
    abelianize,
    finite_index_certificate,
    lattice_index,
)
from .saturation import (
    RelationSystem,
    WordPartition,
    all_mixed_equivalent,
    branch_pairs_of_elements,
    check_suffice,
    element_ball,
    k_system,
    saturate,
    subgroup_branch_pairs,
    witness_product,
)
from .verify import (
    VerificationReport,
    VerifyConfig,
    run_all,
    verify_branch_tables,
    verify_generator_relations,
    verify_index,
    verify_invariable,
    verify_k_chain_inclusions,
    verify_k_in_h,
    verify_derived_containment,
    verify_slope_element,
    x_power_table,
    y_power_table,
)

__version__ = "0.1.0"

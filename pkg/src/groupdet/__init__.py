"""Matrix calculus for endomorphisms and automorphisms of direct products of finite groups."""
from __future__ import annotations

from .errors import (
    DeterminantUndefinedError,
    FactorizationError,
    GroupdetError,
    InversionError,
    NoncommutingImagesError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    StructuralError,
    ValidationError,
)
from .groups import (
    CommonFactorWitness,
    DirectFactorization,
    FiniteGroup,
    Subgroup,
    are_isomorphic,
    build_group,
    common_nontrivial_factor,
    direct_product,
    group_from_table,
    load_table_file,
)
from .maps import (
    GroupMap,
    HomSet,
    OpCounter,
    compose,
    enumerate_autos,
    enumerate_endos,
    enumerate_homs,
    fitting_decomposition,
    identity_map,
    invert,
    is_bijective,
    is_central_automorphism,
    is_normal_endo,
    negate,
    pointwise_diff,
    pointwise_sum,
    power_map,
    zero_map,
)
from .matrices import (
    DEFAULT_AUT_ENUM_LIMIT,
    EndoMatrix,
    ProductGroup,
    astruc_factorize,
    decompose,
    enumerate_A,
    enumerate_Z,
    enumerate_aut_matrices,
    enumerate_m_matrices,
    identity_matrix,
    in_A,
    in_Z,
    map_from_dict,
    map_to_dict,
    matrix_from_dict,
    matrix_multiply,
    matrix_to_dict,
    recompose,
)
from .determinant import (
    DetIffReport,
    FSequence,
    PartialDet,
    det_A,
    det_h,
    det_k,
    detiff_check,
    f_determinant,
    invert_via_det,
    invert_via_det_pleasant,
    is_invertible_via_det,
)
from .pairs import (
    PairReport,
    PairWitness,
    a_subgroup_check,
    classify_pair,
    is_centrally_incompatible,
    is_centrally_totally_incompatible_of_length,
    is_incompatible,
    is_totally_incompatible,
    nilpotency_index,
    qualifying_pairs,
)
from .autcompare import (
    AutComparison,
    SemidirectReport,
    central_aut_group,
    compare_aut_vs_A,
    compare_autc_vs_Z,
    lemcomm_witness,
    q8_noncommuting_witness,
    verify_stem_semidirect,
)
from .bench import (
    BenchRecord,
    determinant_step_bound,
    naive_is_invertible,
    naive_step_bound,
    run_bench,
    sample_a_member,
)
from .cli import CATALOG, catalog_groups

__version__ = "0.1.0"

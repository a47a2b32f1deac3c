"""Exact constructions and checks for low-rank fooling-set matrices."""

from .char_p_family import (
    CharPParams,
    RecurrenceReport,
    SequencePlan,
    build_circulant,
    explore_recurrence,
    minimal_period,
    sequence_window,
    verify_cross_condition,
    verify_zero_blocks,
)
from .char_zero_family import AssembledM, BlockIndex, build_block, build_M, f_t_value, verify_block_recurrence
from .exact_algebra import (
    RATIONAL,
    ExactMatrix,
    FieldMismatchError,
    FieldSpec,
    GFElement,
    SizeCapError,
    binomial,
    rank,
    rank_gf,
    rank_rational,
)
from .fooling_core import (
    BoundReport,
    NotFoolingError,
    ZeroPattern,
    bound_report,
    build_inner_product_matrix,
    is_fooling_matrix,
    is_strict_fooling,
    kronecker,
    tensor_power,
)
from .submatrix_search import (
    ConflictGraph,
    FoolingCertificate,
    build_conflict_graph,
    max_fooling_submatrix,
    verify_certificate,
)

__version__ = "0.1.0"

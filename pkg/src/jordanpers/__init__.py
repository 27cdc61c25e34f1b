"""Jordan-type invariants of persistence modules over finite grids and zigzag posets."""

from .distances import (
    ErosionResult,
    Landscape,
    StabilityReport,
    check_stability,
    erosion_distance,
    erosion_distance_at_S,
    landscape,
    landscape_distance_at_S,
)
from .errors import JordanPersError
from .field import (
    DEFAULT_PRIME,
    FieldMatrix,
    IntMatrix,
    block_assemble,
    direct_sum_mat,
    image_basis,
    matmul,
    random_invertible,
    rank,
    solve_nonneg_integer,
)
from .jordan import (
    JordanModuleFamily,
    JordanType,
    NilpotentOperator,
    RankInvariantTable,
    an_decomposition_counts,
    filtered_rank,
    jordan_module_family,
    jordan_type,
    nilpotent_operator,
    rank_invariant,
)
from .module import (
    InterleavingCertificate,
    ModuleHom,
    PersModule,
    canonical_shift_certificate,
    conjugate,
    direct_sum,
    interval_module,
    random_module,
    shift,
    shift_hom,
    structure_map,
    validate,
    validate_hom,
    verify_interleaving,
)
from .poset import (
    GridPoset,
    Poset,
    SliceSequence,
    ZigzagPoset,
    hasse_arrows,
    leq,
    minkowski_window,
    norm_slices,
    validate_slices,
    zigzag_slices,
)
from .zigzag import (
    Barcode,
    MultirankVector,
    R_vector,
    barcode_from_R,
    interval_R_matrix,
    is_isomorphic,
    multirank,
    planted_module,
)

__version__ = "0.1.0"

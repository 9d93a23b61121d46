"""Coxeter tournaments on signed graphs: score sequences, generators, interchange graphs."""

from .core import (
    EdgeKind,
    Family,
    RootSystem,
    ScoreVector,
    SignedEdge,
    SignedPermutation,
    Tournament,
    apply_signed_permutation,
    half,
    is_neutral_subset,
    loop,
    neg,
    pos,
    positive_roots,
    reverse,
    score,
    standard_score,
)
from .embed import embed, embed_B, embed_C, embed_D, theta
from .errors import (
    CoxTourError,
    EnumerationGuardError,
    InvalidScoreError,
    InvariantViolation,
    PreconditionError,
)
from .generators import (
    GeneratorCopy,
    GeneratorCounts,
    GeneratorKind,
    InterchangeGraph,
    build_interchange_graph,
    count_generators,
    degree,
    find_generators,
    interchange_neighbors,
)
from .landau import (
    ConstructionTrace,
    apply_signs,
    check_score_sequence,
    construct,
    construct_A_win,
    is_score_sequence,
    lift_to_majorization,
    majorize,
    match_parity,
    reduce_even_jumps,
    weak_submajorize,
)

__version__ = "0.1.0"

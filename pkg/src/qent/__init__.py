"""Topological and quotient-topological entropy of Markov chains.

Three independent routes to the same quantities: spectral (Perron radius
of a transition graph), sofic (determinized presentation of an image
shift), and brute force (exact word counts). Interval horseshoe maps and
their good quotients are reduced to graphs exactly.
"""

from .errors import (
    CapExceeded,
    ConstantPiece,
    DimensionMismatch,
    EmptySubshift,
    GridMismatch,
    GridNotInvariant,
    HorseshoeValidationError,
    NoCompatibleSelection,
    NonConvergence,
    NotMonotone,
    ParseError,
    QentError,
    SectionAbsent,
    SinkInMarkovGraph,
    SizeLimitExceeded,
)
from .graphs import (
    AdjacencyMatrix,
    VertexSurjection,
    compose_surjections,
    essential_subgraph,
    find_right_inverse,
    graph_isomorphic,
    is_graph_morphism,
    kronecker_product,
    preserves_edges,
    quotient_graph,
    restrict_surjection,
    surjection_product,
)
from .interval_maps import (
    CompatibleSelection,
    PiecewiseAffineSpec,
    circle_map_graph,
    compatible_selection,
    markov_graph,
    quotient_entropy_interval,
    validate_good_quotient,
    validate_horseshoe,
)
from .sofic import (
    DeterministicPresentation,
    LabeledGraph,
    determinize,
    quotient_entropy,
    sofic_entropy,
)
from .spectral import (
    EntropyReport,
    entropy,
    integer_matrix_power,
    perron_radius,
    spectral_radius,
)
from .words import (
    GrowthRate,
    SlidingBlockCode,
    apply_block_code,
    count_words,
    count_words_range,
    enumerate_image_words,
    enumerate_words,
    growth_rate,
    image_word_count,
    image_word_counts,
    is_admissible,
    quotient_entropy_bruteforce,
)

__version__ = "0.1.0"

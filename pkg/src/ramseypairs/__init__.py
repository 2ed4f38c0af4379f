"""Monochromatic pairs, pair amplification and small-scale Ramsey oracles for two-colorings of K_N."""

from .amplify import (
    AmplificationTrace,
    AmplifyParams,
    BoundReport,
    amplify,
    amplify_step,
    drive,
    prove_or_find,
    trace_bounds,
)
from .bounds import es_clique_bound_check, expected_mono_cliques, lower_bound_witness_search, verify_inequalities
from .checks import InequalityCheck
from .embedding import (
    Embedding,
    SparsePairWitness,
    embed_or_sparse_pair,
    find_copy,
    find_embedding,
    find_mono_copy,
    sparse_subset,
)
from .errors import (
    DeclaredFailure,
    DegenerateInputError,
    InvalidPairError,
    InvalidSizeError,
    ParseError,
    PreconditionError,
    RamseyPairsError,
    ResourceLimitError,
)
from .extraction import ExtractionParams, MonoPair, Strictness, es_pair, esz_pair, max_clique
from .fileio import format_coloring, format_graph, parse_coloring, parse_graph, read_coloring, read_graph
from .graph import (
    Color,
    Graph,
    TwoColoring,
    degeneracy,
    edge_density,
    is_mono_pair,
    pair_density,
    top_degree_split,
)
from .ramsey import ArrowResult, arrows, gen_coloring, paley_coloring, ramsey_number_exact

__all__ = [
    "AmplificationTrace",
    "AmplifyParams",
    "ArrowResult",
    "BoundReport",
    "Color",
    "DeclaredFailure",
    "DegenerateInputError",
    "Embedding",
    "ExtractionParams",
    "Graph",
    "InequalityCheck",
    "InvalidPairError",
    "InvalidSizeError",
    "MonoPair",
    "ParseError",
    "PreconditionError",
    "RamseyPairsError",
    "ResourceLimitError",
    "SparsePairWitness",
    "Strictness",
    "TwoColoring",
    "amplify",
    "amplify_step",
    "arrows",
    "degeneracy",
    "drive",
    "edge_density",
    "embed_or_sparse_pair",
    "es_clique_bound_check",
    "es_pair",
    "esz_pair",
    "expected_mono_cliques",
    "find_copy",
    "find_embedding",
    "find_mono_copy",
    "format_coloring",
    "format_graph",
    "gen_coloring",
    "is_mono_pair",
    "lower_bound_witness_search",
    "max_clique",
    "pair_density",
    "paley_coloring",
    "parse_coloring",
    "parse_graph",
    "prove_or_find",
    "ramsey_number_exact",
    "read_coloring",
    "read_graph",
    "sparse_subset",
    "top_degree_split",
    "trace_bounds",
    "verify_inequalities",
]

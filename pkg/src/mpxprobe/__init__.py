"""Missing-data stress testing for multiplex networks.

Quantifies how random edge/node loss, layer removal, degree censoring and
identity splitting distort the structure of multilayer networks: flatten
metrics (diameter, clustering, average path length), inter-layer similarity
and per-layer exclusivity. Includes a seeded synthetic generator and sweep
runners that emit CSV tables and monochrome heatmaps.
"""

from .core import (
    ActorId,
    Edge,
    FlattenedGraph,
    LayerId,
    MultiplexNetwork,
    UnknownActorError,
    UnknownLayerError,
    build_network,
    flatten,
    neighbors,
    remove_layer,
)
from .experiment import (
    LayerRemovalTable,
    SweepGrid,
    VariationCell,
    XRelevanceSweep,
    emit_csv,
    emit_heatmap,
    run_layer_removal,
    run_missing_sweep,
    run_similarity_sweep,
    run_xrelevance_sweep,
    variation_percent,
)
from .metrics import (
    MetricsReport,
    SimilarityMatrix,
    XRelevanceTable,
    average_path_length,
    clustering_coefficient,
    diameter,
    jaccard_similarity,
    mean_x_relevance,
    metrics_report,
    similarity_matrix,
    x_relevance,
    x_relevance_table,
)
from .mpxio import ParseError, parse_multiplex, write_multiplex
from .perturb import (
    PerturbationRecord,
    PerturbationSpec,
    apply_spec,
    censor_by_degree,
    remove_edges_random,
    remove_nodes_random,
    split_identities,
    undo,
)
from .synthgen import (
    GenerationError,
    SynthSpec,
    generate_ba,
    generate_multiplex_with_similarity,
    generate_similarity_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "ActorId",
    "LayerId",
    "Edge",
    "MultiplexNetwork",
    "FlattenedGraph",
    "UnknownActorError",
    "UnknownLayerError",
    "build_network",
    "flatten",
    "neighbors",
    "remove_layer",
    # io
    "ParseError",
    "parse_multiplex",
    "write_multiplex",
    # metrics
    "MetricsReport",
    "SimilarityMatrix",
    "XRelevanceTable",
    "diameter",
    "average_path_length",
    "clustering_coefficient",
    "jaccard_similarity",
    "similarity_matrix",
    "x_relevance",
    "x_relevance_table",
    "mean_x_relevance",
    "metrics_report",
    # perturb
    "PerturbationSpec",
    "PerturbationRecord",
    "remove_edges_random",
    "remove_nodes_random",
    "censor_by_degree",
    "split_identities",
    "apply_spec",
    "undo",
    # synthgen
    "SynthSpec",
    "GenerationError",
    "generate_ba",
    "generate_multiplex_with_similarity",
    "generate_similarity_sweep",
    # experiment
    "VariationCell",
    "SweepGrid",
    "LayerRemovalTable",
    "XRelevanceSweep",
    "variation_percent",
    "run_missing_sweep",
    "run_similarity_sweep",
    "run_layer_removal",
    "run_xrelevance_sweep",
    "emit_csv",
    "emit_heatmap",
]

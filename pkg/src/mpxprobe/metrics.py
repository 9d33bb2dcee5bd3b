"""Structural metrics for flattened graphs and multiplex-aware measures.

Flatten-side: diameter, average path length and clustering coefficient.
Distances are computed by level-synchronous breadth-first traversal, a block
of source nodes at a time, with exact integer accumulation, so results do
not depend on block size or call order. Disconnected graphs use the
finite-pair convention by default: infinite distances are simply excluded
and connectivity is reported as a separate flag. Largest-component scope is
available as an alternative.

Multiplex-side: layer similarity as intersection-over-union of edge sets
with the layer coordinate stripped, and per-actor layer exclusivity (the
fraction of an actor's flattened neighbours reachable only through one
layer).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .core import (
    ActorId,
    Edge,
    FlattenedGraph,
    LayerId,
    MultiplexNetwork,
    UnknownActorError,
    UnknownLayerError,
    flatten,
)

__all__ = [
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
]

Scope = Literal["finite-pairs", "largest-component"]
CcMode = Literal["average", "global"]

_BFS_BLOCK = 1024
_DENSE_LIMIT = 128  # below this, dense ndarrays beat sparse-constructor overhead


@dataclass(frozen=True)
class MetricsReport:
    """Bundle of flatten-graph properties for one layer subset."""

    diameter: int
    clustering_coefficient: float
    avg_path_length: float
    is_connected: bool
    node_count: int
    edge_count: int


@dataclass(frozen=True)
class SimilarityMatrix:
    """Pairwise layer similarities plus the all-layers combined value."""

    layers: tuple[LayerId, ...]
    pairwise: Mapping[tuple[LayerId, LayerId], float]
    combined: float

    def get(self, a: LayerId, b: LayerId) -> float:
        if a == b:
            return 1.0
        key = (a, b) if (a, b) in self.pairwise else (b, a)
        return self.pairwise[key]


@dataclass(frozen=True)
class XRelevanceTable:
    """Per (actor, layer) exclusivity values over a whole network."""

    values: Mapping[tuple[ActorId, LayerId], float]

    def get(self, actor: ActorId, layer: LayerId) -> float:
        return self.values[(actor, layer)]


def _adjacency_matrix(graph: FlattenedGraph) -> tuple[sp.csr_matrix | np.ndarray, list[ActorId]]:
    """Symmetric 0/1 adjacency; dense below ``_DENSE_LIMIT`` nodes, CSR above."""
    nodes = sorted(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)
    m = len(graph.edges)
    rows = np.empty(2 * m, dtype=np.int64)
    cols = np.empty(2 * m, dtype=np.int64)
    for k, (u, v) in enumerate(sorted(graph.edges)):
        i, j = index[u], index[v]
        rows[2 * k], cols[2 * k] = i, j
        rows[2 * k + 1], cols[2 * k + 1] = j, i
    if n <= _DENSE_LIMIT:
        adj = np.zeros((n, n), dtype=np.float32)
        adj[rows, cols] = 1.0
        return adj, nodes
    data = np.ones(2 * m, dtype=np.float32)
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n)), nodes


def _distance_stats(adj) -> tuple[int, int, int]:
    """(finite ordered pair count, summed distance, max distance) via blocked BFS.

    Level-synchronous traversal from every source, one block of sources at a
    time; ``adj @ frontier`` works for both the dense and the CSR
    representation. All accumulators are exact integers, so the result is
    independent of the block size and of any parallel schedule over blocks.
    """
    n = adj.shape[0]
    count = 0
    total = 0
    maxd = 0
    for lo in range(0, n, _BFS_BLOCK):
        hi = min(lo + _BFS_BLOCK, n)
        k = hi - lo
        frontier = np.zeros((n, k), dtype=np.float32)
        frontier[np.arange(lo, hi), np.arange(k)] = 1.0
        visited = frontier > 0
        depth = 0
        while True:
            depth += 1
            reached = adj @ frontier
            new = (reached > 0) & ~visited
            hits = int(np.count_nonzero(new))
            if hits == 0:
                break
            count += hits
            total += depth * hits
            maxd = depth
            visited |= new
            frontier = new.astype(np.float32)
    return count, total, maxd


def _restrict_to_largest_component(adj):
    if adj.shape[0] == 0:
        return adj
    n_comp, labels = connected_components(adj, directed=False)
    if n_comp <= 1:
        return adj
    sizes = np.bincount(labels)
    keep = np.flatnonzero(labels == int(np.argmax(sizes)))
    return adj[keep][:, keep]


def _path_stats_from_adj(adj, scope: Scope) -> tuple[int, float, bool]:
    n = adj.shape[0]
    if n == 0:
        return 0, 0.0, True
    count, total, maxd = _distance_stats(adj)
    # the BFS saw every ordered pair exactly when the graph is connected
    is_connected = count == n * (n - 1)
    if scope == "largest-component" and not is_connected:
        count, total, maxd = _distance_stats(_restrict_to_largest_component(adj))
    if count == 0:
        return 0, 0.0, is_connected
    return maxd, total / count, is_connected


def _path_stats(graph: FlattenedGraph, scope: Scope) -> tuple[int, float, bool]:
    """(diameter, average path length, is_connected) under the given scope."""
    adj, _ = _adjacency_matrix(graph)
    return _path_stats_from_adj(adj, scope)


def diameter(graph: FlattenedGraph, scope: Scope = "finite-pairs") -> int:
    """Longest shortest path over connected pairs; 0 for edgeless graphs."""
    d, _, _ = _path_stats(graph, scope)
    return d


def average_path_length(graph: FlattenedGraph, scope: Scope = "finite-pairs") -> float:
    """Mean shortest-path length over connected pairs; 0 when there are none."""
    _, apl, _ = _path_stats(graph, scope)
    return apl


def clustering_coefficient(graph: FlattenedGraph, mode: CcMode = "average") -> float:
    """Clustering of the graph.

    ``average`` (default) is the mean of local clustering coefficients over
    nodes of degree >= 2; nodes of lower degree are excluded from the mean
    and the result is 0 when no node qualifies. ``global`` is transitivity:
    three times the triangle count over the number of connected triples.
    """
    n = len(graph.nodes)
    if n == 0 or not graph.edges:
        return 0.0
    adj, _ = _adjacency_matrix(graph)
    return _clustering_from_adj(adj, mode)


def _clustering_from_adj(adj, mode: CcMode) -> float:
    degrees = np.asarray(adj.sum(axis=1)).ravel().astype(np.int64)
    if not degrees.any():
        return 0.0
    # row sums of (A @ A) * A count ordered adjacent-neighbour pairs: 2x triangles per node
    paths2 = adj @ adj
    closed_matrix = paths2.multiply(adj) if sp.issparse(adj) else paths2 * adj
    closed = np.asarray(closed_matrix.sum(axis=1)).ravel().astype(np.int64)
    eligible = degrees >= 2
    if mode == "global":
        wedges = int((degrees * (degrees - 1))[eligible].sum())
        if wedges == 0:
            return 0.0
        return float(closed.sum()) / wedges
    if not bool(eligible.any()):
        return 0.0
    local = closed[eligible] / (degrees[eligible] * (degrees[eligible] - 1))
    return float(local.sum() / local.size)


def _layer_edge_sets(
    network: MultiplexNetwork, layer_subset: Iterable[LayerId]
) -> list[frozenset[Edge]]:
    subset = list(dict.fromkeys(layer_subset))
    for layer in subset:
        if layer not in network.edges:
            raise UnknownLayerError(layer)
    return [network.edges[layer] for layer in subset]


def jaccard_similarity(network: MultiplexNetwork, layer_subset: Iterable[LayerId]) -> float:
    """Intersection over union of the selected layers' edge sets.

    Edges are compared as unordered actor pairs with the layer stripped.
    All-empty selections count as identical (similarity 1.0) so removal
    sweeps that empty a small layer keep producing values.
    """
    sets = _layer_edge_sets(network, layer_subset)
    if len(sets) < 2:
        raise ValueError("similarity needs at least 2 distinct layers")
    union = frozenset().union(*sets)
    if not union:
        return 1.0
    intersection = sets[0].intersection(*sets[1:])
    return len(intersection) / len(union)


def similarity_matrix(network: MultiplexNetwork) -> SimilarityMatrix:
    """All pairwise layer similarities plus the combined all-layers value."""
    layers = network.layers
    pairwise: dict[tuple[LayerId, LayerId], float] = {}
    for i, a in enumerate(layers):
        for b in layers[i + 1 :]:
            pairwise[(a, b)] = jaccard_similarity(network, (a, b))
    combined = jaccard_similarity(network, layers) if len(layers) >= 2 else 1.0
    return SimilarityMatrix(layers=layers, pairwise=pairwise, combined=combined)


def _neighbor_maps(
    network: MultiplexNetwork,
) -> dict[LayerId, dict[ActorId, set[ActorId]]]:
    per_layer: dict[LayerId, dict[ActorId, set[ActorId]]] = {}
    for layer in network.layers:
        adj: dict[ActorId, set[ActorId]] = {}
        for u, v in network.edges[layer]:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        per_layer[layer] = adj
    return per_layer


def x_relevance(network: MultiplexNetwork, actor: ActorId, layer: LayerId) -> float:
    """Fraction of the actor's flattened neighbours reachable only via ``layer``.

    A neighbour counts as exclusive when the connecting edge exists on the
    given layer and on no other layer. Returns 0 for actors with no
    flattened neighbours.
    """
    if layer not in network.edges:
        raise UnknownLayerError(layer)
    if actor not in network.actors:
        raise UnknownActorError(actor)
    per_layer = _neighbor_maps(network)
    return _x_relevance_indexed(network, per_layer, actor, layer)


def _x_relevance_indexed(
    network: MultiplexNetwork,
    per_layer: dict[LayerId, dict[ActorId, set[ActorId]]],
    actor: ActorId,
    layer: LayerId,
) -> float:
    flat_neighbors: set[ActorId] = set()
    for l in network.layers:
        flat_neighbors |= per_layer[l].get(actor, set())
    if not flat_neighbors:
        return 0.0
    exclusive = set(per_layer[layer].get(actor, set()))
    for other in network.layers:
        if other == layer:
            continue
        exclusive -= per_layer[other].get(actor, set())
        if not exclusive:
            break
    return len(exclusive) / len(flat_neighbors)


def x_relevance_table(network: MultiplexNetwork) -> XRelevanceTable:
    """Exclusivity of every (actor, layer) pair, computed in one pass."""
    per_layer = _neighbor_maps(network)
    values: dict[tuple[ActorId, LayerId], float] = {}
    for actor in network.sorted_actors():
        for layer in network.layers:
            values[(actor, layer)] = _x_relevance_indexed(network, per_layer, actor, layer)
    return XRelevanceTable(values=values)


def mean_x_relevance(network: MultiplexNetwork) -> dict[LayerId, float]:
    """Per-layer mean exclusivity over all actors (isolates contribute 0)."""
    per_layer = _neighbor_maps(network)
    actors = network.sorted_actors()
    n = len(actors)
    means: dict[LayerId, float] = {}
    for layer in network.layers:
        if n == 0:
            means[layer] = 0.0
            continue
        total = sum(_x_relevance_indexed(network, per_layer, actor, layer) for actor in actors)
        means[layer] = total / n
    return means


def metrics_report(
    network: MultiplexNetwork,
    layer_subset: Iterable[LayerId] | None = None,
    scope: Scope = "finite-pairs",
    cc_mode: CcMode = "average",
) -> MetricsReport:
    """Diameter, clustering and average path length of the flattened subset."""
    subset = tuple(layer_subset) if layer_subset is not None else network.layers
    graph = flatten(network, subset)
    adj, _ = _adjacency_matrix(graph)
    d, apl, connected = _path_stats_from_adj(adj, scope)
    return MetricsReport(
        diameter=d,
        clustering_coefficient=_clustering_from_adj(adj, cc_mode),
        avg_path_length=apl,
        is_connected=connected,
        node_count=len(graph.nodes),
        edge_count=len(graph.edges),
    )

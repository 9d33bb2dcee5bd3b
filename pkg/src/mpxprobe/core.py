"""In-memory multiplex and flattened network representations.

A multiplex network is a single actor set shared by every layer, plus one
undirected simple edge set per layer (node-aligned: an actor without edges
on a layer is an isolated node there). Flattening unions selected layers
into one simple graph over the full actor set.

All types are frozen; operations return new values. Edges are stored as
lexicographically ordered actor pairs so iteration and sampling are
deterministic everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

ActorId = str
LayerId = str
Edge = tuple[ActorId, ActorId]

__all__ = [
    "ActorId",
    "LayerId",
    "Edge",
    "MultiplexNetwork",
    "FlattenedGraph",
    "BuildWarnings",
    "UnknownActorError",
    "UnknownLayerError",
    "make_edge",
    "build_network",
    "flatten",
    "neighbors",
    "remove_layer",
]


class UnknownLayerError(KeyError):
    """Raised when an operation references a layer id not in the network."""

    def __init__(self, layer: LayerId):
        super().__init__(layer)
        self.layer = layer

    def __str__(self) -> str:
        return f"unknown layer: {self.layer!r}"


class UnknownActorError(KeyError):
    """Raised when an operation references an actor id not in the network."""

    def __init__(self, actor: ActorId):
        super().__init__(actor)
        self.actor = actor

    def __str__(self) -> str:
        return f"unknown actor: {self.actor!r}"


def _check_label(label: str, kind: str) -> None:
    if not label:
        raise ValueError(f"{kind} label must be nonempty")
    if any(ch.isspace() for ch in label):
        raise ValueError(f"{kind} label {label!r} contains whitespace")


def make_edge(u: ActorId, v: ActorId) -> Edge:
    """Canonical undirected edge: endpoints in lexicographic order."""
    if u == v:
        raise ValueError(f"self-loop at {u!r} not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MultiplexNetwork:
    """Actor set, ordered layer list and one canonical edge set per layer.

    Invariants enforced at construction: layer order is duplicate-free,
    every layer has an entry in ``edges``, every edge is a canonical pair of
    known actors, and no layer contains self-loops. Use :func:`build_network`
    to assemble a network from messy input (it drops violations and counts
    them instead of raising).
    """

    actors: frozenset[ActorId]
    layers: tuple[LayerId, ...]
    edges: Mapping[LayerId, frozenset[Edge]]

    def __post_init__(self) -> None:
        if len(set(self.layers)) != len(self.layers):
            raise ValueError("duplicate layer ids")
        for layer in self.layers:
            _check_label(layer, "layer")
        for actor in self.actors:
            _check_label(actor, "actor")
        if set(self.edges.keys()) != set(self.layers):
            raise ValueError("edge map keys must match the layer list")
        for layer, edge_set in self.edges.items():
            for u, v in edge_set:
                if u >= v:
                    raise ValueError(f"edge ({u!r},{v!r}) on {layer!r} not canonical")
                if u not in self.actors or v not in self.actors:
                    raise ValueError(f"edge ({u!r},{v!r}) on {layer!r} references unknown actor")
        # normalize the mapping to a plain immutable dict in layer order
        object.__setattr__(
            self, "edges", {layer: frozenset(self.edges[layer]) for layer in self.layers}
        )

    def layer_index(self, layer: LayerId) -> int:
        try:
            return self.layers.index(layer)
        except ValueError:
            raise UnknownLayerError(layer) from None

    def degree(self, actor: ActorId, layer: LayerId) -> int:
        return len(neighbors(self, actor, layer))

    def edge_count(self) -> int:
        """Total number of edges over all layers (pairs recurring on several
        layers counted once per layer)."""
        return sum(len(es) for es in self.edges.values())

    def sorted_actors(self) -> list[ActorId]:
        return sorted(self.actors)

    def sorted_edges(self, layer: LayerId) -> list[Edge]:
        if layer not in self.edges:
            raise UnknownLayerError(layer)
        return sorted(self.edges[layer])


@dataclass(frozen=True)
class FlattenedGraph:
    """Simple undirected graph: node set plus canonical edge set."""

    nodes: frozenset[ActorId]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u >= v:
                raise ValueError(f"edge ({u!r},{v!r}) not canonical")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge ({u!r},{v!r}) references unknown node")

    def adjacency(self) -> dict[ActorId, set[ActorId]]:
        adj: dict[ActorId, set[ActorId]] = {node: set() for node in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, node: ActorId) -> int:
        if node not in self.nodes:
            raise UnknownActorError(node)
        return sum(1 for e in self.edges if node in e)


@dataclass
class BuildWarnings:
    """Counts of inputs dropped while assembling a network."""

    self_loops_dropped: int = 0
    duplicate_edges_dropped: int = 0

    def any(self) -> bool:
        return self.self_loops_dropped > 0 or self.duplicate_edges_dropped > 0


def build_network(
    layers: Iterable[LayerId],
    edges: Iterable[tuple[ActorId, ActorId, LayerId]],
    actors: Iterable[ActorId] = (),
    warnings: BuildWarnings | None = None,
) -> MultiplexNetwork:
    """Assemble a network from raw edge triples.

    Self-loops and duplicate edges are dropped (counted in ``warnings`` when
    given); actors are the declared ones plus every edge endpoint. Layer
    order is the iteration order of ``layers``; unknown layers on edges
    raise.
    """
    layer_list = list(layers)
    if warnings is None:
        warnings = BuildWarnings()
    actor_set = set(actors)
    edge_sets: dict[LayerId, set[Edge]] = {layer: set() for layer in layer_list}
    for u, v, layer in edges:
        if layer not in edge_sets:
            raise UnknownLayerError(layer)
        if u == v:
            warnings.self_loops_dropped += 1
            actor_set.add(u)
            continue
        edge = make_edge(u, v)
        if edge in edge_sets[layer]:
            warnings.duplicate_edges_dropped += 1
        else:
            edge_sets[layer].add(edge)
        actor_set.add(u)
        actor_set.add(v)
    return MultiplexNetwork(
        actors=frozenset(actor_set),
        layers=tuple(layer_list),
        edges={layer: frozenset(es) for layer, es in edge_sets.items()},
    )


def flatten(network: MultiplexNetwork, layer_subset: Iterable[LayerId]) -> FlattenedGraph:
    """Union the edge sets of the selected layers into one simple graph.

    Nodes are the full actor set, so an actor touched by none of the selected
    layers appears as an isolate. Raises :class:`UnknownLayerError` for an
    unknown id and ``ValueError`` for an empty subset.
    """
    subset = list(dict.fromkeys(layer_subset))
    if not subset:
        raise ValueError("layer subset must be nonempty")
    merged: set[Edge] = set()
    for layer in subset:
        if layer not in network.edges:
            raise UnknownLayerError(layer)
        merged |= network.edges[layer]
    return FlattenedGraph(nodes=network.actors, edges=frozenset(merged))


def neighbors(network: MultiplexNetwork, actor: ActorId, layer: LayerId) -> set[ActorId]:
    """Actors adjacent to ``actor`` through edges of ``layer``."""
    if layer not in network.edges:
        raise UnknownLayerError(layer)
    if actor not in network.actors:
        raise UnknownActorError(actor)
    result: set[ActorId] = set()
    for u, v in network.edges[layer]:
        if u == actor:
            result.add(v)
        elif v == actor:
            result.add(u)
    return result


def remove_layer(network: MultiplexNetwork, layer: LayerId) -> MultiplexNetwork:
    """Drop one layer and its edges; the actor set is left untouched."""
    if layer not in network.edges:
        raise UnknownLayerError(layer)
    if len(network.layers) < 2:
        raise ValueError("cannot remove the last layer")
    remaining = tuple(l for l in network.layers if l != layer)
    return MultiplexNetwork(
        actors=network.actors,
        layers=remaining,
        edges={l: network.edges[l] for l in remaining},
    )

"""Seeded missing-data mechanisms for multiplex networks.

Five mechanisms: random edge removal (per layer), random node removal,
whole-layer removal, degree censoring across layers, and identity splitting
(losing the cross-layer link that per-layer nodes are the same actor).

Sampling is a partial Fisher-Yates pass over the canonically sorted edge or
actor list, driven by :class:`mpxprobe.rng.Rng`. Each layer gets its own
sub-stream (``mix(seed, layer_index)``), node and identity draws use fixed
salts, so results are identical on every platform and for any thread
schedule. Because prefixes of one permutation are nested, the edges removed
at a smaller fraction are always a subset of those removed at a larger one
under the same seed.

Every operation returns the perturbed network together with a record that
allows exact reconstruction of the input (see :func:`undo`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    ActorId,
    Edge,
    LayerId,
    MultiplexNetwork,
    UnknownLayerError,
    remove_layer,
)
from .rng import Rng, mix

__all__ = [
    "MECHANISMS",
    "PerturbationSpec",
    "PerturbationRecord",
    "remove_edges_random",
    "remove_nodes_random",
    "censor_by_degree",
    "split_identities",
    "apply_spec",
    "undo",
]

MECHANISMS = ("edge-removal", "node-removal", "layer-removal", "degree-censor", "identity-split")

# stream salts for draws that are not tied to a layer index
_NODE_STREAM = 0x6E6F6465  # "node"
_SPLIT_STREAM = 0x73706C69  # "spli"


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _check_fraction(fraction: float) -> None:
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")


@dataclass(frozen=True)
class PerturbationSpec:
    """Fully describes one perturbation; reproducible from these fields alone."""

    mechanism: str
    fraction: float = 0.0
    seed: int = 0
    target_layers: tuple[LayerId, ...] | None = None  # None means all layers
    censor_thresholds: Mapping[LayerId, int] | None = None

    def __post_init__(self) -> None:
        if self.mechanism not in MECHANISMS:
            raise ValueError(f"unknown mechanism {self.mechanism!r}, expected one of {MECHANISMS}")
        _check_fraction(self.fraction)
        if self.censor_thresholds:
            for layer, threshold in self.censor_thresholds.items():
                if threshold < 0:
                    raise ValueError(f"negative censor threshold for layer {layer!r}")


@dataclass(frozen=True)
class PerturbationRecord:
    """What was taken out: enough to rebuild the original network exactly."""

    spec: PerturbationSpec
    removed_edges: tuple[tuple[Edge, LayerId], ...] = ()
    removed_actors: tuple[ActorId, ...] = ()
    removed_layers: tuple[tuple[int, LayerId], ...] = ()  # (original position, id)
    split_actors: tuple[tuple[ActorId, tuple[tuple[LayerId, ActorId], ...]], ...] = ()


def _resolve_layers(
    network: MultiplexNetwork, layers: Iterable[LayerId] | None
) -> list[LayerId]:
    if layers is None:
        return list(network.layers)
    requested = set(layers)
    for layer in requested:
        if layer not in network.edges:
            raise UnknownLayerError(layer)
    # iterate in network layer order so the outcome is independent of input order
    return [l for l in network.layers if l in requested]


def remove_edges_random(
    network: MultiplexNetwork,
    layers: Iterable[LayerId] | None,
    fraction: float,
    seed: int,
) -> tuple[MultiplexNetwork, PerturbationRecord]:
    """Remove ``round(fraction * m)`` edges from each target layer.

    Edges are drawn without replacement from the layer's sorted edge list,
    one Fisher-Yates permutation per (seed, layer index); rounding is
    half-up. Fraction 0 is the identity, an empty layer is a no-op.
    """
    _check_fraction(fraction)
    targets = _resolve_layers(network, layers)
    removed: list[tuple[Edge, LayerId]] = []
    new_edges: dict[LayerId, frozenset[Edge]] = dict(network.edges)
    for layer in targets:
        pool = network.sorted_edges(layer)
        k = _round_half_up(fraction * len(pool))
        if k == 0:
            continue
        picked = Rng(mix(seed, network.layer_index(layer))).shuffle_prefix(pool, k)
        new_edges[layer] = network.edges[layer] - set(picked)
        removed.extend((edge, layer) for edge in picked)
    spec = PerturbationSpec(
        mechanism="edge-removal",
        fraction=fraction,
        seed=seed,
        target_layers=tuple(targets),
    )
    perturbed = MultiplexNetwork(actors=network.actors, layers=network.layers, edges=new_edges)
    return perturbed, PerturbationRecord(spec=spec, removed_edges=tuple(removed))


def _drop_actors(
    network: MultiplexNetwork, doomed: set[ActorId]
) -> tuple[MultiplexNetwork, list[tuple[Edge, LayerId]]]:
    removed_edges: list[tuple[Edge, LayerId]] = []
    new_edges: dict[LayerId, frozenset[Edge]] = {}
    for layer in network.layers:
        keep: set[Edge] = set()
        for edge in network.sorted_edges(layer):
            if edge[0] in doomed or edge[1] in doomed:
                removed_edges.append((edge, layer))
            else:
                keep.add(edge)
        new_edges[layer] = frozenset(keep)
    perturbed = MultiplexNetwork(
        actors=network.actors - doomed, layers=network.layers, edges=new_edges
    )
    return perturbed, removed_edges


def remove_nodes_random(
    network: MultiplexNetwork, fraction: float, seed: int
) -> tuple[MultiplexNetwork, PerturbationRecord]:
    """Remove ``round(fraction * |actors|)`` actors and all their edges."""
    _check_fraction(fraction)
    pool = network.sorted_actors()
    k = _round_half_up(fraction * len(pool))
    picked = Rng(mix(seed, _NODE_STREAM)).shuffle_prefix(pool, k)
    perturbed, removed_edges = _drop_actors(network, set(picked))
    spec = PerturbationSpec(mechanism="node-removal", fraction=fraction, seed=seed)
    return perturbed, PerturbationRecord(
        spec=spec, removed_edges=tuple(removed_edges), removed_actors=tuple(picked)
    )


def censor_by_degree(
    network: MultiplexNetwork, thresholds: Mapping[LayerId, int]
) -> tuple[MultiplexNetwork, PerturbationRecord]:
    """Censor actors that clear no degree bar on any thresholded layer.

    An actor survives if its degree reaches the threshold on at least one of
    the thresholded layers. Degrees are the original ones; removal is a
    single pass with no cascade.
    """
    for layer, threshold in thresholds.items():
        if layer not in network.edges:
            raise UnknownLayerError(layer)
        if threshold < 0:
            raise ValueError(f"negative threshold for layer {layer!r}")
    thresholded = [l for l in network.layers if l in thresholds]
    doomed: set[ActorId] = set()
    if thresholded:
        degree_by_layer = {
            layer: _degree_map(network, layer) for layer in thresholded
        }
        for actor in network.actors:
            if all(
                degree_by_layer[layer].get(actor, 0) < thresholds[layer] for layer in thresholded
            ):
                doomed.add(actor)
    perturbed, removed_edges = _drop_actors(network, doomed)
    spec = PerturbationSpec(
        mechanism="degree-censor",
        censor_thresholds={l: thresholds[l] for l in thresholded},
    )
    return perturbed, PerturbationRecord(
        spec=spec,
        removed_edges=tuple(removed_edges),
        removed_actors=tuple(sorted(doomed)),
    )


def _degree_map(network: MultiplexNetwork, layer: LayerId) -> dict[ActorId, int]:
    degrees: dict[ActorId, int] = {}
    for u, v in network.edges[layer]:
        degrees[u] = degrees.get(u, 0) + 1
        degrees[v] = degrees.get(v, 0) + 1
    return degrees


def _clone_name(actor: ActorId, layer: LayerId, taken: set[ActorId]) -> ActorId:
    base = f"{actor}@{layer}"
    name = base
    suffix = 2
    while name in taken:
        name = f"{base}~{suffix}"
        suffix += 1
    return name


def split_identities(
    network: MultiplexNetwork, fraction: float, seed: int
) -> tuple[MultiplexNetwork, PerturbationRecord]:
    """Break the cross-layer identity of sampled actors.

    Each sampled actor is replaced by one fresh actor per layer on which it
    has edges, each clone inheriting only that layer's edges. Per-layer edge
    counts and degree multisets are preserved. Actors with edges on a single
    layer are merely relabeled; fully isolated actors have no identity link
    to lose and are kept as-is.
    """
    if len(network.layers) < 2:
        raise ValueError("identity split needs at least 2 layers")
    _check_fraction(fraction)
    pool = network.sorted_actors()
    k = _round_half_up(fraction * len(pool))
    picked = Rng(mix(seed, _SPLIT_STREAM)).shuffle_prefix(pool, k)

    taken = set(network.actors)
    rename: dict[LayerId, dict[ActorId, ActorId]] = {layer: {} for layer in network.layers}
    split_log: list[tuple[ActorId, tuple[tuple[LayerId, ActorId], ...]]] = []
    dropped: set[ActorId] = set()
    clones: set[ActorId] = set()
    for actor in picked:
        mapping: list[tuple[LayerId, ActorId]] = []
        for layer in network.layers:
            if any(actor in edge for edge in network.edges[layer]):
                clone = _clone_name(actor, layer, taken)
                taken.add(clone)
                rename[layer][actor] = clone
                mapping.append((layer, clone))
        split_log.append((actor, tuple(mapping)))
        if mapping:
            dropped.add(actor)
            clones.update(name for _, name in mapping)

    new_edges: dict[LayerId, frozenset[Edge]] = {}
    for layer in network.layers:
        layer_map = rename[layer]
        if not layer_map:
            new_edges[layer] = network.edges[layer]
            continue
        rebuilt: set[Edge] = set()
        for u, v in network.edges[layer]:
            nu = layer_map.get(u, u)
            nv = layer_map.get(v, v)
            rebuilt.add((nu, nv) if nu < nv else (nv, nu))
        new_edges[layer] = frozenset(rebuilt)

    perturbed = MultiplexNetwork(
        actors=(network.actors - dropped) | clones,
        layers=network.layers,
        edges=new_edges,
    )
    spec = PerturbationSpec(mechanism="identity-split", fraction=fraction, seed=seed)
    return perturbed, PerturbationRecord(spec=spec, split_actors=tuple(split_log))


def _remove_layers(
    network: MultiplexNetwork, layers: Iterable[LayerId] | None, seed: int
) -> tuple[MultiplexNetwork, PerturbationRecord]:
    targets = _resolve_layers(network, layers)
    if targets == list(network.layers):
        raise ValueError("cannot remove every layer")
    removed_edges: list[tuple[Edge, LayerId]] = []
    removed_layers: list[tuple[int, LayerId]] = []
    result = network
    for layer in targets:
        removed_layers.append((network.layer_index(layer), layer))
        removed_edges.extend((edge, layer) for edge in network.sorted_edges(layer))
        result = remove_layer(result, layer)
    spec = PerturbationSpec(mechanism="layer-removal", seed=seed, target_layers=tuple(targets))
    return result, PerturbationRecord(
        spec=spec, removed_edges=tuple(removed_edges), removed_layers=tuple(removed_layers)
    )


def apply_spec(
    network: MultiplexNetwork, spec: PerturbationSpec
) -> tuple[MultiplexNetwork, PerturbationRecord]:
    """Dispatch a spec to its mechanism."""
    if spec.mechanism == "edge-removal":
        return remove_edges_random(network, spec.target_layers, spec.fraction, spec.seed)
    if spec.mechanism == "node-removal":
        return remove_nodes_random(network, spec.fraction, spec.seed)
    if spec.mechanism == "layer-removal":
        return _remove_layers(network, spec.target_layers, spec.seed)
    if spec.mechanism == "degree-censor":
        return censor_by_degree(network, spec.censor_thresholds or {})
    if spec.mechanism == "identity-split":
        return split_identities(network, spec.fraction, spec.seed)
    raise ValueError(f"unknown mechanism {spec.mechanism!r}")


def undo(perturbed: MultiplexNetwork, record: PerturbationRecord) -> MultiplexNetwork:
    """Reinsert the record's contents; returns the exact original network."""
    actors = set(perturbed.actors)
    layers = list(perturbed.layers)
    edges: dict[LayerId, set[Edge]] = {l: set(es) for l, es in perturbed.edges.items()}

    # merge identity clones back into their source actor
    for actor, mapping in record.split_actors:
        reverse = {clone: actor for _, clone in mapping}
        for layer, clone in mapping:
            rebuilt: set[Edge] = set()
            for u, v in edges[layer]:
                nu = reverse.get(u, u)
                nv = reverse.get(v, v)
                rebuilt.add((nu, nv) if nu < nv else (nv, nu))
            edges[layer] = rebuilt
            actors.discard(clone)
        actors.add(actor)

    for position, layer in sorted(record.removed_layers):
        layers.insert(position, layer)
        edges.setdefault(layer, set())

    actors.update(record.removed_actors)
    for edge, layer in record.removed_edges:
        edges[layer].add(edge)
        actors.update(edge)

    return MultiplexNetwork(
        actors=frozenset(actors),
        layers=tuple(layers),
        edges={l: frozenset(es) for l, es in edges.items()},
    )

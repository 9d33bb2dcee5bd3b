from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpxprobe.core import (
    BuildWarnings,
    MultiplexNetwork,
    UnknownActorError,
    UnknownLayerError,
    build_network,
    flatten,
    make_edge,
    neighbors,
    remove_layer,
)

from conftest import random_multiplex


def test_flatten_both_layers_is_path(toy1):
    graph = flatten(toy1, ["L1", "L2"])
    assert graph.nodes == frozenset("abcd")
    assert graph.edges == frozenset({("a", "b"), ("b", "c"), ("c", "d")})


def test_flatten_single_layer_keeps_isolates(toy1):
    graph = flatten(toy1, ["L1"])
    assert graph.edges == frozenset({("a", "b"), ("b", "c")})
    assert "d" in graph.nodes  # d has no L1 edges but stays in the node set


def test_flatten_of_identical_layers_collapses():
    net = build_network(["X", "Y"], [("a", "b", "X"), ("a", "b", "Y"), ("b", "c", "X"), ("b", "c", "Y")])
    assert len(flatten(net, ["X", "Y"]).edges) == len(net.edges["X"])


def test_flatten_unknown_layer_names_the_id(toy1):
    with pytest.raises(UnknownLayerError, match="nope"):
        flatten(toy1, ["L1", "nope"])
    with pytest.raises(ValueError):
        flatten(toy1, [])


def test_neighbors(toy1):
    assert neighbors(toy1, "b", "L1") == {"a", "c"}
    assert neighbors(toy1, "a", "L2") == set()
    assert neighbors(toy1, "c", "L2") == {"b", "d"}
    with pytest.raises(UnknownActorError):
        neighbors(toy1, "zz", "L1")
    with pytest.raises(UnknownLayerError):
        neighbors(toy1, "a", "L9")


def test_remove_layer(toy1):
    smaller = remove_layer(toy1, "L2")
    assert smaller.layers == ("L1",)
    assert smaller.edges["L1"] == toy1.edges["L1"]
    assert smaller.actors == toy1.actors  # actors never disappear with a layer
    with pytest.raises(ValueError):
        remove_layer(smaller, "L1")


def test_remove_then_readd_empty_layer_same_flatten(toy1):
    smaller = remove_layer(toy1, "L2")
    readded = MultiplexNetwork(
        actors=smaller.actors,
        layers=smaller.layers + ("L2",),
        edges={**smaller.edges, "L2": frozenset()},
    )
    assert flatten(readded, readded.layers).edges == flatten(smaller, smaller.layers).edges


def test_build_network_drops_self_loops_and_duplicates():
    warnings = BuildWarnings()
    net = build_network(
        ["L1"],
        [("a", "a", "L1"), ("a", "b", "L1"), ("b", "a", "L1")],
        warnings=warnings,
    )
    assert net.edges["L1"] == frozenset({("a", "b")})
    assert warnings.self_loops_dropped == 1
    assert warnings.duplicate_edges_dropped == 1


def test_make_edge_canonical():
    assert make_edge("b", "a") == ("a", "b")
    with pytest.raises(ValueError):
        make_edge("a", "a")


def test_constructor_rejects_garbage():
    with pytest.raises(ValueError):
        MultiplexNetwork(actors=frozenset("ab"), layers=("L", "L"), edges={"L": frozenset()})
    with pytest.raises(ValueError):
        MultiplexNetwork(actors=frozenset("ab"), layers=("L",), edges={})
    with pytest.raises(ValueError):
        MultiplexNetwork(
            actors=frozenset("ab"), layers=("L",), edges={"L": frozenset({("b", "a")})}
        )
    with pytest.raises(UnknownLayerError):
        build_network(["L"], [("a", "b", "M")])


def test_labels_validated():
    with pytest.raises(ValueError):
        build_network(["bad layer"], [])
    with pytest.raises(ValueError):
        MultiplexNetwork(actors=frozenset({"a b"}), layers=("L",), edges={"L": frozenset()})


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=30, deadline=None)
def test_flatten_size_bounds(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=15, max_layers=4)
    merged = flatten(net, net.layers)
    total = sum(len(net.edges[layer]) for layer in net.layers)
    assert len(merged.edges) <= total
    pairwise_disjoint = all(
        not (net.edges[a] & net.edges[b])
        for i, a in enumerate(net.layers)
        for b in net.layers[i + 1 :]
    )
    assert (len(merged.edges) == total) == pairwise_disjoint
    # single-layer flatten is the layer itself
    for layer in net.layers:
        assert flatten(net, [layer]).edges == net.edges[layer]


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=20, deadline=None)
def test_layer_duplication_does_not_change_flatten(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=12, max_layers=3)
    duplicated = MultiplexNetwork(
        actors=net.actors,
        layers=net.layers + ("dup",),
        edges={**net.edges, "dup": net.edges[net.layers[0]]},
    )
    assert flatten(duplicated, duplicated.layers).edges == flatten(net, net.layers).edges

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracles as oracle
from mpxprobe.core import FlattenedGraph, MultiplexNetwork, build_network, flatten
from mpxprobe.metrics import (
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

from conftest import random_graph, random_multiplex


def graph_of(*edges: tuple[str, str], isolates: tuple[str, ...] = ()) -> FlattenedGraph:
    canon = {(u, v) if u < v else (v, u) for u, v in edges}
    nodes = {n for e in canon for n in e} | set(isolates)
    return FlattenedGraph(nodes=frozenset(nodes), edges=frozenset(canon))


P4 = graph_of(("a", "b"), ("b", "c"), ("c", "d"))
K3 = graph_of(("a", "b"), ("b", "c"), ("a", "c"))
K4 = graph_of(*itertools.combinations("abcd", 2))
C5 = graph_of(("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("a", "e"))
K4_MINUS_EDGE = graph_of(("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"))


# hand values: P4 distances 1,2,3,1,2,1; K4-e local ccs {2/3, 2/3, 1, 1}
@pytest.mark.parametrize(
    "graph,d,apl,cc",
    [
        (P4, 3, 10 / 6, 0.0),
        (K3, 1, 1.0, 1.0),
        (K4, 1, 1.0, 1.0),
        (C5, 2, 1.5, 0.0),
        (K4_MINUS_EDGE, 2, 7 / 6, 5 / 6),
    ],
)
def test_hand_values(graph, d, apl, cc):
    assert diameter(graph) == d
    assert average_path_length(graph) == pytest.approx(apl, abs=1e-12)
    assert clustering_coefficient(graph) == pytest.approx(cc, abs=1e-12)


def test_edgeless_graph_conventions():
    empty = FlattenedGraph(nodes=frozenset("abc"), edges=frozenset())
    assert diameter(empty) == 0
    assert average_path_length(empty) == 0.0
    assert clustering_coefficient(empty) == 0.0


def test_disconnected_uses_finite_pairs():
    two_edges = graph_of(("a", "b"), ("c", "d"))
    assert diameter(two_edges) == 1
    assert average_path_length(two_edges) == 1.0
    report = metrics_report(
        build_network(["L"], [("a", "b", "L"), ("c", "d", "L")]), ["L"]
    )
    assert not report.is_connected


def test_largest_component_scope():
    # triangle plus a far-away path of length 2
    graph = graph_of(("a", "b"), ("b", "c"), ("a", "c"), ("x", "y"), ("y", "z"))
    assert diameter(graph, scope="finite-pairs") == 2
    assert diameter(graph, scope="largest-component") == 1
    assert average_path_length(graph, scope="largest-component") == 1.0


def test_global_transitivity_mode():
    # one triangle on a,b,c plus a pendant d: 3 triangles-as-closed-wedges over 8 wedges
    graph = graph_of(("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"))
    assert clustering_coefficient(graph, mode="global") == pytest.approx(3 / 5, abs=1e-12)
    assert clustering_coefficient(graph) == pytest.approx((1 + 1 + 1 / 3) / 3, abs=1e-12)


def test_metrics_report_toy1(toy1):
    report = metrics_report(toy1)
    assert report.diameter == 3
    assert report.clustering_coefficient == 0.0
    assert report.avg_path_length == pytest.approx(10 / 6, abs=1e-12)
    assert report.is_connected
    assert report.node_count == 4 and report.edge_count == 3


def test_metrics_report_empty_layer():
    net = build_network(["L"], [], actors=["a", "b"])
    report = metrics_report(net, ["L"])
    assert (report.diameter, report.clustering_coefficient, report.avg_path_length) == (0, 0.0, 0.0)
    assert not report.is_connected


def test_metrics_report_k4_layer():
    net = build_network(["L"], [(u, v, "L") for u, v in itertools.combinations("abcd", 2)])
    report = metrics_report(net)
    assert (report.diameter, report.clustering_coefficient, report.avg_path_length) == (1, 1.0, 1.0)
    assert report.is_connected


def test_jaccard_toy1(toy1):
    assert jaccard_similarity(toy1, ["L1", "L2"]) == pytest.approx(1 / 3, abs=1e-12)


def test_jaccard_identical_and_empty_layers():
    twin = build_network(["X", "Y"], [("a", "b", "X"), ("a", "b", "Y")])
    assert jaccard_similarity(twin, ["X", "Y"]) == 1.0
    empty = build_network(["X", "Y"], [], actors=["a"])
    assert jaccard_similarity(empty, ["X", "Y"]) == 1.0


def test_jaccard_needs_two_layers(toy1):
    with pytest.raises(ValueError):
        jaccard_similarity(toy1, ["L1"])
    with pytest.raises(ValueError):
        jaccard_similarity(toy1, ["L1", "L1"])


def test_x_relevance_toy1(toy1):
    assert x_relevance(toy1, "b", "L1") == pytest.approx(0.5)
    assert x_relevance(toy1, "a", "L2") == 0.0
    # every edge of a exists only on L1
    assert x_relevance(toy1, "a", "L1") == 1.0


def test_x_relevance_table_and_means(toy1):
    table = x_relevance_table(toy1)
    assert table.get("b", "L1") == pytest.approx(0.5)
    means = mean_x_relevance(toy1)
    assert means["L1"] == pytest.approx((1.0 + 0.5 + 0.0 + 0.0) / 4)
    assert means["L2"] == pytest.approx((0.0 + 0.0 + 0.5 + 1.0) / 4)


def test_similarity_matrix_invariants():
    rng = np.random.default_rng(7)
    net = random_multiplex(rng, max_actors=15, max_layers=4)
    matrix = similarity_matrix(net)
    for layer in net.layers:
        assert matrix.get(layer, layer) == 1.0
    if len(net.layers) >= 2:
        assert matrix.combined <= min(matrix.pairwise.values()) + 1e-12


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=60, deadline=None)
def test_oracle_equivalence_random_multiplexes(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=12, max_layers=4)
    layers = list(net.layers)
    assert jaccard_similarity(net, layers) == oracle.jaccard(net, layers)
    for a_ix in range(len(layers)):
        for b_ix in range(a_ix + 1, len(layers)):
            pair = [layers[a_ix], layers[b_ix]]
            assert jaccard_similarity(net, pair) == oracle.jaccard(net, pair)
    for actor in sorted(net.actors)[:5]:
        for layer in layers:
            assert x_relevance(net, actor, layer) == oracle.x_relevance(net, actor, layer)


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=40, deadline=None)
def test_path_metrics_match_oracle(seed):
    rng = np.random.default_rng(seed)
    graph = random_graph(rng, max_nodes=16)
    assert diameter(graph) == oracle.diameter(graph)
    assert average_path_length(graph) == pytest.approx(oracle.average_path_length(graph), abs=1e-12)
    assert clustering_coefficient(graph) == pytest.approx(oracle.clustering(graph), abs=1e-12)


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=25, deadline=None)
def test_jaccard_permutation_invariant_and_monotone(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=12, max_layers=4)
    layers = list(net.layers)
    forward = jaccard_similarity(net, layers)
    assert jaccard_similarity(net, list(reversed(layers))) == forward
    # adding layers can only shrink the intersection and grow the union
    for size in range(2, len(layers)):
        assert jaccard_similarity(net, layers[: size + 1]) <= jaccard_similarity(
            net, layers[:size]
        ) + 1e-12


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=25, deadline=None)
def test_exclusivity_partitions_flat_degree(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=12, max_layers=4)
    merged = flatten(net, net.layers)
    adjacency = merged.adjacency()
    for actor in net.actors:
        flat_deg = len(adjacency[actor])
        exclusive_total = 0
        shared = 0
        for nb in adjacency[actor]:
            pair = (actor, nb) if actor < nb else (nb, actor)
            carriers = [l for l in net.layers if pair in net.edges[l]]
            if len(carriers) == 1:
                exclusive_total += 1
            else:
                shared += 1
        assert exclusive_total + shared == flat_deg
        if flat_deg:
            summed = sum(
                x_relevance(net, actor, layer) * flat_deg for layer in net.layers
            )
            assert summed == pytest.approx(exclusive_total, abs=1e-9)


def relabel(net: MultiplexNetwork, prefix: str) -> MultiplexNetwork:
    mapping = {a: f"{prefix}{a}" for a in net.actors}
    return MultiplexNetwork(
        actors=frozenset(mapping.values()),
        layers=net.layers,
        edges={
            layer: frozenset(
                tuple(sorted((mapping[u], mapping[v]))) for u, v in net.edges[layer]
            )
            for layer in net.layers
        },
    )


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=20, deadline=None)
def test_relabeling_invariance(seed):
    rng = np.random.default_rng(seed)
    net = random_multiplex(rng, max_actors=12, max_layers=3)
    renamed = relabel(net, "zz_")
    assert metrics_report(net) == metrics_report(renamed)
    assert jaccard_similarity(net, net.layers) == jaccard_similarity(renamed, renamed.layers)
    mine = sorted(x_relevance_table(net).values.values())
    theirs = sorted(x_relevance_table(renamed).values.values())
    assert mine == theirs


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=40, deadline=None)
def test_apl_bounded_by_diameter(seed):
    rng = np.random.default_rng(seed)
    graph = random_graph(rng, max_nodes=20)
    assert average_path_length(graph) <= diameter(graph) + 1e-12


def test_large_graph_backend_matches_oracle():
    # exceeds the dense-representation cutoff, exercising the sparse path
    rng = np.random.default_rng(42)
    n = 180
    nodes = [f"n{i:03d}" for i in range(n)]
    edges = set()
    for _ in range(420):
        i, j = rng.integers(0, n, 2)
        if i != j:
            edges.add(tuple(sorted((nodes[int(i)], nodes[int(j)]))))
    graph = FlattenedGraph(nodes=frozenset(nodes), edges=frozenset(edges))
    assert diameter(graph) == oracle.diameter(graph)
    assert average_path_length(graph) == pytest.approx(
        oracle.average_path_length(graph), abs=1e-12
    )
    assert clustering_coefficient(graph) == pytest.approx(oracle.clustering(graph), abs=1e-12)

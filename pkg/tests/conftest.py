from __future__ import annotations

import numpy as np
import pytest

from mpxprobe.core import FlattenedGraph, MultiplexNetwork, build_network


@pytest.fixture
def toy1() -> MultiplexNetwork:
    """Two layers over four actors; flattens to the path a-b-c-d."""
    return build_network(
        ["L1", "L2"],
        [("a", "b", "L1"), ("b", "c", "L1"), ("b", "c", "L2"), ("c", "d", "L2")],
    )


def random_graph(rng: np.random.Generator, max_nodes: int = 50) -> FlattenedGraph:
    n = int(rng.integers(2, max_nodes + 1))
    p = float(rng.uniform(0.02, 0.6))
    nodes = [f"n{i:02d}" for i in range(n)]
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((nodes[i], nodes[j]))
    return FlattenedGraph(nodes=frozenset(nodes), edges=frozenset(edges))


def random_multiplex(
    rng: np.random.Generator, max_actors: int = 30, max_layers: int = 4
) -> MultiplexNetwork:
    n = int(rng.integers(2, max_actors + 1))
    n_layers = int(rng.integers(2, max_layers + 1))
    actors = [f"a{i:02d}" for i in range(n)]
    layers = [f"L{k}" for k in range(n_layers)]
    triples = []
    for layer in layers:
        p = float(rng.uniform(0.02, 0.4))
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    triples.append((actors[i], actors[j], layer))
    return build_network(layers, triples, actors=actors)

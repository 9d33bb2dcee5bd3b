"""Synthetic preferential-attachment layers and two-layer multiplexes.

Single layers come from the Barabasi-Albert growth process: an m-clique
core, then one node at a time attaching to ``m`` distinct existing nodes
picked with probability proportional to current degree. The edge count is
closed-form: ``C(m,2) + (n-m)*m``.

Two-layer multiplexes hit a target inter-layer similarity exactly by
construction: with equal layer sizes ``E`` and ``k`` shared edges the
similarity is ``k / (2E - k)``, so ``k = round(2*E*s / (1+s))``. The second
layer is ``k`` edges sampled uniformly from the first plus ``E - k`` fresh
edges drawn preferentially over the first layer's degrees, rejecting pairs
present in either layer. A bounded swap loop nudges ``k`` if the realized
value ever lands outside tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ActorId, Edge, FlattenedGraph, MultiplexNetwork
from .metrics import jaccard_similarity
from .rng import Rng, mix

__all__ = [
    "SynthSpec",
    "GenerationError",
    "generate_ba",
    "generate_multiplex_with_similarity",
    "generate_similarity_sweep",
]

_DEFAULT_TOLERANCE = 0.02
_LAYER_A = "L0"
_LAYER_B = "L1"

# sub-stream salts for the independent draws in one generation run
_STREAM_BA = 1
_STREAM_SHARED = 2
_STREAM_FRESH = 3


class GenerationError(RuntimeError):
    """Target similarity unreachable; carries the best similarity achieved."""

    def __init__(self, message: str, best_similarity: float):
        super().__init__(f"{message} (best achieved: {best_similarity:.6f})")
        self.best_similarity = best_similarity


@dataclass(frozen=True)
class SynthSpec:
    """Parameters for one two-layer synthetic network."""

    n: int
    m: int
    target_similarity: float
    seed: int
    tolerance: float = _DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        _check_ba_params(self.n, self.m)
        if not 0.0 <= self.target_similarity <= 1.0:
            raise ValueError(f"target similarity must be in [0, 1], got {self.target_similarity}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def _check_ba_params(n: int, m: int) -> None:
    if m < 1:
        raise ValueError(f"attachment parameter m must be >= 1, got {m}")
    if n <= m:
        raise ValueError(f"node count n must exceed m, got n={n}, m={m}")


def _actor_label(i: int, n: int) -> ActorId:
    width = len(str(n - 1))
    return f"v{i:0{width}d}"


def ba_edge_count(n: int, m: int) -> int:
    """Closed-form edge count of the growth process."""
    return math.comb(m, 2) + (n - m) * m


def _generate_ba_edges(n: int, m: int, rng: Rng, labels: list[ActorId]) -> set[Edge]:
    edges: set[Edge] = set()

    def add(a: int, b: int) -> None:
        u, v = labels[a], labels[b]
        edges.add((u, v) if u < v else (v, u))

    # m-clique core
    for i in range(m):
        for j in range(i + 1, m):
            add(i, j)
    # one endpoint slot per incident edge: uniform draws give degree-proportional picks
    repeated: list[int] = []
    for i in range(m):
        repeated.extend([i] * (m - 1))
    for source in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            if repeated:
                targets.add(rng.choice(repeated))
            else:
                # degenerate m=1 start: the core K1 has degree zero
                targets.add(rng.randbelow(source))
        for t in sorted(targets):
            add(source, t)
            repeated.append(t)
        repeated.extend([source] * m)
    return edges


def generate_ba(n: int, m: int, seed: int) -> FlattenedGraph:
    """Grow a connected preferential-attachment graph on ``n`` labeled nodes."""
    _check_ba_params(n, m)
    labels = [_actor_label(i, n) for i in range(n)]
    edges = _generate_ba_edges(n, m, Rng(mix(seed, _STREAM_BA)), labels)
    return FlattenedGraph(nodes=frozenset(labels), edges=frozenset(edges))


def _shared_edge_target(edge_count: int, similarity: float) -> int:
    # solves k / (2E - k) = s for equal layer sizes, rounded half-up
    return math.floor(2 * edge_count * similarity / (1 + similarity) + 0.5)


def _draw_fresh_edges(
    count: int,
    base_edges: set[Edge],
    taken: set[Edge],
    labels: list[ActorId],
    rng: Rng,
) -> set[Edge]:
    """Preferential endpoint pairs avoiding ``base_edges`` and ``taken``."""
    repeated: list[int] = []
    index = {label: i for i, label in enumerate(labels)}
    for u, v in sorted(base_edges):
        repeated.append(index[u])
        repeated.append(index[v])
    fresh: set[Edge] = set()
    budget = 1000 * max(count, 1)
    while len(fresh) < count and budget > 0:
        budget -= 1
        a = rng.choice(repeated)
        b = rng.choice(repeated)
        if a == b:
            continue
        u, v = labels[a], labels[b]
        edge = (u, v) if u < v else (v, u)
        if edge in base_edges or edge in taken or edge in fresh:
            continue
        fresh.add(edge)
    if len(fresh) < count:
        raise GenerationError(
            f"could not draw {count} fresh edges disjoint from the base layer",
            best_similarity=float("nan"),
        )
    return fresh


def _realized_similarity(shared: int, edge_count: int) -> float:
    if edge_count == 0:
        return 1.0
    return shared / (2 * edge_count - shared)


def generate_multiplex_with_similarity(spec: SynthSpec) -> MultiplexNetwork:
    """Two same-size layers over one actor set at the requested similarity.

    The realized value (checked with :func:`mpxprobe.metrics.jaccard_similarity`)
    is within ``spec.tolerance`` of the target; targets 0 and 1 are met
    exactly. Deterministic in ``spec.seed``.
    """
    labels = [_actor_label(i, spec.n) for i in range(spec.n)]
    edges_a = _generate_ba_edges(spec.n, spec.m, Rng(mix(spec.seed, _STREAM_BA)), labels)
    edge_count = len(edges_a)
    pool = sorted(edges_a)

    k = _shared_edge_target(edge_count, spec.target_similarity)
    k = min(max(k, 0), edge_count)
    shared_rng = Rng(mix(spec.seed, _STREAM_SHARED))
    fresh_rng = Rng(mix(spec.seed, _STREAM_FRESH))

    best: float | None = None
    for _ in range(8):  # bounded repair: nudge k toward the target if needed
        shared = set(shared_rng.shuffle_prefix(pool, k))
        fresh = _draw_fresh_edges(edge_count - k, edges_a, shared, labels, fresh_rng)
        realized = _realized_similarity(k, edge_count)
        if best is None or abs(realized - spec.target_similarity) < abs(
            best - spec.target_similarity
        ):
            best = realized
        if abs(realized - spec.target_similarity) <= spec.tolerance:
            edges_b = shared | fresh
            return MultiplexNetwork(
                actors=frozenset(labels),
                layers=(_LAYER_A, _LAYER_B),
                edges={_LAYER_A: frozenset(edges_a), _LAYER_B: frozenset(edges_b)},
            )
        k = min(max(k + (1 if realized < spec.target_similarity else -1), 0), edge_count)
    raise GenerationError(
        f"similarity {spec.target_similarity} unreachable at tolerance {spec.tolerance}",
        best_similarity=best if best is not None else float("nan"),
    )


def generate_similarity_sweep(
    n: int, m: int, base_seed: int, tolerance: float = _DEFAULT_TOLERANCE
) -> list[MultiplexNetwork]:
    """Eleven two-layer networks at similarity targets 0.0, 0.1, ..., 1.0."""
    _check_ba_params(n, m)
    networks: list[MultiplexNetwork] = []
    for step in range(11):
        spec = SynthSpec(
            n=n,
            m=m,
            target_similarity=step / 10,
            seed=mix(base_seed, step),
            tolerance=tolerance,
        )
        networks.append(generate_multiplex_with_similarity(spec))
    return networks


def realized_similarity(network: MultiplexNetwork) -> float:
    """Convenience: measured similarity of a two-layer synthetic network."""
    return jaccard_similarity(network, network.layers)

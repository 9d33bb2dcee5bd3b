"""Sweep runners: how much do structural metrics drift as data goes missing.

Each runner perturbs a network over a grid of missing-data fractions,
recomputes flatten metrics (D, CC, APL) or per-layer exclusivity means, and
reports the percent variation against the unperturbed value, averaged over
seeded replicates. Replicate r of a sweep uses the sub-stream
``mix(base_seed, ..., r)``; within one replicate the removals are nested
across fractions, so a sweep is internally consistent.

Variation is ``100 * |perturbed - original| / |original|``. When the
original value is 0 and the perturbed one is not, the cell is undefined
(``None``): it is serialized as ``undefined``, rendered hatched, and meant
to be excluded from trend statistics.

Grids serialize to CSV (deterministic, 6 decimal places) and to monochrome
SVG heatmaps where darkness grows with variation, max-normalized per
metric.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

from .core import LayerId, MultiplexNetwork, remove_layer
from .metrics import MetricsReport, jaccard_similarity, mean_x_relevance, metrics_report
from .perturb import remove_edges_random
from .rng import mix

__all__ = [
    "METRIC_NAMES",
    "VariationCell",
    "SweepGrid",
    "LayerRemovalRow",
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

METRIC_NAMES = ("D", "CC", "APL")

T = TypeVar("T")
R = TypeVar("R")


def variation_percent(original: float, perturbed: float) -> float | None:
    """Percent change against the original; ``None`` when undefined.

    Zero original and zero perturbed is 0; zero original with a nonzero
    perturbed value has no finite ratio and yields ``None``.
    """
    if original == 0.0:
        return 0.0 if perturbed == 0.0 else None
    return 100.0 * abs(perturbed - original) / abs(original)


@dataclass(frozen=True)
class VariationCell:
    """One (fraction, column, metric) cell aggregated over replicates."""

    metric: str
    original: float
    perturbed: float  # replicate mean
    variation_pct: float | None  # replicate mean; None = undefined
    replicates: int


@dataclass(frozen=True)
class SweepGrid:
    """Missing-fraction rows by sweep-specific columns, one cell per metric."""

    row_axis: str
    col_axis: str
    rows: tuple[float, ...]
    cols: tuple[str, ...]
    metrics: tuple[str, ...]
    cells: Mapping[tuple[int, int, str], VariationCell]
    replicates: int

    def cell(self, row: int, col: int, metric: str) -> VariationCell:
        return self.cells[(row, col, metric)]


@dataclass(frozen=True)
class LayerRemovalRow:
    removed_first: LayerId
    removed_second: LayerId
    # metric -> (variation after first removal, after both), vs the full flatten
    variations: Mapping[str, tuple[float | None, float | None]]


@dataclass(frozen=True)
class LayerRemovalTable:
    metrics: tuple[str, ...]
    rows: tuple[LayerRemovalRow, ...]


@dataclass(frozen=True)
class XRelevanceSweep:
    """Replicate-mean of the per-layer actor-mean exclusivity, per fraction."""

    target_layer: LayerId
    fractions: tuple[float, ...]
    layers: tuple[LayerId, ...]
    means: Mapping[tuple[int, LayerId], float]
    replicates: int

    def curve(self, layer: LayerId) -> list[float]:
        return [self.means[(i, layer)] for i in range(len(self.fractions))]


def _metric_values(report: MetricsReport) -> dict[str, float]:
    return {
        "D": float(report.diameter),
        "CC": report.clustering_coefficient,
        "APL": report.avg_path_length,
    }


def _check_fractions(fractions: Sequence[float]) -> tuple[float, ...]:
    fractions = tuple(fractions)
    if not fractions:
        raise ValueError("fraction list must be nonempty")
    if any(not 0.0 <= f <= 1.0 for f in fractions):
        raise ValueError("fractions must lie in [0, 1]")
    if any(a > b for a, b in zip(fractions, fractions[1:])):
        raise ValueError("fractions must be sorted ascending")
    return fractions


def _map_ordered(fn: Callable[[T], R], items: Sequence[T], threads: int) -> list[R]:
    """Apply ``fn`` over independent work items, folding in input order."""
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _aggregate_cells(
    rows: tuple[float, ...],
    cols: tuple[str, ...],
    metrics: tuple[str, ...],
    originals: dict[int, dict[str, float]],
    samples: dict[tuple[int, int, str], list[float]],
    replicates: int,
) -> dict[tuple[int, int, str], VariationCell]:
    cells: dict[tuple[int, int, str], VariationCell] = {}
    for ri in range(len(rows)):
        for ci in range(len(cols)):
            for metric in metrics:
                values = samples[(ri, ci, metric)]
                original = originals[ci][metric]
                variations = [variation_percent(original, value) for value in values]
                if any(v is None for v in variations):
                    variation: float | None = None
                else:
                    variation = sum(variations) / len(variations)
                cells[(ri, ci, metric)] = VariationCell(
                    metric=metric,
                    original=original,
                    perturbed=sum(values) / len(values),
                    variation_pct=variation,
                    replicates=replicates,
                )
    return cells


def run_missing_sweep(
    network: MultiplexNetwork,
    layers: Iterable[LayerId] | None,
    fractions: Sequence[float],
    replicates: int,
    base_seed: int,
    threads: int = 1,
) -> SweepGrid:
    """Remove edge fractions from the target layers; track D/CC/APL drift.

    One column; rows are the fractions. Metrics are computed on the flatten
    of all layers. Replicate r removes via ``mix(base_seed, r)`` and the
    removals at successive fractions are nested.
    """
    fractions = _check_fractions(fractions)
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    target = list(layers) if layers is not None else list(network.layers)
    baseline = _metric_values(metrics_report(network))
    col_label = "+".join(target)

    def one_replicate(rep: int) -> list[dict[str, float]]:
        seed = mix(base_seed, rep)
        out = []
        for fraction in fractions:
            perturbed, _ = remove_edges_random(network, target, fraction, seed)
            out.append(_metric_values(metrics_report(perturbed)))
        return out

    per_rep = _map_ordered(one_replicate, list(range(replicates)), threads)
    samples: dict[tuple[int, int, str], list[float]] = {
        (ri, 0, metric): [] for ri in range(len(fractions)) for metric in METRIC_NAMES
    }
    for rep_values in per_rep:
        for ri, values in enumerate(rep_values):
            for metric in METRIC_NAMES:
                samples[(ri, 0, metric)].append(values[metric])
    cells = _aggregate_cells(
        fractions, (col_label,), METRIC_NAMES, {0: baseline}, samples, replicates
    )
    return SweepGrid(
        row_axis="missing_fraction",
        col_axis="target_layers",
        rows=fractions,
        cols=(col_label,),
        metrics=METRIC_NAMES,
        cells=cells,
        replicates=replicates,
    )


def run_similarity_sweep(
    networks: Sequence[MultiplexNetwork],
    fractions: Sequence[float],
    replicates: int,
    base_seed: int,
    threads: int = 1,
) -> SweepGrid:
    """Edge-removal sweep over networks of varying inter-layer similarity.

    Expects the output of ``generate_similarity_sweep``; edges are removed
    from each network's first layer only. Columns are labeled with the
    measured inter-layer similarity of each network.
    """
    fractions = _check_fractions(fractions)
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    if not networks:
        raise ValueError("need at least one network")
    cols = tuple(
        f"{jaccard_similarity(net, net.layers):.2f}" for net in networks
    )
    originals = {ci: _metric_values(metrics_report(net)) for ci, net in enumerate(networks)}

    def one_cell(task: tuple[int, int]) -> list[dict[str, float]]:
        ci, rep = task
        net = networks[ci]
        seed = mix(base_seed, ci, rep)
        first_layer = [net.layers[0]]
        out = []
        for fraction in fractions:
            perturbed, _ = remove_edges_random(net, first_layer, fraction, seed)
            out.append(_metric_values(metrics_report(perturbed)))
        return out

    tasks = [(ci, rep) for ci in range(len(networks)) for rep in range(replicates)]
    results = _map_ordered(one_cell, tasks, threads)
    samples: dict[tuple[int, int, str], list[float]] = {
        (ri, ci, metric): []
        for ri in range(len(fractions))
        for ci in range(len(networks))
        for metric in METRIC_NAMES
    }
    for (ci, _rep), rep_values in zip(tasks, results):
        for ri, values in enumerate(rep_values):
            for metric in METRIC_NAMES:
                samples[(ri, ci, metric)].append(values[metric])
    cells = _aggregate_cells(fractions, cols, METRIC_NAMES, originals, samples, replicates)
    return SweepGrid(
        row_axis="missing_fraction",
        col_axis="similarity",
        rows=fractions,
        cols=cols,
        metrics=METRIC_NAMES,
        cells=cells,
        replicates=replicates,
    )


def run_layer_removal(
    network: MultiplexNetwork, ordered_pairs: Sequence[tuple[LayerId, LayerId]]
) -> LayerRemovalTable:
    """Variation after removing one layer, then a second, vs the full flatten."""
    baseline = _metric_values(metrics_report(network))
    rows: list[LayerRemovalRow] = []
    for first, second in ordered_pairs:
        if first == second:
            raise ValueError(f"pair must name two distinct layers, got {first!r} twice")
        if len(network.layers) < 3:
            raise ValueError("removing two layers would leave less than one layer")
        after_first = remove_layer(network, first)
        after_second = remove_layer(after_first, second)
        values_first = _metric_values(metrics_report(after_first))
        values_second = _metric_values(metrics_report(after_second))
        variations = {
            metric: (
                variation_percent(baseline[metric], values_first[metric]),
                variation_percent(baseline[metric], values_second[metric]),
            )
            for metric in METRIC_NAMES
        }
        rows.append(
            LayerRemovalRow(removed_first=first, removed_second=second, variations=variations)
        )
    return LayerRemovalTable(metrics=METRIC_NAMES, rows=tuple(rows))


def run_xrelevance_sweep(
    network: MultiplexNetwork,
    target_layer: LayerId,
    fractions: Sequence[float],
    replicates: int,
    base_seed: int,
    threads: int = 1,
) -> XRelevanceSweep:
    """Remove edges from one layer; track each layer's mean exclusivity."""
    fractions = _check_fractions(fractions)
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    network.layer_index(target_layer)  # validates existence

    def one_replicate(rep: int) -> list[dict[LayerId, float]]:
        seed = mix(base_seed, rep)
        out = []
        for fraction in fractions:
            perturbed, _ = remove_edges_random(network, [target_layer], fraction, seed)
            out.append(mean_x_relevance(perturbed))
        return out

    per_rep = _map_ordered(one_replicate, list(range(replicates)), threads)
    means: dict[tuple[int, LayerId], float] = {}
    for fi in range(len(fractions)):
        for layer in network.layers:
            total = sum(per_rep[rep][fi][layer] for rep in range(replicates))
            means[(fi, layer)] = total / replicates
    return XRelevanceSweep(
        target_layer=target_layer,
        fractions=fractions,
        layers=network.layers,
        means=means,
        replicates=replicates,
    )


# ---------------------------------------------------------------------------
# serialization


def _fmt(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.6f}"


def emit_csv(
    result: SweepGrid | LayerRemovalTable | XRelevanceSweep,
    header_comments: Sequence[str] = (),
) -> bytes:
    """Serialize a sweep result as deterministic UTF-8 CSV (LF, 6 decimals)."""
    lines = [f"# {comment}" for comment in header_comments]
    if isinstance(result, SweepGrid):
        lines.append(f"{result.row_axis},{result.col_axis},metric,original,perturbed,variation_pct,replicates")
        for ri, fraction in enumerate(result.rows):
            for ci, col in enumerate(result.cols):
                for metric in result.metrics:
                    cell = result.cells[(ri, ci, metric)]
                    lines.append(
                        f"{fraction:.6f},{col},{metric},{cell.original:.6f},"
                        f"{cell.perturbed:.6f},{_fmt(cell.variation_pct)},{cell.replicates}"
                    )
    elif isinstance(result, LayerRemovalTable):
        lines.append("removed_first,removed_second,metric,variation_after_first,variation_after_second")
        for row in result.rows:
            for metric in result.metrics:
                first, second = row.variations[metric]
                lines.append(
                    f"{row.removed_first},{row.removed_second},{metric},{_fmt(first)},{_fmt(second)}"
                )
    elif isinstance(result, XRelevanceSweep):
        lines.append("missing_fraction,layer,mean_xrelevance,replicates")
        for fi, fraction in enumerate(result.fractions):
            for layer in result.layers:
                lines.append(
                    f"{fraction:.6f},{layer},{result.means[(fi, layer)]:.6f},{result.replicates}"
                )
    else:
        raise TypeError(f"cannot serialize {type(result).__name__}")
    return ("\n".join(lines) + "\n").encode("utf-8")


_CELL = 34  # px
_LEFT = 70
_TOP = 40
_GAP = 46
_LIGHTEST = 246
_DARKEST = 46


def emit_heatmap(grid: SweepGrid, header_comments: Sequence[str] = ()) -> bytes:
    """Render a grid as a monochrome SVG heatmap, one panel per metric.

    Darkness is proportional to variation, normalized by the metric's max
    over the grid; an all-zero panel stays at the lightest shade. Undefined
    cells are hatched.
    """
    n_rows = len(grid.rows)
    n_cols = len(grid.cols)
    panel_w = n_cols * _CELL
    width = _LEFT + len(grid.metrics) * (panel_w + _GAP)
    height = _TOP + n_rows * _CELL + 30

    parts: list[str] = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    for comment in header_comments:
        parts.append(f"<!-- {comment} -->")
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    parts.append(
        '<defs><pattern id="undef" width="6" height="6" patternUnits="userSpaceOnUse">'
        '<rect width="6" height="6" fill="white"/>'
        '<path d="M0,6 L6,0" stroke="black" stroke-width="1"/></pattern></defs>'
    )
    parts.append(f'<rect width="{width}" height="{height}" fill="white"/>')

    maxima: dict[str, float] = {}
    for metric in grid.metrics:
        values = [
            cell.variation_pct
            for cell in grid.cells.values()
            if cell.metric == metric and cell.variation_pct is not None
        ]
        maxima[metric] = max(values) if values else 0.0

    for mi, metric in enumerate(grid.metrics):
        x0 = _LEFT + mi * (panel_w + _GAP)
        parts.append(
            f'<text x="{x0 + panel_w // 2}" y="{_TOP - 14}" text-anchor="middle" '
            f'font-family="monospace" font-size="13">{metric}</text>'
        )
        for ri in range(n_rows):
            y = _TOP + ri * _CELL
            if mi == 0:
                parts.append(
                    f'<text x="{_LEFT - 8}" y="{y + _CELL // 2 + 4}" text-anchor="end" '
                    f'font-family="monospace" font-size="11">{grid.rows[ri] * 100:g}%</text>'
                )
            for ci in range(n_cols):
                x = x0 + ci * _CELL
                cell = grid.cells[(ri, ci, metric)]
                if cell.variation_pct is None:
                    fill = "url(#undef)"
                else:
                    peak = maxima[metric]
                    intensity = 0.0 if peak == 0.0 else cell.variation_pct / peak
                    shade = round(_LIGHTEST - (_LIGHTEST - _DARKEST) * intensity)
                    fill = f"rgb({shade},{shade},{shade})"
                parts.append(
                    f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
                    f'fill="{fill}" stroke="rgb(180,180,180)" stroke-width="1"/>'
                )
        for ci in range(n_cols):
            x = x0 + ci * _CELL
            parts.append(
                f'<text x="{x + _CELL // 2}" y="{_TOP + n_rows * _CELL + 16}" '
                f'text-anchor="middle" font-family="monospace" font-size="10">{grid.cols[ci]}</text>'
            )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")

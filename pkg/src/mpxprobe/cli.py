"""Command-line interface.

One subcommand per task: ``metrics``, ``xrelevance``, ``perturb``,
``generate``, ``sweep-missing``, ``sweep-similarity``, ``layer-removal``,
``sweep-xrelevance``. Every run is reproducible from its arguments: the
effective configuration is echoed as a header comment into each artifact,
and identical argv plus identical input files give byte-identical outputs.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .core import MultiplexNetwork, UnknownActorError, UnknownLayerError, flatten
from .experiment import (
    emit_csv,
    emit_heatmap,
    run_layer_removal,
    run_missing_sweep,
    run_similarity_sweep,
    run_xrelevance_sweep,
)
from .metrics import (
    metrics_report,
    similarity_matrix,
    x_relevance_table,
)
from .mpxio import ParseError, parse_multiplex, write_multiplex
from .perturb import MECHANISMS, PerturbationRecord, PerturbationSpec, apply_spec
from .synthgen import (
    GenerationError,
    SynthSpec,
    generate_ba,
    generate_multiplex_with_similarity,
    generate_similarity_sweep,
)

_DEFAULT_SEED = 42

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for data errors
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _fmt_value(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return text if text else "0"


def _parse_fractions(text: str) -> list[float]:
    """``start:end:step`` percentages (inclusive), or a comma list, or one value."""
    if ":" in text:
        fields = text.split(":")
        if len(fields) != 3:
            raise ValueError(f"expected start:end:step, got {text!r}")
        start, end, step = (float(f) for f in fields)
        if step <= 0 or end < start:
            raise ValueError(f"bad fraction range {text!r}")
        values = []
        k = 0
        while True:
            value = start + k * step
            if value > end + 1e-9:
                break
            values.append(value / 100.0)
            k += 1
        return values
    return [float(f) / 100.0 for f in text.split(",")]


def _parse_thresholds(text: str) -> dict[str, int]:
    thresholds: dict[str, int] = {}
    for item in text.split(","):
        layer, _, value = item.partition("=")
        if not layer or not value:
            raise ValueError(f"expected layer=min_degree, got {item!r}")
        thresholds[layer] = int(value)
    return thresholds


def _parse_pairs(text: str) -> list[tuple[str, str]]:
    pairs = []
    for item in text.split(","):
        first, sep, second = item.partition(":")
        if not sep or not first or not second:
            raise ValueError(f"expected first:second, got {item!r}")
        pairs.append((first, second))
    return pairs


def _seed_from(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MPX_SEED")
    if env is not None:
        return int(env)
    return _DEFAULT_SEED


def _config_line(args: argparse.Namespace, seed: int) -> str:
    skip = {"func"}
    fields = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    fields["seed"] = seed
    return "config: " + " ".join(f"{k}={v}" for k, v in sorted(fields.items()))


def _load_network(args: argparse.Namespace) -> MultiplexNetwork:
    path = Path(args.input)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}") from exc
    return parse_multiplex(data, strict=getattr(args, "strict", False))


def _write_artifact(path: str, payload: bytes) -> None:
    Path(path).write_bytes(payload)


def _record_json(record: PerturbationRecord) -> str:
    doc = {
        "mechanism": record.spec.mechanism,
        "fraction": record.spec.fraction,
        "seed": record.spec.seed,
        "target_layers": list(record.spec.target_layers or []),
        "censor_thresholds": dict(record.spec.censor_thresholds or {}),
        "removed_edges": [[u, v, layer] for (u, v), layer in record.removed_edges],
        "removed_actors": list(record.removed_actors),
        "removed_layers": [[pos, layer] for pos, layer in record.removed_layers],
        "split_actors": [
            [actor, {layer: clone for layer, clone in mapping}]
            for actor, mapping in record.split_actors
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_metrics(args: argparse.Namespace) -> int:
    network = _load_network(args)
    subset = args.layers.split(",") if args.layers else list(network.layers)
    report = metrics_report(network, subset, scope=args.scope, cc_mode=args.cc_mode)
    line = (
        f"D={report.diameter} CC={_fmt_value(report.clustering_coefficient)} "
        f"APL={_fmt_value(report.avg_path_length)}"
    )
    if len(network.layers) >= 2:
        matrix = similarity_matrix(network)
        for a, b in sorted(matrix.pairwise):
            line += f" sim({a},{b})={_fmt_value(matrix.pairwise[(a, b)])}"
        if len(network.layers) > 2:
            line += f" sim(all)={_fmt_value(matrix.combined)}"
    print(line)
    print(
        f"nodes={report.node_count} edges={report.edge_count} "
        f"connected={'true' if report.is_connected else 'false'}"
    )
    return 0


def _cmd_xrelevance(args: argparse.Namespace) -> int:
    network = _load_network(args)
    table = x_relevance_table(network)
    layers = [args.layer] if args.layer else list(network.layers)
    for layer in layers:
        network.layer_index(layer)
    if args.mean:
        actors = network.sorted_actors()
        for layer in layers:
            total = sum(table.values[(actor, layer)] for actor in actors)
            mean = total / len(actors) if actors else 0.0
            print(f"{layer},{mean:.6f}")
        return 0
    actors = [args.actor] if args.actor else network.sorted_actors()
    for actor in actors:
        if actor not in network.actors:
            raise UnknownActorError(actor)
        for layer in layers:
            print(f"{actor},{layer},{table.values[(actor, layer)]:.6f}")
    return 0


def _cmd_perturb(args: argparse.Namespace) -> int:
    network = _load_network(args)
    seed = _seed_from(args)
    spec = PerturbationSpec(
        mechanism=args.mechanism,
        fraction=args.fraction,
        seed=seed,
        target_layers=tuple(args.layers.split(",")) if args.layers else None,
        censor_thresholds=_parse_thresholds(args.thresholds) if args.thresholds else None,
    )
    perturbed, record = apply_spec(network, spec)
    _write_artifact(args.out, write_multiplex(perturbed, (_config_line(args, seed),)))
    if args.record:
        Path(args.record).write_text(_record_json(record), encoding="utf-8")
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    seed = _seed_from(args)
    if args.similarity is None:
        graph = generate_ba(args.n, args.m, seed)
        network = MultiplexNetwork(
            actors=graph.nodes, layers=("L0",), edges={"L0": graph.edges}
        )
    else:
        spec = SynthSpec(
            n=args.n,
            m=args.m,
            target_similarity=args.similarity,
            seed=seed,
            tolerance=args.tolerance,
        )
        network = generate_multiplex_with_similarity(spec)
    _write_artifact(args.out, write_multiplex(network, (_config_line(args, seed),)))
    return 0


def _emit_grid(args: argparse.Namespace, grid, config: str) -> None:
    if args.csv:
        _write_artifact(args.csv, emit_csv(grid, (config,)))
    if getattr(args, "heatmap", None):
        _write_artifact(args.heatmap, emit_heatmap(grid, (config,)))


def _cmd_sweep_missing(args: argparse.Namespace) -> int:
    network = _load_network(args)
    seed = _seed_from(args)
    grid = run_missing_sweep(
        network,
        args.layers.split(",") if args.layers else None,
        _parse_fractions(args.fractions),
        args.replicates,
        seed,
        threads=args.threads,
    )
    _emit_grid(args, grid, _config_line(args, seed))
    return 0


def _cmd_sweep_similarity(args: argparse.Namespace) -> int:
    seed = _seed_from(args)
    networks = generate_similarity_sweep(args.n, args.m, seed, tolerance=args.tolerance)
    grid = run_similarity_sweep(
        networks, _parse_fractions(args.fractions), args.replicates, seed, threads=args.threads
    )
    _emit_grid(args, grid, _config_line(args, seed))
    return 0


def _cmd_layer_removal(args: argparse.Namespace) -> int:
    network = _load_network(args)
    table = run_layer_removal(network, _parse_pairs(args.pairs))
    payload = emit_csv(table, (_config_line(args, _seed_from(args)),))
    if args.csv:
        _write_artifact(args.csv, payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def _cmd_sweep_xrelevance(args: argparse.Namespace) -> int:
    network = _load_network(args)
    seed = _seed_from(args)
    sweep = run_xrelevance_sweep(
        network,
        args.layer,
        _parse_fractions(args.fractions),
        args.replicates,
        seed,
        threads=args.threads,
    )
    payload = emit_csv(sweep, (_config_line(args, seed),))
    if args.csv:
        _write_artifact(args.csv, payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_common(parser: argparse.ArgumentParser, *, seeded: bool = True) -> None:
    if seeded:
        parser.add_argument(
            "--seed", type=int, default=None, help="RNG seed (default: $MPX_SEED or 42)"
        )
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads (results are thread-count independent)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mpxprobe", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("metrics", help="flatten metrics and layer similarities")
    p.add_argument("--input", required=True, help="input .mpx file")
    p.add_argument("--layers", help="comma-separated layer subset (default: all)")
    p.add_argument("--strict", action="store_true", help="require layer/actor declarations")
    p.add_argument("--scope", choices=["finite-pairs", "largest-component"], default="finite-pairs")
    p.add_argument("--cc-mode", choices=["average", "global"], default="average")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("xrelevance", help="per-actor layer exclusivity values")
    p.add_argument("--input", required=True)
    p.add_argument("--layer", help="restrict to one layer")
    p.add_argument("--actor", help="restrict to one actor")
    p.add_argument("--mean", action="store_true", help="print per-layer means only")
    p.set_defaults(func=_cmd_xrelevance)

    p = sub.add_parser("perturb", help="apply one seeded perturbation")
    p.add_argument("--input", required=True)
    p.add_argument("--mechanism", required=True, choices=list(MECHANISMS))
    p.add_argument("--fraction", type=float, default=0.0)
    p.add_argument("--layers", help="target layers (comma-separated; default: all)")
    p.add_argument("--thresholds", help="degree-censor bars, e.g. L1=2,L2=3")
    p.add_argument("--out", required=True, help="output .mpx path")
    p.add_argument("--record", help="write removal record JSON here")
    _add_common(p)
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser("generate", help="synthetic network (one or two layers)")
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--m", type=int, default=3, help="edges per new node")
    p.add_argument("--similarity", type=float, help="two-layer target similarity; omit for one layer")
    p.add_argument("--tolerance", type=float, default=0.02)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("sweep-missing", help="edge-removal sweep on an input network")
    p.add_argument("--input", required=True)
    p.add_argument("--layers", help="layers to remove from (default: all)")
    p.add_argument("--fractions", default="5:50:5", help="percent range start:end:step")
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--csv", help="CSV output path")
    p.add_argument("--heatmap", help="SVG heatmap output path")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep_missing)

    p = sub.add_parser("sweep-similarity", help="sweep over 11 synthetic similarity levels")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--tolerance", type=float, default=0.02)
    p.add_argument("--fractions", default="1:10:1")
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--csv", help="CSV output path")
    p.add_argument("--heatmap", help="SVG heatmap output path")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep_similarity)

    p = sub.add_parser("layer-removal", help="two-stage layer removal table")
    p.add_argument("--input", required=True)
    p.add_argument("--pairs", required=True, help="ordered pairs, e.g. CO:LU,FB:WO")
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    _add_common(p, seeded=True)
    p.set_defaults(func=_cmd_layer_removal)

    p = sub.add_parser("sweep-xrelevance", help="per-layer exclusivity under edge removal")
    p.add_argument("--input", required=True)
    p.add_argument("--layer", required=True, help="layer to remove edges from")
    p.add_argument("--fractions", default="5:40:5")
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep_xrelevance)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, UnknownLayerError, UnknownActorError, GenerationError) as exc:
        print(f"error ({type(exc).__module__}): {exc}", file=sys.stderr)
        return DATA_ERROR
    except (ValueError, OSError) as exc:
        print(f"error ({type(exc).__module__}): {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())

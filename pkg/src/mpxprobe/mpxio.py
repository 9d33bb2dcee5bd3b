"""Line-oriented ``.mpx`` edge-list format.

Layout::

    #LAYERS
    lunch
    work
    #ACTORS
    alice
    bob
    #EDGES
    alice,bob,lunch

Sections may appear in any order; ``#ACTORS`` is optional. Any other line
starting with ``#`` is a comment, and ``#`` also starts a trailing comment
on data lines. Input with no section headers at all is treated as a bare
edge list. Permissive mode (the default) auto-declares layers and actors
seen in edges; strict mode requires declarations for both. Labels must be
nonempty and contain no commas or whitespace. UTF-8 throughout; LF or CRLF
accepted on input, LF written.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import IO

from .core import BuildWarnings, LayerId, MultiplexNetwork, build_network

__all__ = ["ParseError", "ParseStats", "parse_multiplex", "parse_multiplex_with_stats", "write_multiplex"]

log = logging.getLogger(__name__)

_SECTIONS = {"#LAYERS": "layers", "#ACTORS": "actors", "#EDGES": "edges"}


class ParseError(ValueError):
    """Malformed ``.mpx`` input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class ParseStats:
    """Accounting for lines that were collapsed or skipped during parsing."""

    duplicate_edges_collapsed: int = 0
    self_loops_skipped: int = 0


def _decode(source: str | bytes | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _check_label(label: str, kind: str, line_no: int) -> str:
    if not label:
        raise ParseError(line_no, f"empty {kind} label")
    if "," in label or any(ch.isspace() for ch in label):
        raise ParseError(line_no, f"{kind} label {label!r} contains a comma or whitespace")
    return label


def parse_multiplex(source: str | bytes | IO, strict: bool = False) -> MultiplexNetwork:
    """Parse ``.mpx`` text into a network. See module docstring for the format."""
    network, _ = parse_multiplex_with_stats(source, strict=strict)
    return network


def parse_multiplex_with_stats(
    source: str | bytes | IO, strict: bool = False
) -> tuple[MultiplexNetwork, ParseStats]:
    """Parse and additionally report collapsed-duplicate and skipped-self-loop counts."""
    text = _decode(source)
    declared_layers: list[LayerId] = []
    declared_actors: list[str] = []
    edge_lines: list[tuple[str, str, str, int]] = []
    section = "edges"  # bare edge lists are accepted in permissive input

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line:
            continue
        if line.startswith("#"):
            header = line.upper()
            if header in _SECTIONS:
                section = _SECTIONS[header]
                continue
            continue  # comment line
        if "#" in line:
            line = line[: line.index("#")].strip()
            if not line:
                continue
        if section == "layers":
            declared_layers.append(_check_label(line, "layer", line_no))
        elif section == "actors":
            declared_actors.append(_check_label(line, "actor", line_no))
        else:
            parts = line.split(",")
            if len(parts) != 3:
                raise ParseError(line_no, f"expected 'actor1,actor2,layer', got {line!r}")
            u, v, layer = (p.strip() for p in parts)
            _check_label(u, "actor", line_no)
            _check_label(v, "actor", line_no)
            _check_label(layer, "layer", line_no)
            edge_lines.append((u, v, layer, line_no))

    layers = list(dict.fromkeys(declared_layers))
    known_actors = set(declared_actors)
    for u, v, layer, line_no in edge_lines:
        if layer not in layers:
            if strict:
                raise ParseError(line_no, f"undeclared layer {layer!r} in strict mode")
            layers.append(layer)
        if strict:
            for endpoint in (u, v):
                if endpoint not in known_actors:
                    raise ParseError(line_no, f"undeclared actor {endpoint!r} in strict mode")

    warnings = BuildWarnings()
    network = build_network(
        layers,
        ((u, v, layer) for u, v, layer, _ in edge_lines),
        actors=declared_actors,
        warnings=warnings,
    )
    stats = ParseStats(
        duplicate_edges_collapsed=warnings.duplicate_edges_dropped,
        self_loops_skipped=warnings.self_loops_dropped,
    )
    if stats.duplicate_edges_collapsed:
        log.warning("collapsed %d duplicate edge lines", stats.duplicate_edges_collapsed)
    if stats.self_loops_skipped:
        log.warning("skipped %d self-loop edge lines", stats.self_loops_skipped)
    return network, stats


def write_multiplex(network: MultiplexNetwork, header_comments: tuple[str, ...] = ()) -> bytes:
    """Serialize in canonical order: layers as listed, actors and edges sorted.

    ``parse(write(net))`` reproduces the network exactly, isolated actors
    included. Output is byte-identical across runs for equal networks.
    """
    lines: list[str] = []
    for comment in header_comments:
        lines.append(f"# {comment}")
    lines.append("#LAYERS")
    lines.extend(network.layers)
    lines.append("#ACTORS")
    lines.extend(network.sorted_actors())
    lines.append("#EDGES")
    for layer in network.layers:
        for u, v in network.sorted_edges(layer):
            lines.append(f"{u},{v},{layer}")
    return ("\n".join(lines) + "\n").encode("utf-8")

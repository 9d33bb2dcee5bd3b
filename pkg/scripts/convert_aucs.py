#!/usr/bin/env python3
"""Convert the published AUCS distribution file to this package's .mpx format.

The public distribution uses sections like::

    #TYPE multiplex
    #LAYERS
    lunch,UNDIRECTED
    ...
    #ACTORS
    U4
    ...
    #EDGES
    U102,U139,lunch

Only the first field of each layer/actor line and the first three fields of
each edge line are kept. Usage::

    python scripts/convert_aucs.py aucs_published.mpx data/aucs.mpx
"""

from __future__ import annotations

import sys
from pathlib import Path


def convert(text: str) -> str:
    layers: list[str] = []
    actors: list[str] = []
    edges: list[tuple[str, str, str]] = []
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        upper = line.upper()
        if upper.startswith("#"):
            head = upper.split()[0].rstrip(":")
            if head in {"#LAYERS", "#ACTORS", "#EDGES", "#VERTICES", "#NODES"}:
                section = head
            else:
                section = None  # TYPE / VERSION / comment blocks
            continue
        fields = [f.strip() for f in line.split(",")]
        if section == "#LAYERS":
            layers.append(fields[0])
        elif section == "#ACTORS":
            actors.append(fields[0])
        elif section == "#EDGES":
            if len(fields) < 3:
                raise SystemExit(f"bad edge line: {line!r}")
            edges.append((fields[0], fields[1], fields[2]))
        # vertex/node sections carry per-layer presence; implied by edges here

    out = ["#LAYERS", *layers, "#ACTORS", *actors, "#EDGES"]
    out.extend(f"{u},{v},{layer}" for u, v, layer in edges)
    return "\n".join(out) + "\n"


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    source, target = Path(sys.argv[1]), Path(sys.argv[2])
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(convert(source.read_text(encoding="utf-8")), encoding="utf-8")
    print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""
Reading and writing fat graphs.

The JSON form is ``{"edges": n, "sigma0": [[dart, ...], ...]}`` where edge
``i`` joins darts ``2i`` and ``2i + 1`` and each inner list is one vertex
rotation.  Graphs are normalized before writing, so equal graphs serialize to
identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import FatGraph, FatGraphError, from_vertex_cycles


class GraphFormatError(FatGraphError):
    pass


def graph_to_dict(G: FatGraph) -> dict:
    H = G.normalized()
    return {"edges": H.num_edges(), "sigma0": [list(c) for c in H.vertex_cycles()]}


def graph_from_dict(data) -> FatGraph:
    if not isinstance(data, dict) or "edges" not in data or "sigma0" not in data:
        raise GraphFormatError('expected an object with "edges" and "sigma0"')
    n = data["edges"]
    cycles = data["sigma0"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError(f'"edges" must be a non-negative integer, got {n!r}')
    if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
        raise GraphFormatError('"sigma0" must be a list of lists')
    for c in cycles:
        for d in c:
            if not isinstance(d, int) or isinstance(d, bool) or not 0 <= d < 2 * n:
                raise GraphFormatError(f"dart {d!r} is not in 0..{2 * n - 1}")
    return from_vertex_cycles(n, cycles)


def dumps(G: FatGraph) -> str:
    return json.dumps(graph_to_dict(G), separators=(",", ":")) + "\n"


def loads(text: str) -> FatGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from exc
    return graph_from_dict(data)


def read_graph(path) -> FatGraph:
    return loads(Path(path).read_text())


def write_graph(G: FatGraph, path) -> None:
    Path(path).write_text(dumps(G))


def to_dot(G: FatGraph, name: str = "fatgraph") -> str:
    """
    Graphviz text with one node per vertex and one edge per dart pair.

    Tail and head labels give each dart's position in its vertex rotation, so
    the rotation system can be read back from the drawing.

    >>> from fatfill.constructions import chain
    >>> print(to_dot(chain(2)))
    graph fatgraph {
      v0 [label="v0 (4)"];
      v0 -- v0 [key=0 taillabel="0" headlabel="2"];
      v0 -- v0 [key=1 taillabel="1" headlabel="3"];
    }
    """
    H = G.normalized()
    pos: dict[int, tuple[int, int]] = {}
    lines = [f"graph {name} {{"]
    for v, cyc in enumerate(H.vertex_cycles()):
        for k, d in enumerate(cyc):
            pos[d] = (v, k)
        lines.append(f'  v{v} [label="v{v} ({len(cyc)})"];')
    for i in range(H.num_edges()):
        (va, ka), (vb, kb) = pos[2 * i], pos[2 * i + 1]
        lines.append(f'  v{va} -- v{vb} [key={i} taillabel="{ka}" headlabel="{kb}"];')
    lines.append("}")
    return "\n".join(lines)

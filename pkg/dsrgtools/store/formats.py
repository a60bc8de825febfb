"""
Text formats for digraphs.

matrix: n lines of n space-separated 0/1 entries.
edges:  a "# n=<n>" header, then one "u v" line per arc.
json:   {"n": n, "arcs": [[u, v], ...], "labels": [...], "tuple": [n, k, mu, lam, t]},
        labels and tuple optional.
dot:    a DOT digraph with one node per vertex (write only).
"""

import json
import logging
import re
from pathlib import Path
from typing import Optional

import numpy as np

from ..errors import FormatError, TooLargeError
from ..graphcore import Digraph
from ..paramlab import ParamTuple

logger = logging.getLogger(__name__)

FORMATS = ("matrix", "edges", "json", "dot")
_EXTENSIONS = {".json": "json", ".edges": "edges", ".dot": "dot", ".gv": "dot"}


def format_from_path(path) -> Optional[str]:
    return _EXTENSIONS.get(Path(path).suffix.lower())


def sniff_format(text: str) -> str:
    """Guess the format of a graph file from its content."""

    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "json"
    if stripped.startswith("#"):
        return "edges"
    if stripped.startswith("digraph"):
        return "dot"
    return "matrix"


def _check_order(n: int, max_order: Optional[int]) -> int:
    if n < 1:
        raise FormatError(f"a graph needs at least one vertex, got n={n}")
    if max_order is not None and n > max_order:
        raise TooLargeError(f"graph has {n} vertices, the limit is {max_order}")
    return n


def _parse_matrix(text: str, max_order: Optional[int] = None) -> Digraph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    _check_order(len(rows), max_order)
    if len({len(row) for row in rows}) != 1:
        raise FormatError("matrix rows have different lengths")
    try:
        values = [[int(x) for x in row] for row in rows]
    except ValueError as err:
        raise FormatError(f"matrix entries must be integers: {err}") from None
    return Digraph(np.array(values, dtype=np.int64))


def _parse_edges(text: str, max_order: Optional[int] = None) -> Digraph:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    header = re.fullmatch(r"#\s*n\s*=\s*(\d+)", lines[0])
    if header is None:
        raise FormatError(f"edges file must start with '# n=<n>', got {lines[0]!r}")
    n = _check_order(int(header.group(1)), max_order)
    arcs = []
    for line in lines[1:]:
        if line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {line!r}")
        try:
            arcs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"vertices must be integers, got {line!r}") from None
    return Digraph.from_arcs(n, arcs)


def _parse_json(text: str, max_order: Optional[int] = None) -> Digraph:
    try:
        document = json.loads(text)
        n = int(document["n"])
        arcs = [(int(u), int(v)) for u, v in document["arcs"]]
    except (ValueError, KeyError, TypeError) as err:
        raise FormatError(f"bad json graph: {err}") from None
    _check_order(n, max_order)
    return Digraph.from_arcs(n, arcs, document.get("labels"))


_PARSERS = {"matrix": _parse_matrix, "edges": _parse_edges, "json": _parse_json}


def parse_graph(text: str, fmt: Optional[str] = None, max_order: Optional[int] = None) -> Digraph:
    """Parse a digraph; the format is sniffed when not given.

    The vertex count is checked against max_order before the matrix is built.
    """

    if not text.strip():
        raise FormatError("empty graph file")
    fmt = fmt or sniff_format(text)
    if fmt not in _PARSERS:
        raise FormatError(f"cannot read format {fmt!r}, readable formats are {tuple(_PARSERS)}")
    return _PARSERS[fmt](text, max_order)


def read_graph(path, fmt: Optional[str] = None, max_order: Optional[int] = None) -> Digraph:
    """
    Read a digraph file.

    Parameters
    ----------
    path: str or Path
    fmt: str, optional
        'matrix', 'edges' or 'json'; else taken from the extension, else sniffed
    max_order: int, optional
        reject graphs with more vertices

    Returns
    -------
    graph: Digraph

    """

    text = Path(path).read_text()
    try:
        graph = parse_graph(text, fmt or format_from_path(path), max_order)
    except TooLargeError as err:
        raise TooLargeError(f"{path}: {err}") from None
    logger.debug("read %d vertices and %d arcs from %s", graph.order, graph.arc_count(), path)
    return graph


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_graph(D: Digraph, fmt: str = "matrix", params: Optional[ParamTuple] = None) -> str:
    """Serialize D; params is stored in json output and as a DOT comment."""

    if fmt == "matrix":
        return "\n".join(" ".join(str(int(x)) for x in row) for row in D.adjacency) + "\n"
    if fmt == "edges":
        lines = [f"# n={D.order}"] + [f"{u} {v}" for u, v in D.arcs()]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        document = {"n": D.order, "arcs": [[u, v] for u, v in D.arcs()]}
        if D.labels is not None:
            document["labels"] = list(D.labels)
        if params is not None:
            document["tuple"] = list(params.as_tuple())
        return json.dumps(document) + "\n"
    if fmt == "dot":
        lines = ["digraph G {"]
        if params is not None:
            lines.append(f"  // {params}")
        lines += [f"  {v} [label={_dot_id(D.label(v))}];" for v in range(D.order)]
        lines += [f"  {u} -> {v};" for u, v in D.arcs()]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise FormatError(f"unknown format {fmt!r}, choose from {FORMATS}")


def write_graph(D: Digraph, path, fmt: Optional[str] = None, params: Optional[ParamTuple] = None) -> Path:
    path = Path(path)
    path.write_text(render_graph(D, fmt or format_from_path(path) or "matrix", params))
    return path

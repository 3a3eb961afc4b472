"""Line-oriented graph+list text format.

::

    # comment
    n 3
    e 0 1
    e 1 2
    l 0 1 2 3
    l 1 1 2 3
    l 2 1 2 3

``n`` must come before any ``e`` or ``l`` line; every vertex needs exactly one
``l`` line.
"""
from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError
from .graph import GraphListPair


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> GraphListPair:
    n = None
    edges = []
    seen_edges = set()
    lists: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "n":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: repeated 'n' directive")
            vals = _ints(rest, lineno)
            if len(vals) != 1 or vals[0] < 0:
                raise GraphFormatError(f"line {lineno}: 'n' takes one nonnegative count")
            n = vals[0]
            continue
        if n is None:
            raise GraphFormatError(f"line {lineno}: '{head}' before 'n'")
        vals = _ints(rest, lineno)
        if head == "e":
            if len(vals) != 2:
                raise GraphFormatError(f"line {lineno}: 'e' takes two vertex ids")
            u, w = vals
            if not (0 <= u < n and 0 <= w < n):
                raise GraphFormatError(f"line {lineno}: edge ({u}, {w}) out of range for n={n}")
            if u == w:
                raise GraphFormatError(f"line {lineno}: self-loop at {u}")
            key = (min(u, w), max(u, w))
            if key in seen_edges:
                raise GraphFormatError(f"line {lineno}: duplicate edge {key}")
            seen_edges.add(key)
            edges.append(key)
        elif head == "l":
            if not vals:
                raise GraphFormatError(f"line {lineno}: 'l' needs a vertex id")
            v, colors = vals[0], vals[1:]
            if not 0 <= v < n:
                raise GraphFormatError(f"line {lineno}: vertex {v} out of range for n={n}")
            if v in lists:
                raise GraphFormatError(f"line {lineno}: second list for vertex {v}")
            if not colors:
                raise GraphFormatError(f"line {lineno}: empty list for vertex {v}")
            if any(c < 1 for c in colors):
                raise GraphFormatError(f"line {lineno}: colors must be positive")
            if len(set(colors)) != len(colors):
                raise GraphFormatError(f"line {lineno}: repeated color in list of vertex {v}")
            lists[v] = colors
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {head!r}")
    if n is None:
        raise GraphFormatError("missing 'n' directive")
    missing = [v for v in range(n) if v not in lists]
    if missing:
        raise GraphFormatError(f"no list for vertices {missing}")
    return GraphListPair.build(n, edges, lists)


def format_graph(pair: GraphListPair) -> str:
    out = [f"n {pair.n}"]
    out += [f"e {u} {w}" for u, w in pair.edges]
    out += [f"l {v} " + " ".join(map(str, sorted(pair.lists[v]))) for v in pair.vertices]
    return "\n".join(out) + "\n"


def read_graph(path) -> GraphListPair:
    return parse_graph(Path(path).read_text())


def write_graph(pair: GraphListPair, path) -> None:
    Path(path).write_text(format_graph(pair))

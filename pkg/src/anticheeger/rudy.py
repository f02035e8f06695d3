"""Reader for the rudy edge-list format used by the G-set collection.

The first line holds ``n m``; each of the following ``m`` lines holds
``i j w`` with 1-based vertex indices. Blank lines are ignored.
"""

from __future__ import annotations

import os
from typing import IO

from .graph import Graph, GraphError, build_graph


class RudyError(GraphError):
    """Malformed rudy input; the message carries the 1-based line number."""


def _text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("ascii")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("ascii") if isinstance(data, bytes) else data


def parse_rudy(source: str | bytes | IO, name: str = "") -> Graph:
    """Parse rudy text (a string, bytes or an open file) into a Graph."""
    try:
        text = _text(source)
    except UnicodeDecodeError as exc:
        raise RudyError(f"not an ASCII rudy file: {exc}") from None
    rows = [(k + 1, line.split()) for k, line in enumerate(text.splitlines())]
    rows = [(k, f) for k, f in rows if f]
    if not rows:
        raise RudyError("empty input: expected a header line 'n m'")
    hline, head = rows[0]
    if len(head) != 2:
        raise RudyError(f"line {hline}: header must be 'n m', got {' '.join(head)!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise RudyError(f"line {hline}: header must hold two integers") from None
    if n < 0 or m < 0:
        raise RudyError(f"line {hline}: negative vertex or edge count")
    body = rows[1:]
    if len(body) != m:
        raise RudyError(f"header declares {m} edges but {len(body)} edge lines follow")
    edges = []
    seen: dict[tuple[int, int], int] = {}
    for k, f in body:
        if len(f) != 3:
            raise RudyError(f"line {k}: expected 'i j w', got {' '.join(f)!r}")
        try:
            i, j, w = int(f[0]), int(f[1]), float(f[2])
        except ValueError:
            raise RudyError(f"line {k}: could not parse {' '.join(f)!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise RudyError(f"line {k}: vertex index outside 1..{n}")
        if i == j:
            raise RudyError(f"line {k}: self-loop at vertex {i}")
        if w < 0:
            raise RudyError(
                f"line {k}: negative weight {f[2]}; only graphs with nonnegative "
                "weights are supported (the G-set instances with +-1 weights are out of scope)"
            )
        key = (min(i, j), max(i, j))
        if key in seen:
            raise RudyError(f"line {k}: duplicate edge {key}, first given on line {seen[key]}")
        seen[key] = k
        edges.append((i - 1, j - 1, w))
    return build_graph(n, edges, name=name)


def read_rudy(path: str | os.PathLike) -> Graph:
    name = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    with open(path, "rb") as fh:
        return parse_rudy(fh, name=name)


def format_rudy(g: Graph) -> str:
    """Inverse of :func:`parse_rudy`; integer weights are written without a
    decimal point."""
    lines = [f"{g.n} {g.m}"]
    for i, j, w in g.edges:
        ws = str(int(w)) if float(w).is_integer() else repr(w)
        lines.append(f"{i + 1} {j + 1} {ws}")
    return "\n".join(lines) + "\n"

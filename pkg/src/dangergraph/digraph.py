"""Finite directed graphs: representation, deterministic cycle search, edge-list text I/O.

Vertices are the integers 0..n-1.  Each vertex stores its out-neighbors as a
strictly ascending tuple, so the edge set has set semantics (no duplicate
edges) and every traversal visits neighbors in one fixed order.  Self-loops
are ordinary edges; a self-loop is a directed cycle of length one.

Cycle search is depth-first with three-color marking, roots tried in
ascending order and neighbors visited in ascending order, so the witness
returned by :func:`find_cycle` is reproducible byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "DirectedGraph",
    "EdgeListParseError",
    "find_cycle",
    "format_edge_list",
    "has_directed_cycle",
    "load_edge_list",
    "parse_edge_list",
]

_WHITE, _GRAY, _BLACK = 0, 1, 2


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable digraph on vertices 0..n-1 with ascending out-neighbor lists."""

    n: int
    out: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if len(self.out) != self.n:
            raise ValueError(f"expected {self.n} out-lists, got {len(self.out)}")
        for v, nbrs in enumerate(self.out):
            prev = -1
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise ValueError(f"vertex {v}: neighbor {w} outside 0..{self.n - 1}")
                if w <= prev:
                    raise ValueError(f"vertex {v}: out-list not strictly ascending")
                prev = w

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "DirectedGraph":
        """Build a graph from (source, target) pairs; duplicates collapse.

        When ``n`` is omitted it becomes one more than the largest vertex
        mentioned (edges required in that case).
        """
        edge_set = set(edges)
        if n is None:
            if not edge_set:
                raise ValueError("cannot infer vertex count from an empty edge set")
            n = 1 + max(max(u, v) for u, v in edge_set)
        lists: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(edge_set):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            lists[u].append(v)
        return cls(n, tuple(tuple(nbrs) for nbrs in lists))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.out[u]

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges in ascending (source, target) order."""
        for u, nbrs in enumerate(self.out):
            for v in nbrs:
                yield (u, v)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.out)


def has_directed_cycle(g: DirectedGraph) -> bool:
    """True iff ``g`` contains a directed cycle (self-loops count)."""
    color = [_WHITE] * g.n
    for root in range(g.n):
        if color[root] != _WHITE:
            continue
        color[root] = _GRAY
        stack: list[tuple[int, int]] = [(root, 0)]
        while stack:
            v, i = stack[-1]
            if i < len(g.out[v]):
                stack[-1] = (v, i + 1)
                w = g.out[v][i]
                if color[w] == _GRAY:
                    return True
                if color[w] == _WHITE:
                    color[w] = _GRAY
                    stack.append((w, 0))
            else:
                color[v] = _BLACK
                stack.pop()
    return False


def find_cycle(g: DirectedGraph) -> list[int] | None:
    """Return one directed cycle as a vertex list, or None if the graph is acyclic.

    The result [v0, ..., v_{L-1}] has all vertices distinct and an edge from
    each v_i to v_{(i+1) mod L}.  Tie-break: depth-first search from the
    smallest unvisited root, neighbors in ascending order; the first back
    edge found closes the cycle.
    """
    color = [_WHITE] * g.n
    for root in range(g.n):
        if color[root] != _WHITE:
            continue
        color[root] = _GRAY
        stack: list[tuple[int, int]] = [(root, 0)]
        path = [root]
        while stack:
            v, i = stack[-1]
            if i < len(g.out[v]):
                stack[-1] = (v, i + 1)
                w = g.out[v][i]
                if color[w] == _GRAY:
                    return path[path.index(w):]
                if color[w] == _WHITE:
                    color[w] = _GRAY
                    stack.append((w, 0))
                    path.append(w)
            else:
                color[v] = _BLACK
                stack.pop()
                path.pop()
    return None


class EdgeListParseError(ValueError):
    """Malformed edge-list text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def parse_edge_list(text: str) -> DirectedGraph:
    """Parse the edge-list text format.

    Format: an optional first header line ``n <N>``, then one edge per line
    as two whitespace-separated decimal vertex ids.  ``#`` starts a comment
    anywhere on a line; blank lines are skipped.  Without a header the
    vertex count is one more than the largest vertex mentioned, and a file
    with no edges is rejected (it would define zero vertices).
    """
    declared_n: int | None = None
    edges: list[tuple[int, int, int]] = []
    saw_content = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not saw_content and tokens[0] == "n":
            if len(tokens) != 2:
                raise EdgeListParseError("malformed header; expected 'n <count>'", line_no)
            try:
                declared_n = int(tokens[1])
            except ValueError:
                raise EdgeListParseError(f"header count {tokens[1]!r} is not an integer", line_no) from None
            if declared_n < 0:
                raise EdgeListParseError(f"header count must be non-negative, got {declared_n}", line_no)
            saw_content = True
            continue
        saw_content = True
        if len(tokens) != 2:
            raise EdgeListParseError(f"expected 'u v', got {len(tokens)} token(s)", line_no)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(f"vertex ids must be decimal integers, got {line!r}", line_no) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(f"vertex ids must be non-negative, got {u} {v}", line_no)
        edges.append((u, v, line_no))

    if declared_n is None:
        if not edges:
            raise EdgeListParseError("no header and no edges; the file defines no vertices (n = 0)")
        n = 1 + max(max(u, v) for u, v, _ in edges)
    else:
        n = declared_n
        for u, v, line_no in edges:
            if u >= n or v >= n:
                raise EdgeListParseError(f"edge {u} {v} outside declared range 0..{n - 1}", line_no)
    return DirectedGraph.from_edges([(u, v) for u, v, _ in edges], n=n)


def load_edge_list(path: str) -> DirectedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: DirectedGraph, header: bool = True) -> str:
    """Render a graph in the edge-list text format (ascending edge order)."""
    lines = [f"n {g.n}"] if header else []
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"

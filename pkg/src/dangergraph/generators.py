"""Graphs on the infinite vertex set 0, 1, 2, ... given by out-neighborhood rules.

A generator graph is locally finite when every vertex has a finite
out-neighbor list, produced on demand by a pure rule.  The one symbolic
member, the Yablo graph (every vertex points to all strictly later
vertices), has infinite neighborhoods that are never materialized as lists;
operations that need them must work symbolically or refuse.

Generators come from a fixed built-in registry so that files and reports
can refer to them by name:

  ray                n -> {n+1}
  binary-tree        n -> {2n+1, 2n+2}
  shifted-cycle-<s>  a directed cycle through 0..s, then a ray from s+1
  cycle-at-origin    alias for shifted-cycle-0 (self-loop at 0 plus a ray)
  yablo              n -> {m : m > n}, symbolic
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Callable

from .digraph import DirectedGraph

__all__ = [
    "GeneratorGraph",
    "NotLocallyFiniteError",
    "Truncation",
    "BINARY_TREE",
    "RAY",
    "YABLO",
    "get_generator",
    "is_locally_finite",
    "is_registry_name",
    "registry_names",
    "shifted_cycle",
    "truncate",
]


class NotLocallyFiniteError(ValueError):
    """Raised when an operation needs finite neighbor lists but the graph has none."""


@dataclass(frozen=True)
class GeneratorGraph:
    """A digraph on all naturals, described by a per-vertex out-neighbor rule.

    ``rule`` maps a vertex to its ascending out-neighbor tuple and must be a
    pure function of the vertex index.  ``rule is None`` marks the symbolic
    (Yablo-like) kind whose neighborhoods are infinite.
    """

    name: str
    rule: Callable[[int], tuple[int, ...]] | None
    provably_acyclic: bool = False
    description: str = ""

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        if self.rule is None:
            raise NotLocallyFiniteError(
                f"{self.name}: neighborhoods are infinite and never materialized"
            )
        if v < 0:
            raise ValueError(f"vertex must be non-negative, got {v}")
        nbrs = tuple(self.rule(v))
        prev = -1
        for w in nbrs:
            if w < 0 or w <= prev:
                raise ValueError(f"{self.name}: rule({v}) is not strictly ascending")
            prev = w
        return nbrs


def is_locally_finite(g: GeneratorGraph) -> bool:
    """Kind check by construction; the rule itself is never inspected."""
    return g.rule is not None


@dataclass(frozen=True)
class Truncation:
    """The finite window of a locally finite generator below a cutoff.

    ``inner`` holds every edge with both endpoints below ``k``; ``boundary``
    lists the edges leaving the window (source < k <= target) in ascending
    order.  Together they are exactly the base graph's edges with source
    below the cutoff.
    """

    base: GeneratorGraph
    k: int
    inner: DirectedGraph
    boundary: tuple[tuple[int, int], ...]


def truncate(base: GeneratorGraph, k: int) -> Truncation:
    """Materialize the first ``k`` vertices of a locally finite generator."""
    if not is_locally_finite(base):
        raise NotLocallyFiniteError("not locally finite; cannot truncate neighbor lists")
    if k < 1:
        raise ValueError(f"cutoff must be at least 1, got {k}")
    inner_edges: list[tuple[int, int]] = []
    boundary: list[tuple[int, int]] = []
    for u in range(k):
        for v in base.out_neighbors(u):
            if v < k:
                inner_edges.append((u, v))
            else:
                boundary.append((u, v))
    return Truncation(
        base=base,
        k=k,
        inner=DirectedGraph.from_edges(inner_edges, n=k),
        boundary=tuple(sorted(boundary)),
    )


def _ray_rule(v: int) -> tuple[int, ...]:
    return (v + 1,)


def _binary_tree_rule(v: int) -> tuple[int, ...]:
    return (2 * v + 1, 2 * v + 2)


RAY = GeneratorGraph(
    name="ray",
    rule=_ray_rule,
    provably_acyclic=True,
    description="each vertex points to its successor",
)

BINARY_TREE = GeneratorGraph(
    name="binary-tree",
    rule=_binary_tree_rule,
    provably_acyclic=True,
    description="complete binary out-tree; children of n are 2n+1 and 2n+2",
)

YABLO = GeneratorGraph(
    name="yablo",
    rule=None,
    provably_acyclic=True,
    description="every vertex points to all strictly later vertices; not locally finite",
)


def shifted_cycle(shift: int) -> GeneratorGraph:
    """The generator with a directed cycle through 0..shift and a ray after it.

    Vertex ``shift`` closes the cycle back to 0; every other vertex points
    to its successor.  ``shifted_cycle(0)`` is the self-loop-at-origin
    graph.
    """
    if shift < 0:
        raise ValueError(f"shift must be non-negative, got {shift}")

    def rule(v: int) -> tuple[int, ...]:
        return (0,) if v == shift else (v + 1,)

    return GeneratorGraph(
        name=f"shifted-cycle-{shift}",
        rule=rule,
        provably_acyclic=False,
        description=f"directed cycle through 0..{shift}, then a ray from {shift + 1}",
    )


_FIXED_REGISTRY = {
    "ray": RAY,
    "binary-tree": BINARY_TREE,
    "yablo": YABLO,
}
_SHIFTED_CYCLE_NAME = re.compile(r"^shifted-cycle-(\d+)$")


def get_generator(name: str) -> GeneratorGraph:
    """Look up a registry generator by name."""
    if name in _FIXED_REGISTRY:
        return _FIXED_REGISTRY[name]
    if name == "cycle-at-origin":
        return replace(shifted_cycle(0), name="cycle-at-origin")
    m = _SHIFTED_CYCLE_NAME.match(name)
    if m:
        return shifted_cycle(int(m.group(1)))
    raise ValueError(f"unknown generator {name!r}; known: {', '.join(registry_names())}")


def is_registry_name(name: str) -> bool:
    return name in _FIXED_REGISTRY or name == "cycle-at-origin" or bool(_SHIFTED_CYCLE_NAME.match(name))


def registry_names() -> tuple[str, ...]:
    return ("binary-tree", "cycle-at-origin", "ray", "shifted-cycle-<s>", "yablo")

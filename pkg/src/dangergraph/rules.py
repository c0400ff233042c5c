"""Local update rules respecting a digraph, and their unfactored counterparts.

A rule family assigns each vertex v a truth table over its out-neighbors,
so the induced map f: 2^V -> 2^V satisfies the locality condition that
coordinate v depends only on the values at N+(v).  The converse direction
works on raw function tables: an arbitrary f given by its full value table,
from which minimal supports and the minimal dependency graph are recovered
by single-bit flip tests.

Truth-table bit-index convention, shared with every serialization: a rule
for vertex v with ascending neighbors (u_0, ..., u_{d-1}) stores 2^d output
bits in one integer, and the output for input x sits at table index
sum_j x(u_j) * 2^j.  Neighbor j contributes bit weight 2^j.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

from .assignment import Assignment, EventuallyConstantAssignment, enumerate_assignments
from .digraph import DirectedGraph
from .generators import GeneratorGraph, NotLocallyFiniteError, is_locally_finite

__all__ = [
    "FAMILY_ENUMERATION_CAP",
    "GeneratorRuleFamily",
    "LocalRule",
    "LocalRuleFamily",
    "LocallyFiniteRules",
    "RAW_TABLE_CAP",
    "RNG_NAME",
    "RawFunctionTable",
    "YABLO_RULES",
    "YabloRules",
    "constant_table",
    "coordinate_table",
    "count_families",
    "enumerate_families",
    "evaluate",
    "evaluate_coordinate",
    "family_from_json_dict",
    "family_to_json_dict",
    "generator_rules",
    "is_independent_of",
    "load_family",
    "minimal_dependency_graph",
    "minimal_support",
    "projection_table",
    "respects",
    "sample_family",
    "save_family",
    "to_raw",
    "yablo_image",
]

RAW_TABLE_CAP = 12
FAMILY_ENUMERATION_CAP = 64
RNG_NAME = "mt19937"


def table_mask(arity: int) -> int:
    """All-ones table over 2^arity entries."""
    return (1 << (1 << arity)) - 1


def constant_table(arity: int, bit: int) -> int:
    return table_mask(arity) if bit else 0


def projection_table(arity: int, j: int) -> int:
    """Table of the function that returns input bit j, over 2^arity entries.

    Built by doubling a 2^(j+1)-entry block (2^j zeros then 2^j ones), so
    large arities cost O(arity) big-int operations rather than 2^arity.
    """
    if not 0 <= j < arity:
        raise ValueError(f"input index {j} outside 0..{arity - 1}")
    block = ((1 << (1 << j)) - 1) << (1 << j)
    span = 1 << (j + 1)
    total = 1 << arity
    pattern = block
    while span < total:
        pattern |= pattern << span
        span <<= 1
    return pattern


@dataclass(frozen=True)
class LocalRule:
    """One vertex's truth table over its ascending out-neighbor list."""

    vertex: int
    neighbors: tuple[int, ...]
    table: int

    def __post_init__(self) -> None:
        prev = -1
        for u in self.neighbors:
            if u < 0 or u <= prev:
                raise ValueError(f"rule for vertex {self.vertex}: neighbors not strictly ascending")
            prev = u
        if not 0 <= self.table <= table_mask(self.arity):
            raise ValueError(
                f"rule for vertex {self.vertex}: table {self.table} out of range for arity {self.arity}"
            )

    @property
    def arity(self) -> int:
        return len(self.neighbors)

    def apply(self, bit_at: Callable[[int], int]) -> int:
        """Output bit for the input read off through ``bit_at``."""
        idx = 0
        for j, u in enumerate(self.neighbors):
            if bit_at(u):
                idx |= 1 << j
        return (self.table >> idx) & 1

    @classmethod
    def copying(cls, vertex: int, neighbors: tuple[int, ...], source: int) -> "LocalRule":
        """Projection onto one neighbor's value, constant in all others."""
        j = neighbors.index(source)
        return cls(vertex, neighbors, projection_table(len(neighbors), j))

    @classmethod
    def negating(cls, vertex: int, neighbors: tuple[int, ...], source: int) -> "LocalRule":
        j = neighbors.index(source)
        d = len(neighbors)
        return cls(vertex, neighbors, table_mask(d) & ~projection_table(d, j))

    @classmethod
    def constant(cls, vertex: int, neighbors: tuple[int, ...], bit: int) -> "LocalRule":
        return cls(vertex, neighbors, constant_table(len(neighbors), bit))


@dataclass(frozen=True)
class LocalRuleFamily:
    """A complete factored rule set over a digraph: one rule per vertex.

    Each rule's neighbor list must equal the graph's out-list for that
    vertex, so the induced map respects the graph by construction.
    """

    graph: DirectedGraph
    rules: tuple[LocalRule, ...]

    def __post_init__(self) -> None:
        if len(self.rules) != self.graph.n:
            raise ValueError(f"expected {self.graph.n} rules, got {len(self.rules)}")
        for v, r in enumerate(self.rules):
            if r.vertex != v:
                raise ValueError(f"rule at position {v} is for vertex {r.vertex}")
            if r.neighbors != self.graph.out[v]:
                raise ValueError(
                    f"vertex {v}: rule neighbors {r.neighbors} != graph out-list {self.graph.out[v]}"
                )

    def rule(self, v: int) -> LocalRule:
        return self.rules[v]


def evaluate(family: LocalRuleFamily, a: Assignment) -> Assignment:
    """Apply the induced map once: output bit v is rule v read at a's neighbor values."""
    if a.n != family.graph.n:
        raise ValueError(f"length mismatch: assignment {a.n}, graph {family.graph.n}")
    bits = a.bits
    out = 0
    for v, r in enumerate(family.rules):
        idx = 0
        for j, u in enumerate(r.neighbors):
            idx |= ((bits >> u) & 1) << j
        out |= ((r.table >> idx) & 1) << v
    return Assignment(a.n, out)


# ---- rule families over generator graphs ------------------------------------


@dataclass(frozen=True)
class LocallyFiniteRules:
    """Per-vertex rules over a locally finite generator, one LocalRule per vertex.

    ``rule`` must be a pure function of the vertex index, and each produced
    rule's neighbor list must be the generator's out-neighborhood of that
    vertex.
    """

    name: str
    rule: Callable[[int], LocalRule]

    def local_rule(self, v: int) -> LocalRule:
        r = self.rule(v)
        if r.vertex != v:
            raise ValueError(f"{self.name}: rule({v}) is for vertex {r.vertex}")
        return r


@dataclass(frozen=True)
class YabloRules:
    """The symbolic rule family f(x)_n = 1 iff x_m = 0 for every m > n."""

    name: str = "yablo"


YABLO_RULES = YabloRules()

GeneratorRuleFamily = Union[LocallyFiniteRules, YabloRules]


def evaluate_coordinate(rules: GeneratorRuleFamily, x: EventuallyConstantAssignment, v: int) -> int:
    """Coordinate v of the image of x, computed exactly.

    The symbolic family decides its infinite conjunction from the finite
    description of x: all later coordinates are zero iff the tail is zero
    and no prefix bit beyond v is set.
    """
    if isinstance(rules, YabloRules):
        if x.tail == 1:
            return 0
        return 0 if any(x.prefix[v + 1:]) else 1
    return rules.local_rule(v).apply(x.value_at)


def yablo_image(x: EventuallyConstantAssignment) -> EventuallyConstantAssignment:
    """Closed-form image of an eventually constant point under the Yablo rules.

    A tail of 1 puts a 1 after every index, so the image is all-zero.  With
    tail 0 and no 1 anywhere the image is all-one.  Otherwise let L be the
    last index holding 1: indices below L still see it (image 0), indices
    from L on see only zeros (image 1).
    """
    if x.tail == 1:
        return EventuallyConstantAssignment.constant(0)
    ones = [i for i, b in enumerate(x.prefix) if b]
    if not ones:
        return EventuallyConstantAssignment.constant(1)
    last = ones[-1]
    return EventuallyConstantAssignment((0,) * last, 1)


# ---- raw (unfactored) function tables ----------------------------------------


@dataclass(frozen=True)
class RawFunctionTable:
    """An arbitrary map 2^V -> 2^V as an explicit value table.

    Entry i is the packed output for the i-th assignment in enumeration
    order (ascending integers).  Capped at n = 12; definitional checks
    beyond a 4096-entry table are out of scope.
    """

    n: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= RAW_TABLE_CAP:
            raise ValueError(f"raw tables support 0 <= n <= {RAW_TABLE_CAP}, got {self.n}")
        if len(self.table) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} entries, got {len(self.table)}")
        top = 1 << self.n
        for i, value in enumerate(self.table):
            if not 0 <= value < top:
                raise ValueError(f"entry {i} = {value} out of range for n = {self.n}")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], int]) -> "RawFunctionTable":
        return cls(n, tuple(fn(bits) for bits in range(1 << n)))

    def apply(self, a: Assignment) -> Assignment:
        if a.n != self.n:
            raise ValueError(f"length mismatch: assignment {a.n}, table {self.n}")
        return Assignment(self.n, self.table[a.bits])


def coordinate_table(f: RawFunctionTable, v: int) -> int:
    """Coordinate v of f packed over all inputs: bit i is f(i)_v."""
    if not 0 <= v < f.n:
        raise ValueError(f"vertex {v} outside 0..{f.n - 1}")
    out = 0
    for i, value in enumerate(f.table):
        out |= ((value >> v) & 1) << i
    return out


def is_independent_of(table: int, n: int, vertices: Iterable[int]) -> bool:
    """True iff the coordinate function ``table`` (bit i = g(i)) ignores the given vertices.

    Checked by single-bit flips: g is constant on every class of inputs
    agreeing outside I iff no single flip of a bit in I ever changes g
    (equivalent by induction on the number of flipped bits, and
    exponentially cheaper than scanning whole classes).
    """
    for u in vertices:
        if not 0 <= u < n:
            raise ValueError(f"vertex {u} outside 0..{n - 1}")
        step = 1 << u
        for i in range(1 << n):
            if not i & step and ((table >> i) & 1) != ((table >> (i | step)) & 1):
                return False
    return True


def minimal_support(f: RawFunctionTable, v: int) -> frozenset[int]:
    """The vertices whose value can change coordinate v: the unique minimal
    set S such that f's coordinate v is independent of everything outside S."""
    g = coordinate_table(f, v)
    support = set()
    for u in range(f.n):
        if not is_independent_of(g, f.n, (u,)):
            support.add(u)
    return frozenset(support)


def minimal_dependency_graph(f: RawFunctionTable) -> DirectedGraph:
    """Graph with an edge v -> u iff u is in coordinate v's minimal support.

    f respects a graph G on the same vertices iff every out-list here is
    contained in G's out-list for the same vertex.
    """
    return DirectedGraph(
        f.n, tuple(tuple(sorted(minimal_support(f, v))) for v in range(f.n))
    )


def respects(f: RawFunctionTable, g: DirectedGraph) -> bool:
    """True iff every coordinate of f is independent of the non-neighbors of its vertex."""
    if f.n != g.n:
        raise ValueError(f"size mismatch: table {f.n}, graph {g.n}")
    for v in range(f.n):
        non_neighbors = [u for u in range(g.n) if u not in g.out[v]]
        if not is_independent_of(coordinate_table(f, v), f.n, non_neighbors):
            return False
    return True


def to_raw(family: LocalRuleFamily) -> RawFunctionTable:
    """Tabulate the induced map over all assignments (bridge to the definitional form)."""
    n = family.graph.n
    if n > RAW_TABLE_CAP:
        raise ValueError(f"raw tables support n <= {RAW_TABLE_CAP}, got {n}")
    return RawFunctionTable(n, tuple(evaluate(family, a).bits for a in enumerate_assignments(n)))


# ---- enumeration, counting, sampling -----------------------------------------


def _table_widths(g: DirectedGraph) -> list[int]:
    return [1 << len(nbrs) for nbrs in g.out]


def count_families(g: DirectedGraph) -> int:
    """|all rule families over g| = prod_v 2^(2^deg(v)), exactly."""
    return 1 << sum(_table_widths(g))


def enumerate_families(g: DirectedGraph) -> Iterator[LocalRuleFamily]:
    """All rule families over g, ordered by concatenated table bits.

    The order reads the per-vertex tables as one little-endian counter with
    vertex 0's table least significant, so family i's tables are the bit
    slices of i.
    """
    widths = _table_widths(g)
    total = sum(widths)
    if total > FAMILY_ENUMERATION_CAP:
        raise ValueError(
            f"enumeration cap exceeded: {total} table bits > {FAMILY_ENUMERATION_CAP}"
        )
    for counter in range(1 << total):
        rules = []
        offset = 0
        for v, width in enumerate(widths):
            table = (counter >> offset) & ((1 << width) - 1)
            rules.append(LocalRule(v, g.out[v], table))
            offset += width
        yield LocalRuleFamily(g, tuple(rules))


def sample_family(g: DirectedGraph, seed: int) -> LocalRuleFamily:
    """Uniformly random truth tables from a seeded Mersenne Twister stream.

    The same seed always yields the identical family; the generator name is
    recorded in serialized output so witnesses stay reproducible.
    """
    rng = random.Random(seed)
    rules = tuple(
        LocalRule(v, g.out[v], rng.getrandbits(1 << len(g.out[v])))
        for v in range(g.n)
    )
    return LocalRuleFamily(g, rules)


# ---- named rule families over generator graphs -------------------------------

_GENERATOR_RULE_KINDS = ("copy-first", "negate-first", "const-0", "const-1", "random")


def generator_rules(base: GeneratorGraph, kind: str, seed: int | None = None) -> LocallyFiniteRules:
    """A named rule family over a locally finite generator.

    copy-first / negate-first read the least out-neighbor (sinks fall back
    to the constants 0 / 1); const-0 / const-1 ignore inputs; random draws
    each vertex's table from a per-vertex seeded stream, so the family is
    still a pure function of the vertex index.
    """
    if not is_locally_finite(base):
        raise NotLocallyFiniteError(f"{base.name}: rule families need finite neighbor lists")
    if kind == "random" and seed is None:
        raise ValueError("random rule family needs a seed")

    def make(v: int) -> LocalRule:
        nbrs = base.out_neighbors(v)
        if kind == "copy-first":
            if not nbrs:
                return LocalRule.constant(v, nbrs, 0)
            return LocalRule.copying(v, nbrs, nbrs[0])
        if kind == "negate-first":
            if not nbrs:
                return LocalRule.constant(v, nbrs, 1)
            return LocalRule.negating(v, nbrs, nbrs[0])
        if kind == "const-0":
            return LocalRule.constant(v, nbrs, 0)
        if kind == "const-1":
            return LocalRule.constant(v, nbrs, 1)
        if kind == "random":
            rng = random.Random(f"{seed}:{v}")
            return LocalRule(v, nbrs, rng.getrandbits(1 << len(nbrs)))
        raise ValueError(f"unknown rule kind {kind!r}; known: {', '.join(_GENERATOR_RULE_KINDS)}")

    name = f"{base.name}:{kind}" + (f":seed{seed}" if kind == "random" else "")
    return LocallyFiniteRules(name=name, rule=make)


# ---- rule-family files --------------------------------------------------------


def _table_hex(rule: LocalRule) -> str:
    digits = ((1 << rule.arity) + 3) // 4
    return format(rule.table, f"0{digits}x")


def family_to_json_dict(family: LocalRuleFamily, meta: dict | None = None) -> dict:
    doc = {
        "n": family.graph.n,
        "rules": [
            {"v": r.vertex, "neighbors": list(r.neighbors), "table_hex": _table_hex(r)}
            for r in family.rules
        ],
    }
    if meta is not None:
        doc["meta"] = meta
    return doc


def family_from_json_dict(doc: dict, graph: DirectedGraph | None = None) -> LocalRuleFamily:
    """Rebuild a family from its JSON form.

    With ``graph`` given, every rule's neighbor list must equal that graph's
    out-list or the document is rejected; without it, the graph is the one
    the neighbor lists themselves define.
    """
    try:
        n = int(doc["n"])
        entries = doc["rules"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed rule-family document: {exc}") from None
    if len(entries) != n:
        raise ValueError(f"expected {n} rules, got {len(entries)}")
    rules: list[LocalRule | None] = [None] * n
    for entry in entries:
        v = int(entry["v"])
        if not 0 <= v < n or rules[v] is not None:
            raise ValueError(f"bad or repeated vertex {v} in rule list")
        neighbors = tuple(int(u) for u in entry["neighbors"])
        table = int(entry["table_hex"], 16)
        rules[v] = LocalRule(v, neighbors, table)
    complete = tuple(r for r in rules if r is not None)
    if graph is None:
        graph = DirectedGraph(n, tuple(r.neighbors for r in complete))
    else:
        for r in complete:
            if graph.out[r.vertex] != r.neighbors:
                raise ValueError(
                    f"vertex {r.vertex}: file neighbors {list(r.neighbors)} do not match "
                    f"graph out-list {list(graph.out[r.vertex])}"
                )
    return LocalRuleFamily(graph, complete)


def save_family(path: str, family: LocalRuleFamily, meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(family_to_json_dict(family, meta), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_family(path: str, graph: DirectedGraph | None = None) -> LocalRuleFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_json_dict(json.load(fh), graph)

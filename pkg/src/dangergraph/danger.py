"""Deciding whether a graph supports a fixed-point-free rule family.

For finite graphs the decision is structural: a directed cycle (self-loops
count) can be armed into a family whose composite negates itself around the
loop, and an acyclic graph resolves sinks-first to a fixed point no matter
which family it carries.  Both directions ship machine-checkable evidence:
a verified fixed-point-free family, or a propagation order.

``brute_force_dangerous`` is the deliberately independent cross-check: it
searches truth-table space directly, never looking at cycles, so agreement
with the structural classifier on small graphs is meaningful.

Generator graphs are classified from a finite explored patch.  A cycle in
the patch is decisive (subgraph monotonicity: danger inherited upward); a
clean patch proves nothing by itself, so the absence verdict leans on the
registry's acyclicity flag and otherwise stays Unknown.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .assignment import EventuallyConstantAssignment, metric_distance
from .digraph import DirectedGraph, find_cycle
from .fixedpoint import find_fixed_points
from .generators import (
    GeneratorGraph,
    NotLocallyFiniteError,
    is_locally_finite,
    truncate,
)
from .rules import (
    LocalRule,
    LocalRuleFamily,
    constant_table,
    family_to_json_dict,
    projection_table,
    table_mask,
)

__all__ = [
    "DangerVerdict",
    "ORACLE_MAX_N",
    "VerificationSummary",
    "YabloReport",
    "all_digraphs",
    "brute_force_dangerous",
    "classify",
    "classify_generator",
    "cycle_witness_family",
    "delete_edge",
    "delete_vertex",
    "verify_small",
    "yablo_report",
]

ORACLE_MAX_N = 5
DEFAULT_ORACLE_BUDGET = 10_000_000
DEFAULT_PROBE = 64


@dataclass(frozen=True)
class DangerVerdict:
    """A classification outcome plus whatever evidence backs it.

    verdict is "Dangerous", "Safe", or "Unknown" (budget exhausted).
    Dangerous verdicts carry the cycle found (if any) and a witness family
    already verified fixed-point-free; Safe verdicts carry a certificate
    kind, "acyclic" or "exhaustive-oracle".  provenance names the operation
    that produced the verdict.  truncation_k marks witnesses living on the
    k-vertex truncation of a generator graph rather than on the queried
    graph itself.
    """

    verdict: str
    provenance: str
    cycle: tuple[int, ...] | None = None
    witness: LocalRuleFamily | None = None
    certificate: str | None = None
    oracle_nodes: int | None = None
    truncation_k: int | None = None

    def to_json_dict(self, family_file: str | None = None) -> dict:
        doc: dict = {
            "verdict": self.verdict,
            "provenance": self.provenance,
            "cycle": None if self.cycle is None else list(self.cycle),
            "family_file": family_file,
            "certificate": self.certificate,
            "oracle_nodes": self.oracle_nodes,
        }
        if self.truncation_k is not None:
            doc["truncation_k"] = self.truncation_k
        return doc


# ---- witness construction ------------------------------------------------------


def cycle_witness_family(g: DirectedGraph, cycle: tuple[int, ...]) -> LocalRuleFamily:
    """A verified fixed-point-free family armed on the given directed cycle.

    Each cycle vertex copies its successor around the loop except the last,
    which negates; off-cycle vertices hold constant 0.  Any fixed point
    would make all loop values equal yet negate one of them, so none exists.

    Verification before return is unconditional: the emitted tables are
    checked bit-for-bit against the intended projections, every assignment
    consistent with the copy chain is propagated to a contradiction, and the
    composite map is scanned outright over all 2^n assignments.  Graphs too
    large to scan (n > 24) are refused rather than given an unverified
    witness.
    """
    if g.n > 24:
        raise ValueError(
            f"refusing to emit an unverified witness: n = {g.n} exceeds the scan cap of 24"
        )
    if not cycle:
        raise ValueError("empty vertex sequence is not a cycle")
    seen = set()
    for i, v in enumerate(cycle):
        succ = cycle[(i + 1) % len(cycle)]
        if not g.has_edge(v, succ):
            raise ValueError(f"not a directed cycle in this graph: missing edge {v} -> {succ}")
        if v in seen:
            raise ValueError(f"vertex {v} repeats in cycle")
        seen.add(v)

    succ_of = {cycle[i]: cycle[(i + 1) % len(cycle)] for i in range(len(cycle))}
    last = cycle[-1]
    rules = []
    for v in range(g.n):
        nbrs = g.out[v]
        if v not in succ_of:
            rules.append(LocalRule.constant(v, nbrs, 0))
        elif v == last:
            rules.append(LocalRule.negating(v, nbrs, succ_of[v]))
        else:
            rules.append(LocalRule.copying(v, nbrs, succ_of[v]))
    family = LocalRuleFamily(g, tuple(rules))
    _verify_cycle_family(family, cycle)
    return family


def _verify_cycle_family(family: LocalRuleFamily, cycle: tuple[int, ...]) -> None:
    g = family.graph
    last = cycle[-1]
    succ_of = {cycle[i]: cycle[(i + 1) % len(cycle)] for i in range(len(cycle))}

    # The tables must be exactly the single-coordinate reads the argument
    # below relies on; anything else is rejected, not assumed.
    for v in range(g.n):
        r = family.rules[v]
        d = r.arity
        if v not in succ_of:
            if r.table != constant_table(d, 0):
                raise RuntimeError(f"witness verification failed: vertex {v} is not constant 0")
            continue
        j = r.neighbors.index(succ_of[v])
        expected = projection_table(d, j)
        if v == last:
            expected = table_mask(d) & ~expected
        if r.table != expected:
            raise RuntimeError(f"witness verification failed: wrong table at cycle vertex {v}")

    # Every candidate fixed point is forced from the first loop value by the
    # copy equations (value[c_i] = value[c_{i+1}] for i < L-1), so two
    # propagations cover the whole space; each must then violate the closing
    # negation equation value[c_{L-1}] = NOT value[c_0].
    for seed_bit in (0, 1):
        values = {cycle[0]: seed_bit}
        for i in range(len(cycle) - 1):
            values[cycle[i + 1]] = values[cycle[i]]
        if values[cycle[-1]] == 1 - values[cycle[0]]:
            raise RuntimeError("witness verification failed: copy chain admits a fixed point")

    if find_fixed_points(family):
        raise RuntimeError("witness verification failed: scan found a fixed point")


# ---- finite classification -------------------------------------------------------


def classify(g: DirectedGraph) -> DangerVerdict:
    """Decide a finite graph by structure, with evidence either way.

    A cycle yields Dangerous plus a verified witness; no cycle yields
    Safe("acyclic"), backed operationally by dag_fixed_point, which
    constructs the fixed point of any family anyone proposes.
    """
    cycle = find_cycle(g)
    if cycle is not None:
        loop = tuple(cycle)
        return DangerVerdict(
            verdict="Dangerous",
            provenance="classify",
            cycle=loop,
            witness=cycle_witness_family(g, loop),
        )
    return DangerVerdict(verdict="Safe", provenance="classify", certificate="acyclic")


# ---- the independent oracle -------------------------------------------------------


class _OracleBudgetExceeded(Exception):
    pass


def brute_force_dangerous(g: DirectedGraph, budget: int = DEFAULT_ORACLE_BUDGET) -> DangerVerdict:
    """Search truth-table space directly for a fixed-point-free family.

    Works clause by clause: each assignment must be broken by some vertex,
    and choosing vertex v to break assignment a pins one bit of v's table.
    Assignments already broken by earlier commitments cost no branch.  The
    search is exhaustive, so running out of choices everywhere is a proof
    that every family over g has a fixed point.

    Never consults cycle structure; its whole value is as an independent
    check of the structural classifier.  n is capped at ORACLE_MAX_N since
    the table space is doubly exponential.
    """
    if g.n > ORACLE_MAX_N:
        raise ValueError(f"exhaustive oracle supports n <= {ORACLE_MAX_N}, got {g.n}")

    n = g.n
    assignments = list(range(1 << n))
    # index of assignment a into vertex v's table
    idx_of = [
        [sum(((a >> u) & 1) << j for j, u in enumerate(g.out[v])) for v in range(n)]
        for a in assignments
    ]
    pinned: dict[tuple[int, int], int] = {}
    nodes = 0

    def search(pos: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OracleBudgetExceeded
        if pos == len(assignments):
            return True
        a = assignments[pos]
        want = [(v, idx_of[a][v], 1 - ((a >> v) & 1)) for v in range(n)]
        for v, idx, bit in want:
            if pinned.get((v, idx)) == bit:
                return search(pos + 1)
        for v, idx, bit in want:
            if (v, idx) in pinned:
                continue
            pinned[(v, idx)] = bit
            if search(pos + 1):
                return True
            del pinned[(v, idx)]
        return False

    try:
        found = search(0)
    except _OracleBudgetExceeded:
        return DangerVerdict(verdict="Unknown", provenance="brute_force_dangerous", oracle_nodes=nodes)

    if not found:
        return DangerVerdict(
            verdict="Safe",
            provenance="brute_force_dangerous",
            certificate="exhaustive-oracle",
            oracle_nodes=nodes,
        )

    rules = []
    for v in range(n):
        table = 0
        for idx in range(1 << g.out_degree(v)):
            table |= pinned.get((v, idx), 0) << idx
        rules.append(LocalRule(v, g.out[v], table))
    family = LocalRuleFamily(g, tuple(rules))
    if find_fixed_points(family):
        raise RuntimeError("internal: oracle produced a family with a fixed point")
    return DangerVerdict(
        verdict="Dangerous",
        provenance="brute_force_dangerous",
        cycle=None if (loop := find_cycle(g)) is None else tuple(loop),
        witness=family,
        oracle_nodes=nodes,
    )


# ---- generator graphs ---------------------------------------------------------------


def classify_generator(
    base: GeneratorGraph,
    probe: int = DEFAULT_PROBE,
    budget: int = 100_000,
) -> DangerVerdict:
    """Classify a generator graph from the patch reachable off vertices 0..probe-1.

    A directed cycle inside the patch settles it: the cycle survives in a
    finite truncation, the truncation gets a verified witness family, and
    danger lifts to the full graph by subgraph monotonicity.  No cycle in
    the patch settles nothing on its own; Safe is only issued for registry
    entries flagged acyclic, and then only when the graph is locally finite,
    because an acyclic graph with infinite neighbor lists can still be
    dangerous.  Everything else is Unknown.

    The walk stops growing once ``budget`` vertices are in hand.  A partial
    patch never errors: any cycle it contains is still real, and a clean
    partial patch simply lands in the Unknown bucket.
    """
    if not is_locally_finite(base):
        raise NotLocallyFiniteError(
            f"{base.name}: not locally finite, so cycle structure does not decide danger; "
            "yablo_report carries the symbolic analysis"
        )
    if probe < 1:
        raise ValueError("probe must be >= 1")

    visited: set[int] = set(range(min(probe, budget)))
    frontier = sorted(visited)
    while frontier and len(visited) < budget:
        nxt = []
        for v in frontier:
            for u in base.out_neighbors(v):
                if u not in visited and len(visited) < budget:
                    visited.add(u)
                    nxt.append(u)
        frontier = nxt

    ordered = sorted(visited)
    local = {v: i for i, v in enumerate(ordered)}
    patch = DirectedGraph(
        len(ordered),
        tuple(
            tuple(sorted(local[u] for u in base.out_neighbors(v) if u in visited))
            for v in ordered
        ),
    )
    cycle = find_cycle(patch)
    if cycle is not None:
        loop = tuple(ordered[i] for i in cycle)
        k = max(loop) + 1
        inner = truncate(base, k).inner
        return DangerVerdict(
            verdict="Dangerous",
            provenance="classify_generator",
            cycle=loop,
            witness=cycle_witness_family(inner, loop),
            truncation_k=k,
        )
    if base.provably_acyclic:
        return DangerVerdict(verdict="Safe", provenance="classify_generator", certificate="acyclic")
    return DangerVerdict(verdict="Unknown", provenance="classify_generator")


# ---- the acyclic dangerous graph ------------------------------------------------------


@dataclass(frozen=True)
class YabloReport:
    """Desk-scale evidence that the symbolic acyclic graph is dangerous.

    The scan covers every eventually constant point whose canonical prefix
    fits the bound and confirms none is fixed.  (The closed form makes the
    general case visible: images are all-zero, all-one, or a zero block then
    ones, and none of those three shapes maps to itself.)  The table rows
    exhibit the discontinuity forced at the all-zero point: inputs at
    distance 2^-k produce images stuck at distance 1.
    """

    prefix_bound: int
    candidates_scanned: int
    fixed_points_found: int
    discontinuity: tuple[tuple[int, str, str], ...]

    @property
    def verdict(self) -> str:
        return "Dangerous"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "provenance": "symbolic-analysis",
            "prefix_bound": self.prefix_bound,
            "candidates_scanned": self.candidates_scanned,
            "fixed_points_found": self.fixed_points_found,
            "discontinuity": [
                {"k": k, "input_distance": din, "image_distance": dout}
                for k, din, dout in self.discontinuity
            ],
        }


def _canonical_points(prefix_bound: int) -> Iterator[EventuallyConstantAssignment]:
    for tail in (0, 1):
        yield EventuallyConstantAssignment((), tail)
        for length in range(1, prefix_bound + 1):
            # canonical form pins the final prefix bit to differ from the tail
            for head in range(1 << (length - 1)):
                prefix = tuple((head >> i) & 1 for i in range(length - 1)) + (1 - tail,)
                yield EventuallyConstantAssignment(prefix, tail)


def yablo_report(prefix_bound: int = 12, discontinuity_depth: int = 32) -> YabloReport:
    from .rules import yablo_image

    if prefix_bound < 0 or prefix_bound > 22:
        raise ValueError("prefix bound must be between 0 and 22")
    scanned = 0
    fixed = 0
    for x in _canonical_points(prefix_bound):
        scanned += 1
        if yablo_image(x) == x:
            fixed += 1

    origin = EventuallyConstantAssignment.constant(0)
    image_at_origin = yablo_image(origin)
    rows = []
    for k in range(1, discontinuity_depth + 1):
        e_k = EventuallyConstantAssignment.single_one(k)
        din = metric_distance(e_k, origin)
        dout = metric_distance(yablo_image(e_k), image_at_origin)
        rows.append((k, str(din), str(dout)))
    return YabloReport(
        prefix_bound=prefix_bound,
        candidates_scanned=scanned,
        fixed_points_found=fixed,
        discontinuity=tuple(rows),
    )


# ---- cross-verification ---------------------------------------------------------------


def all_digraphs(n: int) -> Iterator[DirectedGraph]:
    """Every digraph on vertices 0..n-1 (self-loops allowed), by edge mask."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for mask in range(1 << (n * n)):
        out = tuple(
            tuple(u for u in range(n) if mask >> (v * n + u) & 1)
            for v in range(n)
        )
        yield DirectedGraph(n, out)


@dataclass(frozen=True)
class VerificationSummary:
    max_n: int
    graphs_checked: int
    disagreements: int
    monotonicity_violations: int
    oracle_nodes_total: int
    counterexample: str | None = None

    @property
    def clean(self) -> bool:
        return self.disagreements == 0 and self.monotonicity_violations == 0

    def to_json_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "graphs_checked": self.graphs_checked,
            "disagreements": self.disagreements,
            "monotonicity_violations": self.monotonicity_violations,
            "oracle_nodes_total": self.oracle_nodes_total,
            "counterexample": self.counterexample,
            "clean": self.clean,
        }


def delete_edge(g: DirectedGraph, v: int, u: int) -> DirectedGraph:
    """g minus the edge v -> u."""
    return DirectedGraph(
        g.n,
        tuple(
            tuple(x for x in g.out[w] if not (w == v and x == u))
            for w in range(g.n)
        ),
    )


def delete_vertex(g: DirectedGraph, v: int) -> DirectedGraph:
    """g minus vertex v, survivors relabeled downward to stay contiguous."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    keep = [w for w in range(g.n) if w != v]
    label = {w: i for i, w in enumerate(keep)}
    return DirectedGraph(
        g.n - 1,
        tuple(tuple(label[u] for u in g.out[w] if u != v) for w in keep),
    )


def verify_small(max_n: int = 3, budget: int = DEFAULT_ORACLE_BUDGET) -> VerificationSummary:
    """Cross-check the structural classifier against the oracle on every graph.

    Covers all 2^(n*n) digraphs on exactly n = max_n vertices.  Also checks
    one-step subgraph monotonicity through the oracle's own verdicts: for
    every edge-deleted or vertex-deleted subgraph H of G, H Dangerous must
    imply G Dangerous.  The first violation of either kind is recorded as a
    counterexample (expected: none, ever).
    """
    if not 1 <= max_n <= ORACLE_MAX_N:
        raise ValueError(f"max_n must be between 1 and {ORACLE_MAX_N}")
    verdicts: dict[tuple[int, int], str] = {}
    nodes_total = 0
    checked = 0
    disagreements = 0
    monotonicity = 0
    counterexample: str | None = None

    def edge_mask(g: DirectedGraph) -> int:
        mask = 0
        for v in range(g.n):
            for u in g.out[v]:
                mask |= 1 << (v * g.n + u)
        return mask

    def oracle_verdict(g: DirectedGraph) -> str:
        nonlocal nodes_total
        key = (g.n, edge_mask(g))
        if key not in verdicts:
            result = brute_force_dangerous(g, budget=budget)
            if result.oracle_nodes is not None:
                nodes_total += result.oracle_nodes
            verdicts[key] = result.verdict
        return verdicts[key]

    n = max_n
    for g in all_digraphs(n):
        checked += 1
        structural = classify(g).verdict
        exhaustive = oracle_verdict(g)
        if structural != exhaustive:
            disagreements += 1
            if counterexample is None:
                counterexample = (
                    f"classifier disagreement on edges {sorted(g.edges())}: "
                    f"classify={structural}, oracle={exhaustive}"
                )
            continue
        subgraphs = [delete_edge(g, v, u) for v in range(n) for u in g.out[v]]
        if n > 1:
            subgraphs += [delete_vertex(g, v) for v in range(n)]
        for h in subgraphs:
            if oracle_verdict(h) == "Dangerous" and exhaustive != "Dangerous":
                monotonicity += 1
                if counterexample is None:
                    counterexample = (
                        f"monotonicity violation: subgraph of edges {sorted(g.edges())} "
                        f"is Dangerous while the graph itself is {exhaustive}"
                    )
    return VerificationSummary(
        max_n=max_n,
        graphs_checked=checked,
        disagreements=disagreements,
        monotonicity_violations=monotonicity,
        oracle_nodes_total=nodes_total,
        counterexample=counterexample,
    )

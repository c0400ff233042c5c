"""Fixed points of rule families, finite and prefix-approximate.

Finite side: scan all assignments, or propagate through an acyclic graph
sinks-first (which also proves the fixed point unique).

Infinite side: over a locally finite generator graph, solve the equation
x_v = f(x)_v exactly on the solved region C = {0..k} plus the out-neighbors
of {0..k}, reading every coordinate outside C as a constant tail bit.  The
result is an eventually constant point that provably satisfies its defining
equations on C.  Whether it is a genuine fixed point of the full infinite
map is then decided by probing coordinates beyond the region: if a margin
of them reproduce the tail, the constant-tail extension is self-consistent
and the point is reported exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .assignment import (
    Assignment,
    DEFAULT_ENUMERATION_CAP,
    EventuallyConstantAssignment,
    enumerate_assignments,
)
from .generators import GeneratorGraph, NotLocallyFiniteError
from .rules import (
    GeneratorRuleFamily,
    LocalRuleFamily,
    LocallyFiniteRules,
    YabloRules,
    evaluate_coordinate,
)

__all__ = [
    "ClosureBudgetError",
    "DEFAULT_CLOSURE_BUDGET",
    "EXACTNESS_PROBE_MARGIN",
    "FIXED_POINT_SCAN_CAP",
    "FixedPointReport",
    "PrefixFixedPointRequest",
    "PropagationCycleError",
    "dag_fixed_point",
    "find_fixed_points",
    "is_fixed_point",
    "prefix_fixed_point",
    "refine_to_fixed_point",
]

DEFAULT_CLOSURE_BUDGET = 100_000
EXACTNESS_PROBE_MARGIN = 32
FIXED_POINT_SCAN_CAP = 24


class PropagationCycleError(ValueError):
    """Raised when value propagation meets a dependency cycle."""


class ClosureBudgetError(RuntimeError):
    """Raised when a solved region grows past its vertex budget."""

    def __init__(self, k: int, budget: int, size: int) -> None:
        super().__init__(f"solved region for k={k} exceeded budget of {budget} vertices")
        self.k = k
        self.budget = budget
        self.size = size


# ---- finite graphs ------------------------------------------------------------


def is_fixed_point(family: LocalRuleFamily, a: Assignment) -> bool:
    """True iff every coordinate reproduces itself; stops at the first mismatch."""
    if a.n != family.graph.n:
        raise ValueError(f"length mismatch: assignment {a.n}, graph {family.graph.n}")
    bits = a.bits
    for v, r in enumerate(family.rules):
        idx = 0
        for j, u in enumerate(r.neighbors):
            idx |= ((bits >> u) & 1) << j
        if (r.table >> idx) & 1 != (bits >> v) & 1:
            return False
    return True


def find_fixed_points(family: LocalRuleFamily) -> list[Assignment]:
    """All fixed points of the induced map, by exhaustive scan (n capped at 24)."""
    n = family.graph.n
    return [a for a in enumerate_assignments(n, cap=FIXED_POINT_SCAN_CAP) if is_fixed_point(family, a)]


def dag_fixed_point(family: LocalRuleFamily) -> Assignment:
    """The unique fixed point over an acyclic graph, sinks-first.

    A vertex is ready once all its out-neighbors hold values, so its rule
    evaluates to a forced bit; on an acyclic graph this resolves everything
    and never branches, which is exactly why such graphs admit no
    fixed-point-free family.
    """
    g = family.graph
    unresolved = [g.out_degree(v) for v in range(g.n)]
    incoming: list[list[int]] = [[] for _ in range(g.n)]
    for v in range(g.n):
        for u in g.out[v]:
            incoming[u].append(v)
    ready = [v for v in range(g.n) if unresolved[v] == 0]
    value = [0] * g.n
    resolved = 0
    while ready:
        v = ready.pop()
        value[v] = family.rules[v].apply(lambda u: value[u])
        resolved += 1
        for w in incoming[v]:
            unresolved[w] -= 1
            if unresolved[w] == 0:
                ready.append(w)
    if resolved != g.n:
        raise PropagationCycleError("propagation requires acyclic graph")
    bits = 0
    for v in range(g.n):
        bits |= value[v] << v
    return Assignment(g.n, bits)


# ---- prefix approximation over generator graphs -------------------------------


@dataclass(frozen=True)
class PrefixFixedPointRequest:
    """Solve for coordinates 0..k (plus their one-step out-neighbor ring).

    ``tail`` is the constant every coordinate outside the solved region is
    assumed to hold; ``budget`` caps the region's vertex count.
    """

    base: GeneratorGraph
    rules: GeneratorRuleFamily
    k: int
    tail: int = 0
    budget: int = DEFAULT_CLOSURE_BUDGET

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"prefix bound k must be >= 0, got {self.k}")
        if self.tail not in (0, 1):
            raise ValueError(f"tail must be 0 or 1, got {self.tail}")
        if self.budget < 1:
            raise ValueError("budget must be positive")


def _solved_region(req: PrefixFixedPointRequest) -> list[int]:
    """{0..k} together with its out-neighbors, ascending; budget-capped."""
    region = set(range(req.k + 1))
    if len(region) > req.budget:
        raise ClosureBudgetError(req.k, req.budget, len(region))
    for v in range(req.k + 1):
        for u in req.base.out_neighbors(v):
            region.add(u)
            if len(region) > req.budget:
                raise ClosureBudgetError(req.k, req.budget, len(region))
    return sorted(region)


def _solve_region(req: PrefixFixedPointRequest) -> tuple[dict[int, int], list[int]]:
    """Values on the solved region satisfying every region equation exactly."""
    if isinstance(req.rules, YabloRules):
        raise NotLocallyFiniteError(
            "symbolic rule family has no finite neighbor reads; prefix propagation needs per-vertex tables"
        )
    region = _solved_region(req)
    member = set(region)
    rules = {v: req.rules.local_rule(v) for v in region}
    for v in region:
        if rules[v].neighbors != req.base.out_neighbors(v):
            raise ValueError(
                f"vertex {v}: rule neighbors {rules[v].neighbors} != generator out-list"
            )

    # Sinks-first order over dependencies that stay inside the region; reads
    # leaving the region are already constant (the tail) so they don't gate.
    unresolved = {v: sum(1 for u in rules[v].neighbors if u in member) for v in region}
    incoming: dict[int, list[int]] = {v: [] for v in region}
    for v in region:
        for u in rules[v].neighbors:
            if u in member:
                incoming[u].append(v)
    ready = [v for v in region if unresolved[v] == 0]
    value: dict[int, int] = {}
    while ready:
        v = ready.pop()
        value[v] = rules[v].apply(lambda u: value[u] if u in member else req.tail)
        for w in incoming[v]:
            unresolved[w] -= 1
            if unresolved[w] == 0:
                ready.append(w)
    if len(value) != len(region):
        raise PropagationCycleError("cycle detected inside closure")

    for v in region:
        got = rules[v].apply(lambda u: value[u] if u in member else req.tail)
        if got != value[v]:
            raise RuntimeError(f"internal: propagated value at vertex {v} fails its equation")
    return value, region


def _assemble(value: dict[int, int], region: list[int], tail: int) -> EventuallyConstantAssignment:
    prefix = [tail] * (region[-1] + 1)
    for v, bit in value.items():
        prefix[v] = bit
    return EventuallyConstantAssignment(tuple(prefix), tail)


def prefix_fixed_point(req: PrefixFixedPointRequest) -> EventuallyConstantAssignment:
    """The eventually constant point pinned by the region equations for this k."""
    value, region = _solve_region(req)
    return _assemble(value, region, req.tail)


@dataclass(frozen=True)
class FixedPointReport:
    """Outcome of a refinement run.

    kind is "exact" when the point provably satisfies every equation up to
    ``verified_upto`` including a full probe margin past its solved region,
    "prefix-only" when equations hold on the region but the constant tail
    breaks somewhere in the probe range, and "none" when no candidate point
    was produced (unreachable for valid requests; kept for the interface).
    The trace records the solved point for every region size tried.
    """

    kind: str
    point: EventuallyConstantAssignment | None
    verified_upto: int
    trace: tuple[tuple[int, EventuallyConstantAssignment], ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "point": None if self.point is None else self.point.to_text(),
            "verified_upto": self.verified_upto,
        }


def _first_probe_failure(
    rules: GeneratorRuleFamily,
    point: EventuallyConstantAssignment,
    region: list[int],
    bound: int,
) -> int | None:
    """Least unenforced coordinate <= bound whose equation fails, else None."""
    member = set(region)
    for v in range(bound + 1):
        if v in member:
            continue
        if evaluate_coordinate(rules, point, v) != point.value_at(v):
            return v
    return None


def refine_to_fixed_point(
    base: GeneratorGraph,
    rules: GeneratorRuleFamily,
    k_limit: int,
    tail: int = 0,
    budget: int = DEFAULT_CLOSURE_BUDGET,
) -> FixedPointReport:
    """Solve every region size k = 0..k_limit and judge the best point found.

    Each solved point is probed EXACTNESS_PROBE_MARGIN coordinates past its
    region; a clean probe certifies the point outright (reads beyond the
    probe window only ever see tail bits reproducing tail bits), and the
    first certified point becomes the report's answer.  If no probe comes
    back clean the report keeps the last point as a prefix-stage
    approximation, honest about how far its equations were checked.

    The full trace of (k, point) pairs is kept either way; watching the
    prefixes stabilize, or fail to, is the whole diagnostic value.  A cycle
    or a blown budget at some k propagates as the corresponding error, since
    both break this routine's precondition.
    """
    if k_limit < 0:
        raise ValueError(f"k_limit must be >= 0, got {k_limit}")
    trace: list[tuple[int, EventuallyConstantAssignment]] = []
    exact: tuple[EventuallyConstantAssignment, int] | None = None
    last: tuple[EventuallyConstantAssignment, list[int]] | None = None
    for k in range(k_limit + 1):
        req = PrefixFixedPointRequest(base=base, rules=rules, k=k, tail=tail, budget=budget)
        value, region = _solve_region(req)
        point = _assemble(value, region, tail)
        trace.append((k, point))
        last = (point, region)
        if exact is None:
            bound = region[-1] + EXACTNESS_PROBE_MARGIN
            if _first_probe_failure(rules, point, region, bound) is None:
                exact = (point, bound)
    if exact is not None:
        point, bound = exact
        return FixedPointReport("exact", point, bound, tuple(trace))
    if last is None:
        return FixedPointReport("none", None, -1, tuple(trace))
    point, region = last
    bound = region[-1] + EXACTNESS_PROBE_MARGIN
    failure = _first_probe_failure(rules, point, region, bound)
    verified = bound if failure is None else failure - 1
    return FixedPointReport("prefix-only", point, verified, tuple(trace))

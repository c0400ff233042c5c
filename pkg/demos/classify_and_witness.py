"""Classify a finite graph and, when it is dangerous, hand over the receipt.

A graph is dangerous when some rule family respecting it has no consistent
assignment at all.  For finite graphs that happens exactly when the graph
contains a directed cycle, and the witness family is concrete enough to
check by hand: copy your successor around the cycle, negate at the closing
edge, ignore everything else.
"""
from dangergraph import (
    DirectedGraph,
    classify,
    cycle_witness_family,
    find_cycle,
    find_fixed_points,
)


def show(title, g):
    verdict = classify(g)
    print(f"{title}: {verdict.verdict}")
    if verdict.cycle is not None:
        print(f"  cycle found: {' -> '.join(map(str, verdict.cycle))} -> {verdict.cycle[0]}")
    if verdict.certificate is not None:
        print(f"  certificate: {verdict.certificate}")
    print()
    return verdict


def main():
    diamond = DirectedGraph.from_edges([(0, 1), (0, 2), (1, 3), (2, 3)])
    show("diamond (acyclic)", diamond)

    loop = DirectedGraph.from_edges([(0, 1), (1, 2), (2, 0), (3, 0)])
    verdict = show("triangle with a pendant vertex", loop)

    # build the unsatisfiable family on the cycle the classifier found
    cycle = find_cycle(loop)
    family = cycle_witness_family(loop, cycle)
    print("witness rules:")
    for rule in family.rules:
        reads = ", ".join(map(str, rule.neighbors)) or "nothing"
        print(f"  vertex {rule.vertex} reads {reads}, table {rule.table:#04b}")

    fixed = find_fixed_points(family)
    print(f"\nfixed points of the witness over all {2 ** loop.n} assignments: {fixed!r}")
    print("an empty list means no assignment is consistent, which is the whole point")

    assert verdict.verdict == "Dangerous"
    assert fixed == []


if __name__ == "__main__":
    main()

"""What it means for a function to respect a graph.

Every vertex computes its next bit from the current bits of its
out-neighbors and nothing else.  Given the full truth table of a function
on n bits we can recover the minimal wiring it needs, and "f respects G"
is exactly "G contains that wiring".
"""
from dangergraph import (
    DirectedGraph,
    RawFunctionTable,
    count_families,
    enumerate_families,
    minimal_dependency_graph,
    minimal_support,
    respects,
    to_raw,
)


def main():
    # the swap on two bits: coordinate 0 copies bit 1 and vice versa
    swap = RawFunctionTable.from_function(2, lambda x: ((x >> 1) & 1) | ((x & 1) << 1))
    dependency = minimal_dependency_graph(swap)
    print("swap on 2 bits needs the edges:", sorted(dependency.edges()))
    print("  coordinate 0 depends on vertices", sorted(minimal_support(swap, 0)))
    print("  coordinate 1 depends on vertices", sorted(minimal_support(swap, 1)))

    two_cycle = DirectedGraph.from_edges([(0, 1), (1, 0)])
    edgeless = DirectedGraph(2, ((), ()))
    print("\nswap respects the 2-cycle:", respects(swap, two_cycle))
    print("swap respects the edgeless graph:", respects(swap, edgeless))

    # every family the 2-cycle supports, as raw tables
    print(f"\nthe 2-cycle supports {count_families(two_cycle)} rule families:")
    for family in enumerate_families(two_cycle):
        raw = to_raw(family)
        tables = " ".join(f"{rule.table:02b}" for rule in family.rules)
        print(f"  tables [{tables}] -> raw {raw.table}")

    # a constant function respects anything, including no edges at all
    const = RawFunctionTable.from_function(2, lambda x: 0b11)
    print("\nthe constant-11 function depends on:", sorted(minimal_dependency_graph(const).edges()))
    print("it respects the edgeless graph:", respects(const, edgeless))


if __name__ == "__main__":
    main()

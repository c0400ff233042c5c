"""Cross-checking the fast classifier against the exhaustive oracle.

The classifier answers with a cycle search.  The oracle never looks at
cycles: it runs a backtracking search over every rule family the graph
supports, looking for one with no fixed point.  If the two ever disagree
on a finite graph, one of them is wrong; this script shows them agreeing
everywhere they can both speak.
"""
import random

from dangergraph import (
    DirectedGraph,
    all_digraphs,
    brute_force_dangerous,
    classify,
    verify_small,
)


def main():
    print("every digraph on 1..3 vertices, classifier vs oracle:")
    for n in (1, 2, 3):
        graphs = disagreements = 0
        for g in all_digraphs(n):
            graphs += 1
            if classify(g).verdict != brute_force_dangerous(g).verdict:
                disagreements += 1
        print(f"  n={n}: {graphs} graphs, {disagreements} disagreements")

    rng = random.Random(7)
    print("\n200 random graphs on 4 vertices:")
    disagreements = 0
    for _ in range(200):
        out = []
        for _ in range(4):
            degree = rng.randint(0, 3)
            out.append(tuple(sorted(rng.sample(range(4), degree))))
        g = DirectedGraph(4, tuple(out))
        if classify(g).verdict != brute_force_dangerous(g).verdict:
            disagreements += 1
    print(f"  {disagreements} disagreements")

    # verify_small also perturbs each graph by single edge and vertex
    # deletions, so near-misses of the agreement get probed too
    summary = verify_small(max_n=3)
    print(f"\nverify_small(max_n=3): {summary.graphs_checked} graphs checked,")
    print(f"  {summary.disagreements} disagreements, clean={summary.clean}")


if __name__ == "__main__":
    main()

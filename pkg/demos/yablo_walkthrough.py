"""A graph with no cycle that is dangerous anyway.

Vertex n points at every vertex after it, so no walk ever returns: the
graph is as acyclic as they come.  Give each vertex the rule "I am 1
exactly when everyone after me is 0" and no assignment works: a 1 at n
forces zeros forever after, but then n+1 should be 1 too.  The catch is
infinite out-degrees, which is why the finite story does not apply.
"""
from dangergraph import (
    EventuallyConstantAssignment,
    NotLocallyFiniteError,
    YABLO,
    classify_generator,
    metric_distance,
    yablo_image,
    yablo_report,
)


def main():
    print("out-neighbors are infinite, so the patch classifier refuses:")
    try:
        classify_generator(YABLO)
    except NotLocallyFiniteError as exc:
        print(f"  {exc}\n")

    report = yablo_report(prefix_bound=10)
    print(f"scan of every eventually-constant point with prefix <= {report.prefix_bound}:")
    print(f"  candidates: {report.candidates_scanned}")
    print(f"  fixed points: {report.fixed_points_found}")
    print(f"  verdict: {report.verdict}\n")

    # the rule map is also discontinuous at the all-zero point: points that
    # agree with 0 arbitrarily far still map to images that differ at once
    zero = EventuallyConstantAssignment.constant(0)
    print("x = 0 everywhere       maps to", yablo_image(zero).to_text())
    for k in (1, 4, 16):
        e_k = EventuallyConstantAssignment.single_one(k)
        gap = metric_distance(yablo_image(e_k), yablo_image(zero))
        print(
            f"x = 1 only at {k:>2}        is {metric_distance(e_k, zero)} from 0,"
            f" images differ by {gap}"
        )


if __name__ == "__main__":
    main()

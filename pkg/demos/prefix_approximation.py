"""Solving rule families on infinite graphs, one prefix at a time.

On a locally finite generator graph we cannot scan assignments, but we can
pin coordinates 0..k exactly: solve the finite patch those coordinates
read, assume a constant tail everywhere else.  Refinement grows k and
probes whether the answer has stopped changing; when fresh coordinates
keep reproducing the tail the point is exact, not just close.
"""
from dangergraph import (
    BINARY_TREE,
    PrefixFixedPointRequest,
    RAY,
    generator_rules,
    prefix_fixed_point,
    refine_to_fixed_point,
)


def main():
    # every vertex of the ray negates its successor; the tail is all zeros
    negating = generator_rules(RAY, "negate-first")
    print("ray, each vertex negates the next, tail 0:")
    for k in (0, 2, 4, 6):
        point = prefix_fixed_point(PrefixFixedPointRequest(base=RAY, rules=negating, k=k))
        print(f"  k={k}: {point.to_text()}")
    print("the alternating pattern never settles into the tail, so no prefix is final\n")

    report = refine_to_fixed_point(RAY, negating, k_limit=8)
    print(f"refinement verdict: {report.kind}")
    print(f"  best point: {report.point.to_text()}")
    print(f"  coordinates verified: 0..{report.verified_upto}\n")

    # copying instead of negating makes the all-zero tail a genuine fixed point
    copying = generator_rules(RAY, "copy-first")
    report = refine_to_fixed_point(RAY, copying, k_limit=8)
    print(f"ray, each vertex copies the next: {report.kind}, point {report.point.to_text()}")

    # on the infinite binary tree the constant-1 rule forces every vertex to 1
    ones = generator_rules(BINARY_TREE, "const-1")
    point = prefix_fixed_point(
        PrefixFixedPointRequest(base=BINARY_TREE, rules=ones, k=2, tail=1)
    )
    print(f"binary tree, constant-1 rules, tail 1, k=2: {point.to_text()}")
    print("an empty prefix means the point is the constant assignment itself")


if __name__ == "__main__":
    main()

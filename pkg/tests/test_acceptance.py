"""Acceptance gate: the eight properties the package promises, each with a
stated tolerance and time budget.  One printed pass line per criterion;
any failure trips an assertion instead.

These tests are intentionally heavier than the unit suite.  They lean on
``tests/corpus.py`` for independently implemented structures so a library
bug cannot hide behind itself.
"""
from __future__ import annotations

import itertools
import random
import time

from dangergraph import (
    DirectedGraph,
    DyadicDistance,
    EventuallyConstantAssignment,
    PrefixFixedPointRequest,
    RAY,
    RawFunctionTable,
    all_digraphs,
    brute_force_dangerous,
    cycle_witness_family,
    dag_fixed_point,
    evaluate_coordinate,
    find_fixed_points,
    generator_rules,
    has_directed_cycle,
    metric_distance,
    minimal_dependency_graph,
    prefix_fixed_point,
    respects,
    yablo_image,
    yablo_report,
)

from corpus import all_subgraphs, random_dag, random_digraph, random_family


def _pass(num: int, detail: str) -> None:
    print(f"criterion {num}: PASS - {detail}")


def _oracle_says_dangerous(g: DirectedGraph) -> bool:
    verdict = brute_force_dangerous(g)
    # the default budget must suffice at these sizes; Unknown would be a bug
    assert verdict.verdict in ("Safe", "Dangerous")
    return verdict.verdict == "Dangerous"


def test_c1_exhaustive_small_graphs_danger_equals_cyclicity():
    start = time.monotonic()
    checked = 0
    for n in (1, 2, 3):
        for g in all_digraphs(n):
            assert _oracle_says_dangerous(g) == has_directed_cycle(g), g
            checked += 1
    elapsed = time.monotonic() - start
    assert checked == 530
    assert elapsed < 300.0
    _pass(1, f"530 digraphs on 1..3 vertices, zero disagreements, {elapsed:.1f}s")


def test_c2_sampled_four_vertex_graphs_danger_equals_cyclicity():
    start = time.monotonic()
    rng = random.Random(4242)
    for _ in range(1000):
        g = random_digraph(rng, 4, 3)
        assert _oracle_says_dangerous(g) == has_directed_cycle(g), g
    elapsed = time.monotonic() - start
    assert elapsed < 600.0
    _pass(2, f"1000 seeded 4-vertex graphs, zero disagreements, {elapsed:.1f}s")


def test_c3_cycle_witnesses_are_fixed_point_free():
    start = time.monotonic()
    for length in range(1, 9):
        out = tuple(((v + 1) % length,) for v in range(length))
        g = DirectedGraph(length, out)
        family = cycle_witness_family(g, list(range(length)))
        # exhaustive scan of all 2**length assignments
        assert find_fixed_points(family) == []
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _pass(3, f"cycles of length 1..8, zero fixed points in any witness, {elapsed:.2f}s")


def test_c4_dag_propagation_matches_exhaustive_scan():
    start = time.monotonic()
    rng = random.Random(91)
    for _ in range(50):
        g = random_dag(rng, 10)
        for _ in range(100):
            family = random_family(rng, g)
            scanned = find_fixed_points(family)
            assert len(scanned) == 1
            assert dag_fixed_point(family) == scanned[0]
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    _pass(4, f"50 DAGs x 100 families, propagation equals the unique scan result, {elapsed:.1f}s")


def test_c5_respect_equals_dependency_containment():
    start = time.monotonic()
    graphs = list(all_digraphs(2))
    assert len(graphs) == 16
    checked = 0
    for entries in itertools.product(range(4), repeat=4):
        f = RawFunctionTable(2, entries)
        dependency_edges = set(minimal_dependency_graph(f).edges())
        for g in graphs:
            assert respects(f, g) == (dependency_edges <= set(g.edges()))
            checked += 1
    elapsed = time.monotonic() - start
    assert checked == 256 * 16
    _pass(5, f"all 256 two-vertex functions against all 16 graphs, zero mismatches, {elapsed:.1f}s")


def test_c6_ray_prefix_points_satisfy_the_coordinate_equation():
    start = time.monotonic()
    for seed in range(100):
        rules = generator_rules(RAY, "random", seed=seed)
        point = prefix_fixed_point(
            PrefixFixedPointRequest(base=RAY, rules=rules, k=16, tail=0)
        )
        # agreement on coordinates 0..16 puts the image within 2**-16 of the point
        for i in range(17):
            assert evaluate_coordinate(rules, point, i) == point.value_at(i), (seed, i)
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _pass(6, f"100 random families on the ray, x_i = f(x)_i for all i <= 16, {elapsed:.2f}s")


def test_c7_yablo_scan_and_discontinuity():
    start = time.monotonic()
    report = yablo_report(prefix_bound=12)
    assert report.candidates_scanned == 2 * 2 ** 12
    assert report.fixed_points_found == 0

    zero = EventuallyConstantAssignment((), 0)
    assert yablo_image(zero).value_at(0) == 1
    for k in range(1, 33):
        e_k = EventuallyConstantAssignment.single_one(k)
        assert metric_distance(e_k, zero) == DyadicDistance(k)
        assert yablo_image(e_k).value_at(0) == 0
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _pass(7, f"8192 candidates, zero fixed points; image jumps at distance 2^-k for k <= 32, {elapsed:.2f}s")


def test_c8_danger_is_monotone_under_subgraphs():
    start = time.monotonic()
    memo: dict[tuple[int, tuple], bool] = {}

    def dangerous(g: DirectedGraph) -> bool:
        key = (g.n, g.edges())
        if key not in memo:
            memo[key] = _oracle_says_dangerous(g)
        return memo[key]

    violations = 0
    pairs = 0
    for n in (1, 2, 3):
        for g in all_digraphs(n):
            g_dangerous = dangerous(g)
            for _, h in all_subgraphs(g):
                pairs += 1
                if dangerous(h) and not g_dangerous:
                    violations += 1
    elapsed = time.monotonic() - start
    assert violations == 0
    _pass(8, f"{pairs} (graph, subgraph) pairs on up to 3 vertices, zero violations, {elapsed:.1f}s")

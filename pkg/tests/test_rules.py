import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from dangergraph import (
    Assignment,
    BINARY_TREE,
    DirectedGraph,
    EventuallyConstantAssignment,
    LocalRule,
    LocalRuleFamily,
    NotLocallyFiniteError,
    RAY,
    RNG_NAME,
    YABLO,
    YABLO_RULES,
    constant_table,
    coordinate_table,
    count_families,
    enumerate_assignments,
    enumerate_families,
    evaluate,
    evaluate_coordinate,
    family_from_json_dict,
    family_to_json_dict,
    generator_rules,
    is_independent_of,
    load_family,
    minimal_dependency_graph,
    minimal_support,
    projection_table,
    respects,
    sample_family,
    save_family,
    to_raw,
    yablo_image,
)
from dangergraph.danger import all_digraphs
from dangergraph.rules import RawFunctionTable, table_mask

from corpus import (
    assignment_to_dict,
    eval_by_dict,
    independent_by_classes,
    random_digraph,
    random_family,
)

TWO_CYCLE = DirectedGraph.from_edges([(0, 1), (1, 0)])


# ---- truth-table helpers -----------------------------------------------------------


def test_table_mask():
    assert table_mask(0) == 0b1
    assert table_mask(1) == 0b11
    assert table_mask(3) == 0xFF


def test_constant_table():
    assert constant_table(2, 0) == 0
    assert constant_table(2, 1) == 0b1111


def test_projection_table_small():
    # arity 2: index = x(u0) + 2*x(u1)
    assert projection_table(2, 0) == 0b1010
    assert projection_table(2, 1) == 0b1100
    assert projection_table(1, 0) == 0b10


def test_projection_table_matches_definition():
    for arity in range(1, 7):
        for j in range(arity):
            table = projection_table(arity, j)
            for idx in range(1 << arity):
                assert (table >> idx) & 1 == (idx >> j) & 1


def test_projection_index_out_of_range():
    with pytest.raises(ValueError):
        projection_table(2, 2)


# ---- local rules -------------------------------------------------------------------


def test_rule_apply_reads_neighbors_in_ascending_order():
    # output = value at neighbor 5 (index bit 1)
    rule = LocalRule(0, (3, 5), projection_table(2, 1))
    assert rule.apply(lambda u: {3: 1, 5: 0}[u]) == 0
    assert rule.apply(lambda u: {3: 0, 5: 1}[u]) == 1


def test_rule_validates_table_range_and_neighbor_order():
    with pytest.raises(ValueError, match="out of range"):
        LocalRule(0, (1,), 4)
    with pytest.raises(ValueError, match="ascending"):
        LocalRule(0, (2, 1), 0)


def test_rule_constructors():
    copy = LocalRule.copying(0, (1, 2), 2)
    neg = LocalRule.negating(0, (1, 2), 1)
    const = LocalRule.constant(0, (1, 2), 1)
    for b1, b2 in itertools.product((0, 1), repeat=2):
        env = {1: b1, 2: b2}.__getitem__
        assert copy.apply(env) == b2
        assert neg.apply(env) == 1 - b1
        assert const.apply(env) == 1


def test_family_requires_matching_neighbor_lists():
    g = DirectedGraph.from_edges([(0, 1)], n=2)
    with pytest.raises(ValueError, match="out-list"):
        LocalRuleFamily(g, (LocalRule.constant(0, (), 0), LocalRule.constant(1, (), 0)))
    with pytest.raises(ValueError, match="position"):
        LocalRuleFamily(g, (LocalRule.constant(1, (), 0), LocalRule.constant(1, (), 0)))


# ---- evaluation --------------------------------------------------------------------


def test_evaluate_two_cycle_copy_swaps():
    family = LocalRuleFamily(
        TWO_CYCLE,
        (LocalRule.copying(0, (1,), 1), LocalRule.copying(1, (0,), 0)),
    )
    assert evaluate(family, Assignment.from_string("10")).to_string() == "01"
    assert evaluate(family, Assignment.from_string("11")).to_string() == "11"


def test_evaluate_matches_naive_dict_evaluation():
    rng = random.Random(20260819)
    for _ in range(60):
        g = random_digraph(rng, rng.randint(1, 6), 3)
        family = random_family(rng, g)
        for a in enumerate_assignments(g.n):
            expected = eval_by_dict(family, assignment_to_dict(a))
            assert assignment_to_dict(evaluate(family, a)) == expected


def test_evaluate_length_mismatch():
    family = LocalRuleFamily(
        DirectedGraph(1, ((),)), (LocalRule.constant(0, (), 0),)
    )
    with pytest.raises(ValueError, match="mismatch"):
        evaluate(family, Assignment.from_string("00"))


def test_locality_flipping_outside_neighborhood_never_matters():
    # every assignment, every vertex, every non-neighbor flip, graphs up to n = 4
    rng = random.Random(2)
    graphs = [random_digraph(rng, n, 4) for n in (1, 2, 3, 4) for _ in range(8)]
    graphs.append(DirectedGraph.from_edges([(0, 0), (1, 2), (2, 1), (3, 0)], n=4))
    for g in graphs:
        family = random_family(rng, g)
        for a in enumerate_assignments(g.n):
            image = evaluate(family, a)
            for v in range(g.n):
                for u in range(g.n):
                    if u in g.out[v]:
                        continue
                    flipped = evaluate(family, a.flip(u))
                    assert flipped.bit(v) == image.bit(v)


# ---- rule families over generators ---------------------------------------------------


def test_generator_rules_copy_and_negate():
    copy = generator_rules(RAY, "copy-first")
    neg = generator_rules(RAY, "negate-first")
    x = EventuallyConstantAssignment.single_one(4)
    assert evaluate_coordinate(copy, x, 3) == 1
    assert evaluate_coordinate(copy, x, 4) == 0
    assert evaluate_coordinate(neg, x, 3) == 0
    assert evaluate_coordinate(neg, x, 4) == 1


def test_generator_rules_constants_ignore_input():
    c1 = generator_rules(BINARY_TREE, "const-1")
    for v in (0, 3, 9):
        assert evaluate_coordinate(c1, EventuallyConstantAssignment.constant(0), v) == 1


def test_generator_rules_random_is_deterministic_per_seed():
    a = generator_rules(RAY, "random", seed=7)
    b = generator_rules(RAY, "random", seed=7)
    c = generator_rules(RAY, "random", seed=8)
    tables_a = [a.local_rule(v).table for v in range(50)]
    assert tables_a == [b.local_rule(v).table for v in range(50)]
    assert tables_a != [c.local_rule(v).table for v in range(50)]


def test_generator_rules_reject_symbolic_base_and_bad_kind():
    with pytest.raises(NotLocallyFiniteError):
        generator_rules(YABLO, "copy-first")
    with pytest.raises(ValueError, match="needs a seed"):
        generator_rules(RAY, "random")
    with pytest.raises(ValueError, match="unknown rule kind"):
        generator_rules(RAY, "majority").local_rule(0)


def test_mismatched_rule_vertex_is_rejected():
    from dangergraph import LocallyFiniteRules

    broken = LocallyFiniteRules("broken", lambda v: LocalRule.constant(v + 1, (), 0))
    with pytest.raises(ValueError, match="rule"):
        broken.local_rule(3)


# ---- the symbolic family -------------------------------------------------------------


def test_yablo_coordinate_all_zero_input():
    # nothing later is true, so every coordinate asserts it
    for v in (0, 1, 17):
        assert evaluate_coordinate(YABLO_RULES, EventuallyConstantAssignment.constant(0), v) == 1


def test_yablo_coordinate_tail_one_input():
    x = EventuallyConstantAssignment((0, 0), 1)
    for v in (0, 5):
        assert evaluate_coordinate(YABLO_RULES, x, v) == 0


def test_yablo_coordinate_sees_only_later_ones():
    x = EventuallyConstantAssignment.from_text("0100|0")
    assert evaluate_coordinate(YABLO_RULES, x, 0) == 0
    assert evaluate_coordinate(YABLO_RULES, x, 1) == 1
    assert evaluate_coordinate(YABLO_RULES, x, 2) == 1


def yablo_image_text(text: str) -> str:
    return yablo_image(EventuallyConstantAssignment.from_text(text)).to_text()


def test_yablo_image_closed_forms():
    assert yablo_image_text("|0") == "|1"
    assert yablo_image_text("|1") == "|0"
    assert yablo_image_text("0100|0") == "0|1"
    assert yablo_image_text("0001|0") == "000|1"
    assert yablo_image_text("11|1") == "|0"


def test_yablo_image_agrees_with_coordinate_evaluation():
    # all prefixes up to length 10, both tails, coordinates through prefix + 2
    for length in range(11):
        for bits in itertools.product((0, 1), repeat=length):
            for tail in (0, 1):
                x = EventuallyConstantAssignment(bits, tail)
                image = yablo_image(x)
                for v in range(len(x.prefix) + 3):
                    assert image.value_at(v) == evaluate_coordinate(YABLO_RULES, x, v)


# ---- raw tables and independence ------------------------------------------------------


def test_raw_table_from_function_and_apply():
    ident = RawFunctionTable.from_function(2, lambda bits: bits)
    assert ident.apply(Assignment.from_string("01")) == Assignment.from_string("01")
    swap = RawFunctionTable(2, (0, 2, 1, 3))
    assert swap.apply(Assignment.from_string("10")).to_string() == "01"


def test_raw_table_validation():
    with pytest.raises(ValueError, match="entries"):
        RawFunctionTable(2, (0, 1, 2))
    with pytest.raises(ValueError, match="out of range"):
        RawFunctionTable(1, (2, 0))
    with pytest.raises(ValueError, match="n <= 12"):
        RawFunctionTable(13, ())


def test_coordinate_table():
    swap = RawFunctionTable(2, (0, 2, 1, 3))
    # coordinate 0 of swap(x) is x_1: inputs 00,10,01,11 -> 0,0,1,1
    assert coordinate_table(swap, 0) == 0b1100
    assert coordinate_table(swap, 1) == 0b1010


def test_independence_matches_class_partition_exhaustively():
    for n in (1, 2, 3):
        vertex_sets = [set(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
        for table in range(1 << (1 << n)):
            for vs in vertex_sets:
                assert is_independent_of(table, n, vs) == independent_by_classes(table, n, vs)


@settings(max_examples=150)
@given(st.integers(0, 2 ** 16 - 1), st.sets(st.integers(0, 3)))
def test_independence_matches_class_partition_n4(table, vs):
    assert is_independent_of(table, 4, vs) == independent_by_classes(table, 4, vs)


def test_minimal_support_examples():
    ident = RawFunctionTable.from_function(2, lambda bits: bits)
    assert minimal_support(ident, 1) == {1}
    const = RawFunctionTable.from_function(2, lambda bits: 0b11)
    assert minimal_support(const, 0) == frozenset()
    xor = RawFunctionTable.from_function(3, lambda bits: ((bits >> 1) ^ (bits >> 2)) & 1)
    assert minimal_support(xor, 0) == {1, 2}


def test_minimal_dependency_graph_examples():
    ident = RawFunctionTable.from_function(2, lambda bits: bits)
    assert list(minimal_dependency_graph(ident).edges()) == [(0, 0), (1, 1)]
    const = RawFunctionTable.from_function(2, lambda bits: 1)
    assert minimal_dependency_graph(const).edge_count() == 0
    swap = RawFunctionTable(2, (0, 2, 1, 3))
    assert list(minimal_dependency_graph(swap).edges()) == [(0, 1), (1, 0)]


def test_respects_examples():
    const = RawFunctionTable.from_function(2, lambda bits: 0b10)
    ident = RawFunctionTable.from_function(2, lambda bits: bits)
    edgeless = DirectedGraph(2, ((), ()))
    loops = DirectedGraph.from_edges([(0, 0), (1, 1)])
    assert respects(const, edgeless)
    assert respects(const, loops)
    assert respects(ident, loops)
    assert not respects(ident, edgeless)


def test_respects_size_mismatch():
    f = RawFunctionTable.from_function(2, lambda bits: bits)
    with pytest.raises(ValueError, match="size mismatch"):
        respects(f, DirectedGraph(3, ((), (), ())))


def test_respect_soundness_every_family_respects_its_graph():
    # Coordinate v of to_raw depends only on rule v, so sweeping one
    # vertex's table with the others pinned covers every coordinate any
    # full family product could produce; small graphs get the full product.
    for n in (1, 2, 3):
        for g in all_digraphs(n):
            if count_families(g) <= 256:
                for family in enumerate_families(g):
                    assert respects(to_raw(family), g)
            else:
                for v in range(n):
                    others = [LocalRule.constant(u, g.out[u], 0) for u in range(n)]
                    for table in range(1 << (1 << g.out_degree(v))):
                        rules = list(others)
                        rules[v] = LocalRule(v, g.out[v], table)
                        family = LocalRuleFamily(g, tuple(rules))
                        assert respects(to_raw(family), g)


def test_respect_completeness_exhaustive_n2():
    # all 256 raw functions vs all 16 graphs: respecting = dependency containment
    graphs = list(all_digraphs(2))
    for packed in range(4 ** 4):
        entries = tuple((packed >> (2 * i)) & 3 for i in range(4))
        f = RawFunctionTable(2, entries)
        dep = minimal_dependency_graph(f)
        for g in graphs:
            contained = all(set(dep.out[v]) <= set(g.out[v]) for v in range(2))
            assert respects(f, g) == contained


def test_respect_completeness_sampled_n3():
    rng = random.Random(99)
    graphs = [random_digraph(rng, 3, 3) for _ in range(12)]
    for _ in range(250):
        f = RawFunctionTable(3, tuple(rng.randrange(8) for _ in range(8)))
        dep = minimal_dependency_graph(f)
        for g in graphs:
            contained = all(set(dep.out[v]) <= set(g.out[v]) for v in range(3))
            assert respects(f, g) == contained


# ---- enumeration, counting, sampling ---------------------------------------------------


def test_enumerate_single_vertex_no_edges():
    families = list(enumerate_families(DirectedGraph(1, ((),))))
    assert len(families) == 2
    assert [f.rules[0].table for f in families] == [0, 1]


def test_enumerate_self_loop():
    g = DirectedGraph.from_edges([(0, 0)], n=1)
    assert len(list(enumerate_families(g))) == 4


def test_enumerate_two_cycle_order_is_little_endian():
    families = list(enumerate_families(TWO_CYCLE))
    assert len(families) == 16
    for i, family in enumerate(families):
        assert family.rules[0].table == i & 3
        assert family.rules[1].table == i >> 2


def test_enumerate_length_equals_count():
    graphs = [
        DirectedGraph(1, ((),)),
        DirectedGraph.from_edges([(0, 0)], n=1),
        TWO_CYCLE,
        DirectedGraph(3, ((), (), ())),
        DirectedGraph.from_edges([(0, 1), (1, 2), (2, 0)]),
        DirectedGraph.from_edges([(0, 1), (0, 2), (1, 2)]),
    ]
    for g in graphs:
        assert len(list(enumerate_families(g))) == count_families(g)


def test_enumeration_cap():
    # a degree-7 hub alone holds 128 table bits, past the 64-bit cap
    star = DirectedGraph(8, ((1, 2, 3, 4, 5, 6, 7),) + ((),) * 7)
    assert count_families(star) == 1 << (128 + 7)
    with pytest.raises(ValueError, match="cap"):
        next(enumerate_families(star))


def test_count_examples():
    assert count_families(DirectedGraph(3, ((), (), ()))) == 8
    triangle = DirectedGraph.from_edges([(0, 1), (1, 2), (2, 0)])
    assert count_families(triangle) == 64
    hub = DirectedGraph(3, ((0, 1, 2), (), ()))
    assert count_families(hub) == 1024


def test_sample_family_deterministic():
    g = DirectedGraph.from_edges([(0, 1), (1, 0), (1, 1)], n=2)
    assert sample_family(g, 5) == sample_family(g, 5)
    assert RNG_NAME == "mt19937"


def test_sample_family_edgeless_gives_constants():
    g = DirectedGraph(3, ((), (), ()))
    family = sample_family(g, 0)
    for rule in family.rules:
        assert rule.arity == 0


def test_sample_family_coupon_collector_on_two_cycle():
    seen = {
        (sample_family(TWO_CYCLE, seed).rules[0].table,
         sample_family(TWO_CYCLE, seed).rules[1].table)
        for seed in range(1000)
    }
    assert len(seen) == 16


# ---- bridge to raw tables ----------------------------------------------------------------


def test_to_raw_constant_family():
    g = DirectedGraph(2, ((), ()))
    family = LocalRuleFamily(g, (LocalRule.constant(0, (), 1), LocalRule.constant(1, (), 0)))
    raw = to_raw(family)
    assert raw.table == (1, 1, 1, 1)


def test_to_raw_two_cycle_copy_is_the_swap_function():
    family = LocalRuleFamily(
        TWO_CYCLE, (LocalRule.copying(0, (1,), 1), LocalRule.copying(1, (0,), 0))
    )
    assert to_raw(family).table == (0, 2, 1, 3)


def test_to_raw_self_loop_negation():
    g = DirectedGraph.from_edges([(0, 0)], n=1)
    family = LocalRuleFamily(g, (LocalRule.negating(0, (0,), 0),))
    assert to_raw(family).table == (1, 0)


# ---- rule-family files ---------------------------------------------------------------------


def test_family_json_round_trip():
    g = DirectedGraph.from_edges([(0, 1), (1, 0), (1, 1)], n=2)
    family = sample_family(g, 3)
    doc = family_to_json_dict(family, meta={"note": "test"})
    assert doc["meta"] == {"note": "test"}
    assert family_from_json_dict(doc) == family
    assert family_from_json_dict(doc, graph=g) == family


def test_family_json_hex_width_covers_table():
    g = DirectedGraph.from_edges([(0, 0)], n=1)
    family = LocalRuleFamily(g, (LocalRule(0, (0,), 0),))
    doc = family_to_json_dict(family)
    assert doc["rules"][0]["table_hex"] == "0"
    hub = DirectedGraph(3, ((0, 1, 2), (), ()))
    fam = LocalRuleFamily(
        hub,
        (LocalRule(0, (0, 1, 2), 0), LocalRule.constant(1, (), 0), LocalRule.constant(2, (), 0)),
    )
    assert family_to_json_dict(fam)["rules"][0]["table_hex"] == "00"


def test_family_loader_rejects_graph_mismatch():
    family = sample_family(TWO_CYCLE, 1)
    doc = family_to_json_dict(family)
    other = DirectedGraph.from_edges([(0, 1)], n=2)
    with pytest.raises(ValueError, match="do not match"):
        family_from_json_dict(doc, graph=other)


def test_family_loader_rejects_malformed_documents():
    with pytest.raises(ValueError, match="malformed"):
        family_from_json_dict({"rules": []})
    with pytest.raises(ValueError, match="expected 2 rules"):
        family_from_json_dict({"n": 2, "rules": []})
    with pytest.raises(ValueError, match="repeated"):
        family_from_json_dict(
            {"n": 2, "rules": [
                {"v": 0, "neighbors": [], "table_hex": "0"},
                {"v": 0, "neighbors": [], "table_hex": "0"},
            ]}
        )


def test_save_and_load_family(tmp_path):
    g = DirectedGraph.from_edges([(0, 1), (1, 0)])
    family = sample_family(g, 11)
    path = str(tmp_path / "family.json")
    save_family(path, family, meta={"seed": 11, "rng": RNG_NAME})
    assert load_family(path) == family
    assert load_family(path, graph=g) == family

"""Tests for the six rule sets: legality, enumeration, blocks, JSON."""

import random
from fractions import Fraction as F
from itertools import permutations

import pytest

from colorgames.engine import (
    GameGraph,
    Scenario,
    scenario_along_path,
    scenario_from_json,
    scenario_to_json,
)
from colorgames.errors import ValidationError
from colorgames.games import (
    INC,
    OVL,
    PAR,
    gamma_ABS,
    gamma_COCO,
    gamma_IFIL,
    gamma_INT,
    gamma_IOV,
    gamma_IOV3,
    interval_relation_row,
    iov_scenario_to_abs,
    make_rules,
    validate_abs_game_graph,
    validate_coco_game_graph,
    validate_int_game_graph,
    with_blocks,
)
from colorgames.graphs import Graph, RootedForest, clique_number

from fixtures import (
    ABS_DEMO_EDGES,
    ABS_DEMO_OMEGA,
    ABS_DEMO_ROWS,
    COCO_DEMO_DOWNSETS,
    COCO_DEMO_EDGES,
    COCO_DEMO_PARENT,
    INT_DEMO_EDGES,
    INT_DEMO_INTERVALS,
    INT_DEMO_PARENT,
)


def build_scenario(rules, payloads):
    sc = Scenario()
    for p in payloads:
        assert rules.legal_move(sc, p), f"move {p!r} rejected at round {sc.n + 1}"
        sc = sc.extend(p, rules.edges_for(sc, p))
    return sc


# -- canonical interval enumeration ------------------------------------------


def test_interval_moves_empty_scenario():
    assert gamma_INT(2).enumerate_moves(Scenario()) == [(F(0), F(1))]


def test_interval_moves_one_prior():
    rules = gamma_INT(2)
    sc = build_scenario(rules, [(F(0), F(1))])
    moves = rules.enumerate_moves(sc)
    assert len(moves) == 6
    # One representative per placement of (l, r) among the two endpoints.
    sigs = {
        (sum(e < l for e in (0, 1)), sum(e < r for e in (0, 1)))
        for l, r in moves
    }
    assert sigs == {(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)}


def test_interval_moves_count_follows_gap_formula():
    rules = gamma_INT(3)
    sc = build_scenario(rules, [(F(0), F(4)), (F(1), F(2))])
    moves = rules.enumerate_moves(sc)
    # 4 distinct endpoints -> 5 gaps -> 15 ordered placements; every one is
    # legal while the clique bound is slack.
    assert len(moves) == 15


def test_canonical_three_interval_paths_realize_every_order_type():
    """With 3 rounds the canonical move tree has 1 * 6 * 15 = 90 leaves,
    one per order type of six interval endpoints (6!/2^3 = 90)."""
    rules = gamma_INT(3)
    leaves = []
    stack = [Scenario()]
    while stack:
        sc = stack.pop()
        if sc.n == 3:
            leaves.append(sc)
            continue
        for mv in rules.enumerate_moves(sc):
            stack.append(sc.extend(mv, rules.edges_for(sc, mv)))
    assert len(leaves) == 90

    def order_type(sc):
        values = [x for iv in sc.payloads for x in iv]
        ranks = {v: i for i, v in enumerate(sorted(values))}
        return tuple(ranks[v] for v in values)

    types = {order_type(sc) for sc in leaves}
    assert len(types) == 90
    all_types = {
        perm
        for perm in permutations(range(6))
        if all(perm[2 * i] < perm[2 * i + 1] for i in range(3))
    }
    assert types == all_types


def test_interval_clique_bound():
    rules = gamma_INT(1)
    sc = build_scenario(rules, [(F(0), F(2))])
    assert not rules.legal_move(sc, (F(1), F(3)))
    assert rules.legal_move(sc, (F(3), F(4)))
    # Closed intervals: sharing an endpoint counts as intersecting.
    assert not rules.legal_move(sc, (F(2), F(3)))


def test_interval_edges_match_demo():
    rules = gamma_INT(2)
    gg = GameGraph(
        "gamma_int",
        {"k": 2},
        Graph(5, INT_DEMO_EDGES),
        RootedForest(INT_DEMO_PARENT),
        tuple(INT_DEMO_INTERVALS),
    )
    assert validate_int_game_graph(gg)
    sc = scenario_along_path(gg, 2)
    assert rules.edges_for(sc.prefix(2), sc.payloads[2]) == {0, 1}


# -- growing partial orders ---------------------------------------------------


def test_coco_round_three_above_both_roots():
    rules = gamma_COCO(2)
    sc = build_scenario(rules, [frozenset(), frozenset()])
    assert rules.legal_move(sc, frozenset({0, 1}))
    # A third minimal element would push the width to 3.
    assert not rules.legal_move(sc, frozenset())


def test_coco_downsets_must_be_downward_closed():
    rules = gamma_COCO(3)
    sc = build_scenario(rules, [frozenset(), frozenset({0})])
    # {1} omits 0, which lies below 1.
    assert not rules.legal_move(sc, frozenset({1}))
    assert rules.legal_move(sc, frozenset({0, 1}))


def test_coco_edges_are_incomparabilities():
    rules = gamma_COCO(2)
    sc = build_scenario(
        rules, [frozenset(), frozenset({0}), frozenset({0}), frozenset({0, 1, 2})]
    )
    # 1 and 2 are the only incomparable pair: 3 is above everything and
    # comparability is exactly membership in the newcomer's downset.
    assert sc.graph() == Graph(4, [(1, 2)])


def test_coco_demo_game_graph_valid():
    gg = GameGraph(
        "gamma_coco",
        {"k": 2},
        Graph(5, COCO_DEMO_EDGES),
        RootedForest(COCO_DEMO_PARENT),
        tuple(COCO_DEMO_DOWNSETS),
    )
    assert validate_coco_game_graph(gg)


def test_coco_enumerate_moves_round_two():
    rules = gamma_COCO(2)
    sc = build_scenario(rules, [frozenset()])
    assert sorted(rules.enumerate_moves(sc), key=sorted) == [
        frozenset(),
        frozenset({0}),
    ]


# -- relation rows ------------------------------------------------------------


def test_relation_row_codes():
    intervals = [(F(0), F(10)), (F(1), F(3)), (F(5), F(8))]
    assert interval_relation_row(intervals, (F(6), F(9))) == (INC, PAR, OVL)
    assert interval_relation_row(intervals, (F(7), F(12))) == (OVL, PAR, OVL)
    with pytest.raises(ValidationError):
        interval_relation_row(intervals, (F(6), F(10)))  # shared endpoint
    with pytest.raises(ValidationError):
        interval_relation_row(intervals, (F(4), F(9)))  # l not increasing


def test_abs_axiom_a1():
    rules = gamma_ABS(3)
    sc = build_scenario(rules, [(), (INC,)])  # vertex 0 contains vertex 1
    assert not rules.legal_move(sc, (PAR, INC))
    assert not rules.legal_move(sc, (OVL, INC))
    assert rules.legal_move(sc, (INC, INC))


def test_abs_axiom_a2():
    rules = gamma_ABS(3)
    sc = build_scenario(rules, [(), (OVL,)])  # 0 overlaps 1
    # 1 contains z, so z sits inside two overlapping objects: forbidden.
    assert not rules.legal_move(sc, (INC, INC))
    assert rules.legal_move(sc, (OVL, INC))
    assert rules.legal_move(sc, (PAR, INC))


def test_abs_axiom_a3():
    rules = gamma_ABS(3)
    sc = build_scenario(rules, [(), (INC,)])  # 0 contains 1
    # 1 overlaps z, so z must meet 0 one way or the other.
    assert not rules.legal_move(sc, (PAR, OVL))
    assert rules.legal_move(sc, (INC, OVL))
    assert rules.legal_move(sc, (OVL, OVL))


def test_abs_axiom_a4():
    rules = gamma_ABS(3)
    sc = build_scenario(rules, [(), (PAR,)])  # 0 disjoint from 1
    # Everything 1 meets later stays disjoint from 0.
    assert not rules.legal_move(sc, (INC, INC))
    assert not rules.legal_move(sc, (OVL, OVL))
    assert rules.legal_move(sc, (PAR, OVL))
    assert rules.legal_move(sc, (PAR, INC))


def test_abs_all_disjoint_row_always_legal():
    rules = gamma_ABS(1)
    sc = Scenario()
    for _ in range(4):
        row = (PAR,) * sc.n
        assert rules.legal_move(sc, row)
        sc = sc.extend(row, rules.edges_for(sc, row))
    assert sc.graph().m == 0


def test_abs_clique_bound_counts_overlap_edges_only():
    rules = gamma_ABS(2)
    sc = build_scenario(rules, [(), (OVL,)])
    assert not rules.legal_move(sc, (OVL, OVL))  # overlap triangle
    assert rules.legal_move(sc, (INC, OVL))  # containment is not an edge


def test_abs_demo_rows_replay():
    rules = gamma_ABS(ABS_DEMO_OMEGA)
    sc = build_scenario(rules, ABS_DEMO_ROWS)
    assert sc.graph() == Graph(len(ABS_DEMO_ROWS), ABS_DEMO_EDGES)
    assert clique_number(sc.graph()) == ABS_DEMO_OMEGA
    # The same play is rejected one clique size down.
    tight = gamma_ABS(ABS_DEMO_OMEGA - 1)
    probe = Scenario()
    rejected = False
    for row in ABS_DEMO_ROWS:
        if not tight.legal_move(probe, row):
            rejected = True
            break
        probe = probe.extend(row, tight.edges_for(probe, row))
    assert rejected


def test_abs_game_graph_validator_catches_bad_edges():
    rules = gamma_ABS(3)
    sc = build_scenario(rules, ABS_DEMO_ROWS[:4])
    n = sc.n
    edges = [(u, v) for v in range(n) for u in sc.edge_sets[v]]
    forest = RootedForest([None] + list(range(n - 1)))
    good = GameGraph("gamma_abs", {"k": 3}, Graph(n, edges), forest, sc.payloads)
    assert validate_abs_game_graph(good)
    bad = GameGraph(
        "gamma_abs",
        {"k": 3},
        Graph(n, edges[:-1]),  # drop one overlap edge
        forest,
        sc.payloads,
    )
    assert not validate_abs_game_graph(bad)
    with pytest.raises(ValidationError):
        validate_int_game_graph(good)  # wrong payload kind


# -- interval overlap games ---------------------------------------------------


def test_iov_left_endpoints_must_increase():
    rules = gamma_IOV(2)
    sc = build_scenario(rules, [(F(2), F(4))])
    assert not rules.legal_move(sc, (F(1), F(6)))
    assert rules.legal_move(sc, (F(3), F(6)))


def test_iov_general_position():
    rules = gamma_IOV(2)
    sc = build_scenario(rules, [(F(0), F(2))])
    assert not rules.legal_move(sc, (F(1), F(2)))
    assert not rules.legal_move(sc, (F(2), F(3)))


def test_iov_cleanliness():
    rules = gamma_IOV(3)
    sc = build_scenario(rules, [(F(0), F(2)), (F(1), F(3))])
    # Inside the union of two overlapping intervals: not clean.
    assert not rules.legal_move(sc, (F(5, 4), F(7, 4)))
    assert rules.legal_move(sc, (F(5, 4), F(5, 2)))


def test_iov_edges_are_overlaps_not_containments():
    rules = gamma_IOV(2)
    sc = build_scenario(rules, [(F(0), F(4)), (F(1), F(2))])
    assert sc.edge_sets[1] == frozenset()  # nested, no edge
    assert rules.edges_for(sc, (F(3), F(5))) == {0}


def test_iov_clique_bound_on_overlap_edges():
    rules = gamma_IOV(2)
    sc = build_scenario(rules, [(F(0), F(4)), (F(1), F(6))])
    assert not rules.legal_move(sc, (F(2), F(8)))  # third mutual overlap
    assert rules.legal_move(sc, (F(5), F(8)))


def test_iov3_obligation_forbids_monochromatic_triangles_only():
    rules = gamma_IOV3(3)
    assert rules.obligation == "triangle-free"
    sc = build_scenario(rules, [(F(0), F(4)), (F(1), F(6))])
    # Reusing a neighbor's color is fine as long as no triangle goes
    # monochromatic...
    assert rules.color_ok(sc, [0], 0)
    mv = (F(2), F(8))
    assert rules.legal_move(sc, mv)
    sc3 = sc.extend(mv, rules.edges_for(sc, mv))
    assert sc3.last_edges == {0, 1}
    # ...but with both overlap neighbors on color 0, repeating it would
    # complete a monochromatic triangle.
    assert not rules.color_ok(sc3, [0, 0], 0)
    assert rules.color_ok(sc3, [0, 0], 1)
    assert rules.color_ok(sc3, [0, 1], 0)


def test_iov_moves_respect_increasing_left_endpoints():
    rules = gamma_IOV(2)
    sc = build_scenario(rules, [(F(0), F(1))])
    moves = rules.enumerate_moves(sc)
    assert moves
    assert all(l > F(0) for l, _ in moves)
    assert all(rules.legal_move(sc, mv) for mv in moves)


def test_iov_translation_preserves_legality_and_graph():
    rules = gamma_IOV(3)
    abs_rules = gamma_ABS(3)
    rng = random.Random(7)
    for _ in range(40):
        sc = Scenario()
        for _ in range(5):
            moves = rules.enumerate_moves(sc)
            if not moves:
                break
            mv = rng.choice(moves)
            sc = sc.extend(mv, rules.edges_for(sc, mv))
        translated = iov_scenario_to_abs(sc)
        assert translated.graph() == sc.graph()
        replay = Scenario()
        for row in translated.payloads:
            assert abs_rules.legal_move(replay, row)
            assert abs_rules.edges_for(replay, row) == translated.edge_sets[replay.n]
            replay = replay.extend(row, abs_rules.edges_for(replay, row))


# -- block variants -----------------------------------------------------------


def test_blocks_single_block_forbids_edges():
    rules = with_blocks(gamma_ABS(3), 1)
    assert rules.params == {"k": 3, "b": 1}
    sc = build_scenario(rules, [(), (PAR,)])
    assert not rules.legal_move(sc, (OVL, PAR))
    assert rules.legal_move(sc, (PAR, PAR))


def test_blocks_open_on_edge_into_current_block():
    rules = with_blocks(gamma_ABS(3), 2)
    sc = build_scenario(rules, [(), (OVL,)])  # the overlap opened block 2
    # An edge back into block 1 does not open a third block...
    assert rules.legal_move(sc, (OVL, PAR))
    # ...but an edge into the current block does.
    assert not rules.legal_move(sc, (PAR, OVL))
    assert not rules.legal_move(sc, (OVL, OVL))


def test_blocks_on_interval_overlap_game():
    rules = with_blocks(gamma_IOV(2), 1)
    sc = build_scenario(rules, [(F(0), F(2))])
    assert not rules.legal_move(sc, (F(1), F(3)))
    assert rules.legal_move(sc, (F(3), F(4)))


def test_blocks_reject_non_row_games():
    with pytest.raises(ValidationError):
        with_blocks(gamma_INT(2), 2)
    with pytest.raises(ValidationError):
        make_rules("gamma_coco", {"k": 2, "b": 2})


# -- filament games -----------------------------------------------------------


def tent(l, h, r):
    l, h, r = F(l), F(h), F(r)
    return ((l, F(0)), ((l + r) / 2, h), (r, F(0)))


def test_ifil_payload_validation():
    rules = gamma_IFIL(2)
    # Malformed payloads are simply not legal moves...
    assert not rules.legal_move(Scenario(), ((0, 1), (1, 0)))  # lifted end
    assert not rules.legal_move(Scenario(), ((0, 0), (0, 0)))  # empty domain
    assert not rules.legal_move(Scenario(), ((0, 0), (1, -1), (2, 0)))  # dips
    # ...while the JSON codec rejects them loudly.
    with pytest.raises(ValidationError):
        rules.payload_from_json({"points": [["0", "1"], ["1", "0"]]})
    assert rules.legal_move(Scenario(), ((0, 0), (1, 2), (2, 0)))


def test_ifil_edges_are_curve_crossings():
    rules = gamma_IFIL(3)
    sc = build_scenario(rules, [tent(0, 2, 10)])
    # Nested domain, low curve: stays under the big tent.
    assert rules.edges_for(sc, tent(2, F(1, 10), 4)) == frozenset()
    # Nested domain, high curve: must cross it twice.
    assert rules.edges_for(sc, tent(2, 5, 4)) == {0}
    # Overlapping domains always force a crossing.
    assert rules.edges_for(sc, tent(5, F(1, 10), 12)) == {0}
    # Disjoint domains cannot touch.
    assert rules.edges_for(sc, tent(11, 5, 12)) == frozenset()


def test_ifil_legality_matches_derived_rows():
    rules = gamma_IFIL(2)
    sc = build_scenario(rules, [tent(0, 2, 10), tent(5, 3, 12)])
    # Domain [6, 9] sits inside the union of two overlapping domains.
    assert not rules.legal_move(sc, tent(6, 1, 9))
    # Left endpoints must increase.
    assert not rules.legal_move(sc, tent(4, 1, 14))
    # Fresh disjoint domain is fine.
    assert rules.legal_move(sc, tent(13, 1, 14))


def test_ifil_enumerate_moves_cover_crossing_choices():
    rules = gamma_IFIL(3)
    sc = build_scenario(rules, [tent(0, 2, 10)])
    moves = rules.enumerate_moves(sc)
    assert all(rules.legal_move(sc, mv) for mv in moves)
    edge_patterns = {rules.edges_for(sc, mv) for mv in moves}
    assert frozenset() in edge_patterns  # avoids the tent
    assert frozenset({0}) in edge_patterns  # crosses the tent


def test_ifil_block_variant():
    rules = gamma_IFIL(2, 1)
    assert rules.params == {"k": 2, "b": 1}
    sc = build_scenario(rules, [tent(0, 2, 10)])
    assert not rules.legal_move(sc, tent(5, 3, 12))


# -- shared machinery ---------------------------------------------------------


def test_make_rules_round_trip():
    for rules in (
        gamma_INT(2),
        gamma_COCO(3),
        gamma_IOV(2),
        gamma_IOV3(3),
        gamma_ABS(4),
        with_blocks(gamma_ABS(4), 3),
        gamma_IFIL(2, 2),
    ):
        again = make_rules(rules.kind, rules.params)
        assert again.kind == rules.kind
        assert again.params == rules.params
    with pytest.raises(ValidationError):
        make_rules("gamma_int", {"k": 2, "extra": 1})
    with pytest.raises(ValidationError):
        make_rules("nope", {"k": 2})
    with pytest.raises(ValidationError):
        make_rules("gamma_abs", {})


def test_params_do_not_leak_defaults():
    assert gamma_ABS(3).params == {"k": 3}
    assert gamma_IFIL(3).params == {"k": 3}


def test_clique_number_is_max_over_root_paths():
    for gg, k in (
        (
            GameGraph(
                "gamma_int",
                {"k": 2},
                Graph(5, INT_DEMO_EDGES),
                RootedForest(INT_DEMO_PARENT),
                tuple(INT_DEMO_INTERVALS),
            ),
            2,
        ),
        (
            GameGraph(
                "gamma_coco",
                {"k": 2},
                Graph(5, COCO_DEMO_EDGES),
                RootedForest(COCO_DEMO_PARENT),
                tuple(COCO_DEMO_DOWNSETS),
            ),
            2,
        ),
    ):
        per_path = max(
            clique_number(scenario_along_path(gg, v).graph())
            for v in range(gg.graph.n)
        )
        assert clique_number(gg.graph) == per_path <= k


# -- prefix closure fuzz ------------------------------------------------------


def random_walk(rules, rng, rounds):
    sc = Scenario()
    for _ in range(rounds):
        moves = rules.enumerate_moves(sc)
        if not moves:
            break
        mv = rng.choice(moves)
        sc = sc.extend(mv, rules.edges_for(sc, mv))
    return sc


@pytest.mark.parametrize(
    "rules,rounds",
    [
        (gamma_INT(2), 4),
        (gamma_COCO(2), 5),
        (gamma_IOV(2), 4),
        (gamma_IOV3(3), 4),
        (gamma_ABS(3), 5),
        (with_blocks(gamma_ABS(2), 2), 5),
        (gamma_IFIL(2), 3),
    ],
    ids=lambda v: v.kind if hasattr(v, "kind") else str(v),
)
def test_prefix_closure_fuzz(rules, rounds):
    """Every prefix of a legal scenario is legal, with the same edges.

    The JSON round trip re-validates every round from scratch, so parsing a
    dumped scenario checks prefix closure end to end.
    """
    rng = random.Random(hash(rules.kind) & 0xFFFF)
    checked = 0
    while checked < 10_000:
        sc = random_walk(rules, rng, rounds)
        back = scenario_from_json(rules, scenario_to_json(rules, sc))
        assert back == sc
        for i in range(sc.n):
            prefix = sc.prefix(i)
            assert rules.legal_move(prefix, sc.payloads[i])
            assert rules.edges_for(prefix, sc.payloads[i]) == sc.edge_sets[i]
            checked += 1

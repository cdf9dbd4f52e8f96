"""Generic on-line game machinery.

A game is played in rounds between a deterministic Presenter and a
deterministic Algorithm.  Each round the Presenter introduces a new vertex
by a game-specific move payload; the rules derive the new vertex's edges to
earlier vertices; the Algorithm immediately commits a color.

Strategies must behave as pure functions of ``(scenario, colors)``: the
engine is free to query them out of order (tree searches backtrack), so any
internal caching has to key on the scenario prefix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ProtocolViolation, ResourceBudgetError, ValidationError
from .graphs import Coloring, Graph, RootedForest


class Scenario:
    """An ordered presentation transcript.

    Identity (equality/hashing) is the canonical payload sequence; the
    per-round edge lists are derived data, always produced by the same
    game's edge rule.
    """

    __slots__ = ("payloads", "edge_sets")

    def __init__(self, payloads: tuple = (), edge_sets: tuple = ()):
        if len(payloads) != len(edge_sets):
            raise ValidationError("payloads and edge sets must align")
        self.payloads = tuple(payloads)
        self.edge_sets = tuple(frozenset(e) for e in edge_sets)

    def __len__(self):
        return len(self.payloads)

    @property
    def n(self) -> int:
        return len(self.payloads)

    def extend(self, payload, edges: Iterable[int]) -> "Scenario":
        edges = frozenset(edges)
        if any(not 0 <= j < self.n for j in edges):
            raise ValidationError("edge to a vertex that is not presented yet")
        return Scenario(self.payloads + (payload,), self.edge_sets + (edges,))

    def prefix(self, k: int) -> "Scenario":
        return Scenario(self.payloads[:k], self.edge_sets[:k])

    @property
    def last_payload(self):
        return self.payloads[-1]

    @property
    def last_edges(self) -> frozenset:
        return self.edge_sets[-1]

    def graph(self) -> Graph:
        edges = []
        for i, es in enumerate(self.edge_sets):
            edges.extend((j, i) for j in es)
        return Graph(self.n, edges)

    def __eq__(self, other):
        return isinstance(other, Scenario) and self.payloads == other.payloads

    def __hash__(self):
        return hash(self.payloads)

    def __repr__(self):
        return f"Scenario(n={self.n})"


class GameRules:
    """Base class for concrete games.

    Subclasses provide the legality predicate, the edge rule, the canonical
    finite move enumerator, and a payload JSON codec.  ``obligation`` is
    either ``"proper"`` or ``"triangle-free"`` and fixes what the Algorithm
    owes the Presenter.
    """

    kind = "abstract"
    obligation = "proper"

    @property
    def params(self) -> dict:
        raise NotImplementedError

    def legal_move(self, scenario: Scenario, payload) -> bool:
        raise NotImplementedError

    def edges_for(self, scenario: Scenario, payload) -> frozenset:
        raise NotImplementedError

    def enumerate_moves(self, scenario: Scenario) -> list:
        raise NotImplementedError

    def payload_to_json(self, payload):
        raise NotImplementedError

    def payload_from_json(self, data):
        raise NotImplementedError

    def color_ok(self, scenario: Scenario, colors: Sequence[int], c: int) -> bool:
        """May the newest vertex of ``scenario`` take color ``c``?

        ``colors`` are the colors of the earlier vertices.  Under the
        ``proper`` obligation the new vertex must avoid its neighbors'
        colors; under ``triangle-free`` only monochromatic triangles are
        forbidden.
        """
        if c < 0:
            return False
        edges = scenario.last_edges
        if self.obligation == "proper":
            return all(colors[j] != c for j in edges)
        mono = [j for j in edges if colors[j] == c]
        g_edges = scenario.edge_sets
        for idx, u in enumerate(mono):
            for v in mono[idx + 1:]:
                a, b = (u, v) if u < v else (v, u)
                if a in g_edges[b]:
                    return False
        return True


class PresenterStrategy:
    """Deterministic presenter: ``next_move`` returns a payload or None."""

    def next_move(self, scenario: Scenario, colors: Sequence[int]):
        raise NotImplementedError


class AlgorithmStrategy:
    """Deterministic algorithm: ``next_color`` colors the newest vertex."""

    def next_color(self, scenario: Scenario, colors: Sequence[int]) -> int:
        raise NotImplementedError


@dataclass(eq=False)
class GameTranscript:
    scenario: Scenario
    coloring: Coloring
    colors_used: int

    @property
    def rounds(self) -> int:
        return self.scenario.n


def run_game(
    rules: GameRules,
    presenter: PresenterStrategy,
    algorithm: AlgorithmStrategy,
    *,
    round_budget: int = 100_000,
) -> GameTranscript:
    """Play one full game; both sides are held to the rules.

    An illegal presenter move or an obligation-breaking color raises a
    protocol violation identifying the offending round.
    """
    scenario = Scenario()
    colors: list = []
    while True:
        if scenario.n >= round_budget:
            raise ResourceBudgetError("round budget exhausted", rounds=scenario.n)
        move = presenter.next_move(scenario, colors)
        if move is None:
            break
        if not rules.legal_move(scenario, move):
            raise ProtocolViolation(
                "illegal presenter move", round=scenario.n + 1
            )
        scenario = scenario.extend(move, rules.edges_for(scenario, move))
        c = algorithm.next_color(scenario, colors)
        if not isinstance(c, int) or not rules.color_ok(scenario, colors, c):
            raise ProtocolViolation(
                "algorithm broke the coloring obligation",
                round=scenario.n,
                color=c,
            )
        colors.append(c)
    coloring = Coloring(tuple(colors))
    return GameTranscript(scenario, coloring, coloring.num_colors)


def _canonical_color_candidates(
    rules: GameRules, scenario: Scenario, colors: tuple, color_bound: int
) -> list:
    """Legal canonical replies: already-used colors plus one fresh color.

    Correct for enumeration because every game here is color-symmetric;
    ``color_bound`` caps the palette.
    """
    used = len(set(colors))
    return [
        c
        for c in range(min(used + 1, color_bound))
        if rules.color_ok(scenario, colors, c)
    ]


def enumerate_strategy_tree(
    rules: GameRules,
    presenter: PresenterStrategy,
    color_bound: int,
    *,
    scenario_budget: int = 1_000_000,
) -> list:
    """All scenarios reachable from ``presenter`` over canonical replies.

    Returns the distinct scenarios (by payload-sequence identity) in
    breadth-first discovery order, so every scenario appears after its
    prefix.
    """
    scenarios: dict = {}
    seen_states = set()
    queue = deque([(Scenario(), ())])
    while queue:
        scenario, colors = queue.popleft()
        move = presenter.next_move(scenario, list(colors))
        if move is None:
            continue
        if not rules.legal_move(scenario, move):
            raise ProtocolViolation("illegal presenter move", round=scenario.n + 1)
        nxt = scenario.extend(move, rules.edges_for(scenario, move))
        if nxt.payloads not in scenarios:
            scenarios[nxt.payloads] = nxt
            if len(scenarios) > scenario_budget:
                raise ResourceBudgetError(
                    "scenario budget exhausted", scenarios_found=len(scenarios)
                )
        for c in _canonical_color_candidates(rules, nxt, colors, color_bound):
            state = (nxt.payloads, colors + (c,))
            if state not in seen_states:
                seen_states.add(state)
                queue.append((nxt, colors + (c,)))
    return list(scenarios.values())


@dataclass(eq=False)
class GameGraph:
    """A graph + rooted forest + per-vertex payload.

    Invariants: (a) for every vertex v, the induced data along the
    root-to-v path is a legal scenario of the game; (b) every edge joins an
    ancestor-descendant pair.
    """

    kind: str
    params: dict
    graph: Graph
    forest: RootedForest
    payloads: tuple

    @property
    def n(self) -> int:
        return self.graph.n


def extract_game_graph(
    rules: GameRules,
    presenter: PresenterStrategy,
    color_bound: int,
    *,
    scenario_budget: int = 1_000_000,
) -> GameGraph:
    """The game graph whose vertices are the presenter's reachable scenarios.

    The parent of a scenario is its one-round-shorter prefix; a scenario is
    adjacent to exactly the ancestors that its newest vertex sees as
    neighbors.  The output always satisfies the game-graph invariants.
    """
    scenarios = enumerate_strategy_tree(
        rules, presenter, color_bound, scenario_budget=scenario_budget
    )
    index = {sc.payloads: i for i, sc in enumerate(scenarios)}
    parent: list = []
    edges = []
    payloads = []
    for i, sc in enumerate(scenarios):
        if sc.n == 1:
            parent.append(None)
        else:
            parent.append(index[sc.payloads[:-1]])
        for j in sc.last_edges:
            edges.append((index[sc.payloads[: j + 1]], i))
        payloads.append(sc.last_payload)
    graph = Graph(len(scenarios), edges)
    forest = RootedForest(parent)
    return GameGraph(rules.kind, dict(rules.params), graph, forest, tuple(payloads))


def scenario_along_path(gg: GameGraph, v: int) -> Scenario:
    """The scenario induced by the root-to-v path of the game graph."""
    path = gg.forest.root_path(v)
    pos = {u: i for i, u in enumerate(path)}
    payloads = tuple(gg.payloads[u] for u in path)
    edge_sets = []
    for i, u in enumerate(path):
        edge_sets.append(
            frozenset(
                pos[w] for w in gg.graph.neighbors(u) if w in pos and pos[w] < i
            )
        )
    return Scenario(payloads, tuple(edge_sets))


def validate_game_graph(gg: GameGraph, rules: GameRules) -> None:
    """Check the game-graph invariants (a) and (b) against ``rules``.

    Raises a validation error naming the first violated condition.
    """
    n = gg.graph.n
    if gg.forest.n != n or len(gg.payloads) != n:
        raise ValidationError(
            "graph, forest, and payloads must agree on the vertex count"
        )
    for u, v in gg.graph.edges:
        if not gg.forest.comparable(u, v):
            raise ValidationError(
                "edge joins vertices on different branches", edge=[u, v]
            )
    leaves = set(range(n))
    for p in gg.forest.parent:
        if p is not None:
            leaves.discard(p)
    for leaf in leaves:
        sc = scenario_along_path(gg, leaf)
        path = gg.forest.root_path(leaf)
        for i in range(sc.n):
            prefix = sc.prefix(i)
            payload = sc.payloads[i]
            if not rules.legal_move(prefix, payload):
                raise ValidationError(
                    "root path is not a legal scenario",
                    vertex=path[i],
                    round=i + 1,
                )
            if rules.edges_for(prefix, payload) != sc.edge_sets[i]:
                raise ValidationError(
                    "edges along root path do not match the game's edge rule",
                    vertex=path[i],
                )


def color_game_graph(
    gg: GameGraph, rules: GameRules, algorithm: AlgorithmStrategy
) -> Coloring:
    """Color a game graph by replaying ``algorithm`` along every root path.

    Prefix determinism of the algorithm makes the replayed color of each
    vertex well defined, and condition (b) makes the result proper.
    """
    validate_game_graph(gg, rules)
    colors: list = [None] * gg.n
    order = []
    for r in gg.forest.roots:
        stack = [r]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(gg.forest.children(v)))
    for v in order:
        sc = scenario_along_path(gg, v)
        path = gg.forest.root_path(v)
        prior = [colors[u] for u in path[:-1]]
        c = algorithm.next_color(sc, prior)
        if not rules.color_ok(sc, prior, c):
            raise ProtocolViolation(
                "algorithm broke the coloring obligation during replay",
                vertex=v,
                color=c,
            )
        colors[v] = c
    return Coloring(tuple(colors))


def game_value_bounded(
    rules: GameRules,
    max_rounds: int,
    max_colors: int,
    *,
    state_budget: int = 2_000_000,
) -> int:
    """Exact minimax value of the game truncated to ``max_rounds`` rounds.

    The value is the number of colors the Presenter can force against every
    canonical Algorithm, capped at ``max_colors``.  It is nondecreasing in
    ``max_rounds`` and a lower bound on the untruncated game value.

    Solving proceeds by iterative deepening over the round limit, so when
    the state budget runs out the error carries the exact value of the last
    completed depth as ``best_lower_bound``.
    """
    states = 0
    best_completed = 0

    def solve(depth: int) -> int:
        memo: dict = {}

        def value(scenario: Scenario, colors: tuple) -> int:
            nonlocal states
            used = len(set(colors))
            if scenario.n >= depth or used >= max_colors:
                return used
            key = (scenario.payloads, colors)
            hit = memo.get(key)
            if hit is not None:
                return hit
            states += 1
            if states > state_budget:
                raise ResourceBudgetError(
                    "minimax state budget exhausted",
                    best_lower_bound=best_completed,
                    completed_rounds=rounds_done,
                    states=states,
                )
            best = used
            for move in rules.enumerate_moves(scenario):
                nxt = scenario.extend(move, rules.edges_for(scenario, move))
                replies = _canonical_color_candidates(
                    rules, nxt, colors, max_colors
                )
                if not replies:
                    best = max_colors
                    break
                best = max(best, min(value(nxt, colors + (c,)) for c in replies))
                if best >= max_colors:
                    break
            memo[key] = best
            return best

        return value(Scenario(), ())

    rounds_done = 0
    for depth in range(1, max_rounds + 1):
        best_completed = solve(depth)
        rounds_done = depth
        if best_completed >= max_colors:
            break
    return best_completed


def adversarial_max_colors(
    rules: GameRules,
    algorithm: AlgorithmStrategy,
    max_rounds: int,
    *,
    state_budget: int = 2_000_000,
) -> int:
    """Worst-case palette of ``algorithm`` over every legal presentation.

    Exhaustively walks the canonical presenter moves to ``max_rounds``; the
    algorithm's determinism makes each payload sequence a single state.
    """
    seen = set()
    worst = 0
    stack = [(Scenario(), ())]
    while stack:
        scenario, colors = stack.pop()
        worst = max(worst, len(set(colors)))
        if scenario.n >= max_rounds:
            continue
        for move in rules.enumerate_moves(scenario):
            nxt = scenario.extend(move, rules.edges_for(scenario, move))
            if nxt.payloads in seen:
                continue
            seen.add(nxt.payloads)
            if len(seen) > state_budget:
                raise ResourceBudgetError(
                    "adversary state budget exhausted", states=len(seen)
                )
            c = algorithm.next_color(nxt, list(colors))
            if not rules.color_ok(nxt, colors, c):
                raise ProtocolViolation(
                    "algorithm broke the coloring obligation",
                    round=nxt.n,
                    color=c,
                )
            stack.append((nxt, colors + (c,)))
    return worst


# -- serialization -----------------------------------------------------------


def scenario_to_json(rules: GameRules, sc: Scenario) -> list:
    return [
        {
            "payload": rules.payload_to_json(p),
            "edges_to_previous": sorted(es),
        }
        for p, es in zip(sc.payloads, sc.edge_sets)
    ]


def scenario_from_json(rules: GameRules, data) -> Scenario:
    """Parse and fully validate a scenario (every prefix must be legal)."""
    if not isinstance(data, list):
        raise ValidationError("scenario JSON must be an array of rounds")
    sc = Scenario()
    for i, round_ in enumerate(data):
        if not isinstance(round_, dict) or "payload" not in round_:
            raise ValidationError("scenario round must have a payload", round=i + 1)
        payload = rules.payload_from_json(round_["payload"])
        if not rules.legal_move(sc, payload):
            raise ValidationError("illegal round in scenario", round=i + 1)
        edges = rules.edges_for(sc, payload)
        declared = round_.get("edges_to_previous")
        if declared is not None and frozenset(declared) != edges:
            raise ValidationError(
                "declared edges do not match the game's edge rule", round=i + 1
            )
        sc = sc.extend(payload, edges)
    return sc


def game_graph_to_json(gg: GameGraph, rules: GameRules) -> dict:
    d = gg.graph.to_json_dict()
    d["kind"] = gg.kind
    d["params"] = dict(gg.params)
    d["parent"] = gg.forest.to_json()
    d["payloads"] = [rules.payload_to_json(p) for p in gg.payloads]
    return d


def game_graph_from_json(rules: GameRules, data: dict) -> GameGraph:
    if not isinstance(data, dict) or "parent" not in data or "payloads" not in data:
        raise ValidationError("game graph JSON needs 'parent' and 'payloads'")
    graph = Graph.from_json_dict(data)
    forest = RootedForest.from_json(data["parent"])
    payloads = tuple(rules.payload_from_json(p) for p in data["payloads"])
    gg = GameGraph(
        data.get("kind", rules.kind),
        dict(data.get("params", dict(rules.params))),
        graph,
        forest,
        payloads,
    )
    validate_game_graph(gg, rules)
    return gg

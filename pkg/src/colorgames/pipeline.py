"""Off-line coloring pipelines over overlap models and game graphs.

Four stages build on each other:

* :func:`kclique_bfs` peels a graph into levels so that every k-clique
  stays within two consecutive levels and every level induces a clean
  subgraph of the originating model;
* :func:`clean_reduction_color` recurses on that decomposition, spending
  a factor of ``2 * alpha_j`` per clique-bound step;
* :func:`filament_color` colors interval filament models in two stages:
  a proper coloring of the domain overlap graph, then a chain-partition
  replay inside each domain-non-overlapping class;
* :func:`color_abs_game_graph` colors a whole relation game graph by
  coloring heavy paths off-line and replaying the on-line row coloring
  along root paths inside each class, with block budget
  ``b = floor(log2 n) + 1``.

Everything here is a pure transformation: inputs are never mutated and
repeated calls return identical results.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .engine import GameGraph, Scenario, scenario_along_path
from .errors import ValidationError
from .games import OVL, validate_abs_game_graph
from .geometry import (
    FilamentModel,
    IntervalModel,
    RectangleModel,
    SubtreeModel,
    filaments_intersect,
    is_clean,
    model_graph,
)
from .graphs import (
    Coloring,
    Graph,
    clique_number,
    degeneracy_order,
    find_coloring,
    greedy_coloring,
    heavy_light,
    is_valid_coloring,
)
from .strategies import ChainPartition, abs_online

__all__ = [
    "LevelDecomposition",
    "OverlapModelOrder",
    "clean_reduction_color",
    "color_abs_game_graph",
    "default_clean_colorer",
    "filament_color",
    "kclique_bfs",
    "submodel",
]


# ---------------------------------------------------------------------------
# Model helpers
# ---------------------------------------------------------------------------


def _measure(model, v: int):
    """A containment-monotone size: strict containment strictly shrinks it."""
    if isinstance(model, IntervalModel):
        l, r = model.intervals[v]
        return r - l
    if isinstance(model, RectangleModel):
        x1, x2, y1, y2 = model.rectangles[v]
        return (x2 - x1) * (y2 - y1)
    if isinstance(model, SubtreeModel):
        return len(model.sets[v])
    if isinstance(model, FilamentModel):
        l, r = model.domain(v)
        return r - l
    raise ValidationError("unknown model type", type=type(model).__name__)


def submodel(model, vertices: Sequence[int]):
    """The same kind of model restricted to ``vertices`` (in that order)."""
    labels = (
        [model.labels[v] for v in vertices] if model.labels is not None else None
    )
    if isinstance(model, IntervalModel):
        return IntervalModel([model.intervals[v] for v in vertices], labels=labels)
    if isinstance(model, RectangleModel):
        return RectangleModel(
            [model.rectangles[v] for v in vertices], labels=labels
        )
    if isinstance(model, SubtreeModel):
        return SubtreeModel(
            model.host.parent, [model.sets[v] for v in vertices], labels=labels
        )
    if isinstance(model, FilamentModel):
        return FilamentModel([model.filaments[v] for v in vertices], labels=labels)
    raise ValidationError("unknown model type", type=type(model).__name__)


def _dense(tuples: Sequence[tuple]) -> Coloring:
    registry: Dict[tuple, int] = {}
    return Coloring(tuple(registry.setdefault(t, len(registry)) for t in tuples))


# ---------------------------------------------------------------------------
# Level decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OverlapModelOrder:
    """A vertex order in which no later member contains an earlier one.

    The default order sorts by decreasing size, which suffices because
    strict containment strictly decreases every supported size measure.
    """

    order: tuple

    @classmethod
    def for_model(cls, model) -> "OverlapModelOrder":
        order = sorted(range(model.n), key=lambda v: (-_measure(model, v), v))
        return cls.validated(model, order)

    @classmethod
    def validated(cls, model, order: Sequence[int]) -> "OverlapModelOrder":
        order = tuple(int(v) for v in order)
        if sorted(order) != list(range(model.n)):
            raise ValidationError("order must be a permutation of the vertices")
        objs, _, contains = _contains_predicate(model)
        for i, u in enumerate(order):
            for v in order[i + 1 :]:
                if contains(objs[v], objs[u]) and objs[v] != objs[u]:
                    raise ValidationError(
                        "a later member strictly contains an earlier one",
                        earlier=u,
                        later=v,
                    )
        return cls(order)


def _contains_predicate(model):
    from .geometry import _predicates

    objs, intersects, contains = _predicates(model)
    if contains is None:
        # Filament models order by their domains.
        doms = [model.domain(v) for v in range(model.n)]

        def dom_contains(a, b):
            return a[0] <= b[0] and b[1] <= a[1]

        return doms, None, dom_contains
    return objs, intersects, contains


@dataclass(frozen=True)
class LevelDecomposition:
    """Ordered vertex levels plus, per level, how the loop produced it.

    ``fallback[d]`` is True when level ``d`` came from the else branch
    (no k-clique had exactly one remaining vertex, so the first remaining
    vertex in the order was peeled alone).
    """

    levels: tuple
    fallback: tuple
    n: int

    def __post_init__(self):
        seen = sorted(v for level in self.levels for v in level)
        if seen != list(range(self.n)) or len(self.levels) != len(self.fallback):
            raise ValidationError("levels must partition the vertex set")

    def level_of(self) -> list:
        out = [0] * self.n
        for d, level in enumerate(self.levels):
            for v in level:
                out[v] = d
        return out

    def to_json_dict(self) -> dict:
        return {
            "levels": [list(level) for level in self.levels],
            "fallback": list(self.fallback),
        }


def _kcliques(g: Graph, k: int) -> list:
    """All k-cliques of ``g`` as sorted tuples (ascending-extension DFS)."""
    adj = g.adjacency_bits()
    out: List[tuple] = []

    def rec(clique: tuple, cand: int):
        if len(clique) == k:
            out.append(clique)
            return
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            rec(clique + (v,), cand & adj[v] & ~((1 << (v + 1)) - 1))

    rec((), (1 << g.n) - 1)
    return out


def kclique_bfs(g: Graph, order: OverlapModelOrder, k: int) -> LevelDecomposition:
    """Peel ``g`` into levels by the k-clique search loop.

    While vertices remain: if some k-clique has exactly one remaining
    vertex, the next level collects every vertex that is the unique
    remaining vertex of some k-clique; otherwise the first remaining
    vertex in ``order`` forms a singleton level (the else branch).
    """
    if k < 2:
        raise ValidationError("clique size must be at least 2", k=k)
    if not isinstance(order, OverlapModelOrder):
        raise ValidationError("kclique_bfs needs an OverlapModelOrder")
    if sorted(order.order) != list(range(g.n)):
        raise ValidationError("order does not match the graph's vertex set")
    cliques = _kcliques(g, k)
    masks = [sum(1 << v for v in K) for K in cliques]
    remaining = (1 << g.n) - 1
    levels = []
    flags = []
    while remaining:
        unique = 0
        for m in masks:
            live = m & remaining
            if live and live & (live - 1) == 0:
                unique |= live
        if unique:
            level = tuple(v for v in range(g.n) if unique >> v & 1)
            flags.append(False)
        else:
            first = next(v for v in order.order if remaining >> v & 1)
            level = (first,)
            flags.append(True)
        levels.append(level)
        for v in level:
            remaining &= ~(1 << v)
    return LevelDecomposition(tuple(levels), tuple(flags), g.n)


# ---------------------------------------------------------------------------
# The recursive clean reduction
# ---------------------------------------------------------------------------


def default_clean_colorer(model) -> Coloring:
    """Proper coloring of a model's overlap graph: exact at desk scale,
    greedy on a degeneracy order beyond."""
    g = model_graph(model, "overlap")
    if g.n <= 30:
        low = clique_number(g)
        for t in range(low, g.n + 1):
            colors = find_coloring(g, t)
            if colors is not None:
                return Coloring(tuple(colors))
    return greedy_coloring(g, degeneracy_order(g))


def clean_reduction_color(
    model,
    clean_colorer: Optional[Callable] = None,
    *,
    record: Optional[dict] = None,
) -> Coloring:
    """Color a model's overlap graph via the recursive level reduction.

    Each round decomposes at the current clique number ``w``, colors every
    level (a clean submodel) with a shared palette of ``alpha_w`` colors,
    splits each color class by odd/even level parity -- dropping the
    clique number -- and recurses.  The final palette is at most
    ``prod_{j=2}^{w} 2 * alpha_j``.
    """
    colorer = clean_colorer if clean_colorer is not None else default_clean_colorer
    g = model_graph(model, "overlap")
    alphas: Dict[int, int] = {}

    def rec(vertices: Sequence[int]) -> Dict[int, tuple]:
        sub = submodel(model, vertices)
        local = model_graph(sub, "overlap")
        w = clique_number(local)
        if w <= 1:
            return {v: () for v in vertices}
        order = OverlapModelOrder.for_model(sub)
        decomposition = kclique_bfs(local, order, w)
        depth = decomposition.level_of()
        level_color: Dict[int, int] = {}
        for level in decomposition.levels:
            level_model = submodel(sub, level)
            coloring = colorer(level_model)
            colors = coloring.colors if isinstance(coloring, Coloring) else tuple(coloring)
            if len(colors) != len(level):
                raise ValidationError(
                    "clean colorer returned a coloring of the wrong length"
                )
            if not is_valid_coloring(model_graph(level_model, "overlap"), colors):
                raise ValidationError(
                    "clean colorer returned an improper coloring"
                )
            for i, v in enumerate(level):
                level_color[v] = colors[i]
        palette = 1 + max(level_color.values())
        alphas[w] = max(alphas.get(w, 1), palette)
        classes: Dict[tuple, list] = {}
        for i in range(len(vertices)):
            key = (level_color[i], depth[i] % 2)
            classes.setdefault(key, []).append(i)
        out: Dict[int, tuple] = {}
        for key, members in classes.items():
            inner_w = clique_number(
                Graph(
                    len(members),
                    [
                        (a, b)
                        for b in range(len(members))
                        for a in range(b)
                        if local.has_edge(members[a], members[b])
                    ],
                )
            )
            if inner_w >= w:
                raise ValidationError(
                    "level classes failed to drop the clique number"
                )
            deeper = rec([vertices[i] for i in members])
            for i, v in enumerate(members):
                out[vertices[v]] = key + deeper[vertices[v]]
        return out

    colored = rec(list(range(model.n)))
    result = _dense([colored[v] for v in range(model.n)])
    if record is not None:
        omega = clique_number(g)
        bound = 1
        for a in alphas.values():
            bound *= 2 * a
        record.update(
            omega=omega,
            alphas=dict(sorted(alphas.items())),
            palette=result.num_colors,
            bound=bound,
            bound_formula="prod_j 2*alpha_j",
        )
    return result


# ---------------------------------------------------------------------------
# Filament coloring
# ---------------------------------------------------------------------------


def _proper_coloring_small_or_greedy(g: Graph) -> Coloring:
    if g.n <= 30:
        low = clique_number(g)
        for t in range(max(low, 1), g.n + 1):
            colors = find_coloring(g, t)
            if colors is not None:
                return Coloring(tuple(colors))
    return greedy_coloring(g, degeneracy_order(g))


def filament_color(model: FilamentModel, *, record: Optional[dict] = None) -> Coloring:
    """Proper coloring of an interval filament intersection graph.

    Stage 1 properly colors the overlap graph of the domains, so every
    class has pairwise nested-or-disjoint domains.  Stage 2 colors each
    class by replaying a chain partition along each member's chain of
    strictly containing domains, where a predecessor counts as below
    exactly when the filaments are disjoint.
    """
    if not isinstance(model, FilamentModel):
        raise ValidationError("filament_color expects a filament model")
    g = model_graph(model, "intersection")
    n = model.n
    domains = [model.domain(v) for v in range(n)]
    domain_overlap = model_graph(IntervalModel(domains), "overlap") if n else Graph(0, [])
    stage1 = _proper_coloring_small_or_greedy(domain_overlap)
    classes: Dict[int, list] = {}
    for v in range(n):
        classes.setdefault(stage1.colors[v], []).append(v)

    def contains(a, b):
        return a[0] <= b[0] and b[1] <= a[1] and a != b

    xi: Dict[int, int] = {}
    max_xi = 0
    for members in classes.values():
        for u in members:
            for v in members:
                if u < v:
                    du, dv = domains[u], domains[v]
                    inside = contains(du, dv) or contains(dv, du) or du == dv
                    apart = du[1] < dv[0] or dv[1] < du[0]
                    assert inside or apart, "stage-1 class has overlapping domains"
        members = sorted(members, key=lambda v: (-_measure(model, v), v))
        down: Dict[int, frozenset] = {}
        for v in members:
            path = [u for u in members if u != v and contains(domains[u], domains[v])]
            path.sort(key=lambda u: (-_measure(model, u), u))
            down[v] = frozenset(
                u
                for u in path
                if not filaments_intersect(model.filaments[u], model.filaments[v])
            )
            if any(not down[u] <= down[v] for u in down[v]):
                raise ValidationError(
                    "filament separation order is not transitive; "
                    "the model needs domains in general position"
                )
            replay = ChainPartition()
            trail = path + [v]
            position = {u: i for i, u in enumerate(trail)}
            for u in trail:
                color = replay.advance(frozenset(position[w] for w in down[u]))
            xi[v] = color
            max_xi = max(max_xi, color + 1)
    result = _dense([(stage1.colors[v], xi[v]) for v in range(n)])
    if not is_valid_coloring(g, result):
        raise ValidationError(
            "filament coloring failed; the model needs domains in general position"
        )
    if record is not None:
        record.update(
            classes=stage1.num_colors,
            max_chain_colors=max_xi,
            palette=result.num_colors,
        )
    return result


# ---------------------------------------------------------------------------
# Whole game-graph coloring via heavy paths
# ---------------------------------------------------------------------------


def color_abs_game_graph(gg: GameGraph, *, record: Optional[dict] = None) -> Coloring:
    """Proper off-line coloring of a relation game graph.

    Heavy paths of the underlying forest are colored off-line with one
    shared palette (each induces an interval filament graph, so a small
    exact palette exists).  Every color class then meets each root path
    in at most ``b = floor(log2 n) + 1`` blocks of consecutive vertices
    with no internal edges, so replaying the on-line row coloring along
    root paths inside the class yields a proper coloring overall.
    """
    validate_abs_game_graph(gg)
    k = int(gg.params["k"])
    n = gg.graph.n
    if n == 0:
        return Coloring(())
    b = n.bit_length()  # floor(log2 n) + 1
    hl = heavy_light(gg.forest)
    adj = gg.graph.adjacency_bits()
    path_id = [0] * n
    cls = [0] * n
    shared_palette = 0
    for pid, path in enumerate(hl.paths):
        induced = Graph(
            len(path),
            [
                (i, j)
                for j in range(len(path))
                for i in range(j)
                if adj[path[j]] >> path[i] & 1
            ],
        )
        coloring = _proper_coloring_small_or_greedy(induced)
        for i, v in enumerate(path):
            path_id[v] = pid
            cls[v] = coloring.colors[i]
        shared_palette = max(shared_palette, coloring.num_colors)

    parent = gg.forest.parent
    depth_cache: Dict[int, tuple] = {}

    def root_path(v: int) -> tuple:
        got = depth_cache.get(v)
        if got is not None:
            return got
        path = (v,) if parent[v] is None else root_path(parent[v]) + (v,)
        depth_cache[v] = path
        return path

    replay_color = [0] * n
    max_blocks = 0
    for v in range(n):
        path = root_path(v)
        rows = scenario_along_path(gg, v).payloads
        members = [i for i, u in enumerate(path) if cls[u] == cls[v]]
        blocks = sum(
            1
            for j, i in enumerate(members)
            if j == 0 or path_id[path[i]] != path_id[path[members[j - 1]]]
        )
        max_blocks = max(max_blocks, blocks)
        if blocks > b:
            raise ValidationError(
                "class meets a root path in more blocks than the budget",
                blocks=blocks,
                budget=b,
            )
        algo = abs_online(k, b)
        colors: list = []
        sc = Scenario()
        for j, i in enumerate(members):
            row = tuple(rows[i][members[jj]] for jj in range(j))
            assert not any(
                row[jj] == OVL and path_id[path[i]] == path_id[path[members[jj]]]
                for jj in range(j)
            ), "an edge survived inside a block"
            sc = sc.extend(row, [jj for jj in range(j) if row[jj] == OVL])
            colors.append(algo.next_color(sc, colors))
        replay_color[v] = colors[-1]
    result = _dense([(cls[v], replay_color[v]) for v in range(n)])
    if record is not None:
        record.update(
            heavy_paths=len(hl.paths),
            class_palette=shared_palette,
            b=b,
            max_blocks=max_blocks,
            palette=result.num_colors,
        )
    return result

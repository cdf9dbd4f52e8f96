"""Geometric models, exact predicates, and game-graph <-> model syntheses.

Four model kinds are supported, each with exact rational coordinates:

* :class:`IntervalModel` — closed intervals on the line,
* :class:`RectangleModel` — axis-parallel closed rectangles,
* :class:`SubtreeModel` — connected node sets of a rooted host tree,
* :class:`FilamentModel` — piecewise-linear curves over closed domains,
  non-negative, zero exactly at the domain endpoints.

All geometric predicates are decided in exact rational arithmetic on closed
sets; there are no tolerance parameters, and tangency counts as
intersection.  ``BoxModel`` (axis-parallel boxes in R^3) is deliberately
absent: nothing in this artifact constructs or consumes one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ValidationError
from .graphs import Graph, RootedForest, clique_number, dfs_times
from .jsonio import rat_from_str, rat_to_str

__all__ = [
    "IntervalModel",
    "RectangleModel",
    "SubtreeModel",
    "FilamentModel",
    "model_graph",
    "is_clean",
    "filament_value",
    "filaments_intersect",
    "rectangles_from_int_game_graph",
    "subtrees_from_abs_game_graph",
    "filaments_from_coco_game_graph",
    "realize_poset_functions",
    "coco_certificate_from_filaments",
    "filaments_from_path_subtrees",
    "model_to_json_dict",
    "model_from_json_dict",
    "svg_export",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return rat_from_str(x)
    raise ValidationError("coordinates must be rational", value=repr(x))


def _check_labels(labels, n: int):
    if labels is None:
        return None
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise ValidationError("labels must match the vertex count")
    return labels


class IntervalModel:
    """Closed intervals [l, r] with rational endpoints, one per vertex."""

    kind = "intervals"

    def __init__(self, intervals: Iterable[Sequence], labels=None):
        ivs = []
        for pair in intervals:
            l, r = pair
            l, r = _frac(l), _frac(r)
            if not l < r:
                raise ValidationError(
                    "interval endpoints must satisfy l < r", interval=[str(l), str(r)]
                )
            ivs.append((l, r))
        self.intervals = tuple(ivs)
        self.labels = _check_labels(labels, len(self.intervals))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def to_json_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "intervals": [[rat_to_str(l), rat_to_str(r)] for l, r in self.intervals],
        }
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "IntervalModel":
        return cls(d.get("intervals", []), labels=d.get("labels"))

    def __eq__(self, other):
        return isinstance(other, IntervalModel) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return f"IntervalModel(n={self.n})"


class RectangleModel:
    """Axis-parallel closed rectangles [x1,x2] x [y1,y2], one per vertex."""

    kind = "rectangles"

    def __init__(self, rectangles: Iterable[Sequence], labels=None):
        rects = []
        for quad in rectangles:
            x1, x2, y1, y2 = (_frac(c) for c in quad)
            if not (x1 < x2 and y1 < y2):
                raise ValidationError(
                    "rectangle needs x1 < x2 and y1 < y2",
                    rectangle=[str(x1), str(x2), str(y1), str(y2)],
                )
            rects.append((x1, x2, y1, y2))
        self.rectangles = tuple(rects)
        self.labels = _check_labels(labels, len(self.rectangles))

    @property
    def n(self) -> int:
        return len(self.rectangles)

    def to_json_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "rectangles": [[rat_to_str(c) for c in rect] for rect in self.rectangles],
        }
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "RectangleModel":
        return cls(d.get("rectangles", []), labels=d.get("labels"))

    def __eq__(self, other):
        return isinstance(other, RectangleModel) and self.rectangles == other.rectangles

    def __hash__(self):
        return hash(self.rectangles)

    def __repr__(self):
        return f"RectangleModel(n={self.n})"


class SubtreeModel:
    """Connected node sets of a rooted host tree, one per vertex.

    The host tree is given by a parent list with exactly one root; each
    vertex's set must be nonempty and induce a connected subtree.
    """

    kind = "subtrees"

    def __init__(self, host_parent: Sequence[Optional[int]], sets, labels=None):
        self.host = RootedForest(host_parent)
        if len(self.host.roots) != 1:
            raise ValidationError("host must be a tree with exactly one root")
        node_children = {v: set(self.host.children(v)) for v in range(self.host.n)}
        checked = []
        for s in sets:
            s = frozenset(int(v) for v in s)
            if not s:
                raise ValidationError("subtree sets must be nonempty")
            if any(v < 0 or v >= self.host.n for v in s):
                raise ValidationError("subtree set names a node outside the host tree")
            # Connectivity: walk the set from an arbitrary member using host
            # edges in both directions.
            start = min(s)
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                around = set(node_children[v])
                if self.host.parent[v] is not None:
                    around.add(self.host.parent[v])
                for w in around & s:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen != s:
                raise ValidationError(
                    "subtree set is not connected in the host tree", set=sorted(s)
                )
            checked.append(s)
        self.sets = tuple(checked)
        self.labels = _check_labels(labels, len(self.sets))

    @property
    def n(self) -> int:
        return len(self.sets)

    def to_json_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "host_parent": self.host.to_json(),
            "sets": [sorted(s) for s in self.sets],
        }
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "SubtreeModel":
        return cls(d.get("host_parent", []), d.get("sets", []), labels=d.get("labels"))

    def __eq__(self, other):
        return (
            isinstance(other, SubtreeModel)
            and self.host == other.host
            and self.sets == other.sets
        )

    def __hash__(self):
        return hash((self.host, self.sets))

    def __repr__(self):
        return f"SubtreeModel(nodes={self.host.n}, n={self.n})"


class FilamentModel:
    """Piecewise-linear filaments: y >= 0, y = 0 exactly at the domain ends.

    Each filament is a tuple of (x, y) breakpoints with strictly increasing
    x; consecutive breakpoints are joined by segments.  Interval filament
    graphs are intersection graphs, so this model supports intersection
    mode only.
    """

    kind = "filaments"

    def __init__(self, filaments, labels=None):
        fils = []
        for pts in filaments:
            pts = tuple((_frac(x), _frac(y)) for x, y in pts)
            if len(pts) < 2:
                raise ValidationError("a filament needs at least two breakpoints")
            if any(a[0] >= b[0] for a, b in zip(pts, pts[1:])):
                raise ValidationError("filament breakpoints must increase in x")
            if pts[0][1] != 0 or pts[-1][1] != 0:
                raise ValidationError("filament height must be zero at both ends")
            if any(y < 0 for _, y in pts):
                raise ValidationError("filament heights must be non-negative")
            fils.append(pts)
        self.filaments = tuple(fils)
        self.labels = _check_labels(labels, len(self.filaments))

    @property
    def n(self) -> int:
        return len(self.filaments)

    def domain(self, v: int) -> tuple:
        pts = self.filaments[v]
        return (pts[0][0], pts[-1][0])

    def to_json_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "filaments": [
                [[rat_to_str(x), rat_to_str(y)] for x, y in pts]
                for pts in self.filaments
            ],
        }
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "FilamentModel":
        return cls(d.get("filaments", []), labels=d.get("labels"))

    def __eq__(self, other):
        return isinstance(other, FilamentModel) and self.filaments == other.filaments

    def __hash__(self):
        return hash(self.filaments)

    def __repr__(self):
        return f"FilamentModel(n={self.n})"


_MODEL_KINDS = {
    IntervalModel.kind: IntervalModel,
    RectangleModel.kind: RectangleModel,
    SubtreeModel.kind: SubtreeModel,
    FilamentModel.kind: FilamentModel,
}


def model_to_json_dict(model) -> dict:
    return model.to_json_dict()


def model_from_json_dict(d: dict):
    if not isinstance(d, dict) or "kind" not in d:
        raise ValidationError("model JSON needs a 'kind' field")
    cls = _MODEL_KINDS.get(d["kind"])
    if cls is None:
        raise ValidationError("unknown model kind", kind=d["kind"])
    return cls.from_json_dict(d)


# ---------------------------------------------------------------------------
# Exact predicates
# ---------------------------------------------------------------------------


def filament_value(points: Sequence, x: Fraction) -> Fraction:
    """Exact height of a piecewise-linear filament at ``x`` in its domain."""
    if x < points[0][0] or x > points[-1][0]:
        raise ValidationError("coordinate outside the filament's domain")
    lo, hi = 0, len(points) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if points[mid][0] <= x:
            lo = mid
        else:
            hi = mid
    (x0, y0), (x1, y1) = points[lo], points[hi]
    if x == x0:
        return y0
    if x == x1:
        return y1
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def filaments_intersect(f: Sequence, g: Sequence) -> bool:
    """True iff two piecewise-linear curves share a point (closed sets).

    The difference of the two curves is piecewise linear with breakpoints
    among the union of both breakpoint sets, so it vanishes somewhere iff it
    is zero at such a breakpoint or changes sign between two of them.
    """
    lo = max(f[0][0], g[0][0])
    hi = min(f[-1][0], g[-1][0])
    if lo > hi:
        return False
    xs = sorted(
        {x for x, _ in f if lo <= x <= hi}
        | {x for x, _ in g if lo <= x <= hi}
        | {lo, hi}
    )
    prev = 0
    for x in xs:
        d = filament_value(f, x) - filament_value(g, x)
        if d == 0:
            return True
        sign = 1 if d > 0 else -1
        if prev and sign != prev:
            return True
        prev = sign
    return False


def _interval_intersects(a, b) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


def _interval_contains(a, b) -> bool:
    return a[0] <= b[0] and b[1] <= a[1]


def _predicates(model):
    """(intersects, contains) pair for the model kind, or contains=None."""
    if isinstance(model, IntervalModel):
        objs = model.intervals
        return objs, _interval_intersects, _interval_contains
    if isinstance(model, RectangleModel):

        def rect_intersects(a, b):
            return (
                a[0] <= b[1]
                and b[0] <= a[1]
                and a[2] <= b[3]
                and b[2] <= a[3]
            )

        def rect_contains(a, b):
            return a[0] <= b[0] and b[1] <= a[1] and a[2] <= b[2] and b[3] <= a[3]

        return model.rectangles, rect_intersects, rect_contains
    if isinstance(model, SubtreeModel):

        def set_intersects(a, b):
            return not a.isdisjoint(b)

        def set_contains(a, b):
            return b <= a

        return model.sets, set_intersects, set_contains
    if isinstance(model, FilamentModel):
        return model.filaments, filaments_intersect, None
    raise ValidationError("unknown model type", type=type(model).__name__)


def model_graph(model, mode: str = "intersection") -> Graph:
    """The intersection or overlap graph of a geometric model.

    Overlap joins two members that intersect while neither contains the
    other, with containment read set-wise per kind.  Filament models are
    intersection-only.
    """
    if mode not in ("intersection", "overlap"):
        raise ValidationError("mode must be 'intersection' or 'overlap'", mode=mode)
    objs, intersects, contains = _predicates(model)
    if mode == "overlap" and contains is None:
        raise ValidationError("filament models support intersection mode only")
    edges = []
    for u in range(len(objs)):
        for v in range(u + 1, len(objs)):
            if not intersects(objs[u], objs[v]):
                continue
            if mode == "overlap" and (
                contains(objs[u], objs[v]) or contains(objs[v], objs[u])
            ):
                continue
            edges.append((u, v))
    return Graph(len(objs), edges, labels=model.labels)


def is_clean(model) -> bool:
    """True iff no member is contained in two overlapping members."""
    objs, intersects, contains = _predicates(model)
    if contains is None:
        raise ValidationError("cleanness is defined for overlap-capable models only")
    n = len(objs)

    def overlaps(u, v):
        return (
            intersects(objs[u], objs[v])
            and not contains(objs[u], objs[v])
            and not contains(objs[v], objs[u])
        )

    for z in range(n):
        containers = [
            x for x in range(n) if x != z and contains(objs[x], objs[z])
        ]
        for i in range(len(containers)):
            for j in range(i + 1, len(containers)):
                if overlaps(containers[i], containers[j]):
                    return False
    return True


# ---------------------------------------------------------------------------
# Game graph -> model syntheses
# ---------------------------------------------------------------------------


def _validated(gg, expected_kind: str):
    from . import games  # local import: games pulls geometry for filaments
    from .engine import validate_game_graph

    if gg.kind != expected_kind:
        raise ValidationError(
            "game graph has the wrong kind", expected=expected_kind, got=gg.kind
        )
    rules = games.make_rules(gg.kind, gg.params)
    validate_game_graph(gg, rules)
    return rules


def rectangles_from_int_game_graph(gg) -> RectangleModel:
    """Rectangles mu(u) x [x_u, y_u] from an interval-game graph.

    (x_u, y_u) are depth-first enter/leave times of the game forest, so two
    rectangles share a point iff the vertices' intervals intersect and one
    is an ancestor of the other — exactly the game-graph edges.
    """
    _validated(gg, "gamma_int")
    times = dfs_times(gg.forest)
    rects = []
    for u in range(gg.graph.n):
        l, r = gg.payloads[u]
        x_u, y_u = times[u]
        rects.append((l, r, Fraction(x_u), Fraction(y_u)))
    return RectangleModel(rects, labels=gg.graph.labels)


def _row_relations(gg) -> dict:
    """Map (ancestor x, descendant y) -> relation code from payload rows."""
    rel = {}
    for v in range(gg.graph.n):
        path = gg.forest.root_path(v)
        row = gg.payloads[v]
        for i, anc in enumerate(path[:-1]):
            rel[(anc, v)] = row[i]
    return rel


def subtrees_from_abs_game_graph(gg) -> SubtreeModel:
    """The clean subtree overlap model of an abstract-game graph.

    Host tree: a root r, one node u_x per vertex wired along the game
    forest, and a pendant v_x under each u_x.  The set of x is
    S_x = {u_x, v_x} + {u_y : x INC y or x OVL y} + {v_y : x INC y}.
    Node numbering: r = 0, u_x = 1 + x, v_x = 1 + n + x.
    """
    _validated(gg, "gamma_abs")
    n = gg.graph.n
    parent: list = [None] * (2 * n + 1)
    for x in range(n):
        p = gg.forest.parent[x]
        parent[1 + x] = 0 if p is None else 1 + p
        parent[1 + n + x] = 1 + x
    rel = _row_relations(gg)
    sets = []
    for x in range(n):
        s = {1 + x, 1 + n + x}
        for y in range(n):
            code = rel.get((x, y))
            if code in ("INC", "OVL"):
                s.add(1 + y)
            if code == "INC":
                s.add(1 + n + y)
        sets.append(s)
    return SubtreeModel(parent, sets, labels=gg.graph.labels)


def realize_poset_functions(
    n: int,
    less: Iterable[Sequence[int]],
    lo,
    hi,
    *,
    scale=1,
) -> list:
    """Positive piecewise-linear functions over [lo, hi] realizing an order.

    ``less`` lists pairs (a, b) meaning a < b on elements 0..n-1.  The
    result satisfies: a < b (in the transitive closure) iff f_a strictly
    dominates f_b pointwise on the whole domain; incomparable elements'
    functions cross.  One sample coordinate is placed per linear extension
    of the realizer {one extension per ordered incomparable pair}; values
    are interpolated linearly and held constant out to the domain ends.
    Distinct values at a shared coordinate differ by at least ``scale``.
    """
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise ValidationError("domain must satisfy lo < hi")
    below = [0] * n  # bit v set in below[u] iff v < u
    for a, b in less:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValidationError("order pairs must join distinct elements")
        below[b] |= 1 << a
    # Transitive closure, then an acyclicity check.
    changed = True
    while changed:
        changed = False
        for u in range(n):
            acc = below[u]
            rest = acc
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc |= below[v]
            if acc != below[u]:
                below[u] = acc
                changed = True
    for u in range(n):
        if below[u] >> u & 1:
            raise ValidationError("order contains a cycle")

    def extension(extra: Optional[tuple]) -> list:
        pred = list(below)
        if extra is not None:
            a, b = extra
            pred[b] |= 1 << a
        placed = 0
        out = []
        while len(out) < n:
            for u in range(n):
                if not placed >> u & 1 and pred[u] & ~placed == 0:
                    out.append(u)
                    placed |= 1 << u
                    break
        return out

    pairs = [
        (a, b)
        for a in range(n)
        for b in range(n)
        if a != b and not below[b] >> a & 1 and not below[a] >> b & 1
    ]
    extensions = [extension(p) for p in pairs] if pairs else [extension(None)]
    m = len(extensions)
    scale = _frac(scale)
    xs = [lo + (hi - lo) * Fraction(i + 1, m + 1) for i in range(m)]
    funcs = []
    for e in range(n):
        values = [scale * (n - ext.index(e)) for ext in extensions]
        pts = [(lo, values[0])]
        pts.extend(zip(xs, values))
        pts.append((hi, values[-1]))
        funcs.append(tuple(pts))
    return funcs


def filaments_from_coco_game_graph(gg) -> FilamentModel:
    """A domain-non-overlapping filament model of a containment-game graph.

    Per leaf v of the game forest, the path order restricted to non-edges
    is realized by functions over [x_v, y_v] with the comparabilities
    reversed (earlier vertices run above later comparable ones); each
    vertex's filament splices its per-leaf functions left to right and
    drops to zero at x_u - 1/3 and y_u + 1/3.  Heights are scaled so that
    every intended non-intersection keeps a vertical clearance of at least
    1/4 of the integer grid unit.
    """
    _validated(gg, "gamma_coco")
    n = gg.graph.n
    times = dfs_times(gg.forest)
    third = Fraction(1, 3)
    scale = 2 * n + 2
    leaves = sorted(
        (v for v in range(n) if not gg.forest.children(v)),
        key=lambda v: times[v][0],
    )
    piece: dict = {}
    for v in leaves:
        path = gg.forest.root_path(v)
        local = {u: i for i, u in enumerate(path)}
        less = [
            (local[path[i]], local[path[j]])
            for i in range(len(path))
            for j in range(i + 1, len(path))
            if not gg.graph.has_edge(path[i], path[j])
        ]
        x_v, y_v = times[v]
        funcs = realize_poset_functions(len(path), less, x_v, y_v, scale=scale)
        for u in path:
            piece[(u, v)] = funcs[local[u]]
    fils = []
    for u in range(n):
        x_u, y_u = times[u]
        own = [v for v in leaves if u == v or gg.forest.is_ancestor(u, v)]
        pts = [(x_u - third, Fraction(0))]
        for v in own:
            pts.extend(piece[(u, v)])
        pts.append((y_u + third, Fraction(0)))
        fils.append(pts)
    return FilamentModel(fils, labels=gg.graph.labels)


def coco_certificate_from_filaments(model: FilamentModel, k: Optional[int] = None):
    """Recover a containment-game graph from a filament model.

    Requires pairwise non-overlapping domains in general position (all 2n
    domain endpoints distinct).  The forest is the domain-containment Hasse
    forest; a vertex's payload records which path ancestors' filaments it
    misses (u < v iff dom(f_u) strictly contains dom(f_v) and the curves do
    not intersect).
    """
    from . import games
    from .engine import GameGraph, validate_game_graph

    if not isinstance(model, FilamentModel):
        raise ValidationError("expected a filament model")
    n = model.n
    doms = [model.domain(v) for v in range(n)]
    ends = [c for d in doms for c in d]
    if len(set(ends)) != len(ends):
        raise ValidationError("domain endpoints must be in general position")
    for u in range(n):
        for v in range(u + 1, n):
            a, b = doms[u], doms[v]
            if not _interval_intersects(a, b):
                continue
            if not (_interval_contains(a, b) or _interval_contains(b, a)):
                raise ValidationError(
                    "filament domains overlap", vertices=[u, v]
                )
    parent: list = [None] * n
    for v in range(n):
        containers = [
            u
            for u in range(n)
            if u != v and _interval_contains(doms[u], doms[v])
        ]
        if containers:
            parent[v] = min(containers, key=lambda u: doms[u][1] - doms[u][0])
    forest = RootedForest(parent)
    graph = model_graph(model, "intersection")
    payloads = []
    for v in range(n):
        path = forest.root_path(v)
        payloads.append(
            frozenset(
                i for i, u in enumerate(path[:-1]) if not graph.has_edge(u, v)
            )
        )
    if k is None:
        k = clique_number(graph)
    gg = GameGraph("gamma_coco", {"k": k}, graph, forest, tuple(payloads))
    validate_game_graph(gg, games.make_rules("gamma_coco", {"k": k}))
    return gg


def filaments_from_path_subtrees(model: SubtreeModel, path_nodes: Sequence[int]) -> FilamentModel:
    """Filament model of a subtree overlap graph whose members all meet a path.

    Host nodes are placed on a line: path node q_i at integer i (1-based),
    the other nodes of the component hanging off q_i strictly between i and
    i + 1/4.  The filament of a vertex whose sets meets the path in
    q_i..q_j starts in (i-1, i), ends in (j, j+1), and runs above exactly
    its own nodes' points (height > 1 over members, < 1 over non-members).
    The intersection graph of the result is the overlap graph of the input.
    """
    if not isinstance(model, SubtreeModel):
        raise ValidationError("expected a subtree model")
    host = model.host
    q = [int(t) for t in path_nodes]
    if not q or len(set(q)) != len(q):
        raise ValidationError("path must list distinct host nodes")
    for a, b in zip(q, q[1:]):
        if host.parent[a] != b and host.parent[b] != a:
            raise ValidationError(
                "consecutive path nodes must be adjacent in the host tree",
                nodes=[a, b],
            )
    m = len(q)
    on_path = {t: i + 1 for i, t in enumerate(q)}  # 1-based position
    path_edges = {frozenset((a, b)) for a, b in zip(q, q[1:])}
    # Component of each host node after deleting the path edges.
    around = {v: set(host.children(v)) for v in range(host.n)}
    for v in range(host.n):
        if host.parent[v] is not None:
            around[v].add(host.parent[v])
    comp = [0] * host.n
    for i, t in enumerate(q):
        stack = [t]
        comp[t] = i + 1
        seen = {t}
        while stack:
            v = stack.pop()
            for w in around[v]:
                if w in seen or frozenset((v, w)) in path_edges or w in on_path:
                    continue
                seen.add(w)
                comp[w] = i + 1
                stack.append(w)
    if 0 in comp:
        raise ValidationError("host tree is disconnected")  # cannot happen
    # Point coordinate of each host node: q_i at i, others in (i, i + 1/4).
    coord = {}
    for i, t in enumerate(q):
        coord[t] = Fraction(i + 1)
    for i in range(1, m + 1):
        hanging = sorted(t for t in range(host.n) if comp[t] == i and t not in on_path)
        for idx, t in enumerate(hanging):
            coord[t] = Fraction(i) + Fraction(idx + 1, 4 * (len(hanging) + 1))
    # Per-vertex path span [i_x, j_x] and a containment-respecting rank.
    spans = []
    for x, s in enumerate(model.sets):
        hit = [on_path[t] for t in s if t in on_path]
        if not hit:
            raise ValidationError("a subtree misses the path", vertex=x)
        i_x, j_x = min(hit), max(hit)
        if set(range(i_x, j_x + 1)) != set(hit):
            raise ValidationError(
                "a subtree meets the path in a non-contiguous stretch", vertex=x
            )
        spans.append((i_x, j_x))
    order = sorted(range(model.n), key=lambda x: (-len(model.sets[x]), x))
    rank = {x: i for i, x in enumerate(order)}
    n = model.n
    big = {x: 1 + Fraction(n - rank[x], n + 1) for x in range(n)}
    small = {x: Fraction(n - rank[x], n + 1) for x in range(n)}
    # Domain ends: larger sets start earlier and end later within each unit
    # gap; starts live in (g + 2/3, g + 1), ends in (g + 1/3, g + 1/2).
    start_at, end_at = {}, {}
    for g in range(m + 1):
        starters = sorted(
            (x for x in range(n) if spans[x][0] == g + 1), key=lambda x: rank[x]
        )
        for idx, x in enumerate(starters):
            start_at[x] = Fraction(g) + Fraction(2, 3) + Fraction(
                idx + 1, 3 * (len(starters) + 1)
            )
        enders = sorted(
            (x for x in range(n) if spans[x][1] == g), key=lambda x: -rank[x]
        )
        for idx, x in enumerate(enders):
            end_at[x] = Fraction(g) + Fraction(1, 3) + Fraction(
                idx + 1, 6 * (len(enders) + 1)
            )
    fils = []
    for x in range(n):
        a, b = start_at[x], end_at[x]
        inside = sorted(
            (c, t) for t, c in coord.items() if a < c < b
        )
        pts = [(a, Fraction(0))]
        for c, t in inside:
            pts.append((c, big[x] if t in model.sets[x] else small[x]))
        pts.append((b, Fraction(0)))
        fils.append(pts)
    return FilamentModel(fils, labels=model.labels)


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#e377c2",
    "#bcbd22",
    "#7f7f7f",
)


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def _svg_document(shapes: list, x0, y0, x1, y1) -> str:
    pad = 10.0
    w = max(float(x1 - x0), 1.0) + 2 * pad
    h = max(float(y1 - y0), 1.0) + 2 * pad
    header = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(float(x0) - pad)} {_fmt(float(y0) - pad)} '
        f'{_fmt(w)} {_fmt(h)}">\n'
    )
    return header + "".join(f"  {s}\n" for s in shapes) + "</svg>\n"


def svg_export(model) -> str:
    """A deterministic SVG 1.1 drawing of a geometric model."""
    shapes: list = []
    if isinstance(model, IntervalModel):
        if not model.intervals:
            return _svg_document(shapes, 0, 0, 1, 1)
        step = 20
        for v, (l, r) in enumerate(model.intervals):
            color = _PALETTE[v % len(_PALETTE)]
            y = (v + 1) * step
            shapes.append(
                f'<line x1="{_fmt(l * 40)}" y1="{y}" x2="{_fmt(r * 40)}" '
                f'y2="{y}" stroke="{color}" stroke-width="3"/>'
            )
        xs = [c * 40 for iv in model.intervals for c in iv]
        return _svg_document(shapes, min(xs), 0, max(xs), (model.n + 1) * step)
    if isinstance(model, RectangleModel):
        if not model.rectangles:
            return _svg_document(shapes, 0, 0, 1, 1)
        s = 20
        for v, (x1, x2, y1, y2) in enumerate(model.rectangles):
            color = _PALETTE[v % len(_PALETTE)]
            shapes.append(
                f'<rect x="{_fmt(x1 * s)}" y="{_fmt(y1 * s)}" '
                f'width="{_fmt((x2 - x1) * s)}" height="{_fmt((y2 - y1) * s)}" '
                f'fill="none" stroke="{color}" stroke-width="2"/>'
            )
        xs = [c * s for r in model.rectangles for c in r[:2]]
        ys = [c * s for r in model.rectangles for c in r[2:]]
        return _svg_document(shapes, min(xs), min(ys), max(xs), max(ys))
    if isinstance(model, FilamentModel):
        if not model.filaments:
            return _svg_document(shapes, 0, 0, 1, 1)
        s = 30
        top = max(y for pts in model.filaments for _, y in pts)
        for v, pts in enumerate(model.filaments):
            color = _PALETTE[v % len(_PALETTE)]
            path = " ".join(f"{_fmt(x * s)},{_fmt((top - y) * s)}" for x, y in pts)
            shapes.append(
                f'<polyline points="{path}" fill="none" stroke="{color}" '
                f'stroke-width="2"/>'
            )
        xs = [x * s for pts in model.filaments for x, _ in pts]
        shapes.append(
            f'<line x1="{_fmt(min(xs))}" y1="{_fmt(top * s)}" '
            f'x2="{_fmt(max(xs))}" y2="{_fmt(top * s)}" stroke="#000" '
            f'stroke-width="1"/>'
        )
        return _svg_document(shapes, min(xs), 0, max(xs), top * s)
    if isinstance(model, SubtreeModel):
        host = model.host
        if host.n == 0:
            return _svg_document(shapes, 0, 0, 1, 1)
        # Layout: depth down the page, leaves spread along x in DFS order.
        xpos = [0.0] * host.n
        depth = [0] * host.n
        next_leaf = [0]

        def place(v: int, d: int):
            depth[v] = d
            kids = host.children(v)
            if not kids:
                xpos[v] = float(next_leaf[0])
                next_leaf[0] += 1
                return
            for c in kids:
                place(c, d + 1)
            xpos[v] = sum(xpos[c] for c in kids) / len(kids)

        for r in host.roots:
            place(r, 0)
        sx, sy = 60.0, 60.0
        for v in range(host.n):
            p = host.parent[v]
            if p is not None:
                shapes.append(
                    f'<line x1="{_fmt(xpos[p] * sx)}" y1="{_fmt(depth[p] * sy)}" '
                    f'x2="{_fmt(xpos[v] * sx)}" y2="{_fmt(depth[v] * sy)}" '
                    f'stroke="#444" stroke-width="1"/>'
                )
        for i, s in enumerate(model.sets):
            color = _PALETTE[i % len(_PALETTE)]
            radius = 6 + 2 * (i % 5)
            for t in sorted(s):
                shapes.append(
                    f'<circle cx="{_fmt(xpos[t] * sx)}" cy="{_fmt(depth[t] * sy)}" '
                    f'r="{radius}" fill="none" stroke="{color}" '
                    f'stroke-width="1.5"/>'
                )
        for v in range(host.n):
            shapes.append(
                f'<circle cx="{_fmt(xpos[v] * sx)}" cy="{_fmt(depth[v] * sy)}" '
                f'r="3" fill="#000"/>'
            )
        xs = [x * sx for x in xpos]
        ys = [d * sy for d in depth]
        return _svg_document(shapes, min(xs), min(ys), max(xs) , max(ys))
    raise ValidationError("unknown model type", type=type(model).__name__)

"""Finite simple graphs, colorings, rooted forests, and exact oracles.

The exact routines (:func:`clique_number`, :func:`chromatic_number`,
:func:`kfree_chromatic_number`, :func:`find_coloring`) are branch-and-bound
searches over bitset adjacency.  Each takes an explicit node budget and
raises :class:`ResourceBudgetError` when the budget runs out, reporting
whatever bracket was established — they never silently return an
approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ResourceBudgetError, ValidationError


def _iter_bits(x: int):
    """Yield the set bit positions of ``x`` in ascending order."""
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


class Graph:
    """Immutable simple graph on vertex set {0, ..., n-1}.

    Equality and hashing consider only ``n`` and the edge set; ``labels``
    are display metadata.
    """

    __slots__ = ("n", "edges", "labels", "_adj", "_bits")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels=None):
        if n < 0:
            raise ValidationError("vertex count must be nonnegative", n=n)
        norm = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError("edge endpoint out of range", edge=[u, v], n=n)
            if u == v:
                raise ValidationError("self-loops are not allowed", vertex=u)
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(norm))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValidationError("labels length must equal n", n=n, labels=len(labels))
        self.labels = labels
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = [frozenset(s) for s in adj]
        self._bits = None

    # -- basic queries ----------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency_bits(self) -> list:
        """Per-vertex neighborhoods as int bitsets (cached)."""
        if self._bits is None:
            bits = [0] * self.n
            for u, v in self.edges:
                bits[u] |= 1 << v
                bits[v] |= 1 << u
            self._bits = bits
        return self._bits

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, re-indexed by position."""
        idx = {v: i for i, v in enumerate(vertices)}
        if len(idx) != len(vertices):
            raise ValidationError("induced vertex list has duplicates")
        sub = [
            (idx[u], idx[v])
            for u, v in self.edges
            if u in idx and v in idx
        ]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in vertices]
        return Graph(len(vertices), sub, labels)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        d = {"n": self.n, "edges": [[u, v] for u, v in self.edges]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "Graph":
        if not isinstance(d, dict) or "n" not in d:
            raise ValidationError("graph JSON must be an object with an 'n' field")
        return cls(int(d["n"]), d.get("edges", ()), d.get("labels"))

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Coloring:
    """A total color assignment; palette ids are small nonnegative ints."""

    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if any(c < 0 for c in self.colors):
            raise ValidationError("colors must be nonnegative")

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def to_json_dict(self) -> dict:
        return {"colors": list(self.colors)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Coloring":
        if not isinstance(d, dict) or "colors" not in d:
            raise ValidationError("coloring JSON must be an object with a 'colors' field")
        return cls(tuple(d["colors"]))


def _color_list(c) -> list:
    if isinstance(c, Coloring):
        return list(c.colors)
    return [int(x) for x in c]


# -- exact clique search ---------------------------------------------------


def max_clique(g: Graph, *, node_budget: int = 5_000_000) -> list:
    """A maximum clique of ``g`` (exact, branch-and-bound with color bound)."""
    n = g.n
    if n == 0:
        return []
    adj = g.adjacency_bits()
    best: list = []
    nodes = 0

    def color_sort(pbits: int):
        # Greedy-color the candidate set; returns vertices grouped by color
        # class with their class index + 1 as an upper bound for expansion.
        order, bounds = [], []
        rest = pbits
        color = 0
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v]
                avail &= ~(1 << v)
                rest &= ~(1 << v)
                order.append(v)
                bounds.append(color)
        return order, bounds

    def expand(stack: list, pbits: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceBudgetError(
                "clique search budget exhausted",
                best_found=len(best),
                node_budget=node_budget,
            )
        order, bounds = color_sort(pbits)
        for i in range(len(order) - 1, -1, -1):
            if len(stack) + bounds[i] <= len(best):
                return
            v = order[i]
            stack.append(v)
            sub = pbits & adj[v]
            if sub:
                expand(stack, sub)
            elif len(stack) > len(best):
                best = list(stack)
            stack.pop()
            pbits &= ~(1 << v)

    expand([], (1 << n) - 1)
    return sorted(best)


def clique_number(g: Graph, *, node_budget: int = 5_000_000) -> int:
    """Exact clique number (size of a maximum clique)."""
    if g.n == 0:
        return 0
    return len(max_clique(g, node_budget=node_budget))


def _exists_clique_bits(adj: list, cand: int, size: int) -> bool:
    """True iff the induced subgraph on bitset ``cand`` contains a K_size."""
    if size <= 0:
        return True
    if size == 1:
        return cand != 0
    while cand:
        if cand.bit_count() < size:
            return False
        v = (cand & -cand).bit_length() - 1
        cand &= ~(1 << v)
        if _exists_clique_bits(adj, cand & adj[v], size - 1):
            return True
    return False


def has_clique(g: Graph, size: int) -> bool:
    """True iff ``g`` contains a clique on ``size`` vertices."""
    return _exists_clique_bits(g.adjacency_bits(), (1 << g.n) - 1, size)


# -- coloring -------------------------------------------------------------


def is_valid_coloring(g: Graph, c, k: int = 2) -> bool:
    """True iff every color class of ``c`` induces a K_k-free subgraph.

    ``k=2`` is ordinary properness.  A ``c`` that is not a total assignment
    over ``g``'s vertices is rejected with a validation error.
    """
    colors = _color_list(c)
    if len(colors) != g.n:
        raise ValidationError(
            "coloring length must equal vertex count", n=g.n, got=len(colors)
        )
    if k < 2:
        raise ValidationError("clique bound k must be >= 2", k=k)
    if k == 2:
        return all(colors[u] != colors[v] for u, v in g.edges)
    classes: dict = {}
    for v, col in enumerate(colors):
        classes[col] = classes.get(col, 0) | (1 << v)
    adj = g.adjacency_bits()
    return all(
        not _exists_clique_bits(adj, bits, k) for bits in classes.values()
    )


def greedy_coloring(g: Graph, order: Optional[Sequence[int]] = None) -> Coloring:
    """Greedy proper coloring: first-fit in ``order``, or saturation-driven.

    With no explicit order, repeatedly colors the uncolored vertex whose
    neighborhood already shows the most distinct colors (ties: higher degree,
    then lower index), which is the standard deterministic greedy bracketing
    used by the exact search.
    """
    n = g.n
    colors = [-1] * n
    if order is not None:
        for v in order:
            taken = {colors[u] for u in g.neighbors(v)}
            c = 0
            while c in taken:
                c += 1
            colors[v] = c
        return Coloring(tuple(colors))
    neigh_mask = [0] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (neigh_mask[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while neigh_mask[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in g.neighbors(v):
            neigh_mask[u] |= 1 << c
    return Coloring(tuple(colors))


def degeneracy_order(g: Graph) -> list:
    """Vertices in a smallest-last (degeneracy) order."""
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    alive = [True] * n
    out = []
    for _ in range(n):
        v = min(
            (u for u in range(n) if alive[u]),
            key=lambda u: (deg[u], u),
        )
        alive[v] = False
        out.append(v)
        for u in g.neighbors(v):
            if alive[u]:
                deg[u] -= 1
    out.reverse()
    return out


def find_coloring(
    g: Graph, t: int, *, node_budget: int = 2_000_000
) -> Optional[list]:
    """An exact proper coloring of ``g`` with at most ``t`` colors.

    Returns a color list, or ``None`` when no such coloring exists (this is
    a definite answer).  Budget exhaustion raises: it never stands in for
    "no".
    """
    n = g.n
    if n == 0:
        return []
    if t <= 0:
        return None
    if t >= n:
        return list(range(n))
    adj = g.adjacency_bits()
    clique = max_clique(g, node_budget=node_budget)
    if len(clique) > t:
        return None

    colors = [-1] * n
    neigh_mask = [0] * n
    # Color symmetry lets us pin a maximum clique to colors 0..q-1 up front.
    for i, v in enumerate(clique):
        colors[v] = i
        for u in _iter_bits(adj[v]):
            neigh_mask[u] |= 1 << i
    uncolored = [v for v in range(n) if colors[v] < 0]
    nodes = 0

    def backtrack(used: int) -> bool:
        nonlocal nodes
        if not uncolored:
            return True
        nodes += 1
        if nodes > node_budget:
            raise ResourceBudgetError(
                "coloring search budget exhausted", colors=t, node_budget=node_budget
            )
        v = max(
            uncolored,
            key=lambda u: (neigh_mask[u].bit_count(), g.degree(u), -u),
        )
        limit = min(used + 1, t)
        feasible = ~neigh_mask[v] & ((1 << limit) - 1)
        if not feasible:
            return False
        uncolored.remove(v)
        for c in _iter_bits(feasible):
            colors[v] = c
            touched = []
            bit = 1 << c
            for u in _iter_bits(adj[v]):
                if not neigh_mask[u] & bit:
                    neigh_mask[u] |= bit
                    touched.append(u)
            if backtrack(max(used, c + 1)):
                return True
            for u in touched:
                neigh_mask[u] &= ~bit
        colors[v] = -1
        uncolored.append(v)
        return False

    if backtrack(len(clique)):
        return colors
    return None


def chromatic_number(g: Graph, *, node_budget: int = 4_000_000) -> int:
    """Exact chromatic number via iterative deepening between ω and greedy."""
    if g.n == 0:
        return 0
    lb = clique_number(g, node_budget=node_budget)
    ub = greedy_coloring(g).num_colors
    if lb == ub:
        return lb
    for t in range(lb, ub):
        try:
            found = find_coloring(g, t, node_budget=node_budget)
        except ResourceBudgetError as exc:
            raise ResourceBudgetError(
                "chromatic number budget exhausted",
                lower_bound=t,
                upper_bound=ub,
            ) from exc
        if found is not None:
            return t
    return ub


def _kfree_greedy(g: Graph, k: int) -> int:
    adj = g.adjacency_bits()
    classes: list = []
    for v in range(g.n):
        for i, bits in enumerate(classes):
            if not _exists_clique_bits(adj, bits & adj[v], k - 1):
                classes[i] = bits | (1 << v)
                break
        else:
            classes.append(1 << v)
    return max(1, len(classes))


def kfree_chromatic_number(
    g: Graph, k: int, *, node_budget: int = 2_000_000
) -> int:
    """Minimum number of classes such that each induces a K_k-free subgraph."""
    if k < 2:
        raise ValidationError("clique bound k must be >= 2", k=k)
    if g.n == 0:
        return 0
    if k == 2:
        return chromatic_number(g, node_budget=node_budget)
    adj = g.adjacency_bits()
    w = clique_number(g, node_budget=node_budget)
    lb = -(-w // (k - 1))
    ub = _kfree_greedy(g, k)
    if lb == ub:
        return lb

    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))

    def search(t: int) -> bool:
        classes = [0] * t
        nodes = 0

        def place(i: int, used: int) -> bool:
            nonlocal nodes
            if i == len(order):
                return True
            nodes += 1
            if nodes > node_budget:
                raise ResourceBudgetError(
                    "K_k-free coloring budget exhausted",
                    k=k,
                    classes=t,
                    node_budget=node_budget,
                )
            v = order[i]
            vbit = 1 << v
            for ci in range(min(used + 1, t)):
                if _exists_clique_bits(adj, classes[ci] & adj[v], k - 1):
                    continue
                classes[ci] |= vbit
                if place(i + 1, max(used, ci + 1)):
                    return True
                classes[ci] &= ~vbit
            return False

        return place(0, 0)

    for t in range(lb, ub):
        try:
            if search(t):
                return t
        except ResourceBudgetError as exc:
            raise ResourceBudgetError(
                "K_k-free chromatic number budget exhausted",
                k=k,
                lower_bound=t,
                upper_bound=ub,
            ) from exc
    return ub


# -- rooted forests ---------------------------------------------------------


class RootedForest:
    """A rooted forest given by a parent array (``None`` marks roots).

    The derived strict partial order ≺ is proper ancestry: ``u ≺ v`` iff
    ``u`` lies on the path from a root to ``v`` and ``u != v``.  Children are
    always iterated in ascending vertex order, so every derived traversal is
    deterministic.
    """

    __slots__ = ("parent", "n", "_children", "_times", "_sizes")

    def __init__(self, parent: Sequence[Optional[int]]):
        parent = tuple(None if p is None else int(p) for p in parent)
        n = len(parent)
        for v, p in enumerate(parent):
            if p is not None and not 0 <= p < n:
                raise ValidationError("parent index out of range", vertex=v, parent=p)
            if p == v:
                raise ValidationError("vertex cannot be its own parent", vertex=v)
        state = [0] * n  # 0 unseen, 1 on stack, 2 done
        for v in range(n):
            path = []
            u = v
            while u is not None and state[u] == 0:
                state[u] = 1
                path.append(u)
                u = parent[u]
            if u is not None and state[u] == 1:
                raise ValidationError("parent array contains a cycle", vertex=u)
            for w in path:
                state[w] = 2
        self.parent = parent
        self.n = n
        children: list = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        self._children = tuple(tuple(sorted(c)) for c in children)
        self._times = None
        self._sizes = None

    @property
    def roots(self) -> tuple:
        return tuple(v for v, p in enumerate(self.parent) if p is None)

    def children(self, v: int) -> tuple:
        return self._children[v]

    def root_path(self, v: int) -> list:
        """Vertices from the root of ``v``'s tree down to ``v`` inclusive."""
        path = []
        u = v
        while u is not None:
            path.append(u)
            u = self.parent[u]
        path.reverse()
        return path

    def subtree_sizes(self) -> list:
        if self._sizes is None:
            sizes = [1] * self.n
            for v in self._postorder():
                p = self.parent[v]
                if p is not None:
                    sizes[p] += sizes[v]
            self._sizes = sizes
        return list(self._sizes)

    def _postorder(self) -> list:
        out = []
        for r in self.roots:
            stack = [(r, False)]
            while stack:
                v, expanded = stack.pop()
                if expanded:
                    out.append(v)
                    continue
                stack.append((v, True))
                for c in reversed(self._children[v]):
                    stack.append((c, False))
        return out

    def dfs_intervals(self) -> list:
        if self._times is None:
            self._times = dfs_times(self)
        return list(self._times)

    def is_ancestor(self, u: int, v: int) -> bool:
        """True iff ``u`` is a proper ancestor of ``v``."""
        if u == v:
            return False
        times = self.dfs_intervals()
        xu, yu = times[u]
        xv, yv = times[v]
        return xu < xv and yv < yu

    def comparable(self, u: int, v: int) -> bool:
        return u != v and (self.is_ancestor(u, v) or self.is_ancestor(v, u))

    def to_json(self) -> list:
        return [None if p is None else p for p in self.parent]

    @classmethod
    def from_json(cls, data) -> "RootedForest":
        if not isinstance(data, (list, tuple)):
            raise ValidationError("forest JSON must be a parent array")
        return cls([None if p in (None, -1) else int(p) for p in data])

    def __eq__(self, other):
        return isinstance(other, RootedForest) and self.parent == other.parent

    def __hash__(self):
        return hash(self.parent)

    def __repr__(self):
        return f"RootedForest(n={self.n}, roots={len(self.roots)})"


def dfs_times(f: RootedForest) -> list:
    """Enter/leave counter pairs (x_u, y_u) of a depth-first search.

    One global counter ticks on every enter and every leave; roots and
    children are visited in ascending vertex order.  Descendants nest
    strictly inside their ancestors' intervals and unrelated vertices get
    disjoint intervals.
    """
    times: list = [None] * f.n
    clock = 0
    for r in f.roots:
        stack = [(r, False)]
        while stack:
            v, leaving = stack.pop()
            if leaving:
                times[v] = (times[v], clock)
                clock += 1
                continue
            times[v] = clock
            clock += 1
            stack.append((v, True))
            for c in reversed(f.children(v)):
                stack.append((c, False))
    return times


@dataclass(frozen=True)
class HeavyLight:
    """Classification of forest edges plus the induced path partition.

    ``paths`` covers every vertex: maximal runs of heavy edges, listed
    top-down, with vertices on no heavy edge appearing as singletons.
    """

    heavy_edges: frozenset
    light_edges: frozenset
    paths: tuple


def heavy_light(f: RootedForest) -> HeavyLight:
    """Split forest edges into heavy and light.

    Edge xy (``y`` child of ``x``) is heavy iff the subtree at ``y`` holds
    strictly more than half of the vertices of the subtree at ``x``; exact
    halves are light.  Every root-to-leaf path then crosses at most
    ⌊log2 n⌋ light edges.
    """
    sizes = f.subtree_sizes()
    heavy = set()
    light = set()
    heavy_child = [None] * f.n
    for v, p in enumerate(f.parent):
        if p is None:
            continue
        if 2 * sizes[v] > sizes[p]:
            heavy.add((p, v))
            heavy_child[p] = v
        else:
            light.add((p, v))
    paths = []
    for v in range(f.n):
        p = f.parent[v]
        if p is not None and heavy_child[p] == v:
            continue  # not a path head
        path = [v]
        while heavy_child[path[-1]] is not None:
            path.append(heavy_child[path[-1]])
        paths.append(tuple(path))
    paths.sort(key=lambda pth: pth[0])
    return HeavyLight(frozenset(heavy), frozenset(light), tuple(paths))

"""Frozen fixture data shared across the test suite.

Everything here was derived once by hand (or by an independent scratch
computation) and is intentionally hard-coded: the tests compare the
library's behaviour against these constants, never the other way around.
"""

from fractions import Fraction as F

from colorgames.graphs import Graph, RootedForest

# --- interval adversary demo ------------------------------------------------
# Five intervals presented along a rooted forest; every root-to-vertex path
# is a legal k=2 interval presentation, yet the derived graph is a 5-cycle,
# so it needs 3 colors while its clique number is 2.

INT_DEMO_LABELS = ["a", "b", "c", "d", "e"]
INT_DEMO_INTERVALS = [
    (F(0), F(2)),
    (F(4), F(6)),
    (F(1), F(5)),
    (F(1), F(3)),
    (F(5, 2), F(5)),
]
INT_DEMO_PARENT = [None, 0, 1, 1, 3]
INT_DEMO_EDGES = {(0, 2), (1, 2), (0, 3), (3, 4), (1, 4)}
INT_DEMO_CHI = 3
INT_DEMO_OMEGA = 2

# --- up-growing poset demo --------------------------------------------------
# Five downsets presented up-growing with width 2; the incomparability graph
# is again a 5-cycle.  The adversary forces a third color within 4 rounds.

COCO_DEMO_DOWNSETS = [
    frozenset(),
    frozenset(),
    frozenset({0, 1}),
    frozenset({0}),
    frozenset({1}),
]
COCO_DEMO_PARENT = [None, 0, 1, 2, 2]
COCO_DEMO_EDGES = {(0, 1), (1, 3), (2, 3), (0, 4), (2, 4)}
COCO_DEMO_CHI = 3
COCO_DEMO_WIDTH = 2

# --- rectangle overlap demo -------------------------------------------------
# Twelve axis-parallel rectangles.  The overlap graph (edges = intersecting
# but not nested pairs) has 26 edges and clique number 4 (rectangles 3-6
# pairwise overlap); running the 3-clique breadth-first search peels the
# levels below, taking the no-witness branch exactly at steps 0, 1, 5 and 7.

RECT_DEMO_RECTS = [
    ((F(0), F(9)), (F(1), F(7))),
    ((F(1, 2), F(29, 4)), (F(0), F(8))),
    ((F(1), F(35, 4)), (F(11, 2), F(15, 2))),
    ((F(1), F(35, 4)), (F(1, 2), F(5, 2))),
    ((F(5, 4), F(41, 10)), (F(8, 5), F(32, 5))),
    ((F(7, 4), F(15, 4)), (F(13, 10), F(61, 10))),
    ((F(21, 10), F(7, 2)), (F(19, 10), F(67, 10))),
    ((F(5, 2), F(16, 5)), (F(11, 5), F(29, 5))),
    ((F(19, 4), F(33, 4)), (F(3), F(13, 2))),
    ((F(21, 4), F(8)), (F(4), F(6))),
    ((F(23, 4), F(31, 4)), (F(3, 2), F(5))),
    ((F(25, 4), F(15, 2)), (F(7, 2), F(9, 2))),
]
RECT_DEMO_EDGES = {
    (0, 1), (1, 2), (1, 3), (0, 2), (0, 3),
    (1, 8), (1, 9), (1, 10), (1, 11),
    (2, 8), (2, 9), (8, 10), (9, 10), (3, 10), (9, 11),
    (4, 5), (4, 6), (5, 6),
    (2, 4), (2, 5), (2, 6), (2, 7),
    (3, 4), (3, 5), (3, 6), (3, 7),
}
RECT_DEMO_OMEGA = 4
RECT_DEMO_LEVELS = [[0], [1], [2, 3], [8, 9, 10], [11], [4], [5, 6], [7]]
RECT_DEMO_FALLBACK_LEVELS = [0, 1, 5, 7]

# --- recursive adversary demo -----------------------------------------------
# A fully scripted run of the recursive forcing strategy with arguments
# (k=3, l=3, m=2).  Vertices are listed in presentation order; each carries
# the (A1, A2) arguments of the single-vertex call that presented it, which
# pins its whole relation row: A1-members include it, A2-members overlap it,
# everything else earlier is disjoint from it.  Colors are the scripted
# Algorithm replies; the run returns {a,c,f,m,o,r} carrying 5 colors.

PRESENT_DEMO_ARGS = (3, 3, 2)
PRESENT_DEMO_LABELS = list("abcdefghijklmnopqr")
PRESENT_DEMO_CALLS = {
    "a": ("", ""),
    "b": ("a", ""),
    "c": ("a", "b"),
    "d": ("ac", ""),
    "e": ("acd", ""),
    "f": ("ac", "de"),
    "g": ("acf", ""),
    "h": ("acfg", ""),
    "i": ("acfgh", ""),
    "j": ("acfghi", ""),
    "k": ("acfghi", "j"),
    "l": ("acfgh", "ik"),
    "m": ("acf", "ghl"),
    "n": ("acfm", "ghl"),
    "o": ("acfm", "ghln"),
    "p": ("acfmo", "ghl"),
    "q": ("acfmop", "ghl"),
    "r": ("acfmo", "ghlpq"),
}
# palette: 0 red, 1 blue, 2 green, 3 gray, 4 brown, 5 violet
PRESENT_DEMO_COLORS = {
    "a": 0, "b": 0, "c": 1, "d": 0, "e": 1, "f": 2,
    "g": 0, "h": 2, "i": 2, "j": 2, "k": 0, "l": 3,
    "m": 1, "n": 1, "o": 4, "p": 1, "q": 4, "r": 5,
}
PRESENT_DEMO_RETURN = set("acfmor")

# --- subtree overlap demo ---------------------------------------------------
# Host tree on 10 nodes (indices below), six subtrees, and their overlap
# graph.  Two root-to-leaf paths used by the piercing-filament tests: the
# runs of sets 2 and 3 overlap along path A but nest along path B, while
# the sets themselves overlap either way.

SUBTREE_DEMO_HOST_PARENT = [None, 0, 1, 2, 3, 4, 3, 6, 1, 1]
SUBTREE_DEMO_SETS = [
    frozenset({0, 1, 2, 8}),
    frozenset({1, 9}),
    frozenset({2, 3, 4, 6}),
    frozenset({3, 4, 5}),
    frozenset({4, 5}),
    frozenset({6, 7}),
]
SUBTREE_DEMO_EDGES = {(0, 1), (0, 2), (2, 3), (2, 4), (2, 5)}
SUBTREE_DEMO_PATH_A = [0, 1, 2, 3, 4, 5]   # pierces sets 0,1,2,3,4
SUBTREE_DEMO_PATH_B = [0, 1, 2, 3, 6, 7]   # pierces sets 0,1,2,3,5

# --- relation-row adversary demo ---------------------------------------------
# Ten vertices presented with explicit include/overlap/disjoint rows, legal
# for clique bound 3.  The on-line classification splits them into primary
# vertices {a,b,c,e,h} with satellite groups S(c)={c,d,g}, S(e)={e,f},
# S(h)={h,i,j}.

ABS_DEMO_ROWS = [
    (),
    ("INC",),
    ("OVL", "OVL"),
    ("OVL", "PAR", "INC"),
    ("OVL", "PAR", "OVL", "OVL"),
    ("OVL", "PAR", "OVL", "OVL", "INC"),
    ("OVL", "PAR", "INC", "OVL", "PAR", "PAR"),
    ("PAR", "PAR", "OVL", "PAR", "PAR", "PAR", "OVL"),
    ("PAR", "PAR", "OVL", "PAR", "PAR", "PAR", "OVL", "INC"),
    ("PAR", "PAR", "OVL", "PAR", "PAR", "PAR", "PAR", "INC", "OVL"),
]
ABS_DEMO_EDGES = {
    (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
    (1, 2),
    (2, 4), (2, 5), (2, 7), (2, 8), (2, 9),
    (3, 4), (3, 5), (3, 6),
    (6, 7), (6, 8),
    (8, 9),
}
ABS_DEMO_OMEGA = 3
ABS_DEMO_PRIMARY = {0, 1, 2, 4, 7}
ABS_DEMO_GROUPS = {0: {0}, 1: {1}, 2: {2, 3, 6}, 4: {4, 5}, 7: {7, 8, 9}}


# --- small named graphs -------------------------------------------------------


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return Graph(10, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_forest(n: int) -> RootedForest:
    return RootedForest([None] + list(range(n - 1)))


def random_graph(rng, n: int, p: float) -> Graph:
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_forest(rng, n: int) -> RootedForest:
    parent = [None] * n
    for v in range(1, n):
        parent[v] = rng.randrange(v) if rng.random() < 0.9 else None
    return RootedForest(parent)

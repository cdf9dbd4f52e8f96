"""Independent brute-force oracles used only by the test suite.

These deliberately avoid the library's search machinery (no clique bounds,
no saturation heuristics) so that agreement between the two is meaningful.
"""

from itertools import combinations

from colorgames.graphs import Graph


def naive_clique_number(g: Graph) -> int:
    """Largest clique by checking every vertex subset (n <= ~16)."""
    best = 0
    verts = range(g.n)
    for size in range(g.n, 0, -1):
        if size <= best:
            break
        for sub in combinations(verts, size):
            if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
                best = size
                break
    return best


def naive_chromatic_number(g: Graph) -> int:
    """Minimum colors over an exhaustive walk of all color partitions."""
    n = g.n
    if n == 0:
        return 0
    adj = g.adjacency_bits()
    best = n

    def rec(v: int, classes: list) -> None:
        nonlocal best
        if len(classes) >= best:
            return
        if v == n:
            best = len(classes)
            return
        for i, bits in enumerate(classes):
            if not bits & adj[v]:
                classes[i] = bits | (1 << v)
                rec(v + 1, classes)
                classes[i] = bits
        classes.append(1 << v)
        rec(v + 1, classes)
        classes.pop()

    rec(0, [])
    return best


def _subset_has_kclique(g: Graph, bits: int, k: int) -> bool:
    members = [v for v in range(g.n) if bits >> v & 1]
    for sub in combinations(members, k):
        if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
            return True
    return False


def naive_kfree_chromatic_number(g: Graph, k: int) -> int:
    """Minimum classes with no K_k inside any class, by exhaustive partition."""
    n = g.n
    if n == 0:
        return 0
    best = n

    def rec(v: int, classes: list) -> None:
        nonlocal best
        if len(classes) >= best:
            return
        if v == n:
            best = len(classes)
            return
        for i, bits in enumerate(classes):
            cand = bits | (1 << v)
            if not _subset_has_kclique(g, cand, k):
                classes[i] = cand
                rec(v + 1, classes)
                classes[i] = bits
        classes.append(1 << v)
        rec(v + 1, classes)
        classes.pop()

    rec(0, [])
    return best


def all_kcliques(g: Graph, k: int) -> list:
    """Every k-clique of ``g`` as a sorted tuple, by exhaustive combinations."""
    out = []
    for sub in combinations(range(g.n), k):
        if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
            out.append(tuple(sub))
    return out

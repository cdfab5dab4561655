"""Brute-force reference computations.

These deliberately avoid the refinement search, the stabilizer chain and
the fixed-point reformulation, so they can be used to cross-check them.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph


def automorphisms_by_filter(g: Graph) -> list[tuple[int, ...]]:
    """Every permutation of ``0..n-1`` that preserves adjacency (n! sweep)."""
    edges = g.edges()
    out = []
    for p in permutations(range(g.n)):
        if all(g.has_edge(p[u], p[v]) for u, v in edges):
            out.append(p)
    return out


def automorphisms_by_backtracking(g: Graph) -> list[tuple[int, ...]]:
    """All automorphisms by extending partial injections vertex by vertex.

    Each partial map is checked against every previously mapped vertex, so
    the sweep is exhaustive over S_n but prunes inconsistent branches.
    """
    n = g.n
    img = [-1] * n
    used = [False] * n
    out: list[tuple[int, ...]] = []

    def extend(v: int) -> None:
        if v == n:
            out.append(tuple(img))
            return
        for w in range(n):
            if used[w]:
                continue
            if all(g.has_edge(v, u) == g.has_edge(w, img[u]) for u in range(v)):
                img[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        img[v] = -1

    extend(0)
    return out


def fixed_number_by_subsets(g: Graph, automorphisms: list[tuple[int, ...]] | None = None) -> int:
    """Smallest ``k`` such that every ``k``-subset is fixing, straight from the definition."""
    auts = automorphisms if automorphisms is not None else automorphisms_by_filter(g)
    nontrivial = [p for p in auts if any(p[v] != v for v in range(g.n))]

    def fixing(subset: tuple[int, ...]) -> bool:
        return not any(all(p[v] == v for v in subset) for p in nontrivial)

    for k in range(g.n + 1):
        if all(fixing(c) for c in combinations(range(g.n), k)):
            return k
    raise AssertionError("the full vertex set is always fixing")


def fixing_number_by_subsets(g: Graph, automorphisms: list[tuple[int, ...]] | None = None) -> int:
    auts = automorphisms if automorphisms is not None else automorphisms_by_filter(g)
    nontrivial = [p for p in auts if any(p[v] != v for v in range(g.n))]
    for k in range(g.n + 1):
        for c in combinations(range(g.n), k):
            if not any(all(p[v] == v for v in c) for p in nontrivial):
                return k
    raise AssertionError("the full vertex set is always fixing")

"""Explicit graph constructions for prescribed fixing and fixed numbers.

Every builder here is paired with a direct recomputation of the invariants
it is meant to produce; the outcome is reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .fixing import fixed_number, fixing_number, max_fixed_point_elements
from .graph import Graph, complete_graph, encode_graph6
from .permgroup import DEFAULT_AUT_CAP, automorphism_group


def construct_fix_fxd(p: int, q: int) -> Graph:
    """Candidate graph with fix = p and fxd = q, for ``2 <= p <= q``.

    ``p == q`` gives K_{p+1}. Otherwise a path ``w_1..w_{q-p}`` on vertices
    ``0..q-p-1`` with ``p+1`` pendant vertices ``q-p..q`` hung on ``w_1``
    (vertex 0). The order is always ``q + 1``.
    """
    if p < 2 or p > q:
        raise ValueError(f"need 2 <= p <= q, got p={p}, q={q}")
    if p == q:
        return complete_graph(p + 1)
    m = q - p
    edges = [(i, i + 1) for i in range(m - 1)]
    edges += [(0, m + j) for j in range(p + 1)]
    return Graph.from_edges(q + 1, edges)


def verify_fix_fxd(p: int, q: int, aut_cap: int = DEFAULT_AUT_CAP) -> dict[str, Any]:
    g = construct_fix_fxd(p, q)
    group = automorphism_group(g)
    fix, _ = fixing_number(g, group, aut_cap)
    fxd, _ = fixed_number(g, group, aut_cap)
    return {
        "p": p,
        "q": q,
        "graph6": encode_graph6(g),
        "n": g.n,
        "fix": fix,
        "fxd": fxd,
        "verified": fix == p and fxd == q,
    }


@dataclass
class ExtendResult:
    graph: Graph
    fxd_before: int
    fxd_after: int
    nonfixing_set: tuple[int, ...]
    element: str
    cycle: tuple[int, ...]
    attempts: list[dict[str, Any]] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.fxd_after == self.fxd_before + 1

    def to_json(self) -> dict[str, Any]:
        return {
            "graph6": encode_graph6(self.graph),
            "n": self.graph.n,
            "fxd_before": self.fxd_before,
            "expected_fxd": self.fxd_before + 1,
            "fxd_after": self.fxd_after,
            "nonfixing_set": list(self.nonfixing_set),
            "element": self.element,
            "cycle": list(self.cycle),
            "verified": self.verified,
            "attempts": self.attempts,
        }


def extend_fxd(g: Graph, aut_cap: int = DEFAULT_AUT_CAP, search_all: bool = True) -> ExtendResult:
    """Add one vertex to raise the fixed number by one.

    Take a largest non-fixing set ``A`` (the fixed points of a non-identity
    ``h``), a cycle ``B`` of ``h`` of length >= 2, and join a new vertex to
    all of ``B``. Triples ``(A, h, B)`` are tried in order (``A``
    lexicographic, then ``h``, then cycles by smallest vertex) until the new
    graph's fixed number is one larger; every try is recorded.
    """
    group = automorphism_group(g)
    if group.is_trivial():
        raise ValueError("extension needs a graph with non-trivial automorphisms")
    size, maximizers = max_fixed_point_elements(group, aut_cap)
    fxd_before = size + 1
    attempts: list[dict[str, Any]] = []
    tried: dict[tuple[int, ...], tuple[Graph, int]] = {}
    first: ExtendResult | None = None
    for fp, h in maximizers:
        for cycle in h.cycles():
            key = tuple(sorted(cycle))
            if key not in tried:
                g2 = g.with_new_vertex(cycle)
                tried[key] = (g2, fixed_number(g2, aut_cap=aut_cap)[0])
            g2, fxd_after = tried[key]
            attempts.append({
                "nonfixing_set": list(fp),
                "element": str(h),
                "cycle": list(key),
                "fxd_after": fxd_after,
                "verified": fxd_after == fxd_before + 1,
            })
            result = ExtendResult(g2, fxd_before, fxd_after, fp, str(h), key, attempts)
            if first is None:
                first = result
            if result.verified or not search_all:
                return result
    assert first is not None
    return first

"""The bipartite fixing graph between similar vertices and similar pairs.

Left side: vertices in orbits of size >= 2. Right side: unordered pairs of
distinct vertices in a common orbit. A left vertex ``x`` is joined to
``{u, v}`` when no automorphism fixing ``x`` carries ``u`` to ``v``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Iterable

from .fixing import FixingReport
from .graph import Graph
from .permgroup import AutGroup, automorphism_group


def _split_pairs(group: AutGroup, pairs: Iterable[tuple[int, int]]) -> frozenset[int]:
    """Indices of pairs whose ends lie in different orbits of ``group``."""
    where = {}
    for i, block in enumerate(group.orbits()):
        for v in block:
            where[v] = i
    return frozenset(i for i, (u, v) in enumerate(pairs) if where[u] != where[v])


@dataclass(frozen=True)
class FixingGraph:
    n: int
    left: tuple[int, ...]
    right: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...]
    group: AutGroup = field(repr=False, compare=False)

    @property
    def r(self) -> int:
        return len(self.left)

    @property
    def s(self) -> int:
        return len(self.right)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency)

    def left_degree(self, x: int) -> int:
        return len(self.adjacency[self.left.index(x)])

    def left_degrees(self) -> dict[int, int]:
        return {x: len(a) for x, a in zip(self.left, self.adjacency)}

    def right_degrees(self) -> list[int]:
        deg = [0] * self.s
        for adj in self.adjacency:
            for j in adj:
                deg[j] += 1
        return deg

    def is_adjacent(self, x: int, pair: tuple[int, int]) -> bool:
        return self.right.index(tuple(sorted(pair))) in self.adjacency[self.left.index(x)]

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "edges": self.num_edges,
            "left": list(self.left),
            "right": [list(p) for p in self.right],
            "adjacency": {str(x): sorted(a) for x, a in zip(self.left, self.adjacency)},
        }

    def to_dot(self) -> str:
        lines = ["graph fixing_graph {", "  rankdir=LR;"]
        lines.append("  subgraph cluster_vertices { rank=same; " + " ".join(f"v{x};" for x in self.left) + " }")
        for x in self.left:
            lines.append(f'  v{x} [shape=box, label="v{x}"];')
        for j, (u, v) in enumerate(self.right):
            lines.append(f'  p{j} [shape=ellipse, label="{{{u},{v}}}"];')
        for x, adj in zip(self.left, self.adjacency):
            for j in sorted(adj):
                lines.append(f"  v{x} -- p{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_fixing_graph(g: Graph, group: AutGroup | None = None) -> FixingGraph:
    group = group or automorphism_group(g)
    left = tuple(sorted(v for block in group.orbits() if len(block) > 1 for v in block))
    right = tuple(
        pair
        for block in group.orbits()
        if len(block) > 1
        for pair in combinations(sorted(block), 2)
    )
    right = tuple(sorted(right))
    adjacency = tuple(_split_pairs(group.pointwise_stabilizer({x}), right) for x in left)
    return FixingGraph(g.n, left, right, adjacency, group)


def neighborhood(D: FixingGraph, vertices: Iterable[int]) -> frozenset[tuple[int, int]]:
    """Pairs separated by the pointwise stabilizer of ``vertices``."""
    F = frozenset(vertices)
    if not F <= set(D.left):
        raise ValueError(f"{sorted(F - set(D.left))} are not similar to any other vertex")
    split = _split_pairs(D.group.pointwise_stabilizer(F), D.right)
    return frozenset(D.right[j] for j in split)


def _is_full(D: FixingGraph, vertices: Iterable[int]) -> bool:
    return len(_split_pairs(D.group.pointwise_stabilizer(vertices), D.right)) == D.s


def fix_via_fixing_graph(D: FixingGraph) -> tuple[int, tuple[int, ...]]:
    """Smallest left set whose neighbourhood is every similar pair."""
    for k in range(D.r + 1):
        for combo in combinations(D.left, k):
            if _is_full(D, combo):
                return k, combo
    raise AssertionError("the whole left side always separates every pair")


def t_parameter_and_fxd(D: FixingGraph) -> tuple[int, int]:
    """``(t, fxd)`` where every ``t``-subset of the left side is full.

    Scans sizes downwards from ``r``; the first size with a non-full subset is
    ``t - 1``. ``fxd = t + (number of fixed vertices)``.
    """
    if D.group.is_trivial():
        raise ValueError("a rigid graph has an empty fixing graph")
    for m in range(D.r, -1, -1):
        if any(not _is_full(D, combo) for combo in combinations(D.left, m)):
            t = m + 1
            return t, t + (D.n - D.r)
    raise AssertionError("the empty set is non-full for a non-trivial group")


@dataclass(frozen=True)
class EdgeBoundReport:
    k: int | None
    n: int
    r: int
    s: int
    edges: int
    lower: Fraction | None = None
    middle: int | None = None
    upper: int | None = None
    min_pair_degree: int | None = None

    @property
    def skipped(self) -> bool:
        return self.k is None

    @property
    def lower_ok(self) -> bool:
        return self.skipped or self.lower <= self.middle

    @property
    def middle_ok(self) -> bool:
        return self.skipped or self.middle <= self.edges

    @property
    def upper_ok(self) -> bool:
        return self.skipped or self.edges <= self.upper

    @property
    def pair_degree_ok(self) -> bool:
        return self.skipped or self.s == 0 or self.min_pair_degree >= self.r - self.k + 1

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.middle_ok and self.upper_ok

    def to_json(self) -> dict[str, Any]:
        if self.skipped:
            return {"skipped": True, "reason": "not k-fixed"}
        return {
            "skipped": False,
            "k": self.k,
            "r": self.r,
            "s": self.s,
            "edges": self.edges,
            "lower": str(self.lower),
            "middle": self.middle,
            "upper": self.upper,
            "min_pair_degree": self.min_pair_degree,
            "pass": self.passed,
            "pair_degree_pass": self.pair_degree_ok,
        }


def edge_bounds_check(D: FixingGraph, report: FixingReport) -> EdgeBoundReport:
    """Edge-count sandwich for a k-fixed graph.

    ``(r/2)(r-k+1) <= s(r-k+1) <= |E(D)| <= n(C(n,2)-k+1)``, plus the
    per-pair degree floor ``r-k+1`` that drives the middle inequality.
    """
    k = report.k_fixed
    if k is None:
        return EdgeBoundReport(None, D.n, D.r, D.s, D.num_edges)
    degrees = D.right_degrees()
    return EdgeBoundReport(
        k=k,
        n=D.n,
        r=D.r,
        s=D.s,
        edges=D.num_edges,
        lower=Fraction(D.r, 2) * (D.r - k + 1),
        middle=D.s * (D.r - k + 1),
        upper=D.n * (comb(D.n, 2) - k + 1),
        min_pair_degree=min(degrees) if degrees else None,
    )


def dichotomy_check(D: FixingGraph, report: FixingReport) -> bool | None:
    """For a k-fixed graph: ``k <= 3 or k >= r - 1``. None when not k-fixed."""
    k = report.k_fixed
    if k is None:
        return None
    return k <= 3 or k >= D.r - 1


def dump_json(D: FixingGraph) -> str:
    return json.dumps(D.to_json(), sort_keys=True, indent=2) + "\n"

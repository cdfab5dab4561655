"""Vertex- and distance-transitivity, and distance-class identities for D(G)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from .fixing import FixingReport
from .fixing_graph import FixingGraph
from .graph import DisconnectedGraphError, Graph, distance_classes, distances
from .permgroup import AutGroup, automorphism_group


def is_vertex_transitive(g: Graph, group: AutGroup | None = None) -> bool:
    group = group or automorphism_group(g)
    return len(group.orbits()) == 1


def pair_orbits(group: AutGroup) -> list[int]:
    """Orbit id of each ordered pair ``(u, v)``, flattened as ``u * n + v``."""
    n = group.n
    parent = list(range(n * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        for u in range(n):
            for v in range(n):
                a, b = find(u * n + v), find(g[u] * n + g[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n * n)]


def is_distance_transitive(g: Graph, group: AutGroup | None = None) -> bool:
    """All ordered pairs at each distance form a single orbit."""
    if not g.is_connected():
        raise DisconnectedGraphError("distance-transitivity needs a connected graph")
    group = group or automorphism_group(g)
    dist = distances(g).dist
    label = pair_orbits(group)
    seen: dict[float, int] = {}
    for u in range(g.n):
        for v in range(g.n):
            d = dist[u][v]
            lab = label[u * g.n + v]
            if seen.setdefault(d, lab) != lab:
                return False
    return True


def _class_pair_sum(g: Graph, v: int) -> int:
    return sum(comb(size, 2) for size in distance_classes(g, v).sizes())


@dataclass
class DegreeFormulaReport:
    degrees: dict[int, int]
    formula: dict[int, int]
    mismatched_pairs: list[tuple[int, tuple[int, int]]] = field(default_factory=list)

    @property
    def degree_ok(self) -> bool:
        return self.degrees == self.formula

    @property
    def characterization_ok(self) -> bool:
        return not self.mismatched_pairs

    @property
    def passed(self) -> bool:
        return self.degree_ok and self.characterization_ok


def dt_degree_formula_check(g: Graph, D: FixingGraph) -> DegreeFormulaReport:
    """Compare D(G) degrees with ``C(n,2) - sum_i C(|class_i(v)|, 2)``.

    Also checks pair by pair that ``v`` misses ``{x, y}`` exactly when ``x``
    and ``y`` are equidistant from ``v``.
    """
    if not is_distance_transitive(g, D.group):
        raise ValueError("graph is not distance-transitive")
    dist = distances(g).dist
    total = comb(g.n, 2)
    degrees = D.left_degrees()
    formula = {v: total - _class_pair_sum(g, v) for v in D.left}
    mismatched = []
    for x, adj in zip(D.left, D.adjacency):
        for j, (u, v) in enumerate(D.right):
            same_class = dist[x][u] == dist[x][v]
            if (j not in adj) != same_class:
                mismatched.append((x, (u, v)))
    return DegreeFormulaReport(degrees, formula, mismatched)


@dataclass
class DTBoundReport:
    n: int
    diameter: int
    edges: int
    identity_value: int
    class_pair_total: int
    k: int | None = None
    clauses: dict[str, dict[str, Any]] = field(default_factory=dict)

    @property
    def identity_ok(self) -> bool:
        return self.edges == self.identity_value

    @property
    def passed(self) -> bool:
        return self.identity_ok and all(c["pass"] for c in self.clauses.values())


def dt_bound_check(g: Graph, D: FixingGraph, report: FixingReport) -> DTBoundReport:
    """Exact-integer checks for a distance-transitive graph.

    Always: ``|E(D)| = n C(n,2) - sum_v sum_i C(|class_i(v)|, 2)``.
    When k-fixed, in addition: ``k * d >= n - 1``; ``k <= 3 or k >= n - 1``;
    ``C(n,2)(n-k+1) <= |E(D)| <= n(C(n,2)-k+1)``; and
    ``n(k-1) <= sum_v sum_i C(|class_i(v)|, 2) <= C(n,2)(k-1)``.
    """
    if not is_distance_transitive(g, D.group):
        raise ValueError("graph is not distance-transitive")
    n = g.n
    total = comb(n, 2)
    diam = int(distances(g).diam)
    class_sum = sum(_class_pair_sum(g, v) for v in range(n))
    out = DTBoundReport(n, diam, D.num_edges, n * total - class_sum, class_sum)
    k = report.k_fixed
    if k is None:
        return out
    out.k = k
    out.clauses["diameter_bound"] = {
        "k": k,
        "bound": Fraction(n - 1, diam) if diam else Fraction(0),
        "pass": k * diam >= n - 1,
    }
    out.clauses["dichotomy"] = {"k": k, "pass": k <= 3 or k >= n - 1}
    lo, hi = total * (n - k + 1), n * (total - k + 1)
    out.clauses["edge_bounds"] = {"lower": lo, "edges": D.num_edges, "upper": hi, "pass": lo <= D.num_edges <= hi}
    lo2, hi2 = n * (k - 1), total * (k - 1)
    out.clauses["class_sum_bounds"] = {"lower": lo2, "value": class_sum, "upper": hi2, "pass": lo2 <= class_sum <= hi2}
    return out


def dt_report_json(g: Graph, D: FixingGraph, report: FixingReport) -> dict[str, Any]:
    """``{"dt", "vt", "deg_formula", "eq_identity", "thm48"}`` summary."""
    vt = is_vertex_transitive(g, D.group)
    connected = g.is_connected()
    dt = connected and is_distance_transitive(g, D.group)
    out: dict[str, Any] = {"dt": dt, "vt": vt, "deg_formula": None, "eq_identity": None, "thm48": None}
    if not dt:
        return out
    deg = dt_degree_formula_check(g, D)
    bounds = dt_bound_check(g, D, report)
    out["deg_formula"] = "pass" if deg.passed else "fail"
    out["eq_identity"] = "pass" if bounds.identity_ok else "fail"
    clause = bounds.clauses.get("diameter_bound")
    if clause is not None:
        out["thm48"] = {"k": clause["k"], "bound": float(clause["bound"]), "pass": clause["pass"]}
    return out

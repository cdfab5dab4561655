"""Graph catalogs and whole-catalog verification of the fixing-number results."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from pathlib import Path
from typing import Any, Iterable, Iterator

from . import oracles
from .distance_transitive import (
    dt_bound_check,
    dt_degree_formula_check,
    is_distance_transitive,
    is_vertex_transitive,
)
from .fixing import (
    DEFAULT_SUBSET_MAX_N,
    analyze,
    fixed_vertices,
    fixing_polynomial,
    is_fixing_set,
    max_fixed_point_elements,
)
from .fixing_graph import (
    build_fixing_graph,
    dichotomy_check,
    edge_bounds_check,
    fix_via_fixing_graph,
    neighborhood,
    t_parameter_and_fxd,
)
from .graph import Graph, Graph6Error, encode_graph6, parse_graph6, twin_pairs
from .permgroup import DEFAULT_AUT_CAP, CapExceeded, automorphism_group

log = logging.getLogger(__name__)

ENUMERATION_MAX_N = 6
ENUMERATION_HARD_MAX_N = 7

# Checks in report order. Each needs the hypotheses noted beside it.
CHECKS = (
    "orbit_stabilizer",                 # all
    "aut_order_brute_force",            # n <= oracle cap
    "fix_le_metric_dimension",          # all connected
    "fix_fxd_chain",                    # non-rigid
    "fxd_matches_subset_sweep",         # non-rigid, n <= oracle cap
    "twins_iff_fxd_n_minus_1",          # non-rigid
    "twins_meet_every_fixing_set",      # twins exist
    "fxd_one_free_action",              # fxd == 1
    "largest_nonfixing_has_fixed",      # non-rigid
    "n_minus_1_fixed_with_twins_complete",  # (n-1)-fixed with twins
    "k_fixed_polynomial",               # k-fixed
    "fix_via_fixing_graph",             # non-rigid
    "fxd_via_fixing_graph",             # non-rigid
    "neighborhood_iff_fixing",          # non-rigid, n <= oracle cap
    "pair_count_bounds",                # non-rigid
    "k_fixed_dichotomy",                # k-fixed
    "k_fixed_edge_bounds",              # k-fixed
    "pair_degree_floor",                # k-fixed
    "dt_vertex_transitive",             # distance-transitive
    "dt_full_support",                  # distance-transitive
    "dt_edge_identity",                 # distance-transitive
    "dt_degree_formula",                # distance-transitive
    "dt_diameter_bound",                # distance-transitive, k-fixed
    "dt_dichotomy",                     # distance-transitive, k-fixed
    "dt_edge_bounds",                   # distance-transitive, k-fixed
    "dt_class_sum_bounds",              # distance-transitive, k-fixed
)


# --------------------------------------------------------------------------
# catalogs

def _pair_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def _code_to_graph(n: int, code: int, pairs: list[tuple[int, int]]) -> Graph:
    m = len(pairs)
    return Graph.from_edges(n, (pairs[k] for k in range(m) if code >> (m - 1 - k) & 1))


def enumerate_graphs(n: int, connected_only: bool = True, max_n: int = ENUMERATION_MAX_N) -> Iterator[Graph]:
    """One representative per isomorphism class on ``n`` vertices.

    A labelled graph is an upper-triangle bit string in graph6 order; the
    representative is the lexicographically smallest string over all ``n!``
    relabellings. Every relabelling of a new class is marked as seen, so the
    cost is ``2^C(n,2)`` lookups plus ``n!`` per class. Output is sorted by
    that string.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise CapExceeded(f"internal enumeration is capped at n={max_n}; ingest a graph6 file instead")
    pairs = _pair_positions(n)
    m = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    bit_maps = []
    for perm in permutations(range(n)):
        bit_maps.append([
            1 << (m - 1 - index[tuple(sorted((perm[i], perm[j])))])
            for i, j in pairs
        ])
    seen: set[int] = set()
    reps = []
    for code in range(1 << m):
        if code in seen:
            continue
        g = _code_to_graph(n, code, pairs)
        if connected_only and not g.is_connected():
            continue
        bits = [k for k in range(m) if code >> (m - 1 - k) & 1]
        images = set()
        for bm in bit_maps:
            img = 0
            for k in bits:
                img |= bm[k]
            images.add(img)
        seen |= images
        reps.append(min(images))
    for code in sorted(reps):
        yield _code_to_graph(n, code, pairs)


def enumerate_connected_graphs(n: int, max_n: int = ENUMERATION_MAX_N) -> Iterator[Graph]:
    return enumerate_graphs(n, connected_only=True, max_n=max_n)


def ingest_graph6_file(
    path: str | Path, diagnostics: list[tuple[int, str]] | None = None
) -> Iterator[Graph]:
    """Stream graphs from a one-graph6-per-line file.

    Malformed lines are logged and appended to ``diagnostics`` as
    ``(line_number, message)``; reading continues. Blank lines are ignored.
    """
    with open(path, encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                g = parse_graph6(text)
            except Graph6Error as exc:
                log.warning("%s:%d: %s", path, lineno, exc)
                if diagnostics is not None:
                    diagnostics.append((lineno, str(exc)))
                continue
            yield g


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# --------------------------------------------------------------------------
# per-graph checks

@dataclass(frozen=True)
class Limits:
    aut_cap: int = DEFAULT_AUT_CAP
    subset_max_n: int = DEFAULT_SUBSET_MAX_N
    oracle_max_n: int = 6


def _details(**values: Any) -> str:
    return json.dumps(values, sort_keys=True, separators=(",", ":"), default=str)


def check_graph(g: Graph, limits: Limits = Limits()) -> list[tuple[str, str, str, str]]:
    """Run every check on one graph: rows ``(graph6, check, verdict, details)``."""
    g6 = encode_graph6(g)
    results: dict[str, tuple[str, str]] = {}

    def record(name: str, ok: bool, **values: Any) -> None:
        results[name] = ("pass" if ok else "fail", _details(**values))

    def skip_rest(reason: str) -> None:
        for name in CHECKS:
            results.setdefault(name, ("skip", reason))

    if not g.is_connected():
        skip_rest("disconnected")
        return [(g6, c, *results[c]) for c in CHECKS]
    try:
        _run_checks(g, limits, record, results)
    except CapExceeded as exc:
        skip_rest(f"cap exceeded: {exc}")
    skip_rest("n/a")
    return [(g6, c, *results[c]) for c in CHECKS]


def _run_checks(g: Graph, limits: Limits, record, results) -> None:
    n = g.n
    group = automorphism_group(g)

    orbit_ok = all(
        group.order == len(group.orbit(v)) * group.pointwise_stabilizer({v}).order for v in range(n)
    )
    record("orbit_stabilizer", orbit_ok, order=group.order)

    brute = None
    if n <= limits.oracle_max_n:
        brute = oracles.automorphisms_by_filter(g)
        record("aut_order_brute_force", len(brute) == group.order, order=group.order, brute=len(brute))
    else:
        results["aut_order_brute_force"] = ("skip", "n above oracle cap")

    report = analyze(g, group=group, beta=n <= limits.subset_max_n, aut_cap=limits.aut_cap,
                     subset_max_n=limits.subset_max_n)
    if report.beta is not None:
        record("fix_le_metric_dimension", report.fix <= report.beta, fix=report.fix, beta=report.beta)
    else:
        results["fix_le_metric_dimension"] = ("skip", "n above subset cap")

    if group.is_trivial():
        for name in CHECKS:
            results.setdefault(name, ("skip", "rigid"))
        return

    fix, fxd, k = report.fix, report.fxd, report.k_fixed
    witness_ok = (
        len(report.fix_witness) == fix
        and is_fixing_set(group, report.fix_witness)
        and report.nonfixing_witness is not None
        and len(report.nonfixing_witness) == fxd - 1
        and not is_fixing_set(group, report.nonfixing_witness)
    )
    record("fix_fxd_chain", 1 <= fix <= fxd <= n - 1 and witness_ok, fix=fix, fxd=fxd, n=n)

    if brute is not None:
        sweep = oracles.fixed_number_by_subsets(g, brute)
        record("fxd_matches_subset_sweep", sweep == fxd, fxd=fxd, sweep=sweep)
    else:
        results["fxd_matches_subset_sweep"] = ("skip", "n above oracle cap")

    twins = sorted(twin_pairs(g))
    record("twins_iff_fxd_n_minus_1", bool(twins) == (fxd == n - 1), twins=len(twins), fxd=fxd, n=n)

    if twins and n <= limits.subset_max_n:
        misses = []
        for mask in range(1 << n):
            subset = [v for v in range(n) if mask >> v & 1]
            if is_fixing_set(group, subset):
                misses.extend([u, v] for u, v in twins if not (mask >> u & 1 or mask >> v & 1))
            if misses:
                break
        record("twins_meet_every_fixing_set", not misses, twins=twins, missed=misses[:1])
    else:
        results["twins_meet_every_fixing_set"] = ("skip", "no twins" if not twins else "n above subset cap")

    fixed = fixed_vertices(group)
    if fxd == 1:
        ok = all(len(b) == group.order for b in group.orbits()) and not fixed
        record("fxd_one_free_action", ok, orbits=[len(b) for b in group.orbits()], order=group.order)
    else:
        results["fxd_one_free_action"] = ("skip", "fxd != 1")

    _, maximizers = max_fixed_point_elements(group, limits.aut_cap)
    bad = [list(fp) for fp, _ in maximizers if not fixed <= set(fp)]
    record("largest_nonfixing_has_fixed", not bad, fixed=sorted(fixed), offending=bad[:1])

    if k == n - 1 and twins:
        record("n_minus_1_fixed_with_twins_complete", g.is_complete(), k=k)
    else:
        results["n_minus_1_fixed_with_twins_complete"] = ("skip", "not (n-1)-fixed with twins")

    if k is not None and n <= limits.subset_max_n:
        alpha = fixing_polynomial(g, group, limits.subset_max_n, limits.aut_cap)
        expected = [comb(n, i) if i >= k else 0 for i in range(n + 1)]
        record("k_fixed_polynomial", alpha == expected, k=k, alpha=alpha)
    else:
        results["k_fixed_polynomial"] = ("skip", "not k-fixed" if k is None else "n above subset cap")

    D = build_fixing_graph(g, group)
    fix_d, _ = fix_via_fixing_graph(D)
    record("fix_via_fixing_graph", fix_d == fix, fix=fix, via_fixing_graph=fix_d)
    t, fxd_d = t_parameter_and_fxd(D)
    record("fxd_via_fixing_graph", fxd_d == fxd, fxd=fxd, t=t, fixed=n - D.r, via_fixing_graph=fxd_d)

    if n <= limits.oracle_max_n:
        bad_sets = []
        full = frozenset(D.right)
        for size in range(D.r + 1):
            for F in combinations(D.left, size):
                if (neighborhood(D, F) == full) != is_fixing_set(group, F):
                    bad_sets.append(list(F))
        record("neighborhood_iff_fixing", not bad_sets, offending=bad_sets[:1])
    else:
        results["neighborhood_iff_fixing"] = ("skip", "n above oracle cap")

    record("pair_count_bounds", D.r <= 2 * D.s and D.s <= comb(D.r, 2), r=D.r, s=D.s)

    if k is not None:
        record("k_fixed_dichotomy", bool(dichotomy_check(D, report)), k=k, r=D.r)
        eb = edge_bounds_check(D, report)
        record("k_fixed_edge_bounds", eb.passed, **eb.to_json())
        record("pair_degree_floor", eb.pair_degree_ok, k=k, r=D.r, min_pair_degree=eb.min_pair_degree)
    else:
        for name in ("k_fixed_dichotomy", "k_fixed_edge_bounds", "pair_degree_floor"):
            results[name] = ("skip", "not k-fixed")

    if not is_distance_transitive(g, group):
        for name in CHECKS:
            if name.startswith("dt_"):
                results[name] = ("skip", "not distance-transitive")
        return
    record("dt_vertex_transitive", is_vertex_transitive(g, group))
    record("dt_full_support", D.r == n and D.s == comb(n, 2), r=D.r, s=D.s, n=n)
    bounds = dt_bound_check(g, D, report)
    record("dt_edge_identity", bounds.identity_ok, edges=bounds.edges, identity=bounds.identity_value)
    deg = dt_degree_formula_check(g, D)
    record("dt_degree_formula", deg.passed, degrees=sorted(set(deg.degrees.values())),
           formula=sorted(set(deg.formula.values())), mismatched=len(deg.mismatched_pairs))
    clause_names = {
        "dt_diameter_bound": "diameter_bound",
        "dt_dichotomy": "dichotomy",
        "dt_edge_bounds": "edge_bounds",
        "dt_class_sum_bounds": "class_sum_bounds",
    }
    for name, clause in clause_names.items():
        if clause in bounds.clauses:
            c = bounds.clauses[clause]
            record(name, c["pass"], **c)
        else:
            results[name] = ("skip", "not k-fixed")


# --------------------------------------------------------------------------
# aggregation

@dataclass
class CheckCounter:
    checked: int = 0
    passed: int = 0
    skipped: Counter = field(default_factory=Counter)

    def to_json(self) -> dict[str, Any]:
        return {"checked": self.checked, "passed": self.passed, "skipped": dict(sorted(self.skipped.items()))}


@dataclass
class SurveyReport:
    provenance: dict[str, Any]
    counters: dict[str, CheckCounter]
    counterexamples: list[dict[str, str]]
    rows: list[tuple[str, str, str, str]]
    graphs: int = 0
    diagnostics: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def failures(self, check: str) -> list[dict[str, str]]:
        return [c for c in self.counterexamples if c["check"] == check]

    def to_json(self) -> dict[str, Any]:
        return {
            "provenance": self.provenance,
            "graphs": self.graphs,
            "checks": {name: self.counters[name].to_json() for name in CHECKS},
            "counterexamples": self.counterexamples,
            "diagnostics": [list(d) for d in self.diagnostics],
            "ok": self.ok,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["graph6", "check", "verdict", "details"])
        writer.writerows(self.rows)
        return buf.getvalue()


def _check_star(args: tuple[Graph, Limits]) -> list[tuple[str, str, str, str]]:
    return check_graph(*args)


def verify_all(
    catalog: Iterable[Graph],
    *,
    limits: Limits = Limits(),
    provenance: dict[str, Any] | None = None,
    workers: int = 1,
) -> SurveyReport:
    """Run every check over a catalog.

    Rows and counterexamples are sorted by graph6 string, so the result is
    independent of catalog order and of ``workers``.
    """
    graphs = list(catalog)
    if workers > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_graph = list(pool.map(_check_star, [(g, limits) for g in graphs], chunksize=8))
    else:
        per_graph = [check_graph(g, limits) for g in graphs]
    order = {name: i for i, name in enumerate(CHECKS)}
    rows = sorted((r for rs in per_graph for r in rs), key=lambda r: (r[0], order[r[1]]))
    counters = {name: CheckCounter() for name in CHECKS}
    counterexamples = []
    for g6, check, verdict, details in rows:
        c = counters[check]
        if verdict == "skip":
            c.skipped[details] += 1
            continue
        c.checked += 1
        if verdict == "pass":
            c.passed += 1
        else:
            counterexamples.append({"graph6": g6, "check": check, "details": details})
    return SurveyReport(
        provenance=provenance or {"source": "in-memory"},
        counters=counters,
        counterexamples=counterexamples,
        rows=rows,
        graphs=len(graphs),
    )


def survey_enumerated(
    max_n: int = ENUMERATION_MAX_N,
    *,
    connected_only: bool = True,
    allow_large: bool = False,
    limits: Limits = Limits(),
    workers: int = 1,
) -> SurveyReport:
    cap = ENUMERATION_HARD_MAX_N if allow_large else ENUMERATION_MAX_N
    catalog = [g for n in range(1, max_n + 1) for g in enumerate_graphs(n, connected_only, cap)]
    provenance = {"source": "enumeration", "max_n": max_n, "connected_only": connected_only}
    return verify_all(catalog, limits=limits, provenance=provenance, workers=workers)


def survey_file(path: str | Path, *, limits: Limits = Limits(), workers: int = 1) -> SurveyReport:
    diagnostics: list[tuple[int, str]] = []
    catalog = list(ingest_graph6_file(path, diagnostics))
    provenance = {"source": "file", "path": str(path), "sha256": file_digest(path)}
    report = verify_all(catalog, limits=limits, provenance=provenance, workers=workers)
    report.diagnostics = diagnostics
    return report

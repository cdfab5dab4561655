"""Fixing sets, fixing number, fixed number, fixing polynomial, metric dimension."""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Sequence

from .graph import INF, DisconnectedGraphError, Graph, distances
from .permgroup import DEFAULT_AUT_CAP, AutGroup, CapExceeded, Permutation, automorphism_group

DEFAULT_SUBSET_MAX_N = 20

_support_cache: "weakref.WeakKeyDictionary[AutGroup, list[int]]" = weakref.WeakKeyDictionary()


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _unmask(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def minimal_supports(group: AutGroup, cap: int = DEFAULT_AUT_CAP) -> list[int]:
    """Inclusion-minimal support bitmasks over all non-identity elements.

    A vertex set is fixing exactly when it meets every one of them.
    """
    cached = _support_cache.get(group)
    if cached is not None:
        return cached
    masks = set()
    for h in group.elements(cap):
        if not h.is_identity():
            masks.add(_mask(h.support()))
    minimal = []
    for m in sorted(masks, key=lambda x: (x.bit_count(), x)):
        if not any(m & s == s for s in minimal):
            minimal.append(m)
    _support_cache[group] = minimal
    return minimal


def is_fixing_set(group: AutGroup, vertices: Iterable[int]) -> bool:
    return group.pointwise_stabilizer(vertices).order == 1


def _fixing_test(group: AutGroup, cap: int):
    try:
        supports = minimal_supports(group, cap)
    except CapExceeded:
        return lambda mask: is_fixing_set(group, _unmask(mask))
    return lambda mask: all(mask & s for s in supports)


def fixed_vertices(group: AutGroup) -> frozenset[int]:
    return frozenset(v for block in group.orbits() if len(block) == 1 for v in block)


def similar_vertices(group: AutGroup) -> tuple[int, ...]:
    """Vertices whose orbit has at least two elements."""
    return tuple(sorted(v for block in group.orbits() if len(block) > 1 for v in block))


def fixing_number(
    g: Graph, group: AutGroup | None = None, aut_cap: int = DEFAULT_AUT_CAP
) -> tuple[int, tuple[int, ...]]:
    """Smallest fixing set, lexicographically first among the minimum ones.

    Minimum hitting set over element supports, by increasing size. A minimum
    fixing set never uses fixed vertices, and the lexicographically first one
    starts at the smallest vertex of its orbit, so both are pruned.
    """
    group = group or automorphism_group(g)
    if group.is_trivial():
        return 0, ()
    test = _fixing_test(group, aut_cap)
    candidates = similar_vertices(group)
    orbit_mins = {min(block) for block in group.orbits()}
    for k in range(1, len(candidates) + 1):
        for combo in combinations(candidates, k):
            if combo[0] in orbit_mins and test(_mask(combo)):
                return k, combo
    raise AssertionError("the set of all non-fixed vertices is always fixing")


def max_fixed_point_elements(
    group: AutGroup, cap: int = DEFAULT_AUT_CAP
) -> tuple[int, list[tuple[tuple[int, ...], Permutation]]]:
    """Largest fixed-point set size over non-identity elements, with all maximizers.

    Maximizers are sorted by fixed-point set, then by image tuple.
    """
    best = -1
    found: list[tuple[tuple[int, ...], Permutation]] = []
    for h in group.elements(cap):
        if h.is_identity():
            continue
        fp = tuple(sorted(h.fixed_points()))
        if len(fp) > best:
            best, found = len(fp), [(fp, h)]
        elif len(fp) == best:
            found.append((fp, h))
    found.sort()
    return best, found


def fixed_number(
    g: Graph, group: AutGroup | None = None, aut_cap: int = DEFAULT_AUT_CAP
) -> tuple[int, tuple[int, ...] | None]:
    """Fixed number and a largest non-fixing set.

    A set is non-fixing iff it lies inside the fixed-point set of some
    non-identity automorphism, so the largest non-fixing sets are the largest
    such fixed-point sets and the fixed number is one more than their size.
    Rigid graphs give ``(0, None)``.
    """
    group = group or automorphism_group(g)
    if group.is_trivial():
        return 0, None
    size, found = max_fixed_point_elements(group, aut_cap)
    return size + 1, found[0][0]


def fixing_polynomial(
    g: Graph,
    group: AutGroup | None = None,
    max_n: int = DEFAULT_SUBSET_MAX_N,
    aut_cap: int = DEFAULT_AUT_CAP,
) -> list[int]:
    """Coefficients ``alpha[0..n]``; ``alpha[i]`` counts fixing ``i``-subsets.

    Masks are visited in increasing order, so every one-smaller subset has
    already been classified; a superset of a fixing set is fixing.
    """
    if g.n > max_n:
        raise CapExceeded(f"subset sweep over n={g.n} exceeds cap {max_n}")
    group = group or automorphism_group(g)
    test = _fixing_test(group, aut_cap)
    fixing = bytearray(1 << g.n)
    alpha = [0] * (g.n + 1)
    for mask in range(1 << g.n):
        ok = False
        rest = mask
        while rest:
            low = rest & -rest
            if fixing[mask ^ low]:
                ok = True
                break
            rest ^= low
        if ok or test(mask):
            fixing[mask] = 1
            alpha[mask.bit_count()] += 1
    return alpha


def format_polynomial(alpha: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in reversed(range(len(alpha))):
        a = alpha[i]
        if not a:
            continue
        coeff = "" if a == 1 and i else str(a)
        power = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        terms.append(coeff + power)
    return " + ".join(terms) or "0"


def is_k_fixed(
    g: Graph, group: AutGroup | None = None, aut_cap: int = DEFAULT_AUT_CAP
) -> int | None:
    """``k`` when fix(G) = fxd(G) = k for a graph with non-trivial symmetry."""
    group = group or automorphism_group(g)
    if group.is_trivial():
        return None
    fix, _ = fixing_number(g, group, aut_cap)
    fxd, _ = fixed_number(g, group, aut_cap)
    return fix if fix == fxd else None


def is_resolving_set(dist: Sequence[Sequence[float]], vertices: Sequence[int]) -> bool:
    vectors = {tuple(dist[w][v] for w in vertices) for v in range(len(dist))}
    return len(vectors) == len(dist)


def metric_dimension(g: Graph, max_n: int = DEFAULT_SUBSET_MAX_N) -> tuple[int, tuple[int, ...]]:
    """Smallest resolving set by increasing-size search (lexicographically first)."""
    if not g.is_connected():
        raise DisconnectedGraphError("metric dimension needs a connected graph")
    if g.n > max_n:
        raise CapExceeded(f"resolving-set search over n={g.n} exceeds cap {max_n}")
    dist = distances(g).dist
    assert all(d != INF for row in dist for d in row)
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            if is_resolving_set(dist, combo):
                return k, combo
    raise AssertionError("the full vertex set always resolves")


@dataclass(frozen=True)
class FixingReport:
    n: int
    aut_order: int
    fix: int
    fix_witness: tuple[int, ...]
    fxd: int
    nonfixing_witness: tuple[int, ...] | None
    fixed_vertices: tuple[int, ...]
    k_fixed: int | None
    polynomial: tuple[int, ...] | None = None
    beta: int | None = None
    beta_witness: tuple[int, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "aut_order": self.aut_order,
            "fix": self.fix,
            "fix_witness": list(self.fix_witness),
            "fxd": self.fxd,
            "nonfixing_witness": None if self.nonfixing_witness is None else list(self.nonfixing_witness),
            "fixed_vertices": list(self.fixed_vertices),
            "k_fixed": self.k_fixed,
            "polynomial": None if self.polynomial is None else list(self.polynomial),
            "beta": None if self.beta is None else {"value": self.beta, "witness": list(self.beta_witness or ())},
        }


def analyze(
    g: Graph,
    *,
    group: AutGroup | None = None,
    beta: bool = False,
    polynomial: bool = False,
    aut_cap: int = DEFAULT_AUT_CAP,
    subset_max_n: int = DEFAULT_SUBSET_MAX_N,
) -> FixingReport:
    group = group or automorphism_group(g)
    fix, fix_witness = fixing_number(g, group, aut_cap)
    fxd, nonfixing = fixed_number(g, group, aut_cap)
    poly = tuple(fixing_polynomial(g, group, subset_max_n, aut_cap)) if polynomial else None
    b, b_witness = metric_dimension(g, subset_max_n) if beta else (None, None)
    return FixingReport(
        n=g.n,
        aut_order=group.order,
        fix=fix,
        fix_witness=fix_witness,
        fxd=fxd,
        nonfixing_witness=nonfixing,
        fixed_vertices=tuple(sorted(fixed_vertices(group))),
        k_fixed=fix if fix == fxd and not group.is_trivial() else None,
        polynomial=poly,
        beta=b,
        beta_witness=b_witness,
    )

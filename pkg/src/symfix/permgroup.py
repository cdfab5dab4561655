"""Permutations, stabilizer chains and exact automorphism groups.

Automorphisms are found by an individualization/refinement search: colour
refinement (1-dimensional Weisfeiler-Leman) prunes, backtracking decides.
The generators found level by level, with base ``0, 1, 2, ...``, are then
handed to a deterministic Schreier-Sims routine that builds the chain used
for orders, orbits, membership and pointwise stabilizers.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Iterator, Sequence

from .graph import Graph

DEFAULT_AUT_CAP = 10**7
DEFAULT_SEARCH_MAX_N = 62


class CapExceeded(RuntimeError):
    """A configured size or enumeration cap was hit."""


class Permutation(tuple):
    """Image tuple on ``0..n-1``: ``p[v]`` is the image of ``v``.

    ``p.compose(q)`` is ``p . q``, i.e. apply ``q`` first.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> Permutation:
        t = tuple(images)
        if sorted(t) != list(range(len(t))):
            raise ValueError(f"not a permutation: {t}")
        return tuple.__new__(cls, t)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return _perm(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                img[a] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, n: int) -> Permutation:
        """Parse cycle notation such as ``"(0 1)(2 3)"`` or ``"()"``."""
        s = text.strip()
        if not re.fullmatch(r"(\s*\([\d\s,]*\)\s*)+", s):
            raise ValueError(f"bad cycle notation {text!r}")
        cycles = [[int(x) for x in body.replace(",", " ").split()] for body in re.findall(r"\(([^)]*)\)", s)]
        return cls.from_cycles(n, [c for c in cycles if c])

    @property
    def degree(self) -> int:
        return len(self)

    def compose(self, other: Sequence[int]) -> Permutation:
        return _perm([self[j] for j in other])

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return _perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self) if i == j)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self) if i != j)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self[j]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, n={len(self)})"


def _perm(images: Iterable[int]) -> Permutation:
    return tuple.__new__(Permutation, tuple(images))


def fixed_points(p: Permutation) -> frozenset[int]:
    return p.fixed_points()


def is_automorphism(g: Graph, p: Sequence[int]) -> bool:
    rows = g.rows
    for v in range(g.n):
        mapped = 0
        row = rows[v]
        while row:
            low = row & -row
            mapped |= 1 << p[low.bit_length() - 1]
            row ^= low
        if mapped != rows[p[v]]:
            return False
    return True


# --------------------------------------------------------------------------
# Schreier-Sims

def _orbit_transversal(point: int, gens: Sequence[Permutation], n: int) -> dict[int, Permutation]:
    trans = {point: Permutation.identity(n)}
    queue = [point]
    for b in queue:
        ub = trans[b]
        for s in gens:
            c = s[b]
            if c not in trans:
                trans[c] = s.compose(ub)
                queue.append(c)
    return trans


def _first_moved(p: Permutation, exclude: Sequence[int]) -> int:
    skip = set(exclude)
    return next(i for i, j in enumerate(p) if i != j and i not in skip)


class _Chain:
    def __init__(self, n: int, base: list[int], gens: list[Permutation]):
        self.n = n
        self.base = base
        self.gens = gens
        self.level_gens: list[list[Permutation]] = []
        self.trans: list[dict[int, Permutation]] = []
        for i in range(len(base)):
            self._rebuild(i)

    def _rebuild(self, i: int) -> None:
        fixed = self.base[:i]
        gens = [s for s in self.gens if all(s[b] == b for b in fixed)]
        t = _orbit_transversal(self.base[i], gens, self.n)
        if i < len(self.trans):
            self.level_gens[i] = gens
            self.trans[i] = t
        else:
            self.level_gens.append(gens)
            self.trans.append(t)

    def strip(self, h: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, len(self.base)):
            beta = h[self.base[i]]
            u = self.trans[i].get(beta)
            if u is None:
                return h, i
            h = u.inverse().compose(h)
        return h, len(self.base)


def schreier_sims(
    n: int, generators: Iterable[Permutation], base_prefix: Sequence[int] = ()
) -> _Chain:
    """Deterministic Schreier-Sims; the base starts with ``base_prefix``."""
    base = list(base_prefix)
    gens: list[Permutation] = []
    for g in generators:
        if not g.is_identity() and g not in gens:
            gens.append(g)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g, base))
    chain = _Chain(n, base, gens)
    i = len(base) - 1
    while i >= 0:
        jump = None
        for beta, u_beta in list(chain.trans[i].items()):
            for s in chain.level_gens[i]:
                u_img = chain.trans[i][s[beta]]
                schreier = u_img.inverse().compose(s.compose(u_beta))
                if schreier.is_identity():
                    continue
                h, j = chain.strip(schreier, i + 1)
                if j < len(chain.base) or not h.is_identity():
                    if j == len(chain.base):
                        chain.base.append(_first_moved(h, chain.base))
                    chain.gens.append(h)
                    for level in range(i + 1, j + 1):
                        chain._rebuild(level)
                    jump = j
                    break
            if jump is not None:
                break
        if jump is None:
            i -= 1
        else:
            i = jump
    return chain


# --------------------------------------------------------------------------
# groups

class AutGroup:
    """A permutation group on ``0..n-1`` held as a stabilizer chain.

    Treat instances as immutable; pointwise stabilizers are cached.
    """

    def __init__(
        self,
        n: int,
        generators: Iterable[Permutation],
        base_prefix: Sequence[int] | None = None,
    ):
        gens = [g for g in generators if not g.is_identity()]
        prefix = list(range(n)) if base_prefix is None else list(base_prefix)
        chain = schreier_sims(n, gens, prefix)
        self._init(n, tuple(dict.fromkeys(gens)), chain, 0)

    @classmethod
    def trivial(cls, n: int) -> AutGroup:
        return cls(n, [])

    def _init(self, n: int, generators: tuple[Permutation, ...], chain: _Chain, depth: int) -> None:
        self.n = n
        self.generators = generators
        self._chain = chain
        self._depth = depth
        self._stab_cache: dict[frozenset[int], AutGroup] = {}
        self._orbits: list[frozenset[int]] | None = None
        order = 1
        for t in chain.trans[depth:]:
            order *= len(t)
        self.order = order

    @property
    def base(self) -> list[int]:
        return self._chain.base[self._depth:]

    @property
    def strong_generators(self) -> list[Permutation]:
        if self._depth < len(self._chain.base):
            return list(self._chain.level_gens[self._depth])
        return []

    def fundamental_orbit_sizes(self) -> list[int]:
        return [len(t) for t in self._chain.trans[self._depth:]]

    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, p: Sequence[int]) -> bool:
        fixed = self._chain.base[:self._depth]
        if any(p[b] != b for b in fixed):
            return False
        h, j = self._chain.strip(_perm(p), self._depth)
        return j == len(self._chain.base) and h.is_identity()

    def orbit(self, v: int) -> frozenset[int]:
        for block in self.orbits():
            if v in block:
                return block
        raise IndexError(v)

    def orbits(self) -> list[frozenset[int]]:
        """Orbit partition, blocks sorted by smallest element."""
        if self._orbits is None:
            parent = list(range(self.n))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for g in self.strong_generators or self.generators:
                for v, w in enumerate(g):
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
            blocks: dict[int, set[int]] = {}
            for v in range(self.n):
                blocks.setdefault(find(v), set()).add(v)
            self._orbits = [frozenset(b) for _, b in sorted(blocks.items())]
        return self._orbits

    def pointwise_stabilizer(self, points: Iterable[int]) -> AutGroup:
        """Subgroup fixing every point of ``points``, via a change of base."""
        pts = frozenset(points)
        cached = self._stab_cache.get(pts)
        if cached is not None:
            return cached
        if not pts or self.is_trivial():
            result = self
        else:
            prefix = self._chain.base[:self._depth] + sorted(pts - set(self._chain.base[:self._depth]))
            rest = [v for v in range(self.n) if v not in set(prefix)]
            chain = schreier_sims(self.n, self.strong_generators, prefix + rest)
            depth = len(prefix)
            result = AutGroup.__new__(AutGroup)
            gens = tuple(chain.level_gens[depth]) if depth < len(chain.base) else ()
            result._init(self.n, gens, chain, depth)
        self._stab_cache[pts] = result
        return result

    def elements(self, cap: int = DEFAULT_AUT_CAP) -> Iterator[Permutation]:
        """Every group element exactly once, by walking the transversals."""
        if self.order > cap:
            raise CapExceeded(f"group order {self.order} exceeds enumeration cap {cap}")
        levels = [list(t.values()) for t in self._chain.trans[self._depth:] if len(t) > 1]

        def walk(i: int, prefix: Permutation) -> Iterator[Permutation]:
            if i == len(levels):
                yield prefix
                return
            for u in levels[i]:
                yield from walk(i + 1, prefix.compose(u))

        return walk(0, Permutation.identity(self.n))

    def __repr__(self) -> str:
        return f"AutGroup(n={self.n}, order={self.order}, gens=[{', '.join(map(str, self.generators))}])"


# --------------------------------------------------------------------------
# automorphism search

class _Refiner:
    def __init__(self, g: Graph):
        self.n = g.n
        self.nbrs = [g.neighbors(v) for v in range(g.n)]

    def refine(self, colors: list[int]) -> tuple[list[int], tuple]:
        """Iterate colour refinement to a stable colouring.

        Returns canonical colour ids plus a trace that is equal for two
        colourings whenever some isomorphism maps one onto the other.
        """
        trace = []
        ncolors = len(set(colors))
        while True:
            sigs = [
                (colors[v], tuple(sorted(Counter(colors[u] for u in self.nbrs[v]).items())))
                for v in range(self.n)
            ]
            counts = sorted(Counter(sigs).items())
            index = {sig: i for i, (sig, _) in enumerate(counts)}
            trace.append(tuple(counts))
            colors = [index[s] for s in sigs]
            if len(counts) == ncolors:
                return colors, tuple(trace)
            ncolors = len(counts)


def _individualize(colors: list[int], v: int) -> list[int]:
    out = list(colors)
    out[v] = -1
    return out


class AutomorphismSearch:
    """Backtracking search for automorphisms with prescribed images."""

    def __init__(self, g: Graph):
        self.g = g
        self.refiner = _Refiner(g)
        self.root, self.root_trace = self.refiner.refine([0] * g.n)

    def extend(self, prescribed: Sequence[tuple[int, int]]) -> Permutation | None:
        """An automorphism mapping ``a -> b`` for each prescribed pair, or None."""
        left, right = self.root, self.root
        for a, b in prescribed:
            if left[a] != right[b]:
                return None
            left, lt = self.refiner.refine(_individualize(left, a))
            right, rt = self.refiner.refine(_individualize(right, b))
            if lt != rt:
                return None
        return self._search(left, right)

    def _search(self, left: list[int], right: list[int]) -> Permutation | None:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(left):
            cells.setdefault(c, []).append(v)
        open_cells = [cell for cell in cells.values() if len(cell) > 1]
        if not open_cells:
            where = {c: v for v, c in enumerate(right)}
            sigma = _perm(where[left[v]] for v in range(self.g.n))
            return sigma if is_automorphism(self.g, sigma) else None
        target = min(open_cells, key=lambda cell: (len(cell), cell[0]))
        v = target[0]
        color = left[v]
        left2, lt = self.refiner.refine(_individualize(left, v))
        for w in (u for u, c in enumerate(right) if c == color):
            right2, rt = self.refiner.refine(_individualize(right, w))
            if rt != lt:
                continue
            found = self._search(left2, right2)
            if found is not None:
                return found
        return None


def automorphism_group(g: Graph, max_n: int = DEFAULT_SEARCH_MAX_N) -> AutGroup:
    """Exact automorphism group of ``g``.

    For base points ``i = n-1, ..., 0`` the orbit of ``i`` under the
    stabilizer of ``0..i-1`` is completed: every candidate image not already
    reached by known generators is tested by one search, and each success
    becomes a new generator.
    """
    if g.n > max_n:
        raise CapExceeded(f"n={g.n} exceeds automorphism search cap {max_n}")
    search = AutomorphismSearch(g)
    gens: list[Permutation] = []
    colors_at = [search.root]
    cur = search.root
    for i in range(g.n - 1):
        cur, _ = search.refiner.refine(_individualize(cur, i))
        colors_at.append(cur)
    for i in reversed(range(g.n)):
        colors = colors_at[i]
        if colors.count(colors[i]) == 1:
            continue
        level = [s for s in gens if all(s[b] == b for b in range(i))]
        orbit = set(_orbit_transversal(i, level, g.n))
        for c in range(i + 1, g.n):
            if c in orbit or colors[c] != colors[i]:
                continue
            sigma = search.extend([(b, b) for b in range(i)] + [(i, c)])
            if sigma is not None:
                gens.append(sigma)
                level.append(sigma)
                orbit = set(_orbit_transversal(i, level, g.n))
    return AutGroup(g.n, gens)


def orbits(group: AutGroup) -> list[frozenset[int]]:
    return group.orbits()


def pointwise_stabilizer(group: AutGroup, points: Iterable[int]) -> AutGroup:
    return group.pointwise_stabilizer(points)


def elements(group: AutGroup, cap: int = DEFAULT_AUT_CAP) -> list[Permutation]:
    return list(group.elements(cap))

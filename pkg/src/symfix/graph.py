"""Simple undirected graphs, graph6 I/O, named families and metric helpers.

Vertices are always ``0..n-1``. Adjacency is stored as one integer bitmask
per vertex, so neighbourhood comparisons and set operations are cheap.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 62

INF = math.inf


class Graph6Error(ValueError):
    """Raised for malformed graph6 input."""


class DisconnectedGraphError(ValueError):
    """Raised by operations that only make sense on connected graphs."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on ``0..n-1``.

    ``rows[v]`` is the bitmask of neighbours of ``v``.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool | int]]) -> Graph:
        rows = []
        for row in matrix:
            mask = 0
            for j, bit in enumerate(row):
                if bit:
                    mask |= 1 << j
            rows.append(mask)
        return cls(len(rows), tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def max_degree(self) -> int:
        return max(self.degrees())

    def min_degree(self) -> int:
        return min(self.degrees())

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency_matrix(self) -> list[list[bool]]:
        return [[bool(self.rows[u] >> v & 1) for v in range(self.n)] for u in range(self.n)]

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            reach = 0
            for v in _bits(frontier):
                reach |= self.rows[v]
            frontier = reach & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose edge ``perm[u] perm[v]`` exists iff ``uv`` is an edge."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def with_new_vertex(self, neighbors: Iterable[int]) -> Graph:
        """Append vertex ``n`` joined to ``neighbors``."""
        x = self.n
        return Graph.from_edges(x + 1, self.edges() + [(v, x) for v in neighbors])

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def __str__(self) -> str:
        return encode_graph6(self) if self.n <= GRAPH6_MAX_N else f"Graph(n={self.n})"


# --------------------------------------------------------------------------
# graph6

def _upper_triangle_pairs(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def strip_graph6_header(text: str) -> str:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    return s


def parse_graph6(text: str, max_n: int = GRAPH6_MAX_N) -> Graph:
    """Decode one graph6 line (single-byte size field only)."""
    s = strip_graph6_header(text)
    if not s:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) for c in s]
    for pos, c in enumerate(codes):
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {s[pos]!r} at offset {pos} outside 63..126")
    n = codes[0] - 63
    if n > GRAPH6_MAX_N:
        raise Graph6Error("multi-byte size fields are not supported (n > 62)")
    if n < 1:
        raise Graph6Error("graph6 encodes zero vertices")
    if n > max_n:
        raise Graph6Error(f"n={n} exceeds configured cap {max_n}")
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    body = codes[1:]
    if len(body) != nchars:
        raise Graph6Error(f"expected {nchars} data bytes for n={n}, got {len(body)}")
    bits = []
    for c in body:
        chunk = c - 63
        bits.extend((chunk >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = [pair for pair, bit in zip(_upper_triangle_pairs(n), bits) if bit]
    return Graph.from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode ``g`` with its given labelling (not a canonical form)."""
    if g.n > GRAPH6_MAX_N:
        raise Graph6Error(f"n={g.n} needs a multi-byte size field, unsupported")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _upper_triangle_pairs(g.n)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = chunk << 1 | b
        out.append(chr(chunk + 63))
    return "".join(out)


# --------------------------------------------------------------------------
# named families
#
# Numbering:
#   path(n)      0-1-...-(n-1)
#   cycle(n)     path plus edge (n-1, 0)
#   star(k)      centre 0, leaves 1..k
#   complete_bipartite(a, b)   parts 0..a-1 and a..a+b-1
#   petersen     outer 5-cycle 0..4, spokes i-(i+5), inner pentagram on 5..9
#   johnson(m,k) k-subsets of {1..m} in lexicographic order

def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def star_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("star needs at least one leaf")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both parts must be non-empty")
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return Graph.from_edges(10, edges)


def johnson_graph(m: int, k: int) -> Graph:
    if m < 1 or not 1 <= k <= m:
        raise ValueError(f"johnson({m},{k}) needs 1 <= k <= m")
    subsets = [frozenset(c) for c in combinations(range(1, m + 1), k)]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if len(subsets[i] & subsets[j]) == k - 1
    ]
    return Graph.from_edges(len(subsets), edges)


FAMILIES = {
    "path": (path_graph, ("n",)),
    "cycle": (cycle_graph, ("n",)),
    "complete": (complete_graph, ("n",)),
    "star": (star_graph, ("k",)),
    "complete_bipartite": (complete_bipartite_graph, ("a", "b")),
    "petersen": (petersen_graph, ()),
    "johnson": (johnson_graph, ("m", "k")),
}


def generate_family(name: str, **params: int) -> Graph:
    """Build a named graph, e.g. ``generate_family("johnson", m=5, k=2)``."""
    try:
        builder, names = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise ValueError(f"{name} takes parameters {list(names)}, got {sorted(params)}")
    return builder(*(int(params[p]) for p in names))


def parse_family_params(text: str) -> dict[str, int]:
    """Parse ``"m=5,k=2"`` into ``{"m": 5, "k": 2}``."""
    params: dict[str, int] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        params[key.strip()] = int(value)
    return params


# --------------------------------------------------------------------------
# metric primitives

@dataclass(frozen=True)
class DistanceTable:
    dist: tuple[tuple[float, ...], ...]
    ecc: tuple[float, ...]
    diam: float


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in _bits(g.rows[v]):
            if dist[u] == INF:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def distances(g: Graph) -> DistanceTable:
    """All-pairs hop distances; unreachable pairs are ``INF``."""
    dist = tuple(tuple(bfs_distances(g, v)) for v in range(g.n))
    ecc = tuple(max(row) for row in dist)
    return DistanceTable(dist, ecc, max(ecc))


@dataclass(frozen=True)
class DistanceClasses:
    """Vertices grouped by distance from ``base``; ``classes[i-1]`` holds distance ``i``."""

    base: int
    classes: tuple[frozenset[int], ...]

    @property
    def eccentricity(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def quotient_remainder(self) -> tuple[int, int]:
        """``divmod(n - 1, e(v))``, the balanced split of the non-base vertices."""
        return divmod(sum(self.sizes()), self.eccentricity)


def distance_classes(g: Graph, v: int) -> DistanceClasses:
    dist = bfs_distances(g, v)
    if INF in dist:
        raise DisconnectedGraphError("distance classes need a connected graph")
    ecc = int(max(dist))
    classes = [set() for _ in range(ecc)]
    for u, d in enumerate(dist):
        if d > 0:
            classes[int(d) - 1].add(u)
    return DistanceClasses(v, tuple(frozenset(c) for c in classes))


def twin_pairs(g: Graph) -> set[tuple[int, int]]:
    """Pairs ``(u, v)``, ``u < v``, with ``N(u) - {v} == N(v) - {u}``."""
    out = set()
    for u, v in combinations(range(g.n), 2):
        if g.rows[u] & ~(1 << v) == g.rows[v] & ~(1 << u):
            out.add((u, v))
    return out

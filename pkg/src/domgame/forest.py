"""Graphs and forests: parsing, generators and structural queries.

Vertices are the integers ``0..n-1`` and edges are unordered pairs stored
as ``(min, max)`` tuples.  :class:`Graph` is any simple undirected graph;
:class:`Forest` additionally guarantees acyclicity.  All generators are
deterministic for a fixed seed, and vertex ids are never relabeled after
construction so that game traces can cite them.

Edge-list file format: the first significant line holds ``n``; every
further non-empty line holds one edge ``u v``; lines whose first
non-blank character is ``#`` are comments.
"""

from __future__ import annotations

import heapq
import random
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import (
    CycleDetected,
    DuplicateEdge,
    InfeasibleShape,
    IsolatedVertexWarning,
    LimitExceeded,
    MalformedLine,
    VertexOutOfRange,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise VertexOutOfRange(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise CycleDetected(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Graph":
        """Build from an iterable of pairs, rejecting repeated edges."""
        seen = set()
        for u, v in pairs:
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge ({u}, {v}) listed twice")
            seen.add(key)
        return cls(n, frozenset(seen))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def open_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.open_masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.adjacency[v])

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = [start]
            while queue:
                u = queue.pop()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    def is_acyclic(self) -> bool:
        return len(self.edges) + len(self.components) == self.n

    def distances_from(self, source: int) -> dict[int, int]:
        """BFS distances within the source's component."""
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


@dataclass(frozen=True)
class Forest(Graph):
    """A simple acyclic graph; the game board."""

    def __post_init__(self):
        super().__post_init__()
        # union-find: joining two already-connected vertices closes a cycle
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CycleDetected(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv


@dataclass(frozen=True)
class VertexClass:
    """Partition of vertices into leaves, stems and the rest.

    In a two-vertex component both endpoints are simultaneously a leaf
    and a stem; both flags are recorded.
    """

    leaves: frozenset[int]
    stems: frozenset[int]
    internal: frozenset[int]


def classify_vertices(graph: Graph) -> VertexClass:
    """Leaves are degree-1 vertices; stems have at least one leaf neighbor."""
    leaves = frozenset(v for v in range(graph.n) if graph.degree(v) == 1)
    stems = frozenset(
        v for v in range(graph.n) if any(u in leaves for u in graph.adjacency[v])
    )
    internal = frozenset(range(graph.n)) - leaves - stems
    return VertexClass(leaves=leaves, stems=stems, internal=internal)


def leaf_pair_at_distance(graph: Graph, d: int) -> bool:
    """True iff two distinct leaves lie at graph distance exactly ``d``.

    Pairs in different components have no distance and never match.
    """
    if d <= 0:
        return False
    leaves = [v for v in range(graph.n) if graph.degree(v) == 1]
    leaf_set = set(leaves)
    for v in leaves:
        dist = graph.distances_from(v)
        for u, du in dist.items():
            if du == d and u != v and u in leaf_set:
                return True
    return False


# ---------------------------------------------------------------------------
# parsing and serialization


def parse_edge_list(text: str, *, allow_cycles: bool = False) -> Graph:
    """Parse the edge-list format into a :class:`Forest`.

    With ``allow_cycles`` a cyclic input is returned as a plain
    :class:`Graph` instead of raising :class:`CycleDetected`.  Isolated
    vertices are legal here but trigger an :class:`IsolatedVertexWarning`
    because the game itself rejects them.
    """
    n: int | None = None
    pairs: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise MalformedLine(f"line {lineno}: expected a vertex count, got {raw!r}")
            try:
                n = int(tokens[0])
            except ValueError:
                raise MalformedLine(f"line {lineno}: vertex count is not an integer") from None
            if n < 0:
                raise MalformedLine(f"line {lineno}: vertex count must be non-negative")
            continue
        if len(tokens) != 2:
            raise MalformedLine(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: vertex ids must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"line {lineno}: edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise CycleDetected(f"line {lineno}: self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: edge ({u}, {v}) listed twice")
        seen.add(key)
        pairs.append(key)
    if n is None:
        raise MalformedLine("input contains no vertex count line")
    try:
        graph: Graph = Forest(n, frozenset(pairs))
    except CycleDetected:
        if not allow_cycles:
            raise
        graph = Graph(n, frozenset(pairs))
    isolated = graph.isolated_vertices()
    if isolated:
        warnings.warn(
            IsolatedVertexWarning(f"isolated vertices present: {list(isolated)}"),
            stacklevel=2,
        )
    return graph


def serialize_edge_list(graph: Graph) -> str:
    """Inverse of :func:`parse_edge_list`; edges come out sorted."""
    lines = [str(graph.n)]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators


def _decode_tree_code(code: list[int], ids: list[int]) -> list[Edge]:
    """Turn a coding sequence over local indices into tree edges on ids."""
    k = len(ids)
    degree = [1] * k
    for x in code:
        degree[x] += 1
    leaves = [i for i in range(k) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((ids[leaf], ids[x]))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((ids[u], ids[v]))
    return edges


def _random_tree_edges(rng: random.Random, ids: list[int]) -> list[Edge]:
    k = len(ids)
    if k <= 1:
        return []
    if k == 2:
        return [(ids[0], ids[1])]
    code = [rng.randrange(k) for _ in range(k - 2)]
    return _decode_tree_code(code, ids)


def random_forest(
    n: int, components: int, seed: int, *, isolate_free: bool = True
) -> Forest:
    """A random forest with exactly ``components`` components.

    Component sizes are a random composition of ``n`` (parts of size at
    least 2 unless ``isolate_free`` is off); each part gets a uniformly
    coded random tree.  Deterministic per seed.
    """
    min_size = 2 if isolate_free else 1
    if n < 1 or components < 1 or components * min_size > n:
        raise InfeasibleShape(
            f"cannot place {components} component(s) of size >= {min_size} on {n} vertices"
        )
    rng = random.Random(seed)
    sizes = [min_size] * components
    for _ in range(n - components * min_size):
        sizes[rng.randrange(components)] += 1
    edges: list[Edge] = []
    start = 0
    for size in sizes:
        ids = list(range(start, start + size))
        edges.extend(_random_tree_edges(rng, ids))
        start += size
    return Forest(n, frozenset(edges))


def random_tree(n: int, seed: int) -> Forest:
    """A uniformly coded random tree on ``n >= 1`` vertices."""
    if n < 1:
        raise InfeasibleShape("a tree needs at least one vertex")
    if n == 1:
        return Forest(1, frozenset())
    return random_forest(n, 1, seed)


def random_caterpillar(n: int, seed: int) -> Forest:
    """A random tree whose non-leaf vertices induce a path.

    A spine path of random length is drawn first; the remaining vertices
    hang off random spine positions.  Removing all leaves from the
    result always yields a path or the empty graph.
    """
    if n < 2:
        raise InfeasibleShape("a caterpillar needs at least two vertices")
    rng = random.Random(seed)
    spine = rng.randint(1, n)
    edges = [(i, i + 1) for i in range(spine - 1)]
    for v in range(spine, n):
        edges.append((rng.randrange(spine), v))
    return Forest(n, frozenset(edges))


# ---------------------------------------------------------------------------
# exhaustive enumeration of trees up to isomorphism

ENUMERATION_LIMIT = 18


def _level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of rooted trees, largest first."""
    levels = list(range(1, n + 1))
    while True:
        yield levels
        p = n - 1
        while p >= 0 and levels[p] <= 2:
            p -= 1
        if p < 0:
            return
        q = p - 1
        while levels[q] != levels[p] - 1:
            q -= 1
        levels = levels[:p] + [levels[i - (p - q)] for i in range(p, n)]


def _edges_from_levels(levels: list[int]) -> list[Edge]:
    last_at_level: dict[int, int] = {}
    edges = []
    for i, lev in enumerate(levels):
        if lev > 1:
            edges.append((last_at_level[lev - 1], i))
        last_at_level[lev] = i
    return edges


def _centroids(n: int, adj: list[list[int]]) -> list[int]:
    """The one or two middle vertices left after peeling leaves."""
    if n == 1:
        return [0]
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            degree[v] = 0
            for u in adj[v]:
                if degree[u] > 0:
                    degree[u] -= 1
                    if degree[u] == 1:
                        nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_shape(root: int, banned: int, adj: list[list[int]]) -> str:
    """Canonical parenthesis string of the subtree at root, away from banned."""
    kids = sorted(
        _rooted_shape(u, root, adj) for u in adj[root] if u != banned
    )
    return "(" + "".join(kids) + ")"


def _free_tree_key(n: int, edges: list[Edge]) -> str:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    cents = _centroids(n, adj)
    if len(cents) == 1:
        return _rooted_shape(cents[0], -1, adj)
    a, b = cents
    return "".join(sorted((_rooted_shape(a, b, adj), _rooted_shape(b, a, adj))))


def enumerate_trees(n: int, *, limit: int = ENUMERATION_LIMIT) -> Iterator[Forest]:
    """One representative per isomorphism class of trees on ``n`` vertices.

    Rooted representatives are generated by the level-sequence successor
    walk and deduplicated by the centroid-rooted canonical form, so no
    pairwise isomorphism tests are needed.
    """
    if n < 1:
        raise InfeasibleShape("trees have at least one vertex")
    if n > limit:
        raise LimitExceeded(f"tree enumeration is capped at {limit} vertices")
    if n == 1:
        yield Forest(1, frozenset())
        return
    if n == 2:
        yield Forest(2, frozenset({(0, 1)}))
        return
    seen: set[str] = set()
    for levels in _level_sequences(n):
        edges = _edges_from_levels(levels)
        key = _free_tree_key(n, edges)
        if key in seen:
            continue
        seen.add(key)
        yield Forest(n, frozenset(edges))

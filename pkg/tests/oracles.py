"""Independent reference implementations used only to validate the package.

Everything here is deliberately written from first principles (plain
recursion, exhaustive subsets, counting recurrences, literal transition
rules) so the production code is checked against a second, unrelated
path.
"""

from __future__ import annotations

from itertools import combinations

from domgame.forest import Graph
from domgame.residual import Color, ResidualState


def naive_game_length(graph: Graph, staller_first: bool) -> int:
    """Plain unmemoized minimax over the raw move lists."""
    closed = graph.closed_masks
    full = graph.full_mask

    def rec(mask: int, staller: bool) -> int:
        if mask == full:
            return 0
        best = None
        for c in closed:
            child = mask | c
            if child == mask:
                continue
            val = rec(child, not staller)
            if best is None or (val > best if staller else val < best):
                best = val
        return 1 + best

    return rec(0, staller_first)


def brute_force_domination(graph: Graph) -> int:
    """Smallest dominating set by trying all subsets in increasing size."""
    closed = graph.closed_masks
    full = graph.full_mask
    if full == 0:
        return 0
    for k in range(1, graph.n + 1):
        for subset in combinations(range(graph.n), k):
            mask = 0
            for v in subset:
                mask |= closed[v]
            if mask == full:
                return k
    raise AssertionError("unreachable: the full vertex set dominates")


def recolor_by_rules(state: ResidualState, v: int) -> tuple[Color, ...]:
    """Literal per-move transition rules, applied incrementally.

    The played vertex turns red; every white neighbor turns blue, or red
    if nothing near it stays undominated; every blue vertex within the
    played vertex's second neighborhood that had exactly one white
    neighbor (a leaf of the pruned graph) and just lost it turns red.
    On acyclic graphs these are the only changes.
    """
    base = state.base
    colors = list(state.colors)
    dom_after = state.dominated | base.closed_masks[v]
    new = list(colors)
    new[v] = Color.RED
    for u in base.adjacency[v]:
        if colors[u] is Color.WHITE:
            undominated_left = any(
                not (dom_after >> w) & 1 for w in base.adjacency[u]
            )
            new[u] = Color.BLUE if undominated_left else Color.RED
    ball = {v, *base.adjacency[v]}
    second = set(ball)
    for u in ball:
        second.update(base.adjacency[u])
    for u in second:
        if colors[u] is Color.BLUE:
            white_neighbors = [w for w in base.adjacency[u] if colors[w] is Color.WHITE]
            if len(white_neighbors) == 1 and (dom_after >> white_neighbors[0]) & 1:
                new[u] = Color.RED
    return tuple(new)


def rooted_tree_counts(limit: int) -> list[int]:
    """Counts of rooted trees on 1..limit vertices via the divisor recurrence."""
    r = [0] * (limit + 1)
    if limit >= 1:
        r[1] = 1
    for n in range(2, limit + 1):
        total = 0
        for j in range(1, n):
            s = sum(d * r[d] for d in range(1, j + 1) if j % d == 0)
            total += s * r[n - j]
        assert total % (n - 1) == 0
        r[n] = total // (n - 1)
    return r


def free_tree_count(n: int) -> int:
    """Counts of free trees from rooted counts (dissymmetry correction)."""
    if n < 1:
        return 0
    r = rooted_tree_counts(n)
    pairs = sum(r[i] * r[n - i] for i in range(1, n))
    middle = r[n // 2] if n % 2 == 0 else 0
    return r[n] - (pairs - middle) // 2


def is_caterpillar(graph: Graph) -> bool:
    """Tree whose non-leaf vertices induce a path (or nothing)."""
    if len(graph.components) != 1 or len(graph.edges) != graph.n - 1:
        return False
    non_leaves = [v for v in range(graph.n) if graph.degree(v) >= 2]
    if not non_leaves:
        return graph.n <= 2
    keep = set(non_leaves)
    degs = {v: sum(1 for u in graph.adjacency[v] if u in keep) for v in non_leaves}
    if any(d > 2 for d in degs.values()):
        return False
    edge_count = sum(degs.values()) // 2
    if edge_count != len(non_leaves) - 1:
        return False
    # connectivity of the induced subgraph
    seen = {non_leaves[0]}
    queue = [non_leaves[0]]
    while queue:
        u = queue.pop()
        for w in graph.adjacency[u]:
            if w in keep and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(non_leaves)


def all_labeled_trees(n: int):
    """Every labeled tree on n vertices via exhaustive coding sequences."""
    from itertools import product

    from domgame.forest import Forest, _decode_tree_code

    if n == 1:
        yield Forest(1, frozenset())
        return
    if n == 2:
        yield Forest(2, frozenset({(0, 1)}))
        return
    ids = list(range(n))
    for code in product(range(n), repeat=n - 2):
        yield Forest(n, frozenset(_decode_tree_code(list(code), ids)))

"""Exact game values by memoized minimax over dominated-set bitmasks.

The remaining length of the game depends only on the dominated set and
whose turn it is, so values are cached on that pair.  Moves leading to
the same dominated set are collapsed before recursing.  Everything here
is deterministic; ties are always broken toward the lowest vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    GameOver,
    IsolatedVertexPresent,
    NotAForest,
    TooLarge,
)
from .forest import Graph
from .residual import Player, ResidualState

MAX_VERTICES = 64


def _require_solvable(graph: Graph) -> None:
    if graph.n > MAX_VERTICES:
        raise TooLarge(f"exact search is capped at {MAX_VERTICES} vertices, got {graph.n}")


@dataclass(frozen=True)
class SolveResult:
    value: int
    optimal_first_moves: tuple[int, ...]
    nodes_expanded: int


class GameSolver:
    """Caches remaining-turn counts keyed by (dominated mask, side to move)."""

    def __init__(self, graph: Graph):
        _require_solvable(graph)
        self.graph = graph
        self._closed = list(graph.closed_masks)
        self._full = graph.full_mask
        self._memo: dict[tuple[int, bool], int] = {}
        self.nodes_expanded = 0

    def remaining(self, dominated: int, to_move: Player) -> int:
        """Turns left under optimal play by both sides."""
        return self._value(dominated & self._full, to_move is Player.STALLER)

    def _value(self, mask: int, staller: bool) -> int:
        if mask == self._full:
            return 0
        key = (mask, staller)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        self.nodes_expanded += 1
        children = {mask | c for c in self._closed}
        children.discard(mask)
        if staller:
            best = max(self._value(m, False) for m in children)
        else:
            best = min(self._value(m, True) for m in children)
        result = best + 1
        self._memo[key] = result
        return result

    def best_moves(self, dominated: int, to_move: Player) -> tuple[int, tuple[int, ...]]:
        """(value, every vertex achieving it) from the given position."""
        mask = dominated & self._full
        if mask == self._full:
            raise GameOver("every vertex is already dominated")
        staller = to_move is Player.STALLER
        scored = []
        for v, c in enumerate(self._closed):
            child = mask | c
            if child == mask:
                continue
            scored.append((v, 1 + self._value(child, not staller)))
        value = max(s for _, s in scored) if staller else min(s for _, s in scored)
        return value, tuple(v for v, s in scored if s == value)


def game_dom_number(graph: Graph, first: Player) -> SolveResult:
    """Optimal game length with the given side moving first."""
    _require_solvable(graph)
    if graph.isolated_vertices():
        raise IsolatedVertexPresent(
            f"isolated vertices present: {list(graph.isolated_vertices())}"
        )
    solver = GameSolver(graph)
    value = solver.remaining(0, first)
    if value == 0:
        return SolveResult(0, (), solver.nodes_expanded)
    _, moves = solver.best_moves(0, first)
    return SolveResult(value, moves, solver.nodes_expanded)


def domination_number(graph: Graph) -> int:
    """Exact minimum size of a dominating set, by branch and bound.

    Branches on the lowest undominated vertex: some member of its closed
    neighborhood must be picked, so trying each candidate explores every
    minimal cover.
    """
    _require_solvable(graph)
    n = graph.n
    if n == 0:
        return 0
    closed = graph.closed_masks
    full = graph.full_mask

    # greedy cover gives the initial upper bound
    mask, greedy = 0, 0
    while mask != full:
        v = max(range(n), key=lambda u: (closed[u] & ~mask & full).bit_count())
        mask |= closed[v]
        greedy += 1
    best = greedy
    max_cover = max(c.bit_count() for c in closed)

    def descend(mask: int, size: int) -> None:
        nonlocal best
        if mask == full:
            best = min(best, size)
            return
        undominated = (full & ~mask).bit_count()
        if size + (undominated + max_cover - 1) // max_cover >= best:
            return
        low = (~mask & full) & -(~mask & full)
        v = low.bit_length() - 1
        candidates = sorted(
            (v, *graph.adjacency[v]),
            key=lambda u: -(closed[u] & ~mask & full).bit_count(),
        )
        for u in candidates:
            descend(mask | closed[u], size + 1)

    descend(0, 0)
    return best


def best_reply(state: ResidualState, player: Player, solver: GameSolver | None = None) -> tuple[int, int]:
    """One optimal move for ``player`` from ``state`` and the value it attains.

    Ties are broken toward the lowest vertex id.  Pass a solver to reuse
    its cache across calls on the same base graph.
    """
    if state.is_over:
        raise GameOver("no legal moves remain")
    if solver is None:
        solver = GameSolver(state.base)
    value, moves = solver.best_moves(state.dominated, player)
    return min(moves), value


def worst_case_turns(
    graph: Graph, policy, first: Player
) -> tuple[int, tuple[int, ...]]:
    """Longest possible game when one side is pinned to ``policy``.

    The policy fixes the minimizing side's moves (it must expose
    ``advance(state, phase)`` and ``choose(state, phase)`` and be
    deterministic); the maximizer branches over every legal reply.
    Values are cached on (dominated mask, policy phase, side to move).
    Returns the move count together with one maximizing line, as the
    full vertex sequence from the first move on.
    """
    _require_solvable(graph)
    if not graph.is_acyclic():
        raise NotAForest("the phased policy is defined on forests only")
    if graph.isolated_vertices():
        raise IsolatedVertexPresent(
            f"isolated vertices present: {list(graph.isolated_vertices())}"
        )
    closed = graph.closed_masks
    full = graph.full_mask
    memo: dict[tuple[int, int, bool], int] = {}

    def dominator_move(mask: int, phase) -> tuple[int, object]:
        state = ResidualState(graph, mask)
        next_phase = policy.advance(state, phase)
        return policy.choose(state, next_phase), next_phase

    def value(mask: int, phase, staller: bool) -> int:
        if mask == full:
            return 0
        key = (mask, int(phase), staller)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if staller:
            children = {mask | c for c in closed}
            children.discard(mask)
            best = max(value(m, phase, False) for m in children)
        else:
            v, next_phase = dominator_move(mask, phase)
            best = value(mask | closed[v], next_phase, True)
        result = best + 1
        memo[key] = result
        return result

    from .strategy import Phase  # deferred: strategy imports this module

    start_phase = Phase.P1
    total = value(0, start_phase, first is Player.STALLER)

    # replay, breaking maximizer ties toward the lowest vertex id
    line: list[int] = []
    mask, phase, staller = 0, start_phase, first is Player.STALLER
    while mask != full:
        if staller:
            best_v, best_val = -1, -1
            for v, c in enumerate(closed):
                child = mask | c
                if child == mask:
                    continue
                val = value(child, phase, False)
                if val > best_val:
                    best_v, best_val = v, val
            v = best_v
        else:
            v, phase = dominator_move(mask, phase)
        line.append(v)
        mask |= closed[v]
        staller = not staller
    assert len(line) == total
    return total, tuple(line)

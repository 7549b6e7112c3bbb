"""Game state over a fixed base graph: colors, point values, moves.

A vertex is *white* while undominated (worth 3 points), *blue* once it is
dominated but still has an undominated neighbor (worth 2), and *red* when
its whole closed neighborhood is dominated (worth 0).  Red vertices and
edges joining two blue vertices can no longer influence play, so the
*active* views exclude them; the base graph is retained so that history
and original ids stay available.

Colors are always recomputed from the dominated set.  The incremental
per-move transition rules (played vertex turns red, dominated whites turn
blue or red, blue leaves losing their last white neighbor turn red) are
treated as a consequence and cross-checked in the test suite rather than
implemented a second time here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    GameOver,
    IllegalMove,
    InvalidSnapshot,
    IsolatedVertexPresent,
)
from .forest import Graph, parse_edge_list, serialize_edge_list


class Player(enum.Enum):
    DOMINATOR = "dominator"
    STALLER = "staller"

    @property
    def opponent(self) -> "Player":
        return Player.STALLER if self is Player.DOMINATOR else Player.DOMINATOR


class Color(enum.Enum):
    WHITE = "W"
    BLUE = "B"
    RED = "R"

    @property
    def points(self) -> int:
        return _POINTS[self]


_POINTS = {Color.WHITE: 3, Color.BLUE: 2, Color.RED: 0}


class WhiteKind(enum.Enum):
    SINGLE = "single-white"
    PAIR = "white-pair"
    LARGER = "larger"


@dataclass(frozen=True)
class MoveOutcome:
    """Effect of one move: points seized and the color flips it caused."""

    played: int
    gain: int
    transitions: tuple[tuple[int, Color, Color], ...]
    newly_red: int


@dataclass(frozen=True)
class WhiteComponent:
    kind: WhiteKind
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class CriticalPath:
    """A white-white-blue-white-white path whose endpoints are active leaves."""

    path: tuple[int, int, int, int, int]
    center: int

    def stem_center_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Both (white stem, center) readings of the path."""
        return ((self.path[1], self.center), (self.path[3], self.center))


@dataclass(frozen=True)
class ComponentFacts:
    vertices: tuple[int, ...]
    order: int
    white: tuple[int, ...]
    blue: tuple[int, ...]
    blue_leaves: tuple[int, ...]
    max_gain: int
    is_blue_white_pair: bool
    is_bwb_path: bool


@dataclass(frozen=True)
class StructureReport:
    """Raw structural facts consumed by the verification checks."""

    components: tuple[ComponentFacts, ...]
    blue_degrees: tuple[tuple[int, int], ...]
    single_whites: tuple[int, ...]
    single_whites_with_blue_leaf: tuple[int, ...]
    white_pairs: tuple[tuple[int, int], ...]


def _potential(graph: Graph, dominated: int) -> int:
    full = graph.full_mask
    dom = dominated & full
    score = 3 * (graph.n - dom.bit_count())
    open_masks = graph.open_masks
    m = dom
    while m:
        v = (m & -m).bit_length() - 1
        if open_masks[v] & ~dom & full:
            score += 2
        m &= m - 1
    return score


def _red_count(graph: Graph, dominated: int) -> int:
    full = graph.full_mask
    dom = dominated & full
    closed = graph.closed_masks
    count = 0
    m = dom
    while m:
        v = (m & -m).bit_length() - 1
        if not (closed[v] & ~dom & full):
            count += 1
        m &= m - 1
    return count


class ResidualState:
    """Immutable game position: a base graph plus the dominated set.

    Cheap to copy and safe to share; every operation either is pure or
    returns a fresh state.
    """

    def __init__(self, base: Graph, dominated: int = 0, move_count: int = 0):
        self.base = base
        self.dominated = dominated & base.full_mask
        self.move_count = move_count

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ResidualState)
            and self.base == other.base
            and self.dominated == other.dominated
            and self.move_count == other.move_count
        )

    def __hash__(self) -> int:
        return hash((self.base, self.dominated, self.move_count))

    def __repr__(self) -> str:
        return f"ResidualState(n={self.base.n}, colors={''.join(c.value for c in self.colors)})"

    # -- colors ------------------------------------------------------------

    @cached_property
    def colors(self) -> tuple[Color, ...]:
        dom = self.dominated
        closed = self.base.closed_masks
        full = self.base.full_mask
        out = []
        for v in range(self.base.n):
            if not (dom >> v) & 1:
                out.append(Color.WHITE)
            elif closed[v] & ~dom & full:
                out.append(Color.BLUE)
            else:
                out.append(Color.RED)
        return tuple(out)

    def color_counts(self) -> dict[Color, int]:
        counts = {Color.WHITE: 0, Color.BLUE: 0, Color.RED: 0}
        for c in self.colors:
            counts[c] += 1
        return counts

    def value(self) -> int:
        """Total points on the board: 3 per white plus 2 per blue."""
        return _potential(self.base, self.dominated)

    @property
    def is_over(self) -> bool:
        return self.dominated == self.base.full_mask

    # -- moves -------------------------------------------------------------

    def legal_moves(self) -> tuple[int, ...]:
        """Vertices whose closed neighborhood still contains an undominated vertex."""
        dom = self.dominated
        full = self.base.full_mask
        closed = self.base.closed_masks
        return tuple(v for v in range(self.base.n) if closed[v] & ~dom & full)

    def is_legal(self, v: int) -> bool:
        if not 0 <= v < self.base.n:
            return False
        return bool(self.base.closed_masks[v] & ~self.dominated & self.base.full_mask)

    def gain_brief(self, v: int) -> tuple[int, int]:
        """(points gained, vertices newly red) for playing ``v``; no allocation."""
        if not self.is_legal(v):
            raise IllegalMove(f"vertex {v} dominates nothing new")
        after = self.dominated | self.base.closed_masks[v]
        gain = self.value() - _potential(self.base, after)
        newly_red = _red_count(self.base, after) - _red_count(self.base, self.dominated)
        return gain, newly_red

    def gain_of(self, v: int) -> MoveOutcome:
        """Full outcome of playing ``v`` without mutating this state."""
        if not self.is_legal(v):
            raise IllegalMove(f"vertex {v} dominates nothing new")
        after = ResidualState(self.base, self.dominated | self.base.closed_masks[v])
        before_colors = self.colors
        after_colors = after.colors
        transitions = tuple(
            (u, before_colors[u], after_colors[u])
            for u in range(self.base.n)
            if before_colors[u] is not after_colors[u]
        )
        gain = sum(b.points - a.points for _, b, a in transitions)
        newly_red = sum(1 for _, b, a in transitions if a is Color.RED)
        return MoveOutcome(played=v, gain=gain, transitions=transitions, newly_red=newly_red)

    def apply_move(self, v: int) -> tuple["ResidualState", MoveOutcome]:
        outcome = self.gain_of(v)
        new_state = ResidualState(
            self.base,
            self.dominated | self.base.closed_masks[v],
            self.move_count + 1,
        )
        return new_state, outcome

    # -- active (pruned) views ----------------------------------------------

    @cached_property
    def active_adjacency(self) -> tuple[tuple[int, ...], ...]:
        cols = self.colors
        adj: list[list[int]] = [[] for _ in range(self.base.n)]
        for u, v in self.base.edges:
            cu, cv = cols[u], cols[v]
            if cu is Color.RED or cv is Color.RED:
                continue
            if cu is Color.BLUE and cv is Color.BLUE:
                continue
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def active_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            sorted(
                (u, v)
                for u, v in self.base.edges
                if v in self.active_adjacency[u]
            )
        )

    def active_degree(self, v: int) -> int:
        return len(self.active_adjacency[v])

    @cached_property
    def active_components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the non-red vertices under active edges."""
        cols = self.colors
        seen = set()
        out = []
        for start in range(self.base.n):
            if cols[start] is Color.RED or start in seen:
                continue
            seen.add(start)
            comp = [start]
            queue = [start]
            while queue:
                u = queue.pop()
                for w in self.active_adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            out.append(tuple(sorted(comp)))
        return tuple(out)

    def white_components(self) -> tuple[WhiteComponent, ...]:
        """Components of the white-induced subgraph, classified by size."""
        cols = self.colors
        seen = set()
        out = []
        for start in range(self.base.n):
            if cols[start] is not Color.WHITE or start in seen:
                continue
            seen.add(start)
            comp = [start]
            queue = [start]
            while queue:
                u = queue.pop()
                for w in self.active_adjacency[u]:
                    if cols[w] is Color.WHITE and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comp.sort()
            if len(comp) == 1:
                kind = WhiteKind.SINGLE
            elif len(comp) == 2:
                kind = WhiteKind.PAIR
            else:
                kind = WhiteKind.LARGER
            out.append(WhiteComponent(kind=kind, vertices=tuple(comp)))
        return tuple(out)

    def detect_critical_p5(self) -> tuple[CriticalPath, ...]:
        """All active paths colored W,W,B,W,W whose two ends are active leaves."""
        cols = self.colors
        adj = self.active_adjacency
        found = []
        for center in range(self.base.n):
            if cols[center] is not Color.BLUE:
                continue
            whites = [u for u in adj[center] if cols[u] is Color.WHITE]
            for v2 in whites:
                for v4 in whites:
                    if v4 <= v2:
                        continue
                    for v1 in adj[v2]:
                        if v1 == center or cols[v1] is not Color.WHITE or len(adj[v1]) != 1:
                            continue
                        for v5 in adj[v4]:
                            if v5 == center or cols[v5] is not Color.WHITE or len(adj[v5]) != 1:
                                continue
                            if len({v1, v2, center, v4, v5}) != 5:
                                continue
                            found.append(
                                CriticalPath(path=(v1, v2, center, v4, v5), center=center)
                            )
        return tuple(found)

    def max_gain(self) -> int:
        """Best seizable points over all legal moves; 0 when the game is over."""
        moves = self.legal_moves()
        if not moves:
            return 0
        return max(self.gain_brief(v)[0] for v in moves)

    def structure_report(self) -> StructureReport:
        cols = self.colors
        adj = self.active_adjacency
        comps = []
        for comp in self.active_components:
            white = tuple(v for v in comp if cols[v] is Color.WHITE)
            blue = tuple(v for v in comp if cols[v] is Color.BLUE)
            blue_leaves = tuple(v for v in blue if len(adj[v]) == 1)
            gains = [self.gain_brief(v)[0] for v in comp if self.is_legal(v)]
            is_pair = len(comp) == 2 and len(white) == 1 and len(blue) == 1
            is_bwb = (
                len(comp) == 3
                and len(white) == 1
                and len(blue) == 2
                and len(adj[white[0]]) == 2
            )
            comps.append(
                ComponentFacts(
                    vertices=comp,
                    order=len(comp),
                    white=white,
                    blue=blue,
                    blue_leaves=blue_leaves,
                    max_gain=max(gains) if gains else 0,
                    is_blue_white_pair=is_pair,
                    is_bwb_path=is_bwb,
                )
            )
        blue_degrees = tuple(
            (v, len(adj[v])) for v in range(self.base.n) if cols[v] is Color.BLUE
        )
        singles = []
        singles_with_blue_leaf = []
        pairs = []
        for wc in self.white_components():
            if wc.kind is WhiteKind.SINGLE:
                v = wc.vertices[0]
                singles.append(v)
                if any(
                    cols[u] is Color.BLUE and len(adj[u]) == 1 for u in adj[v]
                ):
                    singles_with_blue_leaf.append(v)
            elif wc.kind is WhiteKind.PAIR:
                pairs.append(wc.vertices)
        return StructureReport(
            components=tuple(comps),
            blue_degrees=blue_degrees,
            single_whites=tuple(singles),
            single_whites_with_blue_leaf=tuple(singles_with_blue_leaf),
            white_pairs=tuple(pairs),
        )

    # -- snapshots -----------------------------------------------------------

    def snapshot(self) -> str:
        """Textual snapshot: the base edge list plus one color letter per vertex."""
        return serialize_edge_list(self.base) + "colors " + "".join(
            c.value for c in self.colors
        ) + "\n"


def init_state(graph: Graph) -> ResidualState:
    """Fresh all-white state; rejects graphs with isolated vertices."""
    isolated = graph.isolated_vertices()
    if isolated:
        raise IsolatedVertexPresent(f"isolated vertices present: {list(isolated)}")
    return ResidualState(graph, 0, 0)


def load_snapshot(text: str) -> ResidualState:
    """Parse a snapshot produced by :meth:`ResidualState.snapshot`.

    Intended for test fixtures: the dominated set is reconstructed from
    the non-white letters and the colors are validated against it.  The
    move counter restarts at zero.
    """
    lines = text.splitlines()
    color_lines = [i for i, ln in enumerate(lines) if ln.strip().startswith("colors")]
    if len(color_lines) != 1:
        raise InvalidSnapshot("snapshot needs exactly one 'colors' line")
    idx = color_lines[0]
    tokens = lines[idx].split()
    if len(tokens) != 2:
        raise InvalidSnapshot("colors line must hold a single letter string")
    letters = tokens[1]
    body = "\n".join(lines[:idx] + lines[idx + 1 :])
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        graph = parse_edge_list(body, allow_cycles=True)
    if len(letters) != graph.n:
        raise InvalidSnapshot(f"expected {graph.n} color letters, got {len(letters)}")
    try:
        colors = tuple(Color(ch) for ch in letters)
    except ValueError:
        raise InvalidSnapshot(f"colors must be drawn from W/B/R: {letters!r}") from None
    dominated = 0
    for v, c in enumerate(colors):
        if c is not Color.WHITE:
            dominated |= 1 << v
    state = ResidualState(graph, dominated)
    if state.colors != colors:
        recomputed = "".join(c.value for c in state.colors)
        raise InvalidSnapshot(
            f"colors {letters!r} are inconsistent with the dominated set ({recomputed!r})"
        )
    return state


def state_from_moves(graph: Graph, moves: list[int]) -> ResidualState:
    """Replay a move sequence from the fresh state; raises on illegal moves."""
    state = init_state(graph)
    for v in moves:
        state, _ = state.apply_move(v)
    return state


__all__ = [
    "Color",
    "ComponentFacts",
    "CriticalPath",
    "MoveOutcome",
    "Player",
    "ResidualState",
    "StructureReport",
    "WhiteComponent",
    "WhiteKind",
    "GameOver",
    "init_state",
    "load_snapshot",
    "state_from_moves",
]

"""Four-phase engine strategy, opponent policies and full game traces.

The minimizing engine walks through numbered phases with weakening
per-turn guarantees:

* Phase 1 - seize at least 7 points while at least two vertices turn red;
* Phase 2 - seize at least 7 points;
* Phase 3 - seize at least 6 points, always taking a maximum-gain vertex
  and, among those, preferring a white stem that still has a white leaf
  neighbor;
* Phase 4 - any legal move.

A phase is entered at the engine's first turn where its guarantee is
achievable and no earlier phase still applies; phases never run
backwards, even if a later position would again allow an earlier one.
When the maximizer opens the game, that single opening turn is labeled
phase 0.  Opponent turns inherit the phase of the engine turn before
them.

Traces keep a state snapshot around every turn plus running ledgers:
the surplus points banked in phase 1, the count of *critical* turns in
phase 3 (a 3-point reply through the center of a five-vertex
white-white-blue-white-white path whose stem the engine just played,
with no 8-point engine turn before nor a 7-point one after), the red
count when phase 1 ends, and the non-red count when phase 3 begins.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, replace

from .errors import (
    GameOver,
    IncompleteTrace,
    NoLegalMove,
    NotAForest,
    PhaseNotApplicable,
)
from .forest import Graph, serialize_edge_list
from .residual import Color, Player, ResidualState, init_state
from .solver import GameSolver


class Phase(enum.IntEnum):
    P0 = 0
    P1 = 1
    P2 = 2
    P3 = 3
    P4 = 4


@dataclass(frozen=True)
class TurnRecord:
    index: int
    player: Player
    vertex: int
    gain: int
    phase: Phase
    newly_red: int
    extra: int | None = None  # points above the per-turn floor; phase 1 only
    critical: bool = False  # phase 3 maximizer turns only


@dataclass
class GameTrace:
    """A finished (or in-progress) game with snapshots and ledgers.

    ``states[i]`` is the position before ``records[i]``; the final entry
    is the terminal position.
    """

    graph: Graph
    first: Player
    records: tuple[TurnRecord, ...]
    states: tuple[ResidualState, ...]
    per_phase_decrease: dict[Phase, int]
    phase1_extra: int
    critical_count: int
    red_after_phase1: int
    nonred_at_phase3: int
    opening_extra: int | None = None

    @property
    def turns(self) -> int:
        return len(self.records)

    @property
    def complete(self) -> bool:
        return bool(self.states) and self.states[-1].is_over


# ---------------------------------------------------------------------------
# phase machinery


def _survey(state: ResidualState) -> list[tuple[int, int, int]]:
    """(vertex, gain, newly red) for every legal move."""
    return [(v, *state.gain_brief(v)) for v in state.legal_moves()]


def max_gain_moves(state: ResidualState) -> tuple[int, tuple[int, ...], dict[int, int]]:
    """Best achievable gain, all vertices achieving it, and their red counts."""
    survey = _survey(state)
    if not survey:
        raise GameOver("no legal moves remain")
    best = max(g for _, g, _ in survey)
    movers = tuple(v for v, g, _ in survey if g == best)
    reds = {v: r for v, g, r in survey if g == best}
    return best, movers, reds


def phase_applicable(state: ResidualState, phase: Phase) -> bool:
    """Whether the engine can honor the phase's guarantee in this position."""
    survey = _survey(state)
    if not survey:
        return False
    if phase is Phase.P1:
        return any(g >= 7 and r >= 2 for _, g, r in survey)
    if phase is Phase.P2:
        return any(g >= 7 for _, g, _ in survey)
    if phase is Phase.P3:
        return any(g >= 6 for _, g, _ in survey)
    if phase is Phase.P4:
        return True
    return False


def advance_phase(current: Phase, state: ResidualState) -> Phase:
    """Smallest phase at or after ``current`` whose guarantee is achievable."""
    if state.is_over:
        raise NoLegalMove("the game is over")
    survey = _survey(state)
    best = max(g for _, g, _ in survey)
    floor = max(current, Phase.P1)
    if floor <= Phase.P1 and any(g >= 7 and r >= 2 for _, g, r in survey):
        return Phase.P1
    if floor <= Phase.P2 and best >= 7:
        return Phase.P2
    if floor <= Phase.P3 and best >= 6:
        return Phase.P3
    return Phase.P4


def _is_white_stem_with_white_leaf(state: ResidualState, v: int) -> bool:
    cols = state.colors
    if cols[v] is not Color.WHITE:
        return False
    adj = state.active_adjacency
    return any(cols[u] is Color.WHITE and len(adj[u]) == 1 for u in adj[v])


def dominator_choose(state: ResidualState, phase: Phase) -> int:
    """Deterministic engine move for an applicable phase.

    Phases 1 and 2 take the highest gain among qualifying moves,
    preferring more new reds and then the lowest id.  Phase 3 takes a
    maximum-gain move, preferring a white stem that keeps a white leaf,
    then the lowest id.  Phase 4 plays the lowest-id legal vertex.
    """
    survey = _survey(state)
    if not survey:
        raise PhaseNotApplicable("no legal moves remain")
    if phase is Phase.P1:
        candidates = [(v, g, r) for v, g, r in survey if g >= 7 and r >= 2]
        if not candidates:
            raise PhaseNotApplicable("no move seizes 7 points with two new reds")
        return min(candidates, key=lambda t: (-t[1], -t[2], t[0]))[0]
    if phase is Phase.P2:
        candidates = [(v, g, r) for v, g, r in survey if g >= 7]
        if not candidates:
            raise PhaseNotApplicable("no move seizes 7 points")
        return min(candidates, key=lambda t: (-t[1], -t[2], t[0]))[0]
    if phase is Phase.P3:
        best = max(g for _, g, _ in survey)
        if best < 6:
            raise PhaseNotApplicable("no move seizes 6 points")
        movers = [v for v, g, _ in survey if g == best]
        stems = [v for v in movers if _is_white_stem_with_white_leaf(state, v)]
        return min(stems) if stems else min(movers)
    if phase is Phase.P4:
        return min(v for v, _, _ in survey)
    raise PhaseNotApplicable(f"{phase} is not an engine phase")


class PhasedDominator:
    """The deterministic engine policy in the shape the adversary search expects."""

    def advance(self, state: ResidualState, phase: Phase) -> Phase:
        return advance_phase(phase, state)

    def choose(self, state: ResidualState, phase: Phase) -> int:
        return dominator_choose(state, phase)


# ---------------------------------------------------------------------------
# opponent policies


class OptimalStaller:
    """Plays a move maximizing remaining turns against optimal continuation."""

    def __init__(self, solver: GameSolver | None = None):
        self._solver = solver

    def _solver_for(self, graph: Graph) -> GameSolver:
        if self._solver is None or self._solver.graph != graph:
            self._solver = GameSolver(graph)
        return self._solver

    def __call__(self, state: ResidualState, rng: random.Random) -> int:
        solver = self._solver_for(state.base)
        best_v, best_val = -1, -1
        for v in state.legal_moves():
            after = state.dominated | state.base.closed_masks[v]
            val = 1 + solver.remaining(after, Player.DOMINATOR)
            if val > best_val:
                best_v, best_val = v, val
        if best_v < 0:
            raise GameOver("no legal moves remain")
        return best_v


class GreedyMinStaller:
    """Plays the legal move seizing the fewest points; lowest id on ties."""

    def __call__(self, state: ResidualState, rng: random.Random) -> int:
        moves = state.legal_moves()
        if not moves:
            raise GameOver("no legal moves remain")
        return min(moves, key=lambda v: (state.gain_brief(v)[0], v))


class RandomStaller:
    """Plays a uniformly random legal move from the supplied generator."""

    def __call__(self, state: ResidualState, rng: random.Random) -> int:
        moves = state.legal_moves()
        if not moves:
            raise GameOver("no legal moves remain")
        return rng.choice(moves)


class ScriptedStaller:
    """Replays a fixed vertex sequence; used for adversary witnesses."""

    def __init__(self, moves):
        self._moves = list(moves)
        self._at = 0

    def __call__(self, state: ResidualState, rng: random.Random) -> int:
        if self._at >= len(self._moves):
            raise GameOver("scripted move list exhausted")
        v = self._moves[self._at]
        self._at += 1
        return v


STALLER_POLICIES = {
    "optimal": OptimalStaller,
    "greedy": GreedyMinStaller,
    "random": RandomStaller,
}


# ---------------------------------------------------------------------------
# running games


class GameRunner:
    """Drives one game turn by turn, recording snapshots and phase labels.

    The engine side is always the minimizer; its moves are produced by
    :meth:`play_engine_move`.  Arbitrary (human) moves go through
    :meth:`play`, which still advances the phase clock so that views can
    report the stage of the game.
    """

    def __init__(self, graph: Graph, first: Player):
        if not graph.is_acyclic():
            raise NotAForest("strategy play is defined on forests only")
        self.graph = graph
        self.first = first
        self.state = init_state(graph)
        self.states: list[ResidualState] = [self.state]
        self.records: list[TurnRecord] = []
        self.phase = Phase.P1

    @property
    def to_move(self) -> Player:
        return self.first if len(self.records) % 2 == 0 else self.first.opponent

    @property
    def over(self) -> bool:
        return self.state.is_over

    @property
    def next_index(self) -> int:
        base = 0 if self.first is Player.STALLER else 1
        return base + len(self.records)

    def play(self, vertex: int) -> TurnRecord:
        if self.over:
            raise GameOver("the game is over")
        player = self.to_move
        if player is Player.DOMINATOR:
            self.phase = advance_phase(self.phase, self.state)
            label = self.phase
        elif self.first is Player.STALLER and not self.records:
            label = Phase.P0
        else:
            label = self.phase
        new_state, outcome = self.state.apply_move(vertex)
        extra = None
        if label is Phase.P1:
            floor = 7 if player is Player.DOMINATOR else 3
            extra = outcome.gain - floor
        record = TurnRecord(
            index=self.next_index,
            player=player,
            vertex=vertex,
            gain=outcome.gain,
            phase=label,
            newly_red=outcome.newly_red,
            extra=extra,
        )
        self.records.append(record)
        self.state = new_state
        self.states.append(new_state)
        # the critical flag only looks at states up to one past the turn,
        # so it can be settled immediately
        if player is Player.STALLER and label is Phase.P3:
            flagged = replace(
                record,
                critical=_is_critical(self.records, self.states, len(self.records) - 1),
            )
            if flagged.critical:
                self.records[-1] = flagged
                record = flagged
        return record

    def play_engine_move(self) -> TurnRecord:
        if self.to_move is not Player.DOMINATOR:
            raise PhaseNotApplicable("it is not the engine side's turn")
        phase = advance_phase(self.phase, self.state)
        return self.play(dominator_choose(self.state, phase))

    # -- ledgers -------------------------------------------------------------

    def _end_of_phase1_position(self) -> int:
        pos = 0
        for i, rec in enumerate(self.records):
            if rec.phase <= Phase.P1:
                pos = i + 1
        return pos

    def _start_of_phase3_position(self) -> int | None:
        for i, rec in enumerate(self.records):
            if rec.phase >= Phase.P3:
                return i
        return None

    def build_trace(self) -> GameTrace:
        records = list(self.records)
        for i, rec in enumerate(records):
            if rec.player is Player.STALLER and rec.phase is Phase.P3:
                records[i] = replace(
                    rec, critical=_is_critical(records, self.states, i)
                )
        per_phase: dict[Phase, int] = {}
        for rec in records:
            per_phase[rec.phase] = per_phase.get(rec.phase, 0) + rec.gain
        extra = sum(rec.extra or 0 for rec in records if rec.phase is Phase.P1)
        critical = sum(1 for rec in records if rec.critical)
        pos1 = self._end_of_phase1_position()
        red_after_phase1 = self.states[pos1].color_counts()[Color.RED]
        pos3 = self._start_of_phase3_position()
        if pos3 is None:
            nonred = 0
        else:
            nonred = self.graph.n - self.states[pos3].color_counts()[Color.RED]
        opening_extra = None
        if self.first is Player.STALLER and records:
            opening_extra = records[0].gain - 5
        return GameTrace(
            graph=self.graph,
            first=self.first,
            records=tuple(records),
            states=tuple(self.states),
            per_phase_decrease=per_phase,
            phase1_extra=extra,
            critical_count=critical,
            red_after_phase1=red_after_phase1,
            nonred_at_phase3=nonred,
            opening_extra=opening_extra,
        )


def _is_critical(records, states, i: int) -> bool:
    rec = records[i]
    if rec.player is not Player.STALLER or rec.phase is not Phase.P3 or rec.gain != 3:
        return False
    if i == 0:
        return False
    prev = records[i - 1]
    if prev.player is not Player.DOMINATOR or prev.gain >= 8:
        return False
    two_back = states[i - 1]
    hits = False
    for path in two_back.detect_critical_p5():
        for stem, center in path.stem_center_pairs():
            if stem == prev.vertex and center == rec.vertex:
                hits = True
                break
        if hits:
            break
    if not hits:
        return False
    after = states[i + 1]
    return after.max_gain() < 7


def is_critical_turn(trace: GameTrace, i: int) -> bool:
    """Whether record ``i`` realizes the zero-compensation 3-point reply.

    True iff the maximizer seized exactly 3 points in a phase-3 turn by
    taking the blue center of a white-white-blue-white-white leaf-ended
    path whose white stem the engine played the turn before (for fewer
    than 8 points), and the position left behind offers the engine less
    than 7 points.
    """
    if not 0 <= i < len(trace.records):
        raise IndexError(f"record {i} out of range 0..{len(trace.records) - 1}")
    return _is_critical(list(trace.records), list(trace.states), i)


def run_game(
    graph: Graph, staller, first: Player, seed: int = 0
) -> GameTrace:
    """Play the engine strategy against a maximizer policy to completion.

    ``staller`` is any callable ``(state, rng) -> vertex``; the seeded
    generator makes stochastic policies reproducible.
    """
    rng = random.Random(seed)
    runner = GameRunner(graph, first)
    if first is Player.STALLER and not runner.over:
        runner.play(staller(runner.state, rng))
    while not runner.over:
        runner.play_engine_move()
        if runner.over:
            break
        runner.play(staller(runner.state, rng))
    return runner.build_trace()


# ---------------------------------------------------------------------------
# ledger summary and exports


@dataclass(frozen=True)
class PhaseLedger:
    phase: Phase
    turns: int
    decrease: int
    floor: int  # the guaranteed minimum decrease for this phase


@dataclass(frozen=True)
class LedgerSummary:
    turns: int
    total_decrease: int
    phases: tuple[PhaseLedger, ...]
    phase1_extra: int
    critical_count: int
    red_after_phase1: int
    nonred_at_phase3: int
    opening_extra: int | None


def ledger(trace: GameTrace) -> LedgerSummary:
    """Per-phase decreases with their guaranteed floors, for a finished game."""
    if not trace.complete:
        raise IncompleteTrace("the game did not run to completion")
    phases = []
    for phase in Phase:
        recs = [r for r in trace.records if r.phase is phase]
        if not recs:
            continue
        k = len(recs)
        decrease = sum(r.gain for r in recs)
        if phase is Phase.P0:
            floor = 4
        elif phase is Phase.P1:
            floor = 5 * k + trace.phase1_extra + (2 if k % 2 == 1 else 0)
        elif phase is Phase.P2:
            floor = 5 * k
        elif phase is Phase.P3:
            floor = 5 * k - trace.critical_count
        else:
            floor = 5 * k
        phases.append(PhaseLedger(phase=phase, turns=k, decrease=decrease, floor=floor))
    return LedgerSummary(
        turns=trace.turns,
        total_decrease=sum(r.gain for r in trace.records),
        phases=tuple(phases),
        phase1_extra=trace.phase1_extra,
        critical_count=trace.critical_count,
        red_after_phase1=trace.red_after_phase1,
        nonred_at_phase3=trace.nonred_at_phase3,
        opening_extra=trace.opening_extra,
    )


def trace_to_text(trace: GameTrace) -> str:
    """One line per turn plus a summary; byte-stable for fixed inputs."""
    lines = [f"# game on {trace.graph.n} vertices, {trace.first.value} first"]
    for rec in trace.records:
        parts = [
            f"turn {rec.index}",
            rec.player.value,
            f"v={rec.vertex}",
            f"gain={rec.gain}",
            f"phase={int(rec.phase)}",
            f"red={rec.newly_red}",
        ]
        if rec.extra is not None:
            parts.append(f"extra={rec.extra}")
        if rec.critical:
            parts.append("critical")
        lines.append(" ".join(parts))
    lines.append(
        " ".join(
            [
                f"summary turns={trace.turns}",
                f"decrease={sum(r.gain for r in trace.records)}",
                f"extra={trace.phase1_extra}",
                f"critical={trace.critical_count}",
                f"red_after_phase1={trace.red_after_phase1}",
                f"nonred_at_phase3={trace.nonred_at_phase3}",
                f"opening_extra={'-' if trace.opening_extra is None else trace.opening_extra}",
            ]
        )
    )
    return "\n".join(lines) + "\n"


def trace_to_doc(trace: GameTrace) -> dict:
    """JSON-ready document carrying the full trace."""
    return {
        "n": trace.graph.n,
        "edge_list": serialize_edge_list(trace.graph),
        "first": trace.first.value,
        "turns": trace.turns,
        "records": [
            {
                "index": r.index,
                "player": r.player.value,
                "vertex": r.vertex,
                "gain": r.gain,
                "phase": int(r.phase),
                "newly_red": r.newly_red,
                "extra": r.extra,
                "critical": r.critical,
            }
            for r in trace.records
        ],
        "per_phase_decrease": {str(int(p)): d for p, d in sorted(trace.per_phase_decrease.items())},
        "phase1_extra": trace.phase1_extra,
        "critical_count": trace.critical_count,
        "red_after_phase1": trace.red_after_phase1,
        "nonred_at_phase3": trace.nonred_at_phase3,
        "opening_extra": trace.opening_extra,
    }


def trace_to_json(trace: GameTrace) -> str:
    return json.dumps(trace_to_doc(trace), sort_keys=True, indent=2) + "\n"

"""Corpus-level machine checking of the strategy's guarantees and the bounds.

Every testable consequence of the engine's bookkeeping is expressed as a
named check over finished traces or over residual states drawn from
them.  Instances come from deterministic corpora (exhaustive trees,
seeded random forests and caterpillars, or files); any failure carries a
replayable witness.

Check names
-----------
``gain-floor``             every move seizes at least 3 points
``phase-monotone``         phase labels never decrease along a trace
``total-decrease``         a finished game consumes exactly 3n points
``phase1-floor``           engine phase-1 turns: gain >= 7, two new reds
``phase1-extra``           per-turn surpluses are non-negative and consistent
``phase1-decrease``        phase-1 decrease equals 5k plus the banked surplus
``phase2-floor``           engine phase-2 turns: gain >= 7
``phase2-decrease``        phase-2 decrease is at least 5k
``phase3-floor``           engine phase-3 turns: gain >= 6
``phase3-decrease``        phase-3 decrease is at least 5k minus critical turns
``phase4-gain``            every phase-4 move seizes exactly 5 points
``phase4-pairs``           phase 4 starts with only blue-white pair components
``opening-floor``          the maximizer's opening turn seizes at least 4
``opening-extra``          opening surplus equals 3*reds + blues - 5
``staller3-trichotomy``    every 3-point phase-3 reply is explained
``critical-flag``          stored critical flags match recomputation
``critical-count-le-centers``  critical turns never outnumber centers
``critical-center-budget`` centers after phase 1 fit in the red/surplus budget
``critical-turn-budget``   five vertices per critical turn fit the live count
``turn-budget``            5*turns <= 3n - surplus + critical (start-adjusted)
``red-live-budget``        n >= reds(end phase 1) + live(start phase 3) >= 8*(c-e)
``classic-bounds``         gamma <= game length <= 2*gamma (-1 when engine starts)
``cap-5n8``/``cap-5n8-staller``     optimal lengths within 5n/8 caps
``cap-3n5``/``cap-3n5-staller``     class instances within 3n/5 caps
``worst-5n8``/``worst-3n5`` (+ ``-staller``)  adversary search within the caps
``adversary-dominates``    no recorded trace outlasts the adversary search
``endgame-*``              structure when no 7-point move exists
``midgame-*``, ``blueleaf-gain``, ``quiet-component-gain``  later-phase structure
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import lru_cache

from .errors import GeneratorFailure, LimitExceeded, PreconditionNotMet, TooLarge
from .forest import (
    Forest,
    Graph,
    enumerate_trees,
    leaf_pair_at_distance,
    parse_edge_list,
    random_caterpillar,
    random_forest,
    serialize_edge_list,
)
from .residual import Color, Player, ResidualState, WhiteKind
from .solver import GameSolver, domination_number, worst_case_turns
from .strategy import (
    GameTrace,
    GreedyMinStaller,
    OptimalStaller,
    Phase,
    PhasedDominator,
    RandomStaller,
    _is_critical,
    run_game,
    trace_to_json,
    trace_to_text,
)


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str
    instance: str = ""
    turn: int | None = None

    def __str__(self) -> str:
        where = f" [{self.instance}]" if self.instance else ""
        turn = f" turn {self.turn}" if self.turn is not None else ""
        return f"{self.check}{where}{turn}: {self.detail}"


# ---------------------------------------------------------------------------
# trace-level checks


def _end_of_phase1_position(trace: GameTrace) -> int:
    pos = 0
    for i, rec in enumerate(trace.records):
        if rec.phase <= Phase.P1:
            pos = i + 1
    return pos


def _start_of_phase3_position(trace: GameTrace) -> int | None:
    for i, rec in enumerate(trace.records):
        if rec.phase >= Phase.P3:
            return i
    return None


def check_trace_invariants(trace: GameTrace, instance: str = "") -> list[Violation]:
    """All per-trace ledger and structure-budget checks; empty means clean."""
    out: list[Violation] = []

    def bad(check: str, detail: str, turn: int | None = None) -> None:
        out.append(Violation(check=check, detail=detail, instance=instance, turn=turn))

    recs = trace.records
    states = trace.states
    n = trace.graph.n

    for rec in recs:
        if rec.gain < 3:
            bad("gain-floor", f"move at vertex {rec.vertex} seized only {rec.gain}", rec.index)
    for prev, rec in zip(recs, recs[1:]):
        if rec.phase < prev.phase:
            bad("phase-monotone", f"phase fell from {int(prev.phase)} to {int(rec.phase)}", rec.index)
    if trace.complete and sum(r.gain for r in recs) != 3 * n:
        bad("total-decrease", f"gains sum to {sum(r.gain for r in recs)}, expected {3 * n}")

    # phase 1
    p1 = [r for r in recs if r.phase is Phase.P1]
    for rec in p1:
        floor = 7 if rec.player is Player.DOMINATOR else 3
        if rec.player is Player.DOMINATOR and (rec.gain < 7 or rec.newly_red < 2):
            bad(
                "phase1-floor",
                f"engine turn gained {rec.gain} with {rec.newly_red} new red(s)",
                rec.index,
            )
        if rec.extra is None or rec.extra != rec.gain - floor or rec.extra < 0:
            bad("phase1-extra", f"surplus {rec.extra} for gain {rec.gain}", rec.index)
    if trace.phase1_extra != sum(r.extra or 0 for r in p1) or trace.phase1_extra < 0:
        bad("phase1-extra", f"trace surplus {trace.phase1_extra} inconsistent")
    k1 = len(p1)
    if k1:
        dec1 = sum(r.gain for r in p1)
        want = 5 * k1 + trace.phase1_extra + (2 if k1 % 2 == 1 else 0)
        if dec1 != want:
            bad("phase1-decrease", f"decrease {dec1}, expected {want} over {k1} turn(s)")

    # phase 2
    p2 = [r for r in recs if r.phase is Phase.P2]
    for rec in p2:
        if rec.player is Player.DOMINATOR and rec.gain < 7:
            bad("phase2-floor", f"engine turn gained {rec.gain}", rec.index)
    if p2 and sum(r.gain for r in p2) < 5 * len(p2):
        bad("phase2-decrease", f"decrease {sum(r.gain for r in p2)} < {5 * len(p2)}")

    # phase 3
    p3 = [r for r in recs if r.phase is Phase.P3]
    for rec in p3:
        if rec.player is Player.DOMINATOR and rec.gain < 6:
            bad("phase3-floor", f"engine turn gained {rec.gain}", rec.index)
    if p3 and sum(r.gain for r in p3) < 5 * len(p3) - trace.critical_count:
        bad(
            "phase3-decrease",
            f"decrease {sum(r.gain for r in p3)} < {5 * len(p3)} - {trace.critical_count}",
        )

    # phase 4
    p4_positions = [i for i, r in enumerate(recs) if r.phase is Phase.P4]
    for i in p4_positions:
        if recs[i].gain != 5:
            bad("phase4-gain", f"gained {recs[i].gain}, expected exactly 5", recs[i].index)
    if p4_positions:
        start_state = states[p4_positions[0]]
        report = start_state.structure_report()
        stray = [c.vertices for c in report.components if not c.is_blue_white_pair]
        if stray:
            bad("phase4-pairs", f"non-pair components at phase 4 start: {stray}")

    # opening turn when the maximizer starts
    if trace.first is Player.STALLER and recs:
        opening = recs[0]
        if opening.phase is not Phase.P0:
            bad("opening-floor", f"first record labeled phase {int(opening.phase)}")
        if opening.gain < 4:
            bad("opening-floor", f"opening turn gained {opening.gain}", opening.index)
        counts = states[1].color_counts()
        expected = 3 * counts[Color.RED] + counts[Color.BLUE] - 5
        if trace.opening_extra != opening.gain - 5 or trace.opening_extra != expected:
            bad(
                "opening-extra",
                f"opening surplus {trace.opening_extra}, gain {opening.gain}, "
                f"reds {counts[Color.RED]}, blues {counts[Color.BLUE]}",
            )

    # every 3-point phase-3 reply must be explained
    for i, rec in enumerate(recs):
        if rec.player is not Player.STALLER or rec.phase is not Phase.P3 or rec.gain != 3:
            continue
        a = i > 0 and recs[i - 1].gain >= 8
        b = states[i + 1].max_gain() >= 7
        c = False
        if i > 0:
            for path in states[i - 1].detect_critical_p5():
                for stem, center in path.stem_center_pairs():
                    if stem == recs[i - 1].vertex and center == rec.vertex:
                        c = True
        if not (a or b or c):
            bad("staller3-trichotomy", "3-point reply with no qualifying explanation", rec.index)
        if rec.critical != (c and not a and not b):
            bad("critical-flag", f"stored flag {rec.critical} disagrees", rec.index)
        recomputed = _is_critical(list(recs), list(states), i)
        if rec.critical != recomputed:
            bad("critical-flag", f"stored flag {rec.critical} != recomputed {recomputed}", rec.index)

    # center and critical-turn budgets
    pos1 = _end_of_phase1_position(trace)
    centers: set[int] = set()
    for state in states[pos1:]:
        centers.update(p.center for p in state.detect_critical_p5())
    if trace.critical_count > len(centers):
        bad(
            "critical-count-le-centers",
            f"{trace.critical_count} critical turn(s) but only {len(centers)} center(s)",
        )
    if trace.first is Player.STALLER and recs:
        counts0 = states[1].color_counts()
        budget = (trace.red_after_phase1 - counts0[Color.RED]) + 3 * trace.phase1_extra + 3 * counts0[Color.BLUE]
    else:
        budget = trace.red_after_phase1 + 3 * trace.phase1_extra
    if 3 * len(centers) > budget:
        bad(
            "critical-center-budget",
            f"3*{len(centers)} centers exceed budget {budget}",
        )
    if 5 * trace.critical_count > trace.nonred_at_phase3:
        bad(
            "critical-turn-budget",
            f"5*{trace.critical_count} > {trace.nonred_at_phase3} live vertices",
        )

    # ledger consistency with the raw records
    per_phase: dict[Phase, int] = {}
    for rec in recs:
        per_phase[rec.phase] = per_phase.get(rec.phase, 0) + rec.gain
    if per_phase != trace.per_phase_decrease:
        bad("total-decrease", "per-phase decreases disagree with the records")

    # whole-game budgets implied by the phase floors
    if trace.complete:
        t = trace.turns
        opening = trace.opening_extra if trace.opening_extra is not None else 0
        if trace.first is Player.DOMINATOR:
            if 5 * t > 3 * n - trace.phase1_extra + trace.critical_count:
                bad(
                    "turn-budget",
                    f"5*{t} > 3*{n} - {trace.phase1_extra} + {trace.critical_count}",
                )
        else:
            if 5 * t > 3 * n - trace.phase1_extra - opening + trace.critical_count:
                bad(
                    "turn-budget",
                    f"5*{t} > 3*{n} - {trace.phase1_extra} - {opening} + {trace.critical_count}",
                )
        lower = 8 * (trace.critical_count - trace.phase1_extra)
        if n < trace.red_after_phase1 + trace.nonred_at_phase3 or (
            trace.first is Player.DOMINATOR
            and trace.red_after_phase1 + trace.nonred_at_phase3 < lower
        ):
            bad(
                "red-live-budget",
                f"n={n}, reds={trace.red_after_phase1}, live={trace.nonred_at_phase3}, "
                f"needed >= {lower}",
            )
    return out


# ---------------------------------------------------------------------------
# structural checks on residual states


def _endgame_structure_violations(state: ResidualState, instance: str = "") -> list[Violation]:
    out: list[Violation] = []
    cols = state.colors
    adj = state.active_adjacency
    report = state.structure_report()
    singles = set(report.single_whites)
    pair_members = {v for pair in report.white_pairs for v in pair}

    for wc in state.white_components():
        if wc.kind is WhiteKind.LARGER:
            out.append(
                Violation(
                    "endgame-whites",
                    f"white component of order {len(wc.vertices)}: {wc.vertices}",
                    instance,
                )
            )
    for comp in report.components:
        if comp.order < 3:
            continue
        for v in comp.vertices:
            if len(adj[v]) == 1 and cols[v] is Color.BLUE:
                out.append(
                    Violation("endgame-leaf-color", f"blue leaf {v} in component of order {comp.order}", instance)
                )
        for v in comp.blue:
            single_neighbors = [u for u in adj[v] if u in singles]
            if not single_neighbors:
                continue
            others = [u for u in adj[v] if u not in single_neighbors]
            if len(adj[v]) != 2 or len(others) != 1 or others[0] not in pair_members:
                out.append(
                    Violation(
                        "endgame-blue-shape",
                        f"blue {v} with single-white neighbor has neighbors {adj[v]}",
                        instance,
                    )
                )
    for v, deg in report.blue_degrees:
        if deg > 4:
            out.append(Violation("endgame-blue-degree", f"blue {v} has degree {deg}", instance))
    return out


def check_phase2_end_structure(state: ResidualState, instance: str = "") -> list[Violation]:
    """Structure required once no move can seize 7 points.

    Raises :class:`PreconditionNotMet` (carrying any structural findings)
    when a 7-point move still exists, since the guarantees only apply
    beyond that point.
    """
    violations = _endgame_structure_violations(state, instance)
    best = state.max_gain()
    if best >= 7:
        raise PreconditionNotMet(
            f"a move seizing {best} points exists, so the end-of-phase-2 "
            f"structure is not required here",
            violations,
        )
    return violations


def check_midgame_structure(states, instance: str = "") -> list[Violation]:
    """Structure persisting through phases 3 and 4 plus gain envelopes."""
    out: list[Violation] = []
    for state in states:
        cols = state.colors
        adj = state.active_adjacency
        report = state.structure_report()
        singles = set(report.single_whites)
        singles_with_blue_leaf = set(report.single_whites_with_blue_leaf)
        pair_members = {v for pair in report.white_pairs for v in pair}

        for wc in state.white_components():
            if wc.kind is WhiteKind.LARGER:
                out.append(
                    Violation("midgame-whites", f"white component {wc.vertices}", instance)
                )
        for v, deg in report.blue_degrees:
            if deg > 4:
                out.append(Violation("midgame-blue-degree", f"blue {v} has degree {deg}", instance))
        for v, _ in report.blue_degrees:
            quiet_singles = [
                u for u in adj[v] if u in singles and u not in singles_with_blue_leaf
            ]
            if not quiet_singles:
                continue
            others = [u for u in adj[v] if u not in quiet_singles]
            ok = (
                len(adj[v]) == len(quiet_singles) + 1
                and len(others) == 1
                and (others[0] in pair_members or others[0] in singles_with_blue_leaf)
            )
            if not ok:
                out.append(
                    Violation(
                        "midgame-blue-shape",
                        f"blue {v} with plain single-white neighbor has neighbors {adj[v]}",
                        instance,
                    )
                )
        for comp in report.components:
            if comp.order >= 3 and comp.blue_leaves and not comp.is_bwb_path:
                if comp.max_gain < 8:
                    out.append(
                        Violation(
                            "blueleaf-gain",
                            f"component {comp.vertices} with blue leaf allows only {comp.max_gain}",
                            instance,
                        )
                    )
            if comp.order >= 4 and not comp.blue_leaves:
                if comp.max_gain > 6:
                    out.append(
                        Violation(
                            "quiet-component-gain",
                            f"component {comp.vertices} without blue leaf allows {comp.max_gain}",
                            instance,
                        )
                    )
    return out


def phase1_end_structure_holds(trace: GameTrace) -> bool | None:
    """Exploratory: do the pair/single and leaf-color rules already hold
    when phase 1 ends?  ``None`` when the game never left phase 1."""
    if not any(r.phase > Phase.P1 for r in trace.records):
        return None
    pos = _end_of_phase1_position(trace)
    state = trace.states[pos]
    cols = state.colors
    adj = state.active_adjacency
    report = state.structure_report()
    singles = set(report.single_whites)
    pair_members = {v for pair in report.white_pairs for v in pair}
    if any(wc.kind is WhiteKind.LARGER for wc in state.white_components()):
        return False
    for comp in report.components:
        if comp.order < 3:
            continue
        for v in comp.vertices:
            if len(adj[v]) == 1 and cols[v] is Color.BLUE:
                return False
        for v in comp.blue:
            single_neighbors = [u for u in adj[v] if u in singles]
            if not single_neighbors:
                continue
            others = [u for u in adj[v] if u not in single_neighbors]
            if len(adj[v]) != 2 or len(others) != 1 or others[0] not in pair_members:
                return False
    return True


# ---------------------------------------------------------------------------
# exact bounds per instance


def _caps(n: int) -> dict[str, int]:
    return {
        "cap_5n8": (5 * n) // 8,
        "cap_5n8_staller": (5 * n + 2) // 8,
        "cap_3n5": (3 * n) // 5,
        "cap_3n5_staller": (3 * n + 1) // 5,
        "cap_7n11": (7 * n) // 11,
    }


@dataclass(frozen=True)
class BoundsRow:
    instance: str
    n: int
    class_no_d4: bool
    gamma: int
    game_len: int
    game_len_staller: int
    cap_5n8: int
    cap_5n8_staller: int
    cap_3n5: int
    cap_3n5_staller: int
    slack_7n11: int
    violations: tuple[Violation, ...]


def check_bounds_exact(graph: Graph, solver: GameSolver | None = None, instance: str = "") -> BoundsRow:
    """Exact values for one instance, judged against every cap that applies."""
    if graph.n > 64:
        raise TooLarge(f"exact search is capped at 64 vertices, got {graph.n}")
    if solver is None:
        solver = GameSolver(graph)
    n = graph.n
    gamma = domination_number(graph)
    game_len = solver.remaining(0, Player.DOMINATOR)
    game_len_staller = solver.remaining(0, Player.STALLER)
    class_no_d4 = not leaf_pair_at_distance(graph, 4)
    caps = _caps(n)
    violations = []

    def bad(check: str, detail: str) -> None:
        violations.append(Violation(check=check, detail=detail, instance=instance))

    if n > 0:
        if not (gamma <= game_len <= 2 * gamma - 1):
            bad("classic-bounds", f"gamma={gamma}, engine-start length={game_len}")
        if not (gamma <= game_len_staller <= 2 * gamma):
            bad("classic-bounds", f"gamma={gamma}, maximizer-start length={game_len_staller}")
        if game_len > caps["cap_5n8"]:
            bad("cap-5n8", f"{game_len} > {caps['cap_5n8']}")
        if game_len_staller > caps["cap_5n8_staller"]:
            bad("cap-5n8-staller", f"{game_len_staller} > {caps['cap_5n8_staller']}")
        if class_no_d4:
            if game_len > caps["cap_3n5"]:
                bad("cap-3n5", f"{game_len} > {caps['cap_3n5']}")
            if game_len_staller > caps["cap_3n5_staller"]:
                bad("cap-3n5-staller", f"{game_len_staller} > {caps['cap_3n5_staller']}")
    return BoundsRow(
        instance=instance,
        n=n,
        class_no_d4=class_no_d4,
        gamma=gamma,
        game_len=game_len,
        game_len_staller=game_len_staller,
        cap_5n8=caps["cap_5n8"],
        cap_5n8_staller=caps["cap_5n8_staller"],
        cap_3n5=caps["cap_3n5"],
        cap_3n5_staller=caps["cap_3n5_staller"],
        slack_7n11=caps["cap_7n11"] - game_len,
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# corpora


@dataclass(frozen=True)
class CorpusSpec:
    """A reproducible instance source: the spec plus seed fixes the corpus."""

    kind: str  # "trees" | "forests" | "caterpillars" | "files"
    n_max: int = 12
    n_min: int = 2
    count: int = 0
    seed: int = 0
    max_components: int = 4
    policies: tuple[str, ...] = ("optimal", "greedy", "random")
    starts: tuple[str, ...] = ("dominator", "staller")
    class_filter: str | None = None  # "no-leaf-distance-4"
    files: tuple[str, ...] = ()
    check_traces: bool = True


def corpus_instances(spec: CorpusSpec) -> list[tuple[str, Forest]]:
    out: list[tuple[str, Forest]] = []
    if spec.kind == "trees":
        for n in range(max(1, spec.n_min), spec.n_max + 1):
            for i, tree in enumerate(enumerate_trees(n)):
                out.append((f"tree-n{n}-{i}", tree))
    elif spec.kind == "forests":
        rng = random.Random(spec.seed)
        for i in range(spec.count):
            n = rng.randint(max(2, spec.n_min), spec.n_max)
            components = rng.randint(1, max(1, min(spec.max_components, n // 2)))
            sub_seed = rng.getrandbits(48)
            out.append((f"forest-{i}-n{n}-c{components}", random_forest(n, components, sub_seed)))
    elif spec.kind == "caterpillars":
        rng = random.Random(spec.seed)
        for i in range(spec.count):
            n = rng.randint(max(2, spec.n_min), spec.n_max)
            sub_seed = rng.getrandbits(48)
            out.append((f"caterpillar-{i}-n{n}", random_caterpillar(n, sub_seed)))
    elif spec.kind == "files":
        for path in spec.files:
            with open(path, encoding="utf-8") as fh:
                graph = parse_edge_list(fh.read())
            if not isinstance(graph, Forest):
                raise GeneratorFailure(f"{path} is not a forest")
            out.append((path, graph))
    else:
        raise GeneratorFailure(f"unknown corpus kind {spec.kind!r}")
    if spec.class_filter == "no-leaf-distance-4":
        out = [(name, g) for name, g in out if not leaf_pair_at_distance(g, 4)]
    elif spec.class_filter is not None:
        raise GeneratorFailure(f"unknown class filter {spec.class_filter!r}")
    return out


_START_PLAYERS = {"dominator": Player.DOMINATOR, "staller": Player.STALLER}


def _make_policy(name: str, solver: GameSolver):
    if name == "optimal":
        return OptimalStaller(solver)
    if name == "greedy":
        return GreedyMinStaller()
    if name == "random":
        return RandomStaller()
    raise GeneratorFailure(f"unknown maximizer policy {name!r}")


@dataclass(frozen=True)
class TraceStats:
    policy: str
    start: str
    turns: int
    phase1_extra: int
    critical: int


@dataclass(frozen=True)
class InstanceRow:
    instance: str
    n: int
    edge_count: int
    component_count: int
    class_no_d4: bool
    gamma: int
    game_len: int
    game_len_staller: int
    worst_dominator_start: int
    worst_staller_start: int
    cap_5n8: int
    cap_5n8_staller: int
    cap_3n5: int
    cap_3n5_staller: int
    slack_7n11: int
    traces: tuple[TraceStats, ...]
    violations: tuple[Violation, ...]
    edge_list: str
    phase1_structure_held: tuple[int, int] = (0, 0)  # exploratory tally


def _tamper(trace: GameTrace) -> GameTrace:
    """Corrupt the first record's gain; used to prove checks can fail."""
    records = list(trace.records)
    records[0] = replace(records[0], gain=records[0].gain - 1)
    return replace(trace, records=tuple(records))


def check_instance(
    name: str,
    graph: Forest,
    spec: CorpusSpec,
    *,
    fault_inject: bool = False,
    keep_traces: bool = False,
) -> tuple[InstanceRow, list[tuple[str, str, GameTrace]]]:
    """Run every applicable check on one instance.

    Returns the row plus (policy, start, trace) triples when
    ``keep_traces`` is set (used to persist failure bundles).
    """
    solver = GameSolver(graph)
    violations: list[Violation] = []
    bounds = check_bounds_exact(graph, solver=solver, instance=name)
    violations.extend(bounds.violations)

    policy_engine = PhasedDominator()
    worst_d, _ = worst_case_turns(graph, policy_engine, Player.DOMINATOR)
    worst_s, _ = worst_case_turns(graph, policy_engine, Player.STALLER)
    if worst_d > bounds.cap_5n8:
        violations.append(Violation("worst-5n8", f"{worst_d} > {bounds.cap_5n8}", name))
    if worst_s > bounds.cap_5n8_staller:
        violations.append(
            Violation("worst-5n8-staller", f"{worst_s} > {bounds.cap_5n8_staller}", name)
        )
    if bounds.class_no_d4:
        if worst_d > bounds.cap_3n5:
            violations.append(Violation("worst-3n5", f"{worst_d} > {bounds.cap_3n5}", name))
        if worst_s > bounds.cap_3n5_staller:
            violations.append(
                Violation("worst-3n5-staller", f"{worst_s} > {bounds.cap_3n5_staller}", name)
            )

    stats: list[TraceStats] = []
    kept: list[tuple[str, str, GameTrace]] = []
    held = total = 0
    if spec.check_traces:
        for p_idx, policy_name in enumerate(spec.policies):
            for s_idx, start_name in enumerate(spec.starts):
                start = _START_PLAYERS[start_name]
                seed = (spec.seed * 1000003 + p_idx * 101 + s_idx) & 0xFFFFFFFF
                trace = run_game(graph, _make_policy(policy_name, solver), start, seed)
                if fault_inject:
                    trace = _tamper(trace)
                violations.extend(check_trace_invariants(trace, instance=name))
                pos3 = _start_of_phase3_position(trace)
                if pos3 is not None:
                    try:
                        violations.extend(
                            check_phase2_end_structure(trace.states[pos3], instance=name)
                        )
                    except PreconditionNotMet as exc:
                        violations.append(
                            Violation("endgame-precondition", str(exc), name)
                        )
                    violations.extend(
                        check_midgame_structure(trace.states[pos3:], instance=name)
                    )
                worst_for_start = worst_d if start is Player.DOMINATOR else worst_s
                if trace.turns > worst_for_start:
                    violations.append(
                        Violation(
                            "adversary-dominates",
                            f"{policy_name}/{start_name} lasted {trace.turns} > {worst_for_start}",
                            name,
                        )
                    )
                outcome = phase1_end_structure_holds(trace)
                if outcome is not None:
                    total += 1
                    held += int(outcome)
                stats.append(
                    TraceStats(
                        policy=policy_name,
                        start=start_name,
                        turns=trace.turns,
                        phase1_extra=trace.phase1_extra,
                        critical=trace.critical_count,
                    )
                )
                if keep_traces:
                    kept.append((policy_name, start_name, trace))

    row = InstanceRow(
        instance=name,
        n=graph.n,
        edge_count=len(graph.edges),
        component_count=len(graph.components),
        class_no_d4=bounds.class_no_d4,
        gamma=bounds.gamma,
        game_len=bounds.game_len,
        game_len_staller=bounds.game_len_staller,
        worst_dominator_start=worst_d,
        worst_staller_start=worst_s,
        cap_5n8=bounds.cap_5n8,
        cap_5n8_staller=bounds.cap_5n8_staller,
        cap_3n5=bounds.cap_3n5,
        cap_3n5_staller=bounds.cap_3n5_staller,
        slack_7n11=bounds.slack_7n11,
        traces=tuple(stats),
        violations=tuple(violations),
        edge_list=serialize_edge_list(graph),
        phase1_structure_held=(held, total),
    )
    return row, kept


CSV_COLUMNS = (
    "instance",
    "n",
    "edges",
    "components",
    "class_no_d4",
    "gamma",
    "game_len",
    "game_len_staller",
    "worst_dominator_start",
    "worst_staller_start",
    "cap_5n8",
    "cap_5n8_staller",
    "cap_3n5",
    "cap_3n5_staller",
    "slack_7n11",
    "max_phase1_extra",
    "max_critical",
    "traces",
    "violations",
    "failed_checks",
)


@dataclass
class CheckReport:
    spec: CorpusSpec
    rows: tuple[InstanceRow, ...]
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for row in self.rows:
            traces = ";".join(
                f"{t.policy}-{t.start}:{t.turns}" for t in row.traces
            )
            failed = "|".join(sorted({v.check for v in row.violations}))
            lines.append(
                ",".join(
                    str(x)
                    for x in (
                        row.instance,
                        row.n,
                        row.edge_count,
                        row.component_count,
                        int(row.class_no_d4),
                        row.gamma,
                        row.game_len,
                        row.game_len_staller,
                        row.worst_dominator_start,
                        row.worst_staller_start,
                        row.cap_5n8,
                        row.cap_5n8_staller,
                        row.cap_3n5,
                        row.cap_3n5_staller,
                        row.slack_7n11,
                        max((t.phase1_extra for t in row.traces), default=0),
                        max((t.critical for t in row.traces), default=0),
                        traces,
                        len(row.violations),
                        failed,
                    )
                )
            )
        return "\n".join(lines) + "\n"

    def summary_text(self) -> str:
        held = sum(r.phase1_structure_held[0] for r in self.rows)
        total = sum(r.phase1_structure_held[1] for r in self.rows)
        lines = [
            f"instances: {len(self.rows)}",
            f"traces: {sum(len(r.traces) for r in self.rows)}",
            f"violations: {len(self.violations)}",
            f"max game_len/n: "
            + (
                "n/a"
                if not self.rows
                else f"{max((r.game_len / r.n for r in self.rows if r.n), default=0):.4f}"
            ),
            f"exploratory early-structure held: {held}/{total}",
        ]
        for v in self.violations[:50]:
            lines.append(f"  VIOLATION {v}")
        if len(self.violations) > 50:
            lines.append(f"  ... and {len(self.violations) - 50} more")
        return "\n".join(lines) + "\n"


def corpus_run(
    spec: CorpusSpec,
    *,
    fault_inject: bool = False,
    jobs: int = 1,
    keep_traces_on_failure: bool = True,
) -> tuple[CheckReport, dict[str, list[tuple[str, str, GameTrace]]]]:
    """Check every instance of the corpus; deterministic for a fixed spec.

    Returns the report plus, for failing instances, the traces needed to
    write replay bundles.
    """
    instances = corpus_instances(spec)
    rows: list[InstanceRow] = []
    bundles: dict[str, list[tuple[str, str, GameTrace]]] = {}

    def run_one(item):
        name, graph = item
        return check_instance(
            name, graph, spec, fault_inject=fault_inject, keep_traces=True
        )

    if jobs > 1 and len(instances) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_instance_task, [(spec, name, fault_inject) for name, _ in instances]))
        for (name, _), (row, kept) in zip(instances, results):
            rows.append(row)
            if row.violations and keep_traces_on_failure:
                bundles[name] = kept
    else:
        for item in instances:
            row, kept = run_one(item)
            rows.append(row)
            if row.violations and keep_traces_on_failure:
                bundles[item[0]] = kept
    violations = tuple(v for row in rows for v in row.violations)
    return CheckReport(spec=spec, rows=tuple(rows), violations=violations), bundles


@lru_cache(maxsize=4)
def _instances_by_name(spec: CorpusSpec) -> dict:
    return dict(corpus_instances(spec))


def _check_instance_task(args):
    spec, name, fault_inject = args
    graph = _instances_by_name(spec)[name]
    return check_instance(name, graph, spec, fault_inject=fault_inject, keep_traces=True)


def write_report(
    report: CheckReport,
    bundles,
    out_dir,
    *,
    figures: bool = True,
    basename: str = "report",
) -> list[str]:
    """Write CSV, summary, failure bundles and figures; returns the paths."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    paths = []
    csv_path = os.path.join(out_dir, f"{basename}.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_csv())
    paths.append(csv_path)
    summary_path = os.path.join(out_dir, f"{basename}-summary.txt")
    with open(summary_path, "w", encoding="utf-8") as fh:
        fh.write(report.summary_text())
    paths.append(summary_path)
    for name, kept in bundles.items():
        safe = name.replace("/", "_")
        bundle_dir = os.path.join(out_dir, "failures", safe)
        os.makedirs(bundle_dir, exist_ok=True)
        row = next(r for r in report.rows if r.instance == name)
        with open(os.path.join(bundle_dir, "instance.edges"), "w", encoding="utf-8") as fh:
            fh.write(row.edge_list)
        with open(os.path.join(bundle_dir, "violations.txt"), "w", encoding="utf-8") as fh:
            fh.write("".join(f"{v}\n" for v in row.violations))
        with open(os.path.join(bundle_dir, "context.txt"), "w", encoding="utf-8") as fh:
            fh.write(
                f"instance: {name}\ncorpus: {report.spec.kind}\n"
                f"seed: {report.spec.seed}\npolicies: {','.join(report.spec.policies)}\n"
                f"starts: {','.join(report.spec.starts)}\n"
            )
        for policy, start, trace in kept:
            stem = os.path.join(bundle_dir, f"trace-{policy}-{start}")
            with open(stem + ".txt", "w", encoding="utf-8") as fh:
                fh.write(trace_to_text(trace))
            with open(stem + ".json", "w", encoding="utf-8") as fh:
                fh.write(trace_to_json(trace))
        paths.append(bundle_dir)
    if figures and report.rows:
        from .figures import save_bounds_figure

        fig_path = os.path.join(out_dir, f"{basename}-bounds.png")
        save_bounds_figure(report.rows, fig_path)
        paths.append(fig_path)
    return paths


# ---------------------------------------------------------------------------
# extremal scan


@dataclass(frozen=True)
class ScanRow:
    order: int
    tree_count: int
    max_game_len: int
    cap_3n5: int
    exceeds: bool
    attainer_count: int
    attainers: tuple[str, ...]  # compact edge strings, capped


def _compact_edges(graph: Graph) -> str:
    return "|".join(f"{u}-{v}" for u, v in sorted(graph.edges)) or "-"


def extremal_scan(n_max: int, *, attainer_cap: int = 12) -> tuple[ScanRow, ...]:
    """Per-order maximum optimal game length over all trees, with attainers.

    A tree beating the three-fifths cap would be reported, not suppressed;
    at reachable orders none exists.
    """
    if n_max > 18:
        raise LimitExceeded("the scan enumerates trees only up to 18 vertices")
    rows = []
    for n in range(2, n_max + 1):
        best = -1
        attainers: list[str] = []
        count = 0
        total = 0
        for tree in enumerate_trees(n):
            total += 1
            value = GameSolver(tree).remaining(0, Player.DOMINATOR)
            if value > best:
                best = value
                attainers = [_compact_edges(tree)]
                count = 1
            elif value == best:
                count += 1
                if len(attainers) < attainer_cap:
                    attainers.append(_compact_edges(tree))
        cap = (3 * n) // 5
        rows.append(
            ScanRow(
                order=n,
                tree_count=total,
                max_game_len=best,
                cap_3n5=cap,
                exceeds=best > cap,
                attainer_count=count,
                attainers=tuple(attainers),
            )
        )
    return tuple(rows)


def scan_to_csv(rows) -> str:
    lines = ["order,tree_count,max_game_len,cap_3n5,exceeds,attainer_count,attainers"]
    for r in rows:
        lines.append(
            f"{r.order},{r.tree_count},{r.max_game_len},{r.cap_3n5},"
            f"{int(r.exceeds)},{r.attainer_count},{';'.join(r.attainers)}"
        )
    return "\n".join(lines) + "\n"

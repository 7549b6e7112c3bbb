"""Domination-game engine for forests.

Exact solvers, the phased greedy strategy, and corpus-level verification
of the bookkeeping it guarantees, with a CLI and a small HTTP facade for
interactive play.
"""

from .errors import DomgameError
from .forest import (
    Forest,
    Graph,
    VertexClass,
    classify_vertices,
    enumerate_trees,
    leaf_pair_at_distance,
    parse_edge_list,
    random_caterpillar,
    random_forest,
    random_tree,
    serialize_edge_list,
)
from .residual import (
    Color,
    MoveOutcome,
    Player,
    ResidualState,
    init_state,
    load_snapshot,
)
from .solver import (
    GameSolver,
    SolveResult,
    best_reply,
    domination_number,
    game_dom_number,
    worst_case_turns,
)
from .strategy import (
    GameRunner,
    GameTrace,
    GreedyMinStaller,
    OptimalStaller,
    Phase,
    PhasedDominator,
    RandomStaller,
    ScriptedStaller,
    TurnRecord,
    advance_phase,
    dominator_choose,
    is_critical_turn,
    ledger,
    max_gain_moves,
    phase_applicable,
    run_game,
    trace_to_json,
    trace_to_text,
)

__version__ = "0.1.0"

__all__ = [
    "Color",
    "DomgameError",
    "Forest",
    "GameRunner",
    "GameSolver",
    "GameTrace",
    "Graph",
    "GreedyMinStaller",
    "MoveOutcome",
    "OptimalStaller",
    "Phase",
    "PhasedDominator",
    "Player",
    "RandomStaller",
    "ResidualState",
    "ScriptedStaller",
    "SolveResult",
    "TurnRecord",
    "VertexClass",
    "advance_phase",
    "best_reply",
    "classify_vertices",
    "dominator_choose",
    "domination_number",
    "enumerate_trees",
    "game_dom_number",
    "init_state",
    "is_critical_turn",
    "leaf_pair_at_distance",
    "ledger",
    "load_snapshot",
    "max_gain_moves",
    "parse_edge_list",
    "phase_applicable",
    "random_caterpillar",
    "random_forest",
    "random_tree",
    "run_game",
    "serialize_edge_list",
    "trace_to_json",
    "trace_to_text",
    "worst_case_turns",
]

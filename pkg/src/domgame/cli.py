"""Command line interface.

Subcommands::

    solve      exact values for one input graph
    strategy   play the phased engine against a chosen opponent policy
    verify     corpus checking campaign (CSV + summary + figures)
    scan       per-order maxima over all trees up to a size cap
    gen        emit generated instances in the edge-list format
    play       interactive game in the terminal
    serve      HTTP facade for the browser client

Exit codes: 0 success, 1 verification found violations, 2 unreadable or
malformed input, 3 instance too large for exact search, 4 input rejected
by the strategy (cyclic or with isolated vertices).
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import (
    CycleDetected,
    DomgameError,
    DuplicateEdge,
    GameOver,
    InfeasibleShape,
    InvalidSnapshot,
    IsolatedVertexPresent,
    LimitExceeded,
    MalformedLine,
    NotAForest,
    TooLarge,
    VertexOutOfRange,
)
from .forest import (
    parse_edge_list,
    random_caterpillar,
    random_forest,
    random_tree,
    serialize_edge_list,
)
from .residual import Player
from .solver import GameSolver, best_reply, domination_number, game_dom_number, worst_case_turns
from .strategy import (
    GameRunner,
    PhasedDominator,
    ScriptedStaller,
    STALLER_POLICIES,
    ledger,
    run_game,
    trace_to_json,
    trace_to_text,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_TOO_LARGE = 3
EXIT_BAD_GAME_INPUT = 4

_PARSE_ERRORS = (
    MalformedLine,
    DuplicateEdge,
    VertexOutOfRange,
    CycleDetected,
    InvalidSnapshot,
    InfeasibleShape,
    LimitExceeded,
    OSError,
)

_START = {"dominator": Player.DOMINATOR, "staller": Player.STALLER}


def _read_graph(path: str, *, allow_general: bool = False):
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), allow_cycles=allow_general)


def _bound_segments(n: int, turns: int, class_no_d4: bool) -> tuple[str, bool]:
    cap35 = (3 * n) // 5
    cap58 = (5 * n) // 8
    seg35 = f"{turns} <= {cap35} (3n/5"
    if not class_no_d4:
        seg35 += " n/a: leaf pair at distance 4"
    seg35 += ")"
    seg58 = f"{turns} <= {cap58} (5n/8)"
    ok = turns <= cap58 and (not class_no_d4 or turns <= cap35)
    return f"{seg35} ; {seg58}", ok


def cmd_solve(args) -> int:
    graph = _read_graph(args.input, allow_general=args.allow_general)
    start = _START[args.start]
    gamma = domination_number(graph)
    result = game_dom_number(graph, start)
    key = "gamma_g" if start is Player.DOMINATOR else "gamma_g_staller"
    print(f"gamma={gamma} {key}={result.value}")
    print("optimal_first_moves=" + ",".join(str(v) for v in result.optimal_first_moves))
    return EXIT_OK


def cmd_strategy(args) -> int:
    graph = _read_graph(args.input)
    start = _START[args.start]
    from .forest import leaf_pair_at_distance

    if args.staller == "worst":
        turns, line = worst_case_turns(graph, PhasedDominator(), start)
        moves = line[1::2] if start is Player.DOMINATOR else line[0::2]
        trace = run_game(graph, ScriptedStaller(moves), start, args.seed)
    else:
        policy = STALLER_POLICIES[args.staller]()
        trace = run_game(graph, policy, start, args.seed)
    summary = ledger(trace)
    class_no_d4 = not leaf_pair_at_distance(graph, 4)
    segments, ok = _bound_segments(graph.n, trace.turns, class_no_d4)
    print(
        f"turns={trace.turns} extra={summary.phase1_extra} "
        f"critical={summary.critical_count} ; {segments} {'PASS' if ok else 'FAIL'}"
    )
    for entry in summary.phases:
        print(
            f"phase {int(entry.phase)}: turns={entry.turns} "
            f"decrease={entry.decrease} floor={entry.floor}"
        )
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace_to_text(trace))
        with open(args.trace + ".json", "w", encoding="utf-8") as fh:
            fh.write(trace_to_json(trace))
    return EXIT_OK if ok else EXIT_VIOLATIONS


def cmd_verify(args) -> int:
    from .verify import CorpusSpec, corpus_run, write_report

    check_traces = args.suite in ("all", "lemmas")
    seeds = [int(s) for s in args.seeds.split(",") if s.strip() != ""]
    specs = [
        CorpusSpec(kind="trees", n_max=args.nmax, check_traces=check_traces)
    ]
    for seed in seeds:
        specs.append(
            CorpusSpec(
                kind="forests",
                n_max=args.forest_nmax,
                n_min=4,
                count=args.forests,
                seed=seed,
                check_traces=check_traces,
            )
        )
        specs.append(
            CorpusSpec(
                kind="caterpillars",
                n_max=args.caterpillar_nmax,
                count=args.caterpillars,
                seed=seed,
                check_traces=check_traces,
            )
        )
    total_violations = 0
    for i, spec in enumerate(specs):
        report, bundles = corpus_run(spec, fault_inject=args.fault_inject, jobs=args.jobs)
        total_violations += len(report.violations)
        write_report(
            report,
            bundles,
            args.out,
            figures=not args.no_figures,
            basename=f"{spec.kind}-{i}",
        )
        print(f"[{spec.kind}] instances={len(report.rows)} violations={len(report.violations)}")
        sys.stdout.write(report.summary_text())
    print(f"total violations: {total_violations}")
    return EXIT_OK if total_violations == 0 else EXIT_VIOLATIONS


def cmd_scan(args) -> int:
    from .verify import extremal_scan, scan_to_csv

    rows = extremal_scan(args.nmax)
    print("order tree_count max_game_len cap_3n5 attainers")
    for r in rows:
        flag = " EXCEEDS-3n/5" if r.exceeds else ""
        print(
            f"{r.order:>5} {r.tree_count:>10} {r.max_game_len:>12} {r.cap_3n5:>7}"
            f" {r.attainer_count:>9}{flag}"
        )
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        csv_path = os.path.join(args.out, "scan.csv")
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(scan_to_csv(rows))
        from .figures import save_scan_figure

        save_scan_figure(rows, os.path.join(args.out, "scan.png"))
        print(f"wrote {csv_path} and scan.png")
    return EXIT_OK


def cmd_gen(args) -> int:
    texts = []
    for i in range(args.count):
        seed = args.seed + i
        if args.kind == "tree":
            graph = random_tree(args.n, seed)
        elif args.kind == "caterpillar":
            graph = random_caterpillar(args.n, seed)
        else:
            graph = random_forest(args.n, args.components, seed)
        texts.append(serialize_edge_list(graph))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, text in enumerate(texts):
            path = os.path.join(args.out, f"{args.kind}-{args.n}-{args.seed + i}.edges")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(path)
    else:
        for text in texts:
            sys.stdout.write(text)
    return EXIT_OK


def _render_board(state) -> str:
    lines = []
    for v in range(state.base.n):
        color = state.colors[v]
        mark = "*" if state.is_legal(v) else " "
        neighbors = ",".join(str(u) for u in state.active_adjacency[v]) or "-"
        lines.append(f"  {v:>3} [{color.value}]{mark} -> {neighbors}")
    return "\n".join(lines)


def cmd_play(args) -> int:
    graph = _read_graph(args.input)
    human = _START[args.side]
    start = _START[args.start]
    runner = GameRunner(graph, start)
    solver = GameSolver(graph) if graph.n <= 64 else None
    policy = STALLER_POLICIES[args.staller]()
    import random as _random

    rng = _random.Random(args.seed)
    out = sys.stdout

    def engine_turn():
        if runner.to_move is Player.DOMINATOR:
            rec = runner.play_engine_move()
        else:
            rec = runner.play(policy(runner.state, rng))
        out.write(
            f"engine plays {rec.vertex} (gain {rec.gain}, phase {int(rec.phase)})\n"
        )

    out.write(f"playing on {graph.n} vertices; you are the {human.value}\n")
    while not runner.over:
        if runner.to_move is not human:
            engine_turn()
            continue
        out.write("board (W=3 B=2 R=0 points; * marks legal):\n")
        out.write(_render_board(runner.state) + "\n")
        out.write("your move (vertex id, 'hint' or 'quit'): ")
        out.flush()
        line = sys.stdin.readline()
        if not line:
            out.write("\nresigned.\n")
            return EXIT_OK
        token = line.strip().lower()
        if token == "quit":
            out.write("resigned.\n")
            return EXIT_OK
        if token == "hint":
            if solver is None:
                out.write("no hints for graphs this large\n")
            else:
                vertex, value = best_reply(runner.state, human, solver)
                out.write(f"hint: play {vertex} ({value} turns remain with best play)\n")
            continue
        try:
            vertex = int(token)
        except ValueError:
            out.write("enter a vertex id\n")
            continue
        try:
            rec = runner.play(vertex)
        except (DomgameError, IndexError) as exc:
            out.write(f"illegal: {exc}\n")
            continue
        out.write(f"you play {rec.vertex} (gain {rec.gain})\n")
    trace = runner.build_trace()
    from .forest import leaf_pair_at_distance

    segments, ok = _bound_segments(graph.n, trace.turns, not leaf_pair_at_distance(graph, 4))
    out.write(f"game over in {trace.turns} turns ; {segments} {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import make_server

    server = make_server(args.host, args.port, ui_dir=args.ui)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="domgame", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact values for one graph")
    p.add_argument("--input", required=True)
    p.add_argument("--start", choices=("dominator", "staller"), default="dominator")
    p.add_argument("--allow-general", action="store_true", help="accept cyclic graphs")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("strategy", help="run the phased engine against a policy")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--staller", choices=("optimal", "greedy", "random", "worst"), default="optimal"
    )
    p.add_argument("--start", choices=("dominator", "staller"), default="dominator")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write the trace here (plus .json next to it)")
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("verify", help="corpus checking campaign")
    p.add_argument("--suite", choices=("all", "lemmas", "bounds"), default="all")
    p.add_argument("--nmax", type=int, default=12, help="tree enumeration cap")
    p.add_argument("--seeds", default="0", help="comma-separated corpus seeds")
    p.add_argument("--forests", type=int, default=500)
    p.add_argument("--forest-nmax", type=int, default=20)
    p.add_argument("--caterpillars", type=int, default=200)
    p.add_argument("--caterpillar-nmax", type=int, default=20)
    p.add_argument("--out", default="verify-out")
    p.add_argument(
        "--jobs", type=int, default=int(os.environ.get("DOMGAME_JOBS", "1"))
    )
    p.add_argument("--no-figures", action="store_true")
    p.add_argument(
        "--fault-inject",
        action="store_true",
        help="corrupt one recorded gain per trace to prove checks can fail",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="per-order maxima over all trees")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("gen", help="emit generated instances")
    p.add_argument("--kind", choices=("tree", "forest", "caterpillar"), default="tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--components", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("play", help="interactive game in the terminal")
    p.add_argument("--input", required=True)
    p.add_argument("--side", choices=("dominator", "staller"), default="staller")
    p.add_argument("--start", choices=("dominator", "staller"), default="dominator")
    p.add_argument("--staller", choices=("optimal", "greedy", "random"), default="optimal")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="HTTP facade for the browser client")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8023)
    p.add_argument("--ui", default=None, help="static directory for the browser client")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (NotAForest, IsolatedVertexPresent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_GAME_INPUT
    except GameOver as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()

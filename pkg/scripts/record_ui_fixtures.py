"""Record service views as fixtures for the browser client's contract tests.

Run from the repository root:

    python scripts/record_ui_fixtures.py

Writes frontend/test/fixtures/{states.json,p5_game.json}.  Everything is
generated through GameService directly, so the fixtures are exactly what
the HTTP layer would serve.
"""

import json
import os

from domgame.service import GameService

P5 = "5\n0 1\n1 2\n2 3\n3 4\n"
P4 = "4\n0 1\n1 2\n2 3\n"
P3 = "3\n0 1\n1 2\n"
TWO_PAIRS = "4\n0 1\n2 3\n"
SPIDER = "7\n0 1\n1 2\n0 3\n3 4\n0 5\n5 6\n"
CRITICAL_TREE = "6\n0 1\n1 2\n2 3\n3 4\n2 5\n"

OUT_DIR = os.path.join("frontend", "test", "fixtures")


def scrub(view, name):
    view = json.loads(json.dumps(view))
    view["id"] = f"fx-{name}"
    return view


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    service = GameService()
    states = []

    def keep(name, view):
        states.append({"name": name, "view": scrub(view, name)})

    # 1-2: the p5 game before and after the human reply
    v = service.create({"edge_list": P5, "human": "staller", "start": "dominator"})
    keep("p5-after-engine-opening", v)
    moved = service.move(v["id"], {"vertex": 2})
    keep("p5-finished", moved)

    # 3: a game the engine finishes on creation
    keep(
        "p3-over-immediately",
        service.create({"edge_list": P3, "human": "staller", "start": "dominator"}),
    )

    # 4-5: the human plays the engine side
    v = service.create({"edge_list": P4, "human": "dominator", "start": "dominator"})
    keep("p4-fresh-human-engine-side", v)
    keep("p4-after-human-move", service.move(v["id"], {"vertex": 1}))

    # 6: two separate pair components
    keep(
        "two-pairs",
        service.create({"edge_list": TWO_PAIRS, "human": "staller", "start": "dominator"}),
    )

    # 7: generator-built caterpillar
    keep(
        "caterpillar-generated",
        service.create(
            {
                "generator": {"kind": "caterpillar", "n": 8, "seed": 4},
                "human": "staller",
                "start": "dominator",
            }
        ),
    )

    # 8: the maximizer (human) opens the game
    keep(
        "spider-human-opens",
        service.create({"edge_list": SPIDER, "human": "staller", "start": "staller"}),
    )

    # 9: a board played through its critical turn (the human takes the
    # center of the white-white-blue-white-white path for just 3 points)
    v = service.create(
        {"edge_list": CRITICAL_TREE, "human": "staller", "start": "staller"}
    )
    service.move(v["id"], {"vertex": 5})
    keep("critical-tree-mid-game", service.move(v["id"], {"vertex": 2}))

    # 10: a larger generated tree
    keep(
        "tree12-generated",
        service.create(
            {
                "generator": {"kind": "tree", "n": 12, "seed": 2},
                "human": "staller",
                "start": "dominator",
            }
        ),
    )

    with open(os.path.join(OUT_DIR, "states.json"), "w", encoding="utf-8") as fh:
        json.dump(states, fh, indent=2, sort_keys=True)
        fh.write("\n")

    # the full scripted p5 exchange for the play-through test
    service = GameService()
    created = service.create({"edge_list": P5, "human": "staller", "start": "dominator"})
    sid = created["id"]
    hint = service.hint(sid)
    moved = service.move(sid, {"vertex": 2})
    game = {
        "create_request": {"edge_list": P5, "human": "staller", "start": "dominator"},
        "create_response": scrub(created, "p5-script"),
        "hint_response": hint,
        "move_request": {"vertex": 2},
        "move_response": scrub(moved, "p5-script"),
    }
    with open(os.path.join(OUT_DIR, "p5_game.json"), "w", encoding="utf-8") as fh:
        json.dump(game, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(states)} states and the scripted p5 game to {OUT_DIR}")


if __name__ == "__main__":
    main()

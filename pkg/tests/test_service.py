import json
import threading
import urllib.error
import urllib.request

import pytest

from domgame.forest import Forest
from domgame.residual import Player
from domgame.service import GameService, make_server
from domgame.strategy import GameRunner

P5 = "5\n0 1\n1 2\n2 3\n3 4\n"
P3 = "3\n0 1\n1 2\n"


@pytest.fixture(scope="module")
def server_url():
    server = make_server("127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    yield f"http://{host}:{port}"
    server.shutdown()
    server.server_close()


def call(url, method="GET", body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(url, data=data, method=method)
    if data is not None:
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode())


def new_game(server_url, **kwargs):
    payload = {"edge_list": P5, "human": "staller", "start": "dominator"}
    payload.update(kwargs)
    status, view = call(f"{server_url}/games", "POST", payload)
    assert status == 201, view
    return view


class TestCreate:
    def test_engine_opens_p3_and_finishes(self, server_url):
        view = new_game(server_url, edge_list=P3)
        assert view["over"] and view["turns"] == 1
        assert view["to_move"] is None
        assert all(not v["legal"] for v in view["vertices"])
        assert view["records"][0]["vertex"] == 1

    def test_engine_opening_on_p5(self, server_url):
        view = new_game(server_url)
        assert not view["over"] and view["turns"] == 1
        assert view["to_move"] == "human"
        assert view["records"][0] == {
            "index": 1,
            "player": "dominator",
            "vertex": 1,
            "gain": 7,
            "phase": 1,
            "newly_red": 2,
            "critical": False,
        }
        legal = {v["id"] for v in view["vertices"] if v["legal"]}
        assert legal == {2, 3, 4}
        colors = {v["id"]: v["color"] for v in view["vertices"]}
        assert colors == {0: "R", 1: "R", 2: "B", 3: "W", 4: "W"}

    def test_generator_game(self, server_url):
        status, view = call(
            f"{server_url}/games",
            "POST",
            {
                "generator": {"kind": "caterpillar", "n": 8, "seed": 4},
                "human": "dominator",
                "start": "dominator",
            },
        )
        assert status == 201
        assert view["n"] == 8 and view["to_move"] == "human"
        assert view["turns"] == 0  # the human engine side moves first

    def test_bad_requests(self, server_url):
        status, body = call(f"{server_url}/games", "POST", {"edge_list": "x"})
        assert status == 400
        status, body = call(
            f"{server_url}/games", "POST", {"edge_list": P5, "human": "nobody"}
        )
        assert status == 400
        status, body = call(f"{server_url}/games", "POST", {"edge_list": "3\n0 1\n"})
        assert status == 400  # isolated vertex

    def test_unknown_session(self, server_url):
        status, _ = call(f"{server_url}/games/missing")
        assert status == 404


class TestMoves:
    def test_illegal_vertex_is_422(self, server_url):
        view = new_game(server_url)
        status, body = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": 0}
        )
        assert status == 422

    def test_full_p5_game(self, server_url):
        view = new_game(server_url)
        status, after = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": 2}
        )
        assert status == 200
        assert [m["vertex"] for m in after["applied"]] == [2, 3]
        assert after["over"] and after["turns"] == 3
        assert after["move_log"] == [1, 2, 3]
        assert after["bounds"]["cap_3n5"] == 3
        assert not after["bounds"]["class_no_d4"]

    def test_move_after_game_over_is_409(self, server_url):
        view = new_game(server_url, edge_list=P3)
        status, _ = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": 0}
        )
        assert status == 409

    def test_malformed_body(self, server_url):
        view = new_game(server_url)
        status, _ = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": "middle"}
        )
        assert status == 400


class TestHint:
    def test_hint_maximizes_turns(self, server_url):
        view = new_game(server_url)
        status, hint = call(f"{server_url}/games/{view['id']}/hint")
        assert status == 200
        assert hint["vertex"] == 2
        assert hint["remaining_with_best_play"] == 2

    def test_hint_when_over_is_409(self, server_url):
        view = new_game(server_url, edge_list=P3)
        status, _ = call(f"{server_url}/games/{view['id']}/hint")
        assert status == 409


class TestReplayability:
    def test_move_log_reproduces_the_state(self, server_url):
        view = new_game(server_url)
        _, after = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": 2}
        )
        runner = GameRunner(
            Forest(5, frozenset({(0, 1), (1, 2), (2, 3), (3, 4)})),
            Player.DOMINATOR,
        )
        for vertex in after["move_log"]:
            runner.play(vertex)
        assert runner.over
        colors = {v["id"]: v["color"] for v in after["vertices"]}
        assert colors == {
            v: c.value for v, c in enumerate(runner.state.colors)
        }
        assert [r.vertex for r in runner.records] == after["move_log"]


class TestLiveLedger:
    def test_critical_turn_flag_is_live(self, server_url):
        # pendant-on-a-path board: the human builds the critical path,
        # the engine answers on a stem, and the human's center reply is
        # flagged in the very response that applies it
        tree = "6\n0 1\n1 2\n2 3\n3 4\n2 5\n"
        view = new_game(server_url, edge_list=tree, start="staller")
        status, mid = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": 5}
        )
        assert status == 200 and not mid["over"]
        status, done = call(
            f"{server_url}/games/{view['id']}/moves", "POST", {"vertex": 2}
        )
        assert status == 200
        flags = [(r["vertex"], r["critical"]) for r in done["records"]]
        assert (2, True) in flags
        assert done["ledger"]["critical"] == 1
        assert done["applied"][0]["critical"] is True


class TestSessionHygiene:
    def test_sessions_expire(self):
        service = GameService(idle_timeout=0.05)
        view = service.create(
            {"edge_list": P5, "human": "staller", "start": "dominator"}
        )
        import time

        time.sleep(0.12)
        from domgame.service import ServiceError

        with pytest.raises(ServiceError) as err:
            service.view(view["id"])
        assert err.value.status == 404

    def test_session_ids_are_unguessable_length(self):
        service = GameService()
        view = service.create(
            {"edge_list": P5, "human": "staller", "start": "dominator"}
        )
        assert len(view["id"]) >= 16

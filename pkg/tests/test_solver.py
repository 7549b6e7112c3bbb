import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domgame.errors import GameOver, IsolatedVertexPresent, NotAForest, TooLarge
from domgame.forest import Forest, Graph, enumerate_trees, random_forest, random_tree
from domgame.residual import Player, init_state, state_from_moves
from domgame.solver import (
    GameSolver,
    best_reply,
    domination_number,
    game_dom_number,
    worst_case_turns,
)
from domgame.strategy import (
    GreedyMinStaller,
    PhasedDominator,
    RandomStaller,
    run_game,
)

from conftest import path_forest, random_forests, star_forest
from oracles import brute_force_domination, naive_game_length

D, S = Player.DOMINATOR, Player.STALLER


class TestDominationNumber:
    def test_examples(self, p3, p5):
        assert domination_number(p3) == 1
        assert domination_number(p5) == 2
        assert domination_number(Forest(4, frozenset({(0, 1), (2, 3)}))) == 2

    def test_witness_for_p5(self, p5):
        # {1, 4} dominates everything, nothing smaller does
        closed = p5.closed_masks
        assert closed[1] | closed[4] == p5.full_mask

    def test_matches_brute_force_on_trees(self):
        for n in range(1, 9):
            for tree in enumerate_trees(n):
                assert domination_number(tree) == brute_force_domination(tree)

    def test_matches_brute_force_on_forests(self):
        for f in random_forests(60, 12, seed=7):
            assert domination_number(f) == brute_force_domination(f)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            domination_number(path_forest(65))


class TestGameValues:
    def test_examples(self, p2, p3, p5):
        assert game_dom_number(p2, D).value == 1
        assert game_dom_number(p3, D).value == 1
        assert game_dom_number(p3, S).value == 2
        assert game_dom_number(p5, D).value == 3
        assert game_dom_number(star_forest(5), D).value == 1

    def test_optimal_first_moves(self, p3):
        result = game_dom_number(p3, D)
        assert result.optimal_first_moves == (1,)
        assert result.nodes_expanded > 0

    def test_moves_empty_only_when_over(self):
        empty = Forest(0, frozenset())
        result = game_dom_number(empty, D)
        assert result.value == 0 and result.optimal_first_moves == ()

    def test_isolated_rejected(self):
        with pytest.raises(IsolatedVertexPresent):
            game_dom_number(Forest(3, frozenset({(0, 1)})), D)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            game_dom_number(path_forest(65), D)

    def test_matches_naive_small(self):
        for n in range(1, 9):
            for tree in enumerate_trees(n):
                solver = GameSolver(tree)
                for first in (D, S):
                    assert solver.remaining(0, first) == naive_game_length(
                        tree, first is S
                    )

    @given(st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_matches_naive_random_forests(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 9)
        f = random_forest(n, rng.randint(1, max(1, n // 3)), rng.getrandbits(32))
        solver = GameSolver(f)
        assert solver.remaining(0, D) == naive_game_length(f, False)
        assert solver.remaining(0, S) == naive_game_length(f, True)

    def test_relabel_invariance(self):
        rng = random.Random(123)
        for _ in range(100):
            n = rng.randint(2, 10)
            t = random_tree(n, rng.getrandbits(32))
            perm = list(range(n))
            rng.shuffle(perm)
            relabeled = Forest(
                n, frozenset((perm[u], perm[v]) for u, v in t.edges)
            )
            for first in (D, S):
                assert (
                    game_dom_number(t, first).value
                    == game_dom_number(relabeled, first).value
                )

    def test_classic_bounds_on_random_instances(self):
        for f in random_forests(60, 12, seed=31):
            gamma = domination_number(f)
            solver = GameSolver(f)
            gg = solver.remaining(0, D)
            ggs = solver.remaining(0, S)
            assert gamma <= gg <= 2 * gamma - 1
            assert gamma <= ggs <= 2 * gamma

    def test_memo_shared_across_start_orders(self, p5):
        solver = GameSolver(p5)
        solver.remaining(0, D)
        first_nodes = solver.nodes_expanded
        solver.remaining(0, S)
        assert solver.nodes_expanded >= first_nodes  # reuses the same table

    def test_works_on_general_graphs(self):
        triangle = Graph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
        assert game_dom_number(triangle, D).value == 1
        assert game_dom_number(triangle, S).value == 1


class TestBestReply:
    def test_fresh_p3_engine(self, p3):
        assert best_reply(init_state(p3), D) == (1, 1)

    def test_fresh_p2_maximizer_tie_break(self, p2):
        assert best_reply(init_state(p2), S) == (0, 1)

    def test_endgame_pair(self, p5):
        state = state_from_moves(p5, [1, 2])
        vertex, value = best_reply(state, D)
        assert vertex == 3 and value == 1

    def test_game_over(self, p3):
        with pytest.raises(GameOver):
            best_reply(state_from_moves(p3, [1]), D)


class TestWorstCase:
    def test_p2(self, p2):
        turns, line = worst_case_turns(p2, PhasedDominator(), D)
        assert turns == 1 and len(line) == 1

    def test_p5(self, p5):
        turns, line = worst_case_turns(p5, PhasedDominator(), D)
        assert turns == 3
        assert line == (1, 2, 3)

    def test_dominates_fixed_policies(self):
        policy = PhasedDominator()
        for f in random_forests(25, 12, seed=5):
            worst_d, _ = worst_case_turns(f, policy, D)
            worst_s, _ = worst_case_turns(f, policy, S)
            for maximizer in (GreedyMinStaller(), RandomStaller()):
                assert run_game(f, maximizer, D, seed=1).turns <= worst_d
                assert run_game(f, maximizer, S, seed=1).turns <= worst_s

    def test_at_least_optimal_when_engine_starts(self):
        for n in range(2, 9):
            for tree in enumerate_trees(n):
                worst, _ = worst_case_turns(tree, PhasedDominator(), D)
                assert worst >= game_dom_number(tree, D).value

    def test_rejects_cycles_and_isolates(self):
        triangle = Graph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
        with pytest.raises(NotAForest):
            worst_case_turns(triangle, PhasedDominator(), D)
        with pytest.raises(IsolatedVertexPresent):
            worst_case_turns(Forest(3, frozenset({(0, 1)})), PhasedDominator(), D)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            worst_case_turns(path_forest(65), PhasedDominator(), D)

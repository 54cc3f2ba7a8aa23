import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from minkowski_games.boundedness import decide_bruteforce
from minkowski_games.generators import RandomGameConfig, random_boundedness_game
from minkowski_games.geometry import norm_inf, vec
from minkowski_games.model import PLAYER_A, PLAYER_B, MinkowskiGame, Move, one_sided
from minkowski_games.reductions import Cnf3, threesat_to_boundedness
from minkowski_games.strategies import (
    ConsistencyError,
    ConvexApproxState,
    GreedyPlayerB,
    PlusMinusState,
    RandomPlayerA,
    RandomPlayerB,
    ScriptedPlayerA,
    UsageError,
    convex_approx_respond,
    convex_approx_respond_nearest,
    harmonic,
    player_a_general_strategy,
    player_a_onesided_strategy,
    player_b_certificate_strategy,
    plusminus_player_a,
    plusminus_player_b_harmonic,
    simulate,
)

from oracles import harmonic_worst_case

# --- convex approximation ----------------------------------------------------


def test_convex_approx_segment_example():
    s = ConvexApproxState([vec([0]), vec([1])], vec([1]))
    assert convex_approx_respond(s, vec([0])) == (F(0),)
    assert s.deviation == (F(0),)
    assert -1 <= s.deviation[0] <= 0


def test_convex_approx_basis_example():
    s = ConvexApproxState([vec([1, 0]), vec([0, 1])], vec([1, 1]))
    assert convex_approx_respond(s, vec(["1/2", "1/2"])) == (F(1), F(0))
    assert s.deviation == (F(-1, 2), F(1, 2))
    assert s.invariant_holds()


def test_nearest_examples():
    s = ConvexApproxState([vec([0]), vec([1])], vec([1]))
    assert convex_approx_respond_nearest(s, vec(["1/4"])) == (F(0),)
    assert s.deviation == (F(1, 4),)
    assert convex_approx_respond_nearest(s, vec(["1/2"])) == (F(1),)
    assert s.deviation == (F(-1, 4),)
    t = ConvexApproxState([vec([0]), vec([1])], vec([1]))
    assert convex_approx_respond_nearest(t, vec([1])) == (F(1),)
    assert t.deviation == (F(0),)


def test_convex_approx_rejects_points_outside():
    s = ConvexApproxState([vec([0]), vec([1])], vec([1]))
    with pytest.raises(UsageError):
        convex_approx_respond(s, vec([2]))


@given(st.integers(0, 2**32 - 1))
def test_convex_approx_deviation_stays_in_margin(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    base = [tuple(F(rng.randint(-2, 2)) for _ in range(d)) for _ in range(rng.randint(1, 4))]
    # c = -d * (a point of CH(B)) keeps deviation + c in d*CH(B) at the start
    c = tuple(-d * x for x in base[0])
    c = tuple(-x for x in c)
    s = ConvexApproxState(base, c)
    assert s.invariant_holds()
    for _ in range(15):
        raw = [rng.randint(0, 3) for _ in base]
        if not any(raw):
            raw[0] = 1
        v = tuple(sum(F(r, sum(raw)) * b[i] for r, b in zip(raw, base)) for i in range(d))
        u = convex_approx_respond(s, v)
        assert u in base
        assert s.invariant_holds()


# --- +1/-1 game ----------------------------------------------------------------


def test_plusminus_first_move_and_fixed_adversary():
    s = PlusMinusState(2)
    assert plusminus_player_a(s) == 0
    for _ in range(100):
        assert plusminus_player_a(s, (1, 0)) == 0
        assert min(s.accumulators) >= -2


def test_plusminus_requires_stochastic_vectors():
    s = PlusMinusState(2)
    plusminus_player_a(s)
    with pytest.raises(UsageError):
        plusminus_player_a(s, (F(1, 2), F(1, 3)))
    with pytest.raises(UsageError):
        plusminus_player_a(s)


def _play_plusminus(d, adversary, rounds):
    s = PlusMinusState(d)
    hist = [plusminus_player_a(s)]
    worst = min(s.accumulators)
    for _ in range(rounds):
        v = adversary(s, hist)
        hist.append(plusminus_player_a(s, v))
        worst = min(worst, min(s.accumulators))
    return worst


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_plusminus_threshold_vs_harmonic(d):
    worst = _play_plusminus(d, lambda s, h: plusminus_player_b_harmonic(d, len(h), h), 500)
    assert worst >= -d


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_plusminus_threshold_vs_random(d, seed):
    rng = random.Random(seed)

    def adv(s, h):
        raw = [rng.randint(0, 4) for _ in range(d)]
        if not any(raw):
            raw[rng.randrange(d)] = 1
        return tuple(F(r, sum(raw)) for r in raw)

    assert _play_plusminus(d, adv, 200) >= -d


def test_harmonic_examples():
    assert plusminus_player_b_harmonic(3, 0) == (F(1, 3),) * 3
    assert plusminus_player_b_harmonic(3, 1, [0]) == (F(0), F(1, 2), F(1, 2))
    assert plusminus_player_b_harmonic(2, 0) == (F(1, 2),) * 2
    assert harmonic(3) == F(11, 6)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_harmonic_reaches_bound_against_every_sequence(d):
    best_for_a, bound = harmonic_worst_case(d)
    assert best_for_a <= bound
    assert bound == -harmonic(d - 1)


# --- Player A strategies -------------------------------------------------------


def test_onesided_alternates():
    g = one_sided(1, [Move.points([-1]), Move.points([1])])
    tr = simulate(g, player_a_onesided_strategy(g), RandomPlayerB(g, 1), 1000)
    assert tr.max_norm <= 1


def test_onesided_single_zero_move():
    g = one_sided(1, [Move.points([0])])
    tr = simulate(g, player_a_onesided_strategy(g), RandomPlayerB(g), 50)
    assert set(tr.positions) == {(F(0),)}


def test_onesided_three_moves_in_plane():
    g = one_sided(2, [Move.points([1, 0], [1, 1]), Move.points([-1, 0], [-1, 1]), Move.points([0, -1])])
    assert decide_bruteforce(g).tag == PLAYER_A
    sa = player_a_onesided_strategy(g)
    seen = []
    tr = simulate(g, sa, RandomPlayerB(g, 3, mix=0.5), 1000, on_step=lambda k, p: seen.append(sa.represented() == p) if k % 2 == 0 else None)
    R = max(norm_inf(v) for m in g.moves_a for v in m.vertices)
    assert tr.max_norm <= 2 * len(g.moves_a) * R
    assert all(seen)


def test_general_strategy_on_two_point_game():
    g = one_sided(1, [Move.points([-1]), Move.points([1])])
    sa = player_a_general_strategy(g)
    tr = simulate(g, sa, GreedyPlayerB(g, vec([1])), 1000, norm_threshold=sa.bound())
    assert not tr.exceeded


def test_general_strategy_zero_game_is_constant():
    g = MinkowskiGame(1, (Move.points([0]),), (Move.points([0]),))
    tr = simulate(g, player_a_general_strategy(g), RandomPlayerB(g), 20)
    assert set(tr.positions) == {(F(0),)}


def test_general_strategy_on_unsat_reduction():
    g = threesat_to_boundedness(Cnf3.of(1, [(1, 1, 1), (-1, -1, -1)]))
    sa = player_a_general_strategy(g)
    tr = simulate(g, sa, RandomPlayerB(g, 5), 1000, norm_threshold=sa.bound())
    assert not tr.exceeded


def test_general_strategy_refuses_b_wins():
    g = one_sided(1, [Move.points([-1], [1])])
    with pytest.raises(UsageError):
        player_a_general_strategy(g)


def _a_games(seed, want=PLAYER_A):
    rng = random.Random(seed)
    for _ in range(50):
        g = random_boundedness_game(rng, RandomGameConfig())
        if decide_bruteforce(g).tag == want:
            return g
    return None


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_general_strategy_bookkeeping(seed):
    g = _a_games(seed)
    if g is None:
        return
    sa = player_a_general_strategy(g)
    n = len(g.moves_a)
    bound = sa.bound()

    def check(step, pos):
        assert sa.represented() == pos
        w = sa.weights
        assert all(x >= 0 for x in w)
        assert sum(w) <= n * n + 1
        assert norm_inf(pos) <= bound

    simulate(g, sa, RandomPlayerB(g, seed, mix=0.3), 120, on_step=check)


# --- Player B certificate ------------------------------------------------------


def test_certificate_strategy_drifts_on_segment_game():
    g = one_sided(1, [Move.points([-1], [1])])
    cert = decide_bruteforce(g).certificate
    tr = simulate(g, RandomPlayerA(g, 2), player_b_certificate_strategy(g, cert), 50)
    for k in range(51):
        assert tr.positions[2 * k][0] * cert.direction[0] >= k


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_certificate_drift_every_round(seed):
    g = _a_games(seed, PLAYER_B)
    if g is None:
        return
    cert = decide_bruteforce(g).certificate
    tr = simulate(g, RandomPlayerA(g, seed, mix=0.5), player_b_certificate_strategy(g, cert), 60)
    u = cert.direction
    dots = [sum(a * b for a, b in zip(u, p)) for p in tr.positions[::2]]
    assert all(y - x >= cert.drift for x, y in zip(dots, dots[1:]))


def test_certificate_for_other_game_is_refused():
    g = one_sided(1, [Move.points([-1], [1])])
    cert = decide_bruteforce(g).certificate
    h = one_sided(1, [Move.points([-1], [1]), Move.points([0])])
    with pytest.raises(UsageError):
        player_b_certificate_strategy(h, cert)


# --- simulate --------------------------------------------------------------------


def test_zero_rounds():
    g = one_sided(1, [Move.points([1])])
    tr = simulate(g, RandomPlayerA(g), RandomPlayerB(g), 0, start=vec([3]))
    assert tr.positions == [(F(3),)]


def test_threshold_crossing_is_reported():
    g = one_sided(1, [Move.points([1])])
    tr = simulate(g, RandomPlayerA(g), RandomPlayerB(g), 10, norm_threshold=F(5, 2))
    assert tr.exceeded and tr.exceeded_step == 5


def test_inconsistent_resolution_is_caught():
    g = one_sided(1, [Move.points([0], [1])])

    class Cheat(RandomPlayerB):
        def resolve(self, position, a_index):
            return (F(2),)

    with pytest.raises(ConsistencyError):
        simulate(g, ScriptedPlayerA(g, [0]), Cheat(g), 1)

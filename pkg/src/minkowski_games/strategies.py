"""Constructive strategies for both players and a round-by-round simulator.

Strategies are stateful objects fed one event at a time.  A round is:

1. Player A picks a move index ``i`` (:meth:`choose_move`);
2. Player B resolves it to a point ``a`` of ``A_i`` (:meth:`resolve`);
3. Player B picks a move index ``j``;
4. Player A resolves it to a point ``b`` of ``B_j``.

Each player is told how the opponent resolved its own move via
:meth:`observe`.  The position advances by ``a`` and then by ``b``.
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .geometry.linear import Vector, add, dot, fmt, norm_inf, scale, sub, unit, zero
from .geometry.lp import OPTIMAL, simplex_standard
from .geometry.polytope import hull_membership
from .model import PLAYER_A, MinkowskiGame, is_single_sided

logger = logging.getLogger(__name__)


class StrategyError(RuntimeError):
    """A strategy's bookkeeping broke down (bug, or its precondition is false)."""


class UsageError(ValueError):
    pass


class ConsistencyError(ValueError):
    """A strategy resolved a move to a point outside that move."""

    def __init__(self, player: str, step: int, point):
        super().__init__(f"player {player} at step {step} returned {[fmt(x) for x in point]} outside the move")
        self.player = player
        self.step = step


# --- convex approximation -------------------------------------------------


@dataclass
class ConvexApproxState:
    """Player A's state in the approximation game over a finite set ``B``.

    ``deviation`` is the running sum of (opponent point - own point) and
    stays inside ``d*CH(B) - offset_c``.
    """

    base_set: List[Vector]
    offset_c: Vector
    deviation: Vector = None  # type: ignore[assignment]

    def __post_init__(self):
        self.base_set = [tuple(Fraction(x) for x in b) for b in self.base_set]
        self.offset_c = tuple(Fraction(x) for x in self.offset_c)
        if self.deviation is None:
            self.deviation = zero(len(self.offset_c))

    @property
    def dimension(self) -> int:
        return len(self.offset_c)

    def invariant_holds(self) -> bool:
        """``(deviation + c) / d`` lies in ``CH(B)``."""
        d = self.dimension
        return hull_membership(scale(Fraction(1, d), add(self.deviation, self.offset_c)), self.base_set)[0]


def _check_member(state: ConvexApproxState, v: Vector) -> None:
    if not hull_membership(v, state.base_set)[0]:
        raise UsageError(f"{[fmt(x) for x in v]} is not in the hull of the base set")


def convex_approx_respond(state: ConvexApproxState, v: Sequence[Fraction]) -> Vector:
    """Answer ``v`` with a point of ``B`` keeping the deviation bounded.

    ``(v + deviation + c)/(d+1)`` is decomposed over ``B``; the generator
    with the largest weight (lowest index on ties) is returned.  The rest
    of the decomposition is what remains in ``d*CH(B)``.
    """
    v = tuple(Fraction(x) for x in v)
    _check_member(state, v)
    d = state.dimension
    target = scale(Fraction(1, d + 1), add(add(v, state.deviation), state.offset_c))
    ok, weights = hull_membership(target, state.base_set)
    if not ok:
        raise StrategyError("deviation left its error margin")
    k = max(range(len(weights)), key=lambda i: (weights[i], -i))
    u = state.base_set[k]
    state.deviation = add(state.deviation, sub(v, u))
    return u


def convex_approx_respond_nearest(state: ConvexApproxState, v: Sequence[Fraction]) -> Vector:
    """Answer with the point of ``B`` nearest (Euclidean) to ``deviation + v``."""
    v = tuple(Fraction(x) for x in v)
    _check_member(state, v)
    want = add(state.deviation, v)

    def dist2(b):
        diff = sub(want, b)
        return dot(diff, diff)

    k = min(range(len(state.base_set)), key=lambda i: (dist2(state.base_set[i]), i))
    u = state.base_set[k]
    state.deviation = sub(want, u)
    return u


# --- the +1/-1 game -------------------------------------------------------


@dataclass
class PlusMinusState:
    """Accumulators of the +1/-1 game: plays of ``k`` minus weights on ``k``."""

    dimension: int
    accumulators: List[Fraction] = None  # type: ignore[assignment]
    threshold: Fraction = None  # type: ignore[assignment]
    approx: ConvexApproxState = None  # type: ignore[assignment]
    last_index: Optional[int] = None

    def __post_init__(self):
        d = self.dimension
        if self.accumulators is None:
            self.accumulators = [Fraction(0)] * d
        if self.threshold is None:
            self.threshold = Fraction(-d)
        if self.approx is None:
            basis = [unit(d, k) for k in range(d)]
            self.approx = ConvexApproxState(basis, (Fraction(1),) * d)


def _check_stochastic(v, d: int) -> Vector:
    v = tuple(Fraction(x) for x in v)
    if len(v) != d or any(x < 0 for x in v) or sum(v) != 1:
        raise UsageError(f"not a stochastic vector of length {d}: {[fmt(x) for x in v]}")
    return v


def _basis_respond(approx: ConvexApproxState, v: Vector) -> int:
    """:func:`convex_approx_respond` specialised to the standard basis.

    Over the basis the decomposition is the point itself, so no LP is needed.
    """
    d = approx.dimension
    target = [(x + e + c) for x, e, c in zip(v, approx.deviation, approx.offset_c)]
    if any(t < 0 for t in target):
        raise StrategyError("deviation left its error margin")
    k = max(range(d), key=lambda i: (target[i], -i))
    dev = list(add(approx.deviation, v))
    dev[k] -= 1
    approx.deviation = tuple(dev)
    return k


def plusminus_player_a(state: PlusMinusState, last_b_vector=None) -> int:
    """Next index for Player A (0-based); the first move is index 0."""
    d = state.dimension
    if last_b_vector is None:
        if state.last_index is not None:
            raise UsageError("Player B's vector is required after the first round")
        k = 0
    else:
        v = _check_stochastic(last_b_vector, d)
        state.accumulators = [a - x for a, x in zip(state.accumulators, v)]
        k = _basis_respond(state.approx, v)
    state.accumulators[k] += 1
    state.last_index = k
    return k


def plusminus_player_b_harmonic(d: int, round: int, history: Sequence[int] = ()) -> Vector:
    """Spread ``1/(d-k)`` over ``d-k`` positions Player A has not played yet.

    ``round`` is the number ``k`` of indices Player A has played so far
    (``history``); from ``k = d`` on the vector is uniform.  Picking the
    lowest-indexed unplayed positions keeps the last unplayed one in every
    earlier spread, so it ends at ``-H(d-1)``.
    """
    if round < 0:
        raise UsageError("round must be nonnegative")
    k = round
    if k >= d:
        return (Fraction(1, d),) * d
    played = set(history)
    free = [i for i in range(d) if i not in played][: d - k]
    if len(free) < d - k:
        raise UsageError("history has more distinct indices than rounds")
    w = Fraction(1, d - k)
    return tuple(w if i in free else Fraction(0) for i in range(d))


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


# --- strategy objects -----------------------------------------------------


class PlayerAStrategy:
    def choose_move(self, position: Vector) -> int:
        raise NotImplementedError

    def observe(self, point: Vector) -> None:
        """Player B resolved our last move to ``point``."""

    def resolve(self, position: Vector, b_index: int) -> Vector:
        raise NotImplementedError


class PlayerBStrategy:
    def resolve(self, position: Vector, a_index: int) -> Vector:
        raise NotImplementedError

    def choose_move(self, position: Vector) -> int:
        raise NotImplementedError

    def observe(self, point: Vector) -> None:
        """Player A resolved our last move to ``point``."""


class OneSidedPlayerA(PlayerAStrategy):
    """Keeps the position at ``sum alpha_i x_i`` with ``alpha_i`` in [0, 1].

    ``x_i`` is the last answer Player B gave to move ``i``.  Once every
    move has an answer, 0 is a convex combination ``sum beta_i x_i`` and
    the weights are shifted down by ``beta / r`` with ``r = max beta_i/alpha_i``,
    which zeroes at least one weight.
    """

    def __init__(self, game: MinkowskiGame, check: bool = True):
        if not is_single_sided(game):
            raise UsageError("game is not single-sided")
        if check:
            from .boundedness import decide_bruteforce

            if decide_bruteforce(game).tag != PLAYER_A:
                raise UsageError("Player A does not win this game")
        self.game = game
        n = len(game.moves_a)
        self.points: List[Optional[Vector]] = [None] * n
        self.alpha = [Fraction(0)] * n
        self.current: Optional[int] = None

    def choose_move(self, position):
        self.current = next(i for i, a in enumerate(self.alpha) if a == 0)
        return self.current

    def observe(self, point):
        k = self.current
        self.points[k] = tuple(point)
        self.alpha[k] = Fraction(1)
        if all(a > 0 for a in self.alpha):
            ok, beta = hull_membership(zero(self.game.dimension), self.points)
            if not ok:
                raise StrategyError("0 is not in the hull of the current answers")
            r = max(b / a for b, a in zip(beta, self.alpha))
            self.alpha = [a - b / r for a, b in zip(self.alpha, beta)]

    def resolve(self, position, b_index):
        return zero(self.game.dimension)

    def represented(self) -> Vector:
        pos = zero(self.game.dimension)
        for a, x in zip(self.alpha, self.points):
            if x is not None:
                pos = add(pos, scale(a, x))
        return pos


def player_a_onesided_strategy(game: MinkowskiGame) -> OneSidedPlayerA:
    return OneSidedPlayerA(game)


class GeneralPlayerA(PlayerAStrategy):
    """Player A via the reduction to the +1/-1 game in dimension ``n = |A|``.

    The position is kept as ``sum x_i a_i + p`` with ``a_i`` in ``CH(A_i)``.
    Answering move ``i`` with ``a'`` averages ``a'`` into ``a_i`` and adds 1
    to ``x_i``; answering a B-move by ``b = -sum alpha_i a_i`` subtracts the
    convex weights ``alpha``.  The +1/-1 strategy keeps every ``x_i >= 0``.

    ``x_i a_i`` is stored as nonnegative masses on the vertices of ``A_i``.
    The mass removed on a B-move is any ``z <= mass`` with
    ``sum z = 1`` and ``sum z_v v + b = 0``; taking a basic solution of
    that LP (rather than scaling the masses proportionally) keeps the
    denominators from exploding over long plays.  The anchors stay in
    ``CH(A_i)``, which is all the reduction needs.
    """

    def __init__(self, game: MinkowskiGame, start: Optional[Vector] = None, check: bool = True):
        if check:
            from .boundedness import decide_bruteforce

            if decide_bruteforce(game).tag != PLAYER_A:
                raise UsageError("Player A does not win this game")
        self.game = game
        n = len(game.moves_a)
        d = game.dimension
        self.n = n
        self.verts = [m.vertices for m in game.moves_a]
        self.mass: List[List[Fraction]] = [
            [Fraction(n) if k == 0 else Fraction(0) for k in range(len(vs))] for vs in self.verts
        ]
        v0 = tuple(start) if start is not None else (game.initial or zero(d))
        self.offset: Vector = sub(v0, self._sum())
        self.pm = PlusMinusState(n)
        self._pending: Optional[Vector] = None
        self.current: Optional[int] = None
        self.last_alpha: Optional[Vector] = None
        self._cache: dict = {}

    @property
    def weights(self) -> List[Fraction]:
        return [sum(m, Fraction(0)) for m in self.mass]

    @property
    def anchors(self) -> List[Vector]:
        out = []
        for m, vs in zip(self.mass, self.verts):
            x = sum(m, Fraction(0))
            if x == 0:
                out.append(vs[0])
            else:
                out.append(_combine(m, vs, 1 / x))
        return out

    def _sum(self) -> Vector:
        pos = zero(self.game.dimension)
        for m, vs in zip(self.mass, self.verts):
            pos = add(pos, _combine(m, vs))
        return pos

    def bound(self) -> Fraction:
        """``(n^2 + 1) R + |p|`` in the max norm."""
        r = max(norm_inf(v) for vs in self.verts for v in vs)
        return (self.n ** 2 + 1) * r + norm_inf(self.offset)

    def represented(self) -> Vector:
        return add(self._sum(), self.offset)

    def choose_move(self, position):
        self.current = plusminus_player_a(self.pm, self._pending)
        self._pending = None
        return self.current

    def observe(self, point):
        k = self.current
        vs = self.verts[k]
        point = tuple(point)
        if point in vs:
            self.mass[k][vs.index(point)] += 1
            return
        ok, w = hull_membership(point, vs)
        if not ok:
            raise StrategyError("reply outside the move")
        self.mass[k] = [m + x for m, x in zip(self.mass[k], w)]

    def resolve(self, position, b_index):
        bverts = self.game.moves_b[b_index].vertices
        # Any earlier transfer that fits under the current masses is valid again.
        cache = self._cache.setdefault(b_index, [])
        sol = next((c for c in cache if _fits(c[0], self.mass)), None)
        if sol is None:
            sol = _mass_transfer(self.mass, self.verts, bverts)
            if sol is None:
                raise StrategyError("no b in B cancels a convex combination of the anchors")
            if len(cache) < 64:
                cache.append(sol)
        z, beta = sol
        alpha = tuple(sum(zi, Fraction(0)) for zi in z)
        self.mass = [[m - x for m, x in zip(mi, zi)] for mi, zi in zip(self.mass, z)]
        b = _combine(beta, bverts)
        self._pending = alpha
        self.last_alpha = alpha
        return b


def _combine(weights, points, factor=Fraction(1)) -> Vector:
    d = len(points[0])
    out = [Fraction(0)] * d
    for w, p in zip(weights, points):
        if w:
            for k in range(d):
                out[k] += w * p[k]
    if factor != 1:
        out = [x * factor for x in out]
    return tuple(out)


def _fits(z, mass) -> bool:
    return all(x <= m for zi, mi in zip(z, mass) for x, m in zip(zi, mi))


def _int_row(row, rhs):
    s = lcm(*(x.denominator for x in row), Fraction(rhs).denominator)
    return [int(x * s) for x in row], int(rhs * s)


def _mass_transfer(mass, verts, bverts):
    """``z <= mass`` (per vertex) and convex ``beta`` with ``sum z = 1`` and
    ``sum z_v v + sum beta_j b_j = 0``."""
    cols = [(i, k) for i, vs in enumerate(verts) for k in range(len(vs))]
    nz, m = len(cols), len(bverts)
    d = len(bverts[0])
    # columns: z (nz), slack s (nz), beta (m)
    A, b = [], []
    for c in range(d):
        row = [Fraction(verts[i][k][c]) for i, k in cols] + [Fraction(0)] * nz + [y[c] for y in bverts]
        r, h = _int_row(row, Fraction(0))
        A.append(r)
        b.append(h)
    A.append([1] * nz + [0] * nz + [0] * m)
    b.append(1)
    A.append([0] * (2 * nz) + [1] * m)
    b.append(1)
    for t, (i, k) in enumerate(cols):
        y = mass[i][k]
        # slack scaled by the denominator so its column is a unit vector
        row = [0] * (2 * nz + m)
        row[t] = y.denominator
        row[nz + t] = 1
        A.append(row)
        b.append(y.numerator)
    res = simplex_standard(A, b)
    if res.status != OPTIMAL:
        return None
    x = res.x
    z, pos = [], 0
    for vs in verts:
        z.append(list(x[pos:pos + len(vs)]))
        pos += len(vs)
    return z, list(x[2 * nz:])


def player_a_general_strategy(game: MinkowskiGame, start: Optional[Vector] = None) -> GeneralPlayerA:
    return GeneralPlayerA(game, start)


class CertificatePlayerB(PlayerBStrategy):
    """Always the certified vertex for each A-move and the certified B-move."""

    def __init__(self, game: MinkowskiGame, cert):
        from .boundedness import verify_divergence_certificate

        try:
            ok = verify_divergence_certificate(game, cert)
        except IndexError as exc:
            raise UsageError(f"certificate does not fit the game: {exc}") from exc
        if not ok:
            raise UsageError("certificate does not verify")
        self.game = game
        self.cert = cert

    def resolve(self, position, a_index):
        return tuple(self.cert.vertex_choice[a_index])

    def choose_move(self, position):
        return self.cert.b_move


def player_b_certificate_strategy(game: MinkowskiGame, cert) -> CertificatePlayerB:
    return CertificatePlayerB(game, cert)


# --- adversaries ----------------------------------------------------------


def _random_point(rng: random.Random, vertices: Sequence[Vector], mix: float) -> Vector:
    if len(vertices) == 1 or rng.random() >= mix:
        return vertices[rng.randrange(len(vertices))]
    raw = [rng.randint(0, 3) for _ in vertices]
    if not any(raw):
        raw[0] = 1
    tot = sum(raw)
    out = zero(len(vertices[0]))
    for w, v in zip(raw, vertices):
        out = add(out, scale(Fraction(w, tot), v))
    return out


class RandomPlayerA(PlayerAStrategy):
    def __init__(self, game: MinkowskiGame, seed: int = 0, mix: float = 0.0):
        self.game = game
        self.rng = random.Random(seed)
        self.mix = mix

    def choose_move(self, position):
        return self.rng.randrange(len(self.game.moves_a))

    def resolve(self, position, b_index):
        return _random_point(self.rng, self.game.moves_b[b_index].vertices, self.mix)


class RandomPlayerB(PlayerBStrategy):
    """Uniform moves; resolves to a random vertex, sometimes an interior point."""

    def __init__(self, game: MinkowskiGame, seed: int = 0, mix: float = 0.0):
        self.game = game
        self.rng = random.Random(seed)
        self.mix = mix

    def resolve(self, position, a_index):
        return _random_point(self.rng, self.game.moves_a[a_index].vertices, self.mix)

    def choose_move(self, position):
        return self.rng.randrange(len(self.game.moves_b))


class GreedyPlayerB(PlayerBStrategy):
    """Pushes along a fixed direction: the vertex maximizing ``u . (position + a)``."""

    def __init__(self, game: MinkowskiGame, direction: Optional[Vector] = None, seed: int = 0):
        self.game = game
        rng = random.Random(seed)
        d = game.dimension
        self.u = tuple(direction) if direction is not None else tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))

    def resolve(self, position, a_index):
        vs = self.game.moves_a[a_index].vertices
        return max(vs, key=lambda v: dot(self.u, v))

    def choose_move(self, position):
        return max(
            range(len(self.game.moves_b)),
            key=lambda j: (min(dot(self.u, v) for v in self.game.moves_b[j].vertices), -j),
        )


class ScriptedPlayerA(PlayerAStrategy):
    """Cycles through a fixed list of move indices; resolves B's moves to their first vertex."""

    def __init__(self, game: MinkowskiGame, moves: Sequence[int]):
        if not moves:
            raise UsageError("scripted strategy needs at least one move")
        for i in moves:
            if not 0 <= i < len(game.moves_a):
                raise UsageError(f"scripted move {i} out of range")
        self.game = game
        self.moves = list(moves)
        self.t = 0

    def choose_move(self, position):
        i = self.moves[self.t % len(self.moves)]
        self.t += 1
        return i

    def resolve(self, position, b_index):
        return self.game.moves_b[b_index].vertices[0]


def scripted_from_file(game: MinkowskiGame, path: str) -> ScriptedPlayerA:
    with open(path) as fh:
        data = json.load(fh)
    return ScriptedPlayerA(game, [int(i) for i in data["moves"]])


# --- simulation -----------------------------------------------------------


@dataclass
class Trace:
    positions: List[Vector]
    moves: List[Tuple[int, Vector, int, Vector]] = field(default_factory=list)
    max_norm: Fraction = Fraction(0)
    exceeded: bool = False
    exceeded_step: Optional[int] = None

    def to_jsonl(self) -> str:
        return "".join(json.dumps([fmt(x) for x in p]) + "\n" for p in self.positions)


def simulate(
    game: MinkowskiGame,
    strat_a: PlayerAStrategy,
    strat_b: PlayerBStrategy,
    rounds: int,
    norm_threshold: Optional[Fraction] = None,
    start: Optional[Vector] = None,
    check: bool = True,
    on_step=None,
) -> Trace:
    """Play ``rounds`` rounds exactly; positions are recorded after each half-round.

    ``on_step(step, position)`` is called after every half-round, which is
    how tests hook invariants into a play.
    """
    d = game.dimension
    pos = tuple(start) if start is not None else (game.initial or zero(d))
    trace = Trace([pos], max_norm=norm_inf(pos))
    step = 0

    def record(p):
        nonlocal step
        step += 1
        trace.positions.append(p)
        nrm = norm_inf(p)
        if nrm > trace.max_norm:
            trace.max_norm = nrm
        if norm_threshold is not None and not trace.exceeded and nrm > norm_threshold:
            trace.exceeded = True
            trace.exceeded_step = step
        if on_step is not None:
            on_step(step, p)

    for _ in range(rounds):
        i = strat_a.choose_move(pos)
        if not 0 <= i < len(game.moves_a):
            raise ConsistencyError("A", step + 1, ())
        a = tuple(strat_b.resolve(pos, i))
        if check and not game.moves_a[i].contains(a):
            raise ConsistencyError("B", step + 1, a)
        strat_a.observe(a)
        pos = add(pos, a)
        record(pos)
        j = strat_b.choose_move(pos)
        if not 0 <= j < len(game.moves_b):
            raise ConsistencyError("B", step + 1, ())
        b = tuple(strat_a.resolve(pos, j))
        if check and not game.moves_b[j].contains(b):
            raise ConsistencyError("A", step + 1, b)
        strat_b.observe(b)
        pos = add(pos, b)
        record(pos)
        trace.moves.append((i, a, j, b))
    return trace

"""Safety, safety-reachability and structural safety.

The controllable predecessor of a region ``E`` is the set of positions
from which Player A can pick a move so that, whatever vertex B chooses
and whatever move B plays, A can land back in ``E``:

    cpre(E) = union over A of erode( intersection over B of (E - B), A ).

Iterating ``S -> cpre(S) & Safe`` from ``Safe`` descends towards the
winning region.  The iteration need not terminate (winner determination
is undecidable in general), so the verdict may be ``Unknown``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .geometry.linear import GeometryError, LinearConstraint, unit, zero
from .geometry.lp import feasible_point, lp_feasible
from .geometry.polytope import HPolyhedron, VPolytope
from .model import (
    PLAYER_A,
    PLAYER_B,
    SAFETY,
    SAFETY_REACHABILITY,
    STRUCTURAL_SAFETY,
    UNKNOWN,
    MinkowskiGame,
    Move,
    Winner,
    is_single_sided,
)
from .regions import (
    Region,
    region_contains_point,
    region_contains_region,
    region_erode_polytope,
    region_intersect,
    region_minkowski_polytope,
    region_union,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 100


class UsageError(ValueError):
    pass


class UnsupportedError(ValueError):
    pass


@dataclass
class SafetyVerdict:
    """``PlayerB`` at the first ``n`` with ``v0`` outside ``S_n``; ``PlayerA``
    with the certified fixed point; ``Unknown`` with the last iterate."""

    tag: str
    iterations: int
    region: Region
    history: List[Region] = field(default_factory=list)

    def __str__(self) -> str:
        return f"{self.tag}({self.iterations})"


def cpre(e: Region, game: MinkowskiGame) -> Region:
    if e.dimension != game.dimension:
        raise GeometryError(f"dimension mismatch: region {e.dimension}, game {game.dimension}")
    after_b: Optional[Region] = None
    for bm in game.moves_b:
        shifted = region_minkowski_polytope(e, bm.polytope.reflect())
        after_b = shifted if after_b is None else region_intersect(after_b, shifted)
    assert after_b is not None
    out = Region.empty(game.dimension)
    for am in game.moves_a:
        out = region_union(out, region_erode_polytope(after_b, am.polytope))
    return out


def _iterate(game: MinkowskiGame, max_iters: int, step, keep_history: bool) -> SafetyVerdict:
    v0 = game.initial
    s = game.safe
    history = [s] if keep_history else []
    for n in range(1, max_iters + 1):
        if not region_contains_point(s, v0):
            logger.info("initial position left S_%d", n)
            return SafetyVerdict(PLAYER_B, n, s, history)
        nxt = step(s)
        if keep_history:
            history.append(nxt)
        logger.debug("S_%d has %d pieces", n + 1, len(nxt))
        # descent gives S_{n+1} <= S_n, so one inclusion certifies the fixed point
        if region_contains_region(nxt, s):
            return SafetyVerdict(PLAYER_A, n + 1, s, history)
        s = nxt
    return SafetyVerdict(UNKNOWN, max_iters, s, history)


def safety_iterate(game: MinkowskiGame, max_iters: int = DEFAULT_MAX_ITERS, keep_history: bool = False) -> SafetyVerdict:
    """``S_1 = Safe``, ``S_{n+1} = cpre(S_n) & Safe``."""
    if game.objective != SAFETY:
        raise UsageError(f"safety iteration called on a {game.objective} game")
    safe = game.safe
    return _iterate(game, max_iters, lambda s: region_intersect(cpre(s, game), safe), keep_history)


def safety_reach_iterate(
    game: MinkowskiGame, max_iters: int = DEFAULT_MAX_ITERS, keep_history: bool = False
) -> SafetyVerdict:
    """``S_1 = Safe``, ``S_{n+1} = Goal | (cpre(S_n) & Safe)``."""
    if game.objective != SAFETY_REACHABILITY:
        raise UsageError(f"safety-reachability iteration called on a {game.objective} game")
    safe, goal = game.safe, game.goal
    return _iterate(
        game,
        max_iters,
        lambda s: region_union(goal, region_intersect(cpre(s, game), safe)),
        keep_history,
    )


def _single_closed_piece(r: Region, name: str) -> HPolyhedron:
    if len(r.pieces) != 1 or not r.pieces[0].closed:
        raise UnsupportedError(f"{name} must be a single closed polytope")
    return r.pieces[0]


def lift_safety_reach_to_safety(game: MinkowskiGame) -> MinkowskiGame:
    """Equivalent safety game one dimension up.

    ``Safe' = CH(Safe x {0} | Goal x {1})``; Player A gets the moves
    ``A x {0}`` plus the unit steps up and down the new axis, and starts at
    height 0.  Only points of ``Goal`` can go up and come back forever.
    """
    from .geometry.polytope import h_to_v

    if game.objective != SAFETY_REACHABILITY:
        raise UsageError("lifting needs a safety-reachability game")
    if not is_single_sided(game):
        raise UnsupportedError("lifting is defined for one-sided games")
    d = game.dimension
    safe = _single_closed_piece(game.safe, "safe")
    goal = _single_closed_piece(game.goal, "goal")
    try:
        sv = h_to_v(safe).vertices
        gv = h_to_v(goal).vertices
    except GeometryError as exc:
        raise UnsupportedError(f"safe and goal must be bounded: {exc}") from exc
    pts = [v + (Fraction(0),) for v in sv] + [v + (Fraction(1),) for v in gv]
    safe_lifted = Region.from_polytope(VPolytope(d + 1, tuple(pts)))
    moves_a = [Move(VPolytope(d + 1, tuple(v + (Fraction(0),) for v in m.vertices))) for m in game.moves_a]
    moves_a.append(Move(VPolytope(d + 1, (unit(d + 1, d),))))
    moves_a.append(Move(VPolytope(d + 1, (tuple(-x for x in unit(d + 1, d)),))))
    moves_b = (Move(VPolytope(d + 1, (zero(d + 1),))),)
    return MinkowskiGame(
        d + 1, tuple(moves_a), moves_b, SAFETY, safe=safe_lifted, initial=tuple(game.initial) + (Fraction(0),)
    )


# --- structural safety ----------------------------------------------------


def _shrunk_safe(game: MinkowskiGame, safe: HPolyhedron) -> Optional[List[LinearConstraint]]:
    """Constraints of ``Safe'' = intersection over B of (Safe - B)``, None if empty."""
    region = Region(game.dimension, (safe,)).canonical()
    if not region.pieces:
        return None
    acc: Optional[Region] = None
    for bm in game.moves_b:
        r = region_minkowski_polytope(region, bm.polytope.reflect())
        acc = r if acc is None else region_intersect(acc, r)
    if acc is None or not acc.pieces:
        return None
    assert len(acc.pieces) == 1, "Minkowski sums and intersections of convex pieces stay convex"
    return list(acc.pieces[0].constraints)


def decide_structural(game: MinkowskiGame) -> Winner:
    """Player A wins iff every ``v`` in Safe has a move ``A`` with ``v + A`` in ``Safe''``.

    Player B wins iff for some assignment of a (vertex, violated
    constraint) pair to every move, the system ``v in Safe`` plus all the
    violations is feasible.  Assignments are explored depth-first with an
    exact feasibility check at every node, so infeasible prefixes are cut.
    """
    if game.objective != STRUCTURAL_SAFETY:
        raise UsageError(f"structural decider called on a {game.objective} game")
    safe = _single_closed_piece(game.safe, "safe")
    d = game.dimension
    base = list(safe.constraints)
    if base and not lp_feasible(base):
        return Winner(PLAYER_A, details={"reason": "Safe is empty"})
    inner = _shrunk_safe(game, safe)
    if inner is None:
        v = feasible_point(base, d) if base else zero(d)
        return Winner(PLAYER_B, witness=v, details={"reason": "no B-move keeps any point safe"})

    options: List[List[LinearConstraint]] = []
    for am in game.moves_a:
        opts: List[LinearConstraint] = []
        seen = set()
        for a in am.vertices:
            for phi in inner:
                for neg in phi.negations():
                    # v + a violates phi  <=>  v satisfies neg shifted by -a
                    row = neg.translate(tuple(-x for x in a)).normalized()
                    key = (row.coeffs, row.rel, row.rhs)
                    if key not in seen:
                        seen.add(key)
                        opts.append(row)
        options.append(opts)
    order = sorted(range(len(options)), key=lambda i: len(options[i]))
    nodes = 0

    def search(depth: int, system: List[LinearConstraint]) -> Optional[List[LinearConstraint]]:
        nonlocal nodes
        if depth == len(order):
            return system
        for row in options[order[depth]]:
            nxt = system + [row]
            nodes += 1
            if lp_feasible(nxt):
                found = search(depth + 1, nxt)
                if found is not None:
                    return found
        return None

    found = search(0, base)
    if found is None:
        return Winner(PLAYER_A, details={"nodes": nodes})
    v = feasible_point(found, d)
    return Winner(PLAYER_B, witness=v, details={"nodes": nodes})


def structural_one_round_holds(game: MinkowskiGame, v: Sequence[Fraction]) -> bool:
    """Whether Player A survives one round from ``v`` (witness re-check)."""
    safe = _single_closed_piece(game.safe, "safe")
    inner = _shrunk_safe(game, safe)
    if inner is None:
        return False
    v = tuple(v)
    return any(
        all(all(c.holds(tuple(x + y for x, y in zip(v, a))) for c in inner) for a in am.vertices)
        for am in game.moves_a
    )

"""Deciding boundedness games, two independent ways.

Player A wins iff for every choice of one vertex per A-move and every
B-move, the origin lies in ``CH{a_i} + CH(B)``.  :func:`decide_bruteforce`
checks that condition tuple by tuple; :func:`decide_findwinner` instead
searches a finite family of candidate hyperplanes spanned by points of
``(union of A_i) + B`` and the canonical basis.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import List, Sequence, Tuple

from .geometry.linear import Vector, add, dot, fmt, unit, vec
from .geometry.polytope import hull_membership, rank_of, separating_direction, sub
from .model import BOUNDEDNESS, PLAYER_A, PLAYER_B, MinkowskiGame, Winner

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class DivergenceCertificate:
    """One vertex per A-move, one B-move, and a direction with positive drift."""

    vertex_choice: Tuple[Vector, ...]
    b_move: int
    direction: Vector
    drift: Fraction

    def to_json(self) -> dict:
        return {
            "vertex_choice": [[fmt(x) for x in v] for v in self.vertex_choice],
            "b_move": self.b_move,
            "direction": [fmt(x) for x in self.direction],
            "drift": fmt(self.drift),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DivergenceCertificate":
        return cls(
            tuple(vec(v) for v in data["vertex_choice"]),
            int(data["b_move"]),
            vec(data["direction"]),
            vec([data["drift"]])[0],
        )


def _require_boundedness(game: MinkowskiGame) -> None:
    if game.objective != BOUNDEDNESS:
        raise UsageError(f"boundedness decider called on a {game.objective} game")


def _pair_sums(points: Sequence[Vector], b_vertices: Sequence[Vector]) -> List[Vector]:
    out = []
    for a in points:
        for b in b_vertices:
            s = add(a, b)
            if s not in out:
                out.append(s)
    return out


def decide_bruteforce(game: MinkowskiGame) -> Winner:
    """Check ``0 in CH({a_i} + Ver(B))`` for every vertex tuple and every B."""
    _require_boundedness(game)
    a_verts = [m.vertices for m in game.moves_a]
    checked = 0
    for j, bm in enumerate(game.moves_b):
        for choice in product(*a_verts):
            gens = _pair_sums(choice, bm.vertices)
            checked += 1
            if not hull_membership((Fraction(0),) * game.dimension, gens)[0]:
                u, delta = separating_direction(gens)
                cert = DivergenceCertificate(tuple(choice), j, u, delta)
                return Winner(PLAYER_B, certificate=cert, details={"tuples_checked": checked})
    return Winner(PLAYER_A, details={"tuples_checked": checked})


def _candidate_points(game: MinkowskiGame, j: int) -> List[Vector]:
    d = game.dimension
    pts: List[Vector] = []
    for m in game.moves_a:
        for p in _pair_sums(m.vertices, game.moves_b[j].vertices):
            if p not in pts:
                pts.append(p)
    for k in range(d):
        e = unit(d, k)
        if e not in pts:
            pts.append(e)
    return pts


def _normal(anchors: Sequence[Vector]) -> Vector:
    """A normal of the affine hull of ``d`` points (zero vector if degenerate)."""
    from .geometry.polytope import nullspace

    d = len(anchors[0])
    ns = nullspace([sub(x, anchors[0]) for x in anchors[1:]], d)
    return ns[0] if len(ns) == 1 else (Fraction(0),) * d


def decide_findwinner(game: MinkowskiGame) -> Winner:
    """Search hyperplanes through ``d`` affinely independent candidate points.

    The candidate tuples are taken as unordered sets: the hyperplane and
    the separation test depend only on the set, and tuples with repeated
    points never pass the rank test (for ``d >= 2``).
    """
    _require_boundedness(game)
    d = game.dimension
    n = len(game.moves_a)
    tried = 0
    for j, bm in enumerate(game.moves_b):
        bverts = bm.vertices
        shifted = [[_pair_sums([a], bverts) for a in m.vertices] for m in game.moves_a]
        for tup in combinations(_candidate_points(game, j), d):
            if rank_of([sub(x, tup[0]) for x in tup[1:]]) != d - 1:
                continue
            tried += 1
            normal = _normal(tup)
            c = dot(normal, tup[0])
            if c == 0:
                continue
            chosen = []
            for i in range(n):
                hit = None
                for a, targets in zip(game.moves_a[i].vertices, shifted[i]):
                    if all(c * (dot(normal, y) - c) >= 0 for y in targets):
                        hit = a
                        break
                if hit is None:
                    break
                chosen.append(hit)
            if len(chosen) == n:
                u = normal if c > 0 else tuple(-x for x in normal)
                cert = DivergenceCertificate(tuple(chosen), j, u, abs(c))
                return Winner(PLAYER_B, certificate=cert, details={"hyperplanes_tried": tried})
    return Winner(PLAYER_A, details={"hyperplanes_tried": tried})


def verify_divergence_certificate(game: MinkowskiGame, cert: DivergenceCertificate) -> bool:
    """Exact check that the certificate's vertex strategy drifts along ``u``."""
    if len(cert.vertex_choice) != len(game.moves_a):
        raise IndexError(
            f"certificate has {len(cert.vertex_choice)} vertices for {len(game.moves_a)} moves"
        )
    if not 0 <= cert.b_move < len(game.moves_b):
        raise IndexError(f"b_move {cert.b_move} out of range")
    if cert.drift <= 0 or not any(cert.direction):
        return False
    for a, m in zip(cert.vertex_choice, game.moves_a):
        if tuple(a) not in m.vertices:
            return False
        for b in game.moves_b[cert.b_move].vertices:
            if dot(cert.direction, add(a, b)) < cert.drift:
                return False
    return True


def decide(game: MinkowskiGame, method: str = "brute") -> Winner:
    """Dispatch on ``method`` in {brute, findwinner, both}."""
    if method == "brute":
        return decide_bruteforce(game)
    if method == "findwinner":
        return decide_findwinner(game)
    if method == "both":
        w1 = decide_bruteforce(game)
        w2 = decide_findwinner(game)
        if w1.tag != w2.tag:
            raise AssertionError(f"deciders disagree: brute={w1.tag} findwinner={w2.tag}")
        w1.details["findwinner"] = w2.tag
        return w1
    raise UsageError(f"unknown method {method!r}")

"""Seeded random instances for experiments and property tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .geometry.linear import Vector
from .geometry.polytope import VPolytope
from .model import BOUNDEDNESS, MinkowskiGame, Move


@dataclass
class RandomGameConfig:
    max_dimension: int = 3
    max_moves_a: int = 3
    max_moves_b: int = 2
    max_vertices: int = 3
    numerators: tuple = (-2, 2)
    denominators: tuple = (1, 2)


def random_rational(rng: random.Random, cfg: RandomGameConfig) -> Fraction:
    lo, hi = cfg.numerators
    return Fraction(rng.randint(lo, hi), rng.choice(cfg.denominators))


def random_point(rng: random.Random, d: int, cfg: RandomGameConfig) -> Vector:
    return tuple(random_rational(rng, cfg) for _ in range(d))


def random_move(rng: random.Random, d: int, cfg: RandomGameConfig) -> Move:
    k = rng.randint(1, cfg.max_vertices)
    return Move(VPolytope(d, tuple(random_point(rng, d, cfg) for _ in range(k))))


def random_boundedness_game(rng: random.Random, cfg: RandomGameConfig = RandomGameConfig()) -> MinkowskiGame:
    d = rng.randint(1, cfg.max_dimension)
    moves_a = [random_move(rng, d, cfg) for _ in range(rng.randint(1, cfg.max_moves_a))]
    moves_b = [random_move(rng, d, cfg) for _ in range(rng.randint(1, cfg.max_moves_b))]
    return MinkowskiGame(d, tuple(moves_a), tuple(moves_b), BOUNDEDNESS)


def boundedness_suite(seed: int, count: int, cfg: RandomGameConfig = RandomGameConfig()) -> List[MinkowskiGame]:
    rng = random.Random(seed)
    return [random_boundedness_game(rng, cfg) for _ in range(count)]


def random_convex_point(rng: random.Random, vertices, max_den: int = 4) -> Vector:
    """A convex combination of ``vertices`` with small random weights."""
    raw = [rng.randint(0, max_den) for _ in vertices]
    if not any(raw):
        raw[rng.randrange(len(raw))] = 1
    total = sum(raw)
    d = len(vertices[0])
    return tuple(sum((Fraction(w, total) * v[k] for w, v in zip(raw, vertices)), Fraction(0)) for k in range(d))


def convexify(rng: random.Random, game: MinkowskiGame, extra: int = 2) -> MinkowskiGame:
    """Same game with interior/edge points inserted into every move's vertex list."""

    def grow(m: Move) -> Move:
        vs = list(m.vertices)
        pts = vs + [random_convex_point(rng, vs) for _ in range(extra)]
        rng.shuffle(pts)
        return Move(VPolytope(game.dimension, tuple(pts)))

    return game.with_moves([grow(m) for m in game.moves_a], [grow(m) for m in game.moves_b])

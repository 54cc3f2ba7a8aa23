"""Game data model, validation and JSON serialization."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Any, Optional, Tuple, Union

from .geometry.linear import GeometryError, LinearConstraint, Vector, fmt, vec
from .geometry.polytope import HPolyhedron, VPolytope, canonical_vertices, h_to_v, v_to_h
from .regions import Region, region_contains_point, region_contains_region

BOUNDEDNESS = "boundedness"
SAFETY = "safety"
SAFETY_REACHABILITY = "safety_reachability"
STRUCTURAL_SAFETY = "structural_safety"
OBJECTIVES = (BOUNDEDNESS, SAFETY, SAFETY_REACHABILITY, STRUCTURAL_SAFETY)

PLAYER_A = "PlayerA"
PLAYER_B = "PlayerB"
UNKNOWN = "Unknown"


class ModelError(ValueError):
    """Invalid game description; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass(frozen=True)
class Move:
    """A bounded closed polytope given by vertices or by constraints."""

    rep: Union[VPolytope, HPolyhedron]

    @classmethod
    def points(cls, *pts) -> "Move":
        return cls(VPolytope.of([vec(p) for p in pts]))

    @property
    def dimension(self) -> int:
        return self.rep.dimension

    @cached_property
    def vertices(self) -> Tuple[Vector, ...]:
        if isinstance(self.rep, VPolytope):
            return canonical_vertices(self.rep.vertices)
        return h_to_v(self.rep).vertices

    @cached_property
    def polytope(self) -> VPolytope:
        return VPolytope(self.dimension, self.vertices)

    @cached_property
    def hrep(self) -> HPolyhedron:
        if isinstance(self.rep, HPolyhedron):
            return self.rep
        return v_to_h(self.polytope)

    def contains(self, point) -> bool:
        if tuple(point) in self.vertices:
            return True
        return self.hrep.contains(point)

    def is_zero(self) -> bool:
        return all(not any(v) for v in self.vertices)


@dataclass(frozen=True)
class MinkowskiGame:
    dimension: int
    moves_a: Tuple[Move, ...]
    moves_b: Tuple[Move, ...]
    objective: str = BOUNDEDNESS
    safe: Optional[Region] = None
    goal: Optional[Region] = None
    initial: Optional[Vector] = None

    def __post_init__(self):
        validate(self)

    def with_moves(self, moves_a=None, moves_b=None) -> "MinkowskiGame":
        return MinkowskiGame(
            self.dimension,
            tuple(moves_a) if moves_a is not None else self.moves_a,
            tuple(moves_b) if moves_b is not None else self.moves_b,
            self.objective,
            self.safe,
            self.goal,
            self.initial,
        )


@dataclass
class Winner:
    tag: str
    certificate: Any = None
    iterations: Optional[int] = None
    witness: Optional[Vector] = None
    details: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return self.tag


def is_single_sided(game: MinkowskiGame) -> bool:
    """Player B's only move (up to duplicates) is the origin."""
    return all(m.is_zero() for m in game.moves_b)


def validate(game: MinkowskiGame) -> None:
    d = game.dimension
    if not isinstance(d, int) or d < 1:
        raise ModelError("dimension", "must be a positive integer")
    if game.objective not in OBJECTIVES:
        raise ModelError("objective", f"must be one of {', '.join(OBJECTIVES)}")
    for name, moves in (("moves_a", game.moves_a), ("moves_b", game.moves_b)):
        if not moves:
            raise ModelError(name, "needs at least one move")
        for i, m in enumerate(moves):
            path = f"{name}[{i}]"
            if m.dimension != d:
                raise ModelError(path, f"dimension {m.dimension} != {d}")
            if isinstance(m.rep, HPolyhedron):
                if not m.rep.closed:
                    raise ModelError(path, "move must be closed (no strict constraints)")
                try:
                    m.vertices
                except GeometryError as exc:
                    msg = str(exc)
                    if "unbounded" in msg:
                        msg = "move unbounded"
                    elif "empty" in msg:
                        msg = "move empty"
                    raise ModelError(path, msg) from exc
    for name in ("safe", "goal"):
        r = getattr(game, name)
        if r is not None and r.dimension != d:
            raise ModelError(name, f"dimension {r.dimension} != {d}")
    if game.initial is not None and len(game.initial) != d:
        raise ModelError("initial", f"dimension {len(game.initial)} != {d}")
    obj = game.objective
    if obj in (SAFETY, SAFETY_REACHABILITY, STRUCTURAL_SAFETY) and game.safe is None:
        raise ModelError("safe", f"required for objective {obj}")
    if obj in (SAFETY, SAFETY_REACHABILITY):
        if game.initial is None:
            raise ModelError("initial", f"required for objective {obj}")
        if not region_contains_point(game.safe, game.initial):
            raise ModelError("initial", "initial ∉ safe")
    if obj == SAFETY_REACHABILITY:
        if game.goal is None:
            raise ModelError("goal", "required for objective safety_reachability")
        if not region_contains_region(game.safe, game.goal):
            raise ModelError("goal", "goal ⊄ safe")


# --- JSON -----------------------------------------------------------------


def _constraint_json(c: LinearConstraint) -> dict:
    return {"coeffs": [fmt(x) for x in c.coeffs], "rel": c.rel, "rhs": fmt(c.rhs)}


def move_to_json(m: Move) -> dict:
    if isinstance(m.rep, VPolytope):
        return {"type": "V", "vertices": [[fmt(x) for x in v] for v in m.rep.vertices]}
    return {"type": "H", "constraints": [_constraint_json(c) for c in m.rep.constraints]}


def game_to_json(g: MinkowskiGame) -> dict:
    out: dict = {
        "dimension": g.dimension,
        "objective": g.objective,
        "moves_a": [move_to_json(m) for m in g.moves_a],
        "moves_b": [move_to_json(m) for m in g.moves_b],
    }
    if g.safe is not None:
        out["safe"] = g.safe.to_json()
    if g.goal is not None:
        out["goal"] = g.goal.to_json()
    if g.initial is not None:
        out["initial"] = [fmt(x) for x in g.initial]
    return out


def serialize_game(g: MinkowskiGame) -> bytes:
    return (json.dumps(game_to_json(g), indent=1) + "\n").encode()


def _wrap(path: str, fn, *args):
    try:
        return fn(*args)
    except ModelError:
        raise
    except (GeometryError, KeyError, TypeError, ValueError) as exc:
        raise ModelError(path, str(exc) or type(exc).__name__) from exc


def _vector(data, path: str, d: Optional[int] = None) -> Vector:
    if not isinstance(data, list):
        raise ModelError(path, "expected a list of rationals")
    v = tuple(_wrap(f"{path}[{i}]", vec, [x])[0] for i, x in enumerate(data))
    if d is not None and len(v) != d:
        raise ModelError(path, f"expected {d} coordinates, got {len(v)}")
    return v


def _constraint(data, path: str, d: int) -> LinearConstraint:
    if not isinstance(data, dict):
        raise ModelError(path, "expected a constraint object")
    for key in ("coeffs", "rel", "rhs"):
        if key not in data:
            raise ModelError(f"{path}.{key}", "missing")
    coeffs = _vector(data["coeffs"], f"{path}.coeffs", d)
    rhs = _wrap(f"{path}.rhs", vec, [data["rhs"]])[0]
    return _wrap(f"{path}.rel", LinearConstraint, coeffs, data["rel"], rhs)


def _move(data, path: str, d: int) -> Move:
    if not isinstance(data, dict) or data.get("type") not in ("V", "H"):
        raise ModelError(f"{path}.type", "expected 'V' or 'H'")
    if data["type"] == "V":
        pts = data.get("vertices")
        if not isinstance(pts, list) or not pts:
            raise ModelError(f"{path}.vertices", "expected a nonempty list of points")
        vs = tuple(_vector(p, f"{path}.vertices[{i}]", d) for i, p in enumerate(pts))
        return Move(VPolytope(d, vs))
    cons = data.get("constraints")
    if not isinstance(cons, list):
        raise ModelError(f"{path}.constraints", "expected a list of constraints")
    return Move(
        HPolyhedron(d, tuple(_constraint(c, f"{path}.constraints[{i}]", d) for i, c in enumerate(cons)))
    )


def region_from_json(data, path: str, d: int) -> Region:
    if not isinstance(data, dict) or "pieces" not in data:
        raise ModelError(path, "expected a region object with 'pieces'")
    rd = data.get("dimension", d)
    if rd != d:
        raise ModelError(f"{path}.dimension", f"{rd} != {d}")
    if not isinstance(data["pieces"], list):
        raise ModelError(f"{path}.pieces", "expected a list")
    pieces = []
    for i, piece in enumerate(data["pieces"]):
        if not isinstance(piece, list):
            raise ModelError(f"{path}.pieces[{i}]", "expected a list of constraints")
        pieces.append(
            HPolyhedron(d, tuple(_constraint(c, f"{path}.pieces[{i}][{j}]", d) for j, c in enumerate(piece)))
        )
    return Region(d, tuple(pieces))


def game_from_json(data: dict) -> MinkowskiGame:
    if not isinstance(data, dict):
        raise ModelError("$", "expected a JSON object")
    if "dimension" not in data:
        raise ModelError("dimension", "missing")
    d = data["dimension"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ModelError("dimension", "must be a positive integer")
    objective = data.get("objective", BOUNDEDNESS)
    moves = {}
    for name in ("moves_a", "moves_b"):
        if name not in data:
            raise ModelError(name, "missing")
        if not isinstance(data[name], list):
            raise ModelError(name, "expected a list of moves")
        moves[name] = tuple(_move(m, f"{name}[{i}]", d) for i, m in enumerate(data[name]))
    safe = region_from_json(data["safe"], "safe", d) if data.get("safe") is not None else None
    goal = region_from_json(data["goal"], "goal", d) if data.get("goal") is not None else None
    initial = _vector(data["initial"], "initial", d) if data.get("initial") is not None else None
    return MinkowskiGame(d, moves["moves_a"], moves["moves_b"], objective, safe, goal, initial)


def parse_game(text: Union[bytes, str]) -> MinkowskiGame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError("$", f"invalid JSON: {exc}") from exc
    return game_from_json(data)


def one_sided(d: int, moves_a, objective: str = BOUNDEDNESS, **kw) -> MinkowskiGame:
    """Convenience constructor with Player B's move fixed to the origin."""
    zero = Move(VPolytope(d, ((Fraction(0),) * d,)))
    return MinkowskiGame(d, tuple(moves_a), (zero,), objective, **kw)

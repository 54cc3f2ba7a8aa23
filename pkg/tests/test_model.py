import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from minkowski_games.geometry import HPolyhedron, LinearConstraint, convert_representation, vec
from minkowski_games.generators import RandomGameConfig, random_boundedness_game
from minkowski_games.model import (
    BOUNDEDNESS,
    SAFETY,
    MinkowskiGame,
    ModelError,
    Move,
    is_single_sided,
    one_sided,
    parse_game,
    serialize_game,
)
from minkowski_games.regions import Region

C = LinearConstraint.make


def _doc(**kw):
    base = {
        "dimension": 1,
        "objective": "boundedness",
        "moves_a": [{"type": "V", "vertices": [["-1"]]}, {"type": "V", "vertices": [["1"]]}],
        "moves_b": [{"type": "V", "vertices": [["0"]]}],
    }
    base.update(kw)
    return json.dumps(base)


def test_parse_one_sided_example():
    g = parse_game(_doc())
    assert g.dimension == 1 and g.objective == BOUNDEDNESS
    assert is_single_sided(g)
    assert [m.vertices for m in g.moves_a] == [((F(-1),),), ((F(1),),)]


def test_initial_outside_safe_rejected():
    safe = {"dimension": 1, "pieces": [[{"coeffs": ["1"], "rel": ">=", "rhs": "0"},
                                        {"coeffs": ["1"], "rel": "<=", "rhs": "1"}]]}
    with pytest.raises(ModelError, match="initial ∉ safe"):
        parse_game(_doc(objective="safety", safe=safe, initial=["2"]))


def test_unbounded_h_move_rejected():
    moves = [{"type": "H", "constraints": [{"coeffs": ["1"], "rel": ">=", "rhs": "0"}]}]
    with pytest.raises(ModelError, match="move unbounded"):
        parse_game(_doc(moves_a=moves))


@pytest.mark.parametrize(
    "text, path",
    [
        ("not json", "$"),
        (json.dumps({"objective": "boundedness"}), "dimension"),
        (_doc(moves_a=[]), "moves_a"),
        (_doc(moves_a=[{"type": "V", "vertices": [["1", "2"]]}]), "moves_a[0].vertices[0]"),
        (_doc(moves_a=[{"type": "V", "vertices": [["x"]]}]), "moves_a[0].vertices[0][0]"),
        (_doc(objective="chess"), "objective"),
    ],
)
def test_errors_carry_a_path(text, path):
    with pytest.raises(ModelError) as info:
        parse_game(text)
    assert info.value.path == path


def test_single_sided_examples():
    z = Move.points([0])
    a = (Move.points([1]),)
    assert is_single_sided(MinkowskiGame(1, a, (z,)))
    assert is_single_sided(MinkowskiGame(1, a, (z, z)))
    assert not is_single_sided(MinkowskiGame(1, a, (Move.points([-1], [1]),)))


def test_h_move_vertices():
    box = HPolyhedron(1, (C([1], ">=", -1), C([1], "<=", 2)))
    assert set(Move(box).vertices) == {(F(-1),), (F(2),)}
    assert Move(box).contains(vec(["1/2"]))


def test_safety_game_round_trip():
    g = one_sided(1, [Move.points(["1/2"])], objective=SAFETY, safe=Region.box([0], [1]), initial=vec([0]))
    text = serialize_game(g)
    assert serialize_game(parse_game(text)) == text


@given(st.integers(0, 10_000))
def test_serialize_is_byte_stable(seed):
    import random

    g = random_boundedness_game(random.Random(seed), RandomGameConfig())
    once = serialize_game(g)
    assert serialize_game(parse_game(once)) == once
    for m in parse_game(once).moves_a:
        convert_representation(m.polytope)

"""Write small example inputs for the CLI into a directory (default: data/)."""
import argparse
import json
from pathlib import Path

from minkowski_games.geometry import vec
from minkowski_games.model import SAFETY, STRUCTURAL_SAFETY, Move, one_sided, serialize_game
from minkowski_games.reductions import Cnf3, Edge, TwoCounterMachine
from minkowski_games.regions import Region


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    unit = Region.box([0], [1])
    games = {
        "segment_boundedness.json": one_sided(1, [Move.points([-1], [1])]),
        "two_point_boundedness.json": one_sided(1, [Move.points([-1]), Move.points([1])]),
        "shrinking_safety.json": one_sided(1, [Move.points(["1/2"])], objective=SAFETY, safe=unit, initial=vec([0])),
        "mirror_safety.json": one_sided(
            1, [Move.points(["-1/2"]), Move.points(["1/2"])], objective=SAFETY, safe=unit, initial=vec(["1/2"])
        ),
        "half_step_structural.json": one_sided(1, [Move.points([0], ["1/2"])], objective=STRUCTURAL_SAFETY, safe=unit),
    }
    for name, g in games.items():
        (out / name).write_bytes(serialize_game(g))
    (out / "unit_square.json").write_text(
        json.dumps({"dimension": 2, "type": "V", "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}) + "\n"
    )
    (out / "one_clause.cnf").write_text(Cnf3.of(3, [(1, -2, 3)]).to_dimacs())
    (out / "unsat.cnf").write_text(Cnf3.of(1, [(1, 1, 1), (-1, -1, -1)]).to_dimacs())
    m = TwoCounterMachine(["q0", "q1"], [Edge("q0", "q1", "DEC0"), Edge("q1", "q1", "ISZERO0"),
                                         Edge("q1", "q1", "ISNOTZERO0")], "q0")
    (out / "dec_zero_machine.json").write_text(json.dumps(m.to_json(), indent=1) + "\n")
    print(f"wrote {len(list(out.iterdir()))} files to {out}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=Path("data"))
    main(p.parse_args().out)

"""Counter-machine games: iteration verdicts and Player B's escape from Safe.

Runs the safety-reachability iteration on two tiny machines, then replays
the increment-loop line of play where Player B answers the first half of
INC with the zero end of its segment and the second half with a point
strictly inside: the position leaves Safe without touching Goal.
"""
import argparse
import logging
from dataclasses import dataclass
from fractions import Fraction

from minkowski_games.geometry import fmt
from minkowski_games.reductions import Edge, TwoCounterMachine, cm2_to_safety_reach
from minkowski_games.regions import region_contains_point
from minkowski_games.safety import safety_reach_iterate
from minkowski_games.strategies import PlayerBStrategy, ScriptedPlayerA, simulate

log = logging.getLogger("counter_machine_escape")

DEC_ZERO = TwoCounterMachine(
    ["q0", "q1"],
    [Edge("q0", "q1", "DEC0"), Edge("q1", "q1", "ISZERO0"), Edge("q1", "q1", "ISNOTZERO0")],
    "q0",
)
INC_LOOP = TwoCounterMachine(["q0"], [Edge("q0", "q0", "INC0")], "q0")


@dataclass
class Config:
    max_iters: int = 20
    second_half: Fraction = Fraction(1, 2)


class StallThenOvershoot(PlayerBStrategy):
    """Zero end for the first half of INC, then ``s`` of the way along the second half."""

    def __init__(self, game, s):
        self.game, self.s = game, s

    def resolve(self, position, a_index):
        vs = self.game.moves_a[a_index].vertices
        if a_index == 0:
            return min(vs, key=lambda v: v[0])
        lo, hi = vs
        return tuple(x + self.s * (y - x) for x, y in zip(lo, hi))

    def choose_move(self, position):
        return 0


def main(cfg: Config) -> None:
    for name, m in (("decrement on zero", DEC_ZERO), ("increment loop", INC_LOOP)):
        g = cm2_to_safety_reach(m)
        v = safety_reach_iterate(g, cfg.max_iters)
        print(f"{name}: dimension {g.dimension}, verdict {v}")
    g = cm2_to_safety_reach(INC_LOOP)
    tr = simulate(g, ScriptedPlayerA(g, [0, 1]), StallThenOvershoot(g, cfg.second_half), 2)
    for k, p in enumerate(tr.positions):
        print(f"step {k}: {[fmt(x) for x in p]} safe={region_contains_point(g.safe, p)} goal={region_contains_point(g.goal, p)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-iters", type=int, default=Config.max_iters)
    a = p.parse_args()
    logging.basicConfig(level=logging.INFO)
    main(Config(a.max_iters))

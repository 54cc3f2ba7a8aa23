"""How close does Player A's bookkeeping strategy get to its norm bound?

Plays every A-winning game of a seeded suite against a few adversaries and
reports the worst ratio max_norm / bound, plus the largest denominator seen.
"""
import argparse
import logging
from dataclasses import dataclass
from fractions import Fraction

from minkowski_games.boundedness import decide_bruteforce
from minkowski_games.generators import boundedness_suite
from minkowski_games.model import PLAYER_A
from minkowski_games.strategies import GreedyPlayerB, RandomPlayerB, player_a_general_strategy, simulate

log = logging.getLogger("strategy_margins")


@dataclass
class Config:
    seed: int = 20240501
    count: int = 100
    rounds: int = 1000
    adversaries: int = 4


def main(cfg: Config) -> None:
    games = [g for g in boundedness_suite(cfg.seed, cfg.count) if decide_bruteforce(g).tag == PLAYER_A]
    worst = Fraction(0)
    max_den = 1
    for i, g in enumerate(games):
        for s in range(cfg.adversaries):
            adv = GreedyPlayerB(g, seed=s) if s % 2 else RandomPlayerB(g, seed=s, mix=0.5)
            sa = player_a_general_strategy(g)
            tr = simulate(g, sa, adv, cfg.rounds)
            bound = sa.bound()
            if bound:
                worst = max(worst, tr.max_norm / bound)
            max_den = max(max_den, max(x.denominator for p in tr.positions for x in p))
        log.debug("game %d done", i)
    print(f"A-games={len(games)} rounds={cfg.rounds} worst max_norm/bound={float(worst):.3f} max denominator={max_den}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--rounds", type=int, default=Config.rounds)
    a = p.parse_args()
    logging.basicConfig(level=logging.INFO)
    main(Config(a.seed, a.count, a.rounds))

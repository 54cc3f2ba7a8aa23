"""Cross-check the brute-force and hyperplane-search deciders on random games."""
import argparse
import logging
import time
from collections import Counter
from dataclasses import dataclass

from minkowski_games.boundedness import decide_bruteforce, decide_findwinner, verify_divergence_certificate
from minkowski_games.generators import RandomGameConfig, boundedness_suite
from minkowski_games.model import PLAYER_B

log = logging.getLogger("compare_deciders")


@dataclass
class Config:
    seed: int = 20240501
    count: int = 500
    max_dimension: int = 3


def main(cfg: Config) -> int:
    games = boundedness_suite(cfg.seed, cfg.count, RandomGameConfig(max_dimension=cfg.max_dimension))
    tags, bad, t_brute, t_fw = Counter(), 0, 0.0, 0.0
    for i, g in enumerate(games):
        t0 = time.perf_counter()
        w1 = decide_bruteforce(g)
        t1 = time.perf_counter()
        w2 = decide_findwinner(g)
        t_brute += t1 - t0
        t_fw += time.perf_counter() - t1
        tags[w1.tag] += 1
        if w1.tag != w2.tag:
            bad += 1
            log.warning("game %d: brute=%s findwinner=%s", i, w1.tag, w2.tag)
        for w in (w1, w2):
            if w.tag == PLAYER_B and not verify_divergence_certificate(g, w.certificate):
                bad += 1
                log.warning("game %d: certificate does not verify", i)
    print(f"games={len(games)} winners={dict(tags)} disagreements={bad}")
    print(f"brute force {t_brute:.2f}s, hyperplane search {t_fw:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--max-dimension", type=int, default=Config.max_dimension)
    a = p.parse_args()
    logging.basicConfig(level=logging.INFO)
    raise SystemExit(main(Config(a.seed, a.count, a.max_dimension)))

"""Command-line front end.

Machine-readable JSON goes to stdout, a one-line human summary to stderr.
Exit codes: 0 PlayerA, 1 PlayerB, 2 input or validation error, 3 Unknown,
4 resource ceiling exceeded.  ``validate``, ``convert``, ``generate`` and
``simulate`` exit 0 on success.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

from .geometry.linear import GeometryError, LinearConstraint, fmt, vec
from .geometry.polytope import HPolyhedron, VPolytope, convert_representation
from .model import PLAYER_A, PLAYER_B, UNKNOWN, ModelError, parse_game, serialize_game
from .regions import DEFAULT_PIECE_CEILING, ResourceError
from .strategies import StrategyError

logger = logging.getLogger("minkowski_games")

EXIT = {PLAYER_A: 0, PLAYER_B: 1, UNKNOWN: 3}
EXIT_ERROR = 2
EXIT_RESOURCE = 4


@dataclass
class CliConfig:
    subcommand: str
    seed: int = 0
    max_iters: int = 100
    rounds: int = 100
    threshold: Optional[str] = None
    piece_ceiling: int = DEFAULT_PIECE_CEILING


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write_json(path: str, data) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def _emit(result: dict) -> None:
    sys.stdout.write(json.dumps(result, indent=1) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _load_game(path: str):
    return parse_game(_read(path))


# --- subcommands ------------------------------------------------------------


def cmd_decide(args) -> int:
    from .boundedness import decide

    g = _load_game(args.game)
    w = decide(g, args.method)
    out = {"winner": w.tag, "certificate": w.certificate.to_json() if w.certificate else None}
    out.update({k: v for k, v in w.details.items()})
    if args.emit_certificate and w.certificate is not None:
        _write_json(args.emit_certificate, w.certificate.to_json())
    _emit(out)
    _say(f"{w.tag} wins ({args.method})")
    return EXIT[w.tag]


def _safety_common(args, iterate) -> int:
    g = _load_game(args.game)
    v = iterate(g, args.max_iters)
    out = {"winner": v.tag, "iterations": v.iterations, "pieces": len(v.region)}
    if args.emit_region:
        _write_json(args.emit_region, v.region.to_json())
    _emit(out)
    _say(f"{v.tag} after {v.iterations} iterations ({len(v.region)} pieces in the last region)")
    return EXIT[v.tag]


def cmd_safety(args) -> int:
    from .safety import safety_iterate

    return _safety_common(args, safety_iterate)


def cmd_safety_reach(args) -> int:
    from .safety import safety_reach_iterate

    return _safety_common(args, safety_reach_iterate)


def cmd_structural(args) -> int:
    from .safety import decide_structural

    g = _load_game(args.game)
    w = decide_structural(g)
    witness = [fmt(x) for x in w.witness] if w.witness is not None else None
    if args.emit_witness and witness is not None:
        _write_json(args.emit_witness, {"witness": witness})
    _emit({"winner": w.tag, "witness": witness})
    _say(f"{w.tag} wins the structural game" + (f", witness {witness}" if witness else ""))
    return EXIT[w.tag]


def cmd_simulate(args) -> int:
    from . import strategies as st
    from .boundedness import DivergenceCertificate, decide_bruteforce

    g = _load_game(args.game)
    if args.a == "auto":
        sa = st.player_a_general_strategy(g)
    elif args.a == "random":
        sa = st.RandomPlayerA(g, args.seed)
    else:
        sa = st.scripted_from_file(g, args.a)
    if args.b == "auto":
        w = decide_bruteforce(g)
        sb = st.player_b_certificate_strategy(g, w.certificate) if w.tag == PLAYER_B else st.RandomPlayerB(g, args.seed + 1)
    elif args.b == "random":
        sb = st.RandomPlayerB(g, args.seed + 1)
    else:
        cert = DivergenceCertificate.from_json(json.loads(_read(args.b)))
        sb = st.player_b_certificate_strategy(g, cert)
    threshold = vec([args.threshold])[0] if args.threshold is not None else None
    if threshold is None and isinstance(sa, st.GeneralPlayerA):
        threshold = sa.bound()
    tr = st.simulate(g, sa, sb, args.rounds, threshold)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(tr.to_jsonl())
    out = {
        "rounds": args.rounds,
        "final": [fmt(x) for x in tr.positions[-1]],
        "max_norm": fmt(tr.max_norm),
        "threshold": fmt(threshold) if threshold is not None else None,
        "exceeded": tr.exceeded,
        "exceeded_step": tr.exceeded_step,
    }
    _emit(out)
    _say(f"max norm {fmt(tr.max_norm)} over {args.rounds} rounds" + (f"; threshold exceeded at step {tr.exceeded_step}" if tr.exceeded else ""))
    return 0


def cmd_generate(args) -> int:
    from . import reductions as rd

    if args.kind in ("3sat-bounded", "3sat-structural"):
        if not args.cnf:
            raise ModelError("--cnf", "required for 3SAT generators")
        cnf = rd.parse_dimacs(_read(args.cnf))
        g = rd.threesat_to_boundedness(cnf) if args.kind == "3sat-bounded" else rd.threesat_to_structural(cnf)
    else:
        if not args.machine:
            raise ModelError("--machine", "required for the 2cm generator")
        g = rd.cm2_to_safety_reach(rd.TwoCounterMachine.from_json(json.loads(_read(args.machine))))
    data = serialize_game(g)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())
    _say(f"generated {g.objective} game in dimension {g.dimension} with {len(g.moves_a)} moves for A")
    return 0


def _poly_from_json(data: dict):
    d = int(data["dimension"])
    if data.get("type") == "V":
        return VPolytope(d, tuple(vec(v) for v in data["vertices"]))
    if data.get("type") == "H":
        return HPolyhedron(
            d, tuple(LinearConstraint.make(c["coeffs"], c["rel"], c["rhs"]) for c in data["constraints"])
        )
    raise ModelError("type", "expected 'V' or 'H'")


def _poly_to_json(p) -> dict:
    if isinstance(p, VPolytope):
        return {"dimension": p.dimension, "type": "V", "vertices": [[fmt(x) for x in v] for v in p.vertices]}
    return {
        "dimension": p.dimension,
        "type": "H",
        "constraints": [{"coeffs": [fmt(x) for x in c.coeffs], "rel": c.rel, "rhs": fmt(c.rhs)} for c in p.constraints],
    }


def cmd_convert(args) -> int:
    try:
        p = _poly_from_json(json.loads(_read(args.poly)))
    except (KeyError, TypeError) as exc:
        raise ModelError("$", f"malformed polytope: {exc}") from exc
    want = "H" if isinstance(p, VPolytope) else "V"
    if args.to != want:
        out = p.canonical() if isinstance(p, VPolytope) else p
    else:
        out = convert_representation(p)
    _emit(_poly_to_json(out))
    _say(f"converted to {args.to}-representation")
    return 0


def cmd_validate(args) -> int:
    g = _load_game(args.game)
    _emit({"valid": True, "dimension": g.dimension, "objective": g.objective})
    _say("valid")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minkowski-games", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("decide", help="winner of a boundedness game")
    s.add_argument("game")
    s.add_argument("--method", choices=("brute", "findwinner", "both"), default="brute")
    s.add_argument("--emit-certificate", metavar="OUT")
    s.set_defaults(func=cmd_decide)

    for name, fn in (("safety", cmd_safety), ("safety-reach", cmd_safety_reach)):
        s = sub.add_parser(name, help=f"{name} fixed-point iteration")
        s.add_argument("game")
        s.add_argument("--max-iters", type=int, default=100)
        s.add_argument("--emit-region", metavar="OUT")
        s.set_defaults(func=fn)

    s = sub.add_parser("structural", help="exact structural-safety decision")
    s.add_argument("game")
    s.add_argument("--emit-witness", metavar="OUT")
    s.set_defaults(func=cmd_structural)

    s = sub.add_parser("simulate", help="play strategies against each other")
    s.add_argument("game")
    s.add_argument("--a", default="auto", help="auto | random | JSON file with {'moves': [...]} ")
    s.add_argument("--b", default="auto", help="auto | random | certificate JSON")
    s.add_argument("--rounds", type=int, default=100)
    s.add_argument("--threshold", default=None, help="rational norm threshold (default: A's bound)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trace", metavar="OUT")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("generate", help="instances from 3-CNF or two-counter machines")
    s.add_argument("kind", choices=("3sat-bounded", "3sat-structural", "2cm"))
    s.add_argument("--cnf")
    s.add_argument("--machine")
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("convert", help="V <-> H conversion of a single polytope")
    s.add_argument("poly")
    s.add_argument("--to", choices=("V", "H"), required=True)
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("validate", help="parse and validate a game file")
    s.add_argument("game")
    s.set_defaults(func=cmd_validate)
    return p


def dispatch(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except ResourceError as exc:
        _emit({"error": "resource", "message": str(exc)})
        _say(f"resource limit: {exc}")
        return EXIT_RESOURCE
    except (ModelError, GeometryError, ValueError, OSError, StrategyError) as exc:
        _emit({"error": "input", "message": str(exc)})
        _say(f"error: {exc}")
        return EXIT_ERROR


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

"""Labeled instance generators: 3-CNF to games, two-counter machines to games.

All generators are pure.  :func:`sat_bruteforce` is the truth-table oracle
the 3-CNF generators are tested against.
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry.linear import LinearConstraint, Vector
from .geometry.polytope import HPolyhedron, VPolytope
from .model import (
    BOUNDEDNESS,
    SAFETY_REACHABILITY,
    STRUCTURAL_SAFETY,
    MinkowskiGame,
    Move,
)
from .regions import Region, region_intersect

logger = logging.getLogger(__name__)

SAT_VAR_LIMIT = 24

Literal = Tuple[int, bool]  # (1-based variable, positive?)


class ReductionError(ValueError):
    pass


# --- 3-CNF ----------------------------------------------------------------


@dataclass(frozen=True)
class Cnf3:
    num_vars: int
    clauses: Tuple[Tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ReductionError("num_vars must be nonnegative")
        for i, cl in enumerate(self.clauses):
            if len(cl) != 3:
                raise ReductionError(f"clause {i} has {len(cl)} literals, expected 3")
            for var, _ in cl:
                if not 1 <= var <= self.num_vars:
                    raise ReductionError(f"clause {i}: variable {var} out of range 1..{self.num_vars}")

    @classmethod
    def of(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> "Cnf3":
        """Clauses as signed integers, DIMACS style."""
        return cls(num_vars, tuple(tuple((abs(x), x > 0) for x in cl) for cl in clauses))

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[v - 1] == pos for v, pos in cl) for cl in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        for cl in self.clauses:
            lines.append(" ".join(str(v if pos else -v) for v, pos in cl) + " 0")
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Cnf3:
    """DIMACS CNF; clauses with fewer than 3 literals repeat their last literal."""
    num_vars = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ReductionError(f"line {lineno}: bad problem line")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise ReductionError(f"line {lineno}: not an integer: {tok!r}") from None
            if x == 0:
                clauses.append(current)
                current = []
            else:
                current.append(x)
    if current:
        clauses.append(current)
    if num_vars is None:
        raise ReductionError("missing 'p cnf' line")
    fixed = []
    for i, cl in enumerate(clauses):
        if not cl:
            raise ReductionError(f"clause {i + 1} is empty")
        if len(cl) > 3:
            raise ReductionError(f"clause {i + 1} has {len(cl)} literals; only 3-CNF is supported")
        fixed.append(cl + [cl[-1]] * (3 - len(cl)))
    return Cnf3.of(num_vars, fixed)


def sat_bruteforce(cnf: Cnf3) -> bool:
    if cnf.num_vars > SAT_VAR_LIMIT:
        raise ReductionError(f"brute force limited to {SAT_VAR_LIMIT} variables")
    return any(cnf.satisfied_by(a) for a in product((False, True), repeat=cnf.num_vars))


def random_cnf(rng: random.Random, max_vars: int = 3, max_clauses: int = 3) -> Cnf3:
    m = rng.randint(1, max_vars)
    n = rng.randint(1, max_clauses)
    clauses = [[rng.randint(1, m) * rng.choice((1, -1)) for _ in range(3)] for _ in range(n)]
    return Cnf3.of(m, clauses)


def literal_vector(lit: Literal, num_vars: int) -> Vector:
    """+1/-1 on the variable's coordinate pair (swapped for a negative literal)."""
    var, positive = lit
    out = [Fraction(0)] * (2 * num_vars)
    s = 1 if positive else -1
    out[2 * var - 2] = Fraction(s)
    out[2 * var - 1] = Fraction(-s)
    return tuple(out)


def _clause_moves(cnf: Cnf3) -> Tuple[Move, ...]:
    d = 2 * cnf.num_vars
    return tuple(Move(VPolytope(d, tuple(literal_vector(l, cnf.num_vars) for l in cl))) for cl in cnf.clauses)


def _origin(d: int) -> Move:
    return Move(VPolytope(d, ((Fraction(0),) * d,)))


def threesat_to_boundedness(cnf: Cnf3) -> MinkowskiGame:
    """One move per clause; Player B wins iff the formula is satisfiable."""
    if not cnf.clauses:
        raise ReductionError("the reduction needs at least one clause")
    d = 2 * cnf.num_vars
    return MinkowskiGame(d, _clause_moves(cnf), (_origin(d),), BOUNDEDNESS)


def threesat_to_structural(cnf: Cnf3) -> MinkowskiGame:
    """Same moves; Safe pins each coordinate pair to the segment from (-1,1) to (1,-1)."""
    if not cnf.clauses:
        raise ReductionError("the reduction needs at least one clause")
    d = 2 * cnf.num_vars
    cons = []
    for j in range(cnf.num_vars):
        for k in (2 * j, 2 * j + 1):
            e = tuple(Fraction(1 if i == k else 0) for i in range(d))
            cons.append(LinearConstraint(e, ">=", Fraction(-1)))
            cons.append(LinearConstraint(e, "<=", Fraction(1)))
        pair = tuple(Fraction(1 if i in (2 * j, 2 * j + 1) else 0) for i in range(d))
        cons.append(LinearConstraint(pair, "=", Fraction(0)))
    safe = Region(d, (HPolyhedron(d, tuple(cons)),))
    return MinkowskiGame(d, _clause_moves(cnf), (_origin(d),), STRUCTURAL_SAFETY, safe=safe)


# --- two-counter machines ---------------------------------------------------

PLAIN_LABELS = {"INC0", "INC1", "DEC0", "DEC1", "ISZERO0", "ISZERO1", "ISNOTZERO0", "ISNOTZERO1"}
SPLIT_LABELS = {"INCA0", "INCB0", "INCA1", "INCB1", "DECA0", "DECB0", "DECA1", "DECB1", ""}
STATE_LABELS = {"ISZERO0", "ISZERO1", "ISNOTZERO0", "ISNOTZERO1"}
NONZERO_CAP = Fraction(7, 10)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str = ""


@dataclass
class TwoCounterMachine:
    """A machine either in plain form (instructions on edges) or in split
    form (every instruction split in two halves, tests moved onto states).
    """

    states: List[str]
    edges: List[Edge]
    start: str
    counters: Tuple[int, int] = (0, 0)
    state_labels: Dict[str, str] = field(default_factory=dict)
    split: bool = False

    def out_edges(self, q: str) -> List[Edge]:
        return [e for e in self.edges if e.source == q]

    def validate(self) -> None:
        names = set(self.states)
        if len(names) != len(self.states):
            raise ReductionError("duplicate state names")
        if self.start not in names:
            raise ReductionError(f"start state {self.start!r} is not a state")
        if any(c < 0 for c in self.counters):
            raise ReductionError("initial counters must be nonnegative")
        for e in self.edges:
            if e.source not in names or e.target not in names:
                raise ReductionError(f"edge {e.source}->{e.target} uses an unknown state")
        for q, lab in self.state_labels.items():
            if q not in names:
                raise ReductionError(f"label on unknown state {q!r}")
            if lab not in STATE_LABELS:
                raise ReductionError(f"state {q}: unknown state label {lab!r}")
        for q in self.states:
            out = self.out_edges(q)
            if len(out) > 2:
                raise ReductionError(f"state {q} has out-degree {len(out)} > 2")
            if self.split:
                for e in out:
                    if e.label not in SPLIT_LABELS:
                        raise ReductionError(f"edge {q}->{e.target}: label {e.label!r} not allowed in split form")
                    if e.label.startswith(("INCA", "DECA")):
                        nxt = self.out_edges(e.target)
                        want = e.label[:3] + "B" + e.label[-1]
                        if len(nxt) != 1 or nxt[0].label != want:
                            raise ReductionError(f"edge {q}->{e.target}: {e.label} must be followed by {want}")
            else:
                if self.state_labels:
                    raise ReductionError("state labels are only used in split form")
                labels = sorted(e.label for e in out)
                if len(out) == 1 and labels[0] not in {"INC0", "INC1", "DEC0", "DEC1"}:
                    raise ReductionError(f"state {q}: a single out-edge must be INC or DEC")
                if len(out) == 2:
                    a, b = labels
                    if not (a.startswith("ISNOTZERO") and b.startswith("ISZERO") and a[-1] == b[-1]):
                        raise ReductionError(f"state {q}: two out-edges must test the same counter")
        if not self.out_edges(self.start):
            raise ReductionError("start state halts immediately")

    def split_form(self) -> "TwoCounterMachine":
        """Put a fresh state on every edge; instructions split into halves."""
        if self.split:
            return self
        self.validate()
        states = list(self.states)
        edges: List[Edge] = []
        labels: Dict[str, str] = {}
        for k, e in enumerate(self.edges):
            mid = f"{e.source}>{e.target}#{k}"
            while mid in states:
                mid += "'"
            states.append(mid)
            if e.label.startswith(("INC", "DEC")):
                edges.append(Edge(e.source, mid, e.label[:3] + "A" + e.label[-1]))
                edges.append(Edge(mid, e.target, e.label[:3] + "B" + e.label[-1]))
            else:
                labels[mid] = e.label
                edges.append(Edge(e.source, mid, ""))
                edges.append(Edge(mid, e.target, ""))
        out = TwoCounterMachine(states, edges, self.start, self.counters, labels, split=True)
        out.validate()
        return out

    def to_json(self) -> dict:
        data = {
            "states": self.states,
            "start": self.start,
            "counters": list(self.counters),
            "edges": [{"from": e.source, "to": e.target, "label": e.label} for e in self.edges],
            "split": self.split,
        }
        if self.state_labels:
            data["state_labels"] = dict(self.state_labels)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "TwoCounterMachine":
        try:
            m = cls(
                [str(s) for s in data["states"]],
                [Edge(str(e["from"]), str(e["to"]), str(e.get("label", "")).upper()) for e in data["edges"]],
                str(data["start"]),
                tuple(int(c) for c in data.get("counters", (0, 0))),  # type: ignore[arg-type]
                {str(k): str(v).upper() for k, v in data.get("state_labels", {}).items()},
                bool(data.get("split", False)),
            )
        except (KeyError, TypeError) as exc:
            raise ReductionError(f"malformed machine JSON: {exc}") from exc
        if len(m.counters) != 2:
            raise ReductionError("counters must have two entries")
        m.validate()
        return m


def load_machine(path: str) -> TwoCounterMachine:
    with open(path) as fh:
        return TwoCounterMachine.from_json(json.load(fh))


_SEGMENTS = {
    "INCA": ((0, 0), (1, -1)),
    "INCB": ((0, 0), (-1, 0)),
    "DECA": ((0, 0), (1, 0)),
    "DECB": ((0, 0), (-1, 1)),
}


def _state_box(label: Optional[str]) -> Tuple[List[Fraction], List[Fraction]]:
    """Bounds on (x0, y0, x1, y1) while the machine sits in a state."""
    lo = [Fraction(0)] * 4
    hi = [Fraction(1)] * 4
    if label:
        counter = int(label[-1])
        y = 2 * counter + 1
        if label.startswith("ISZERO"):
            lo[y] = Fraction(1)
        else:
            hi[y] = NONZERO_CAP
    return lo, hi


def _machine_safe(m: TwoCounterMachine) -> Region:
    """Hull of (state box x e_q) over non-halting states, in closed form.

    A point ``(w, z)`` lies in that hull iff ``z`` is a probability vector
    on the non-halting states and each ``w_k`` lies between the
    ``z``-weighted lower and upper bounds of the boxes.
    """
    nq = len(m.states)
    d = 4 + nq
    cons = []

    def row(entries):
        r = [Fraction(0)] * d
        for i, v in entries:
            r[i] += v
        return tuple(r)

    live = []
    for j, q in enumerate(m.states):
        if m.out_edges(q):
            live.append(j)
            cons.append(LinearConstraint(row([(4 + j, Fraction(1))]), ">=", Fraction(0)))
        else:
            cons.append(LinearConstraint(row([(4 + j, Fraction(1))]), "=", Fraction(0)))
    cons.append(LinearConstraint(row([(4 + j, Fraction(1)) for j in range(nq)]), "=", Fraction(1)))
    boxes = {j: _state_box(m.state_labels.get(m.states[j])) for j in live}
    for k in range(4):
        lower = [(k, Fraction(1))] + [(4 + j, -boxes[j][0][k]) for j in live]
        upper = [(k, Fraction(1))] + [(4 + j, -boxes[j][1][k]) for j in live]
        cons.append(LinearConstraint(row(lower), ">=", Fraction(0)))
        cons.append(LinearConstraint(row(upper), "<=", Fraction(0)))
    return Region(d, (HPolyhedron(d, tuple(cons)),)).canonical()


def _machine_goal(d: int, safe: Region) -> Region:
    """``Safe`` intersected with ``x != 0 and y != x`` on either counter block."""
    pieces = []
    for counter in (0, 1):
        xi, yi = 2 * counter, 2 * counter + 1
        ex = tuple(Fraction(1 if i == xi else 0) for i in range(d))
        diff = tuple(Fraction(1 if i == yi else -1 if i == xi else 0) for i in range(d))
        for xrel in ("<", ">"):
            for yrel in ("<", ">"):
                pieces.append(
                    HPolyhedron(d, (LinearConstraint(ex, xrel, Fraction(0)), LinearConstraint(diff, yrel, Fraction(0))))
                )
    return region_intersect(safe, Region(d, tuple(pieces)))


def cm2_to_safety_reach(machine: TwoCounterMachine) -> MinkowskiGame:
    """One-sided safety-reachability game in dimension ``4 + |Q|``.

    Coordinates are ``(x0, y0, x1, y1)`` followed by one coordinate per
    state; counter value ``k`` is encoded as ``y = 2^-k``.  Plain machines
    are split first.  The result is meant for :func:`safety_reach_iterate`;
    Goal is not closed, so the lifting to a plain safety game does not apply.
    """
    m = machine.split_form()
    nq = len(m.states)
    d = 4 + nq
    index = {q: j for j, q in enumerate(m.states)}
    moves = []
    for e in m.edges:
        state_part = [Fraction(0)] * nq
        state_part[index[e.source]] -= 1
        state_part[index[e.target]] += 1
        if e.label:
            seg = _SEGMENTS[e.label[:4]]
            counter = int(e.label[-1])
            pts = []
            for p in seg:
                xy = [Fraction(0)] * 4
                xy[2 * counter] = Fraction(p[0])
                xy[2 * counter + 1] = Fraction(p[1])
                pts.append(tuple(xy) + tuple(state_part))
        else:
            pts = [(Fraction(0),) * 4 + tuple(state_part)]
        moves.append(Move(VPolytope(d, tuple(pts))))
    safe = _machine_safe(m)
    goal = _machine_goal(d, safe)
    n0, n1 = m.counters
    start = [Fraction(0), Fraction(1, 2 ** n0), Fraction(0), Fraction(1, 2 ** n1)] + [Fraction(0)] * nq
    start[4 + index[m.start]] = Fraction(1)
    zero = Move(VPolytope(d, ((Fraction(0),) * d,)))
    return MinkowskiGame(
        d, tuple(moves), (zero,), SAFETY_REACHABILITY, safe=safe, goal=goal, initial=tuple(start)
    )

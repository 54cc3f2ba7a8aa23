"""Exact linear programming over the rationals.

The solver is a two-phase tableau simplex with Bland's rule.  It pivots
fraction-free: the tableau is kept as Python integers over a common
positive denominator (the previous pivot), so every update is an exact
integer division.  Strict inequalities are handled with one shared slack
variable ``t``: the system with strict rows is feasible iff the largest
``t`` with ``a.x + t <= b`` on every strict row is positive.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .linear import (
    GeometryError,
    LinearConstraint,
    Vector,
    check_dimension,
    integer_row,
)

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Vector] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(T: List[List[int]], D: int, r: int, s: int) -> int:
    p = T[r][s]
    row_r = T[r]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[s]
        if f == 0:
            if p != D:
                T[i] = [x * p // D for x in row]
        elif D == 1:
            T[i] = [x * p - f * y for x, y in zip(row, row_r)]
        else:
            T[i] = [(x * p - f * y) // D for x, y in zip(row, row_r)]
    return p


def _run(T, D, basis, obj, ncols, m):
    """Bland-rule iterations on objective row ``obj``; returns (status, D)."""
    rhs = len(T[0]) - 1
    while True:
        orow = T[obj]
        s = next((j for j in range(ncols) if orow[j] < 0), None)
        if s is None:
            return OPTIMAL, D
        r = None
        for i in range(m):
            a = T[i][s]
            if a <= 0:
                continue
            if r is None:
                r = i
                continue
            lhs = T[i][rhs] * T[r][s]
            rhs_ = T[r][rhs] * a
            if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[r]):
                r = i
        if r is None:
            return UNBOUNDED, D
        D = _pivot(T, D, r, s)
        basis[r] = s


def simplex_standard(
    A: Sequence[Sequence[int]], b: Sequence[int], c: Optional[Sequence[int]] = None
) -> LPResult:
    """Maximize ``c.x`` subject to ``A x = b``, ``x >= 0`` with integer data.

    With ``c`` omitted this is a pure feasibility problem.  The returned
    point is a basic feasible solution, so at most ``len(A)`` coordinates
    are nonzero.
    """
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    c = list(c) if c is not None else [0] * n
    if m == 0:
        if any(cj > 0 for cj in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    T: List[List[int]] = []
    for i in range(m):
        row = list(A[i]) + [0] * m + [b[i]]
        row[n + i] = 1
        if b[i] < 0:
            row = [-x for x in row]
            row[n + i] = 1
        T.append(row)
    width = n + m + 1
    basis = [n + i for i in range(m)]
    # A column that is e_i (with b_i >= 0) can start in the basis directly,
    # which saves phase 1 from pricing out that row's artificial.
    for j in range(n):
        nz = [i for i in range(m) if T[i][j] != 0]
        if len(nz) == 1 and T[nz[0]][j] == 1 and basis[nz[0]] >= n:
            basis[nz[0]] = j
    phase2 = [-cj for cj in c] + [0] * m + [0]
    phase1 = [0] * width
    for i, row in enumerate(T):
        j = basis[i]
        if j < n:
            if c[j]:
                phase2 = [x + c[j] * y for x, y in zip(phase2, row)]
            continue
        for k in range(n):
            phase1[k] -= row[k]
        phase1[-1] -= row[-1]
    T.append(phase2)
    T.append(phase1)
    D = 1

    _, D = _run(T, D, basis, m + 1, n, m)
    if T[m + 1][-1] < 0:
        return LPResult(INFEASIBLE)

    # Drive zero-level artificials out of the basis; drop redundant rows.
    i = 0
    while i < m:
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                m -= 1
                continue
            if T[i][j] < 0:
                T[i] = [-x for x in T[i]]
            D = _pivot(T, D, i, j)
            basis[i] = j
        i += 1
    T.pop()  # phase-1 row
    T = [row[:n] + row[-1:] for row in T]

    status, D = _run(T, D, basis, m, n, m)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = Fraction(T[i][-1], D)
    return LPResult(OPTIMAL, tuple(x), Fraction(T[m][-1], D))


def solve_lp(
    constraints: Sequence[LinearConstraint],
    objective: Optional[Sequence[Fraction]] = None,
    dimension: Optional[int] = None,
    nonneg: bool = False,
) -> LPResult:
    """Maximize ``objective . x`` over the constraint system.

    Variables are free unless ``nonneg``.  Strict constraints are only
    allowed for pure feasibility (no objective).
    """
    d = check_dimension(constraints, dimension) if constraints else dimension
    if d is None:
        raise GeometryError("dimension required for an empty constraint list")
    strict = [c for c in constraints if c.strict]
    if strict and objective is not None:
        raise GeometryError("strict constraints are supported for feasibility only")

    xcols = d if nonneg else 2 * d
    ineq = [c for c in constraints if c.rel != "="]
    ncols = xcols + len(ineq) + (1 if strict else 0) + (1 if strict else 0)
    tcol = xcols + len(ineq)
    A: List[List[int]] = []
    b: List[int] = []
    k = xcols
    for con in constraints:
        ints, rhs = con.int_form
        row = [0] * ncols
        for j, a in enumerate(ints):
            row[j] = a
            if not nonneg:
                row[d + j] = -a
        sign = 1 if con.rel in ("<", "<=") else -1
        if con.rel != "=":
            row[k] = sign
            k += 1
            if con.strict:
                row[tcol] = sign
        A.append(row)
        b.append(rhs)
    if strict:
        row = [0] * ncols
        row[tcol] = 1
        row[tcol + 1] = 1
        A.append(row)
        b.append(1)
        cost = [0] * ncols
        cost[tcol] = 1
    elif objective is not None:
        ints, _ = integer_row(objective, Fraction(0))
        cost = [0] * ncols
        for j, a in enumerate(ints):
            cost[j] = a
            if not nonneg:
                cost[d + j] = -a
    else:
        cost = None

    res = simplex_standard(A, b, cost)
    if res.status != OPTIMAL:
        return LPResult(res.status)
    xs = res.x
    point = tuple(xs[j] if nonneg else xs[j] - xs[d + j] for j in range(d))
    if strict:
        if xs[tcol] <= 0:
            return LPResult(INFEASIBLE)
        return LPResult(OPTIMAL, point, None)
    if objective is None:
        return LPResult(OPTIMAL, point, None)
    value = sum((o * p for o, p in zip(objective, point)), Fraction(0))
    return LPResult(OPTIMAL, point, value)


def lp_feasible(constraints: Sequence[LinearConstraint]) -> bool:
    """Exact feasibility of a mixed strict / non-strict / equality system."""
    if not constraints:
        return True
    return solve_lp(constraints).feasible


def feasible_point(
    constraints: Sequence[LinearConstraint], dimension: Optional[int] = None
) -> Optional[Vector]:
    res = solve_lp(constraints, dimension=dimension)
    return res.x if res.feasible else None

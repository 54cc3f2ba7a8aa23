"""Fourier-Motzkin elimination with strict inequalities.

Used two ways: as an exact projection (Minkowski sums of regions) and as
an LP-free feasibility oracle for cross-checking the simplex.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .linear import LinearConstraint, check_dimension


def _upper(constraints: Sequence[LinearConstraint]) -> List[LinearConstraint]:
    out = []
    for c in constraints:
        out.extend(c.upper_form())
    return out


def _dedupe(rows: List[LinearConstraint]) -> Optional[List[LinearConstraint]]:
    """Normalize, drop tautologies and keep the tightest of parallel rows.

    Returns None when a constant row is violated (the system is empty).
    """
    best = {}
    eqs = {}
    for c in rows:
        n = c.normalized()
        if n.is_trivial():
            if not n.trivially_true():
                return None
            continue
        if n.rel == "=":
            prev = eqs.get(n.coeffs)
            if prev is not None and prev != n.rhs:
                return None
            eqs[n.coeffs] = n.rhs
            continue
        key = n.coeffs
        cur = best.get(key)
        if cur is None or n.rhs < cur.rhs or (n.rhs == cur.rhs and n.strict):
            best[key] = n
    out = [LinearConstraint(k, "=", v) for k, v in eqs.items()]
    out.extend(best.values())
    return out


def eliminate(
    constraints: Sequence[LinearConstraint],
    k: int,
    prune: Optional[Callable[[List[LinearConstraint]], List[LinearConstraint]]] = None,
) -> Optional[List[LinearConstraint]]:
    """Eliminate variable ``k`` (its coefficient becomes zero everywhere).

    Returns None if the system is detected to be infeasible.
    """
    rows = _dedupe(_upper(constraints))
    if rows is None:
        return None
    pivot = next((c for c in rows if c.rel == "=" and c.coeffs[k] != 0), None)
    if pivot is not None:
        out = []
        pk = pivot.coeffs[k]
        for c in rows:
            if c is pivot:
                continue
            f = c.coeffs[k] / pk
            if f == 0:
                out.append(c)
                continue
            coeffs = tuple(a - f * b for a, b in zip(c.coeffs, pivot.coeffs))
            out.append(LinearConstraint(coeffs, c.rel, c.rhs - f * pivot.rhs))
    else:
        pos, negs, out = [], [], []
        for c in rows:
            a = c.coeffs[k]
            (pos if a > 0 else negs if a < 0 else out).append(c)
        for p in pos:
            for n in negs:
                lp_, ln = p.coeffs[k], -n.coeffs[k]
                coeffs = tuple(ln * a + lp_ * b for a, b in zip(p.coeffs, n.coeffs))
                rel = "<" if (p.strict or n.strict) else "<="
                out.append(LinearConstraint(coeffs, rel, ln * p.rhs + lp_ * n.rhs))
    out = _dedupe(out)
    if out is None:
        return None
    if prune is not None:
        out = prune(out)
    return out


def project(
    constraints: Sequence[LinearConstraint],
    keep: Sequence[int],
    prune: Optional[Callable[[List[LinearConstraint]], List[LinearConstraint]]] = None,
) -> Optional[List[LinearConstraint]]:
    """Project onto the coordinates ``keep`` (in that order).

    Returns None for an empty projection.
    """
    d = check_dimension(constraints)
    rows: Optional[List[LinearConstraint]] = list(constraints)
    drop = [i for i in range(d) if i not in set(keep)]
    for k in drop:
        rows = eliminate(rows, k, prune)
        if rows is None:
            return None
    return [
        LinearConstraint(tuple(c.coeffs[i] for i in keep), c.rel, c.rhs) for c in rows
    ]


def fm_feasible(constraints: Sequence[LinearConstraint]) -> bool:
    """Feasibility by eliminating every variable; no LP involved."""
    if not constraints:
        return True
    d = check_dimension(constraints)
    rows: Optional[List[LinearConstraint]] = list(constraints)
    for k in range(d):
        rows = eliminate(rows, k)
        if rows is None:
            return False
    return all(c.holds((Fraction(0),) * d) for c in rows)

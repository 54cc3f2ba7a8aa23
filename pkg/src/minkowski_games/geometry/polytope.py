"""Convex primitives on exact rational points and polytopes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

from . import fourier_motzkin as fm
from .linear import (
    GeometryError,
    LinearConstraint,
    Vector,
    add,
    check_dimension,
    dot,
    scale,
    sub,
)
from .lp import OPTIMAL, UNBOUNDED, simplex_standard, solve_lp


@dataclass(frozen=True)
class VPolytope:
    """``CH(vertices)``; use :meth:`canonical` to keep only extremal points."""

    dimension: int
    vertices: Tuple[Vector, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GeometryError("a V-polytope needs at least one vertex")
        if any(len(v) != self.dimension for v in self.vertices):
            raise GeometryError("vertex dimension mismatch")

    @classmethod
    def of(cls, points: Sequence[Sequence[Fraction]]) -> "VPolytope":
        pts = tuple(tuple(Fraction(x) for x in p) for p in points)
        if not pts:
            raise GeometryError("a V-polytope needs at least one vertex")
        return cls(len(pts[0]), pts)

    def canonical(self) -> "VPolytope":
        return VPolytope(self.dimension, canonical_vertices(self.vertices))

    def contains(self, point: Sequence[Fraction]) -> bool:
        return hull_membership(point, self.vertices)[0]

    def reflect(self) -> "VPolytope":
        return VPolytope(self.dimension, tuple(tuple(-x for x in v) for v in self.vertices))

    def translate(self, t: Sequence[Fraction]) -> "VPolytope":
        return VPolytope(self.dimension, tuple(add(v, t) for v in self.vertices))

    def scaled(self, c: Fraction) -> "VPolytope":
        return VPolytope(self.dimension, tuple(tuple(c * x for x in v) for v in self.vertices))


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of linear constraints; no constraints means all of R^d."""

    dimension: int
    constraints: Tuple[LinearConstraint, ...] = ()

    def __post_init__(self):
        if self.constraints:
            check_dimension(self.constraints, self.dimension)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(c.holds(point) for c in self.constraints)

    @property
    def closed(self) -> bool:
        return not any(c.strict for c in self.constraints)


@dataclass(frozen=True)
class Hyperplane:
    normal: Vector
    offset: Fraction

    def __post_init__(self):
        if not any(self.normal):
            raise GeometryError("hyperplane normal must be nonzero")

    def side(self, point: Sequence[Fraction]) -> int:
        v = dot(self.normal, point) - self.offset
        return (v > 0) - (v < 0)


# --- linear algebra -------------------------------------------------------


def _echelon(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    M = [list(r) for r in rows]
    pivots: List[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank_of(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank over the rationals; the empty list has rank 0."""
    if not vectors:
        return 0
    if len({len(v) for v in vectors}) > 1:
        raise GeometryError("dimension mismatch in rank_of")
    return len(_echelon(vectors)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], d: int) -> List[Vector]:
    """Basis of ``{x : r.x = 0 for r in rows}``."""
    R, pivots = _echelon(rows)
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * d
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vector]:
    """Unique solution of ``rows x = rhs`` or None."""
    d = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = _echelon(aug)
    if d in pivots or len(pivots) < d:
        return None
    return tuple(R[i][-1] for i in range(d))


# --- hulls ----------------------------------------------------------------


def _hull_system(point: Sequence[Fraction], generators: Sequence[Vector]):
    A, b = [], []
    for i in range(len(point)):
        row = [g[i] for g in generators] + [point[i]]
        m = lcm(*(x.denominator for x in row))
        A.append([int(x * m) for x in row[:-1]])
        b.append(int(row[-1] * m))
    A.append([1] * len(generators))
    b.append(1)
    return A, b


def hull_membership(
    point: Sequence[Fraction], generators: Sequence[Sequence[Fraction]]
) -> Tuple[bool, Optional[Tuple[Fraction, ...]]]:
    """Is ``point`` in ``CH(generators)``?  Returns ``(member, weights)``.

    The weights come from a basic feasible solution, so at most ``d + 1``
    of them are nonzero.
    """
    if not generators:
        raise GeometryError("hull_membership needs at least one generator")
    d = len(point)
    if any(len(g) != d for g in generators):
        raise GeometryError("dimension mismatch in hull_membership")
    A, b = _hull_system(point, generators)
    res = simplex_standard(A, b)
    if res.status != OPTIMAL:
        return False, None
    return True, res.x


def hull_membership_lp(point: Sequence[Fraction], generators: Sequence[Vector]) -> bool:
    """The same question phrased as a general constraint system."""
    k = len(generators)
    cons = []
    for i in range(len(point)):
        cons.append(LinearConstraint(tuple(g[i] for g in generators), "=", Fraction(point[i])))
    cons.append(LinearConstraint((Fraction(1),) * k, "=", Fraction(1)))
    for j in range(k):
        e = tuple(Fraction(1 if i == j else 0) for i in range(k))
        cons.append(LinearConstraint(e, ">=", Fraction(0)))
    return solve_lp(cons).feasible


def caratheodory_decompose(
    point: Sequence[Fraction], generators: Sequence[Sequence[Fraction]]
) -> List[Tuple[Vector, Fraction]]:
    """Write ``point`` as a convex combination of at most ``d + 1`` generators."""
    ok, w = hull_membership(point, generators)
    if not ok:
        raise GeometryError("point is not in the convex hull of the generators")
    return [(tuple(g), x) for g, x in zip(generators, w) if x != 0]


def split_scaled_hull(
    point: Sequence[Fraction], generators: Sequence[Vector]
) -> Optional[Tuple[Vector, Vector]]:
    """Write a point of ``(d+1)CH(G)`` as ``g + r`` with ``g`` in ``G`` and ``r`` in ``d*CH(G)``.

    Base points are tried in order, so the lowest usable index wins.
    Returns None when no base point works (then ``point`` is outside
    ``(d+1)CH(G)``).
    """
    d = len(point)
    if d == 0:
        return (tuple(generators[0]), ()) if generators else None
    for g in generators:
        rest = sub(point, g)
        if hull_membership(scale(Fraction(1, d), rest), generators)[0]:
            return tuple(g), rest
    return None


def canonical_vertices(points: Sequence[Vector]) -> Tuple[Vector, ...]:
    """Drop duplicates and points lying in the hull of the remaining ones."""
    pts: List[Vector] = []
    for p in points:
        if p not in pts:
            pts.append(tuple(p))
    i = 0
    while i < len(pts) and len(pts) > 1:
        others = pts[:i] + pts[i + 1:]
        if hull_membership(pts[i], others)[0]:
            pts = others
        else:
            i += 1
    return tuple(pts)


def minkowski_sum_v(p: VPolytope, r: VPolytope) -> VPolytope:
    if p.dimension != r.dimension:
        raise GeometryError("dimension mismatch in minkowski_sum_v")
    sums = [add(a, b) for a in p.vertices for b in r.vertices]
    return VPolytope(p.dimension, canonical_vertices(sums))


# --- representation conversion --------------------------------------------


def remove_redundant(constraints: Sequence[LinearConstraint]) -> List[LinearConstraint]:
    """Drop inequalities implied by the others (exact LP test per row)."""
    rows = list(constraints)
    i = 0
    while i < len(rows):
        c = rows[i]
        if c.rel == "=":
            i += 1
            continue
        others = rows[:i] + rows[i + 1:]
        if not others:
            break
        if all(not solve_lp(others + [n]).feasible for n in c.negations()):
            rows = others
        else:
            i += 1
    return rows


def _implicit_equalities(rows: List[LinearConstraint], vertices: Sequence[Vector]):
    eqs, ineqs = [], []
    for c in rows:
        if c.rel == "=" or all(dot(c.coeffs, v) == c.rhs for v in vertices):
            eqs.append(LinearConstraint(c.coeffs, "=", c.rhs).normalized())
        else:
            ineqs.append(c)
    basis: List[LinearConstraint] = []
    for e in eqs:
        if rank_of([list(b.coeffs) + [b.rhs] for b in basis + [e]]) > len(basis):
            basis.append(e)
    return basis, ineqs


def v_to_h(p: VPolytope) -> HPolyhedron:
    """Facet description of ``CH(vertices)``, implicit equalities as ``=`` rows."""
    verts = canonical_vertices(p.vertices)
    d, k = p.dimension, len(verts)
    n = d + k
    cons = []
    for i in range(d):
        coeffs = [Fraction(0)] * n
        coeffs[i] = Fraction(1)
        for j, v in enumerate(verts):
            coeffs[d + j] = -v[i]
        cons.append(LinearConstraint(tuple(coeffs), "=", Fraction(0)))
    cons.append(LinearConstraint(tuple([Fraction(0)] * d + [Fraction(1)] * k), "=", Fraction(1)))
    for j in range(k):
        coeffs = [Fraction(0)] * n
        coeffs[d + j] = Fraction(-1)
        cons.append(LinearConstraint(tuple(coeffs), "<=", Fraction(0)))
    rows = fm.project(cons, list(range(d)), prune=remove_redundant)
    if rows is None:
        raise GeometryError("empty hull")
    eqs, ineqs = _implicit_equalities(rows, verts)
    ineqs = remove_redundant(eqs + [c.normalized() for c in ineqs])[len(eqs):]
    return HPolyhedron(d, tuple(eqs + ineqs))


def _bounded(h: HPolyhedron) -> bool:
    for i in range(h.dimension):
        for s in (1, -1):
            obj = tuple(Fraction(s if j == i else 0) for j in range(h.dimension))
            if solve_lp(h.constraints, obj, dimension=h.dimension).status == UNBOUNDED:
                return False
    return True


def h_to_v(h: HPolyhedron) -> VPolytope:
    """Vertices of a bounded, closed, nonempty H-polyhedron."""
    if not h.closed:
        raise GeometryError("H to V conversion needs non-strict constraints")
    d = h.dimension
    if not solve_lp(h.constraints, dimension=d).feasible:
        raise GeometryError("empty polyhedron has no V-representation")
    if not _bounded(h):
        raise GeometryError("unbounded polyhedron has no V-representation")
    eqs = [c for c in h.constraints if c.rel == "="]
    ineqs = [c for c in h.constraints if c.rel != "="]
    r = rank_of([c.coeffs for c in eqs])
    found: List[Vector] = []
    for combo in combinations(ineqs, d - r):
        rows = [c.coeffs for c in eqs] + [c.coeffs for c in combo]
        rhs = [c.rhs for c in eqs] + [c.rhs for c in combo]
        R, piv = _echelon([list(a) + [b] for a, b in zip(rows, rhs)])
        if d in piv or len(piv) < d:
            continue
        x = tuple(R[i][-1] for i in range(d))
        if x not in found and h.contains(x):
            found.append(x)
    return VPolytope(d, canonical_vertices(found))


def convert_representation(p: Union[VPolytope, HPolyhedron]) -> Union[HPolyhedron, VPolytope]:
    if isinstance(p, VPolytope):
        return v_to_h(p)
    return h_to_v(p)


# --- hyperplanes and separation ------------------------------------------


def hyperplane_through(points: Sequence[Vector]) -> Hyperplane:
    """The affine hull of ``d`` affinely independent points."""
    d = len(points[0])
    if len(points) != d:
        raise GeometryError(f"need exactly {d} points, got {len(points)}")
    diffs = [sub(x, points[0]) for x in points[1:]]
    ns = nullspace(diffs, d)
    if len(ns) != 1:
        raise GeometryError("anchor points are affinely dependent")
    n = ns[0]
    return Hyperplane(n, dot(n, points[0]))


def separates(anchors: Sequence[Vector], targets: Sequence[Vector]) -> bool:
    """Origin strictly on one side of ``AH(anchors)``, all targets on the closed other side."""
    h = hyperplane_through(anchors)
    c = h.offset
    if c == 0:
        return False
    for y in targets:
        if c * (dot(h.normal, y) - c) < 0:
            return False
    return True


def separating_direction(
    generators: Sequence[Sequence[Fraction]],
) -> Optional[Tuple[Vector, Fraction]]:
    """``(u, delta)`` with ``u.g >= delta > 0`` on every generator, or None if 0 is in the hull."""
    if not generators:
        raise GeometryError("separating_direction needs at least one generator")
    d = len(generators[0])
    if hull_membership((Fraction(0),) * d, generators)[0]:
        return None
    # variables (u_1..u_d, delta); maximize delta with u in the unit box
    cons = []
    for g in generators:
        cons.append(LinearConstraint(tuple(-Fraction(x) for x in g) + (Fraction(1),), "<=", Fraction(0)))
    for i in range(d):
        e = tuple(Fraction(1 if j == i else 0) for j in range(d + 1))
        cons.append(LinearConstraint(e, "<=", Fraction(1)))
        cons.append(LinearConstraint(e, ">=", Fraction(-1)))
    obj = (Fraction(0),) * d + (Fraction(1),)
    res = solve_lp(cons, obj, dimension=d + 1)
    u, delta = res.x[:d], res.x[d]
    return u, delta

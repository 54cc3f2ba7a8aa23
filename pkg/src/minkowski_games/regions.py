"""Finite unions of rational polyhedra with strict constraints.

A :class:`Region` is a list of pieces, each an :class:`HPolyhedron`; its
point set is the union of the pieces.  The class is closed under
complement, which is what makes erosion (and hence the controllable
predecessor) computable exactly.

Complement and erosion blow up exponentially in the worst case.  Every
operation checks the piece count against a ceiling and raises
:class:`ResourceError` instead of approximating.
"""
from __future__ import annotations

import logging
import os
from math import lcm
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .geometry import fourier_motzkin as fm
from .geometry.linear import GeometryError, LinearConstraint, Vector, fmt, q
from .geometry.lp import feasible_point, lp_feasible
from .geometry.polytope import (
    HPolyhedron,
    VPolytope,
    canonical_vertices,
    remove_redundant,
    v_to_h,
)

logger = logging.getLogger(__name__)

DEFAULT_PIECE_CEILING = 10000


class ResourceError(RuntimeError):
    """A region grew beyond the configured piece-count ceiling."""


def piece_ceiling() -> int:
    return int(os.environ.get("MINKOWSKI_PIECE_CEILING", DEFAULT_PIECE_CEILING))


def _check_ceiling(n: int) -> None:
    limit = piece_ceiling()
    if n > limit:
        raise ResourceError(f"region exceeded {limit} pieces ({n})")


def _clean(constraints: Iterable[LinearConstraint], reduce: bool = True):
    """Normalized, feasibility-checked constraint tuple, or None if empty."""
    rows = fm._dedupe([u for c in constraints for u in c.upper_form()])
    if rows is None:
        return None
    if rows and not lp_feasible(rows):
        return None
    if reduce and len(rows) > 1:
        rows = remove_redundant(rows)
    return tuple(sorted(rows, key=lambda c: (c.coeffs, c.rel, c.rhs)))


@dataclass(frozen=True)
class Region:
    dimension: int
    pieces: Tuple[HPolyhedron, ...] = ()

    def __post_init__(self):
        for p in self.pieces:
            if p.dimension != self.dimension:
                raise GeometryError("piece dimension mismatch")

    @classmethod
    def empty(cls, d: int) -> "Region":
        return cls(d, ())

    @classmethod
    def universe(cls, d: int) -> "Region":
        return cls(d, (HPolyhedron(d, ()),))

    @classmethod
    def from_constraints(cls, d: int, *pieces: Sequence[LinearConstraint]) -> "Region":
        return cls(d, tuple(HPolyhedron(d, tuple(p)) for p in pieces)).canonical()

    @classmethod
    def from_polytope(cls, p) -> "Region":
        if isinstance(p, VPolytope):
            p = v_to_h(p)
        return cls(p.dimension, (p,)).canonical()

    @classmethod
    def box(cls, lows: Sequence, highs: Sequence) -> "Region":
        d = len(lows)
        cons = []
        for i, (lo, hi) in enumerate(zip(lows, highs)):
            e = tuple(Fraction(1 if j == i else 0) for j in range(d))
            cons.append(LinearConstraint(e, ">=", q(lo)))
            cons.append(LinearConstraint(e, "<=", q(hi)))
        return cls.from_constraints(d, cons)

    def canonical(self) -> "Region":
        """Prune empty and duplicate pieces (no merging)."""
        seen = []
        for p in self.pieces:
            c = _clean(p.constraints)
            if c is not None and c not in seen:
                seen.append(c)
        return Region(self.dimension, tuple(HPolyhedron(self.dimension, c) for c in seen))

    def __len__(self) -> int:
        return len(self.pieces)

    def __str__(self) -> str:
        if not self.pieces:
            return "{}"
        return " | ".join(
            "{" + ", ".join(str(c) for c in p.constraints) + "}" for p in self.pieces
        )

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "pieces": [
                [
                    {"coeffs": [fmt(x) for x in c.coeffs], "rel": c.rel, "rhs": fmt(c.rhs)}
                    for c in p.constraints
                ]
                for p in self.pieces
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Region":
        d = int(data["dimension"])
        pieces = []
        for piece in data["pieces"]:
            pieces.append(
                HPolyhedron(
                    d,
                    tuple(LinearConstraint.make(c["coeffs"], c["rel"], c["rhs"]) for c in piece),
                )
            )
        return cls(d, tuple(pieces))


def _same_dim(r: Region, s: Region) -> int:
    if r.dimension != s.dimension:
        raise GeometryError(f"dimension mismatch: {r.dimension} vs {s.dimension}")
    return r.dimension


def _scaled_point(p):
    """``p`` as an integer vector over a common positive denominator."""
    if p is None:
        return None
    den = lcm(*(x.denominator for x in p)) if p else 1
    return tuple(int(x * den) for x in p), den


def _piece_subset(a: tuple, b: tuple, witness_a) -> bool:
    if witness_a is not None:
        num, den = witness_a
        if not all(c.holds_scaled(num, den) for c in b):
            return False
    return all(not lp_feasible(a + (n,)) for c in b for n in c.negations())


def _prune_subsumed(d: int, pieces: List[tuple]) -> List[tuple]:
    """Drop pieces contained in another piece; keeps the first of equal pieces."""
    if len(pieces) < 2:
        return pieces
    witness = [_scaled_point(feasible_point(p, d)) for p in pieces]
    keep = [True] * len(pieces)
    for i, a in enumerate(pieces):
        for j, b in enumerate(pieces):
            if i == j or not keep[j]:
                continue
            if _piece_subset(a, b, witness[i]):
                keep[i] = False
                break
    return [p for p, k in zip(pieces, keep) if k]


def _build(d: int, piece_tuples: List[tuple]) -> Region:
    out = []
    for c in piece_tuples:
        if c not in out:
            out.append(c)
    out = _prune_subsumed(d, out)
    _check_ceiling(len(out))
    return Region(d, tuple(HPolyhedron(d, c) for c in out))


def region_union(r: Region, s: Region) -> Region:
    d = _same_dim(r, s)
    return Region(d, r.pieces + s.pieces).canonical()


def region_intersect(r: Region, s: Region) -> Region:
    d = _same_dim(r, s)
    _check_ceiling(len(r) * len(s))
    out = []
    for a in r.pieces:
        for b in s.pieces:
            c = _clean(a.constraints + b.constraints)
            if c is not None:
                out.append(c)
    return _build(d, out)


def _subtract(piece: tuple, r: Region) -> List[tuple]:
    """Pieces covering ``piece \\ r``."""
    current = [piece]
    for p in r.pieces:
        if not p.constraints:
            return []
        nxt = []
        for cur in current:
            for con in p.constraints:
                for n in con.negations():
                    c = _clean(cur + (n,))
                    if c is not None and c not in nxt:
                        nxt.append(c)
        _check_ceiling(len(nxt))
        current = _prune_subsumed(r.dimension, nxt)
        if not current:
            return []
    return current


def region_complement(r: Region) -> Region:
    return _build(r.dimension, _subtract((), r))


def region_difference(r: Region, s: Region) -> Region:
    d = _same_dim(r, s)
    out = []
    for p in r.pieces:
        out.extend(_subtract(p.constraints, s))
    return _build(d, out)


def region_translate(r: Region, t: Sequence[Fraction]) -> Region:
    if len(t) != r.dimension:
        raise GeometryError("dimension mismatch in region_translate")
    return Region(
        r.dimension,
        tuple(HPolyhedron(r.dimension, tuple(c.translate(t) for c in p.constraints)) for p in r.pieces),
    )


def _piece_plus_polytope(constraints: tuple, verts: Sequence[Vector], d: int) -> Optional[tuple]:
    """``piece + CH(verts)`` by eliminating the convex weights."""
    v0 = verts[0]
    if len(verts) == 1:
        return _clean(c.translate(v0) for c in constraints)
    dirs = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
    k = len(dirs)
    rows = []
    for c in constraints:
        shifted = c.translate(v0)
        extra = tuple(-sum((a * w for a, w in zip(c.coeffs, w_)), Fraction(0)) for w_ in dirs)
        rows.append(LinearConstraint(tuple(c.coeffs) + extra, shifted.rel, shifted.rhs))
    zeros = (Fraction(0),) * d
    for j in range(k):
        e = tuple(Fraction(-1 if i == j else 0) for i in range(k))
        rows.append(LinearConstraint(zeros + e, "<=", Fraction(0)))
    rows.append(LinearConstraint(zeros + (Fraction(1),) * k, "<=", Fraction(1)))
    projected = fm.project(rows, list(range(d)), prune=remove_redundant)
    if projected is None:
        return None
    return _clean(projected)


def region_minkowski_polytope(r: Region, p: VPolytope) -> Region:
    if p.dimension != r.dimension:
        raise GeometryError("dimension mismatch in region_minkowski_polytope")
    verts = canonical_vertices(p.vertices)
    out = []
    for piece in r.pieces:
        c = _piece_plus_polytope(piece.constraints, verts, r.dimension)
        if c is not None:
            out.append(c)
    return _build(r.dimension, out)


def region_erode_polytope(r: Region, p: VPolytope) -> Region:
    """``{x : x + p is a subset of r}``."""
    if p.dimension != r.dimension:
        raise GeometryError("dimension mismatch in region_erode_polytope")
    verts = canonical_vertices(p.vertices)
    if len(verts) == 1:
        return region_translate(r, tuple(-x for x in verts[0]))
    comp = region_complement(r)
    grown = region_minkowski_polytope(comp, p.reflect())
    return region_complement(grown)


def region_is_empty(r: Region) -> bool:
    return not any(lp_feasible(p.constraints) for p in r.pieces)


def region_contains_point(r: Region, v: Sequence[Fraction]) -> bool:
    if len(v) != r.dimension:
        raise GeometryError("dimension mismatch in region_contains_point")
    return any(p.contains(v) for p in r.pieces)


def region_contains_region(outer: Region, inner: Region) -> bool:
    """``inner`` is a subset of ``outer``."""
    _same_dim(outer, inner)
    for p in inner.pieces:
        if _subtract(p.constraints, outer):
            return False
    return True


def region_equal(r: Region, s: Region) -> bool:
    return region_contains_region(r, s) and region_contains_region(s, r)

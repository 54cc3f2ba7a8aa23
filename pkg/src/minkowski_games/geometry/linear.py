"""Rational scalars, vectors and linear constraints.

Scalars are :class:`fractions.Fraction`; vectors are plain tuples of
fractions.  Everything here is immutable and exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Tuple, Union

Vector = Tuple[Fraction, ...]
Number = Union[int, Fraction, str]

RELATIONS = ("<", "<=", "=", ">=", ">")
_FLIP = {"<": ">", "<=": ">=", "=": "=", ">=": "<=", ">": "<"}
_NEGATE = {"<=": (">",), "<": (">=",), ">=": ("<",), ">": ("<=",), "=": ("<", ">")}


class GeometryError(ValueError):
    """Bad input to a geometric primitive (dimension mismatch, empty set, ...)."""


def q(value: Number) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GeometryError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"malformed rational {value!r}") from exc
    raise GeometryError(f"not a rational: {value!r}")


def vec(values: Iterable[Number]) -> Vector:
    return tuple(q(v) for v in values)


def fmt(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` or ``"n"``."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def zero(d: int) -> Vector:
    return (Fraction(0),) * d


def unit(d: int, k: int) -> Vector:
    return tuple(Fraction(1 if i == k else 0) for i in range(d))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence[Fraction]) -> Vector:
    return tuple(-a for a in u)


def scale(c: Fraction, u: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm_inf(u: Sequence[Fraction]) -> Fraction:
    return max((abs(a) for a in u), default=Fraction(0))


def combination(weights: Sequence[Fraction], points: Sequence[Vector]) -> Vector:
    d = len(points[0])
    out = [Fraction(0)] * d
    for w, p in zip(weights, points):
        if w:
            for i in range(d):
                out[i] += w * p[i]
    return tuple(out)


def integer_row(coeffs: Sequence[Fraction], rhs: Fraction) -> Tuple[Tuple[int, ...], int]:
    """Scale ``coeffs . x ~ rhs`` by the positive lcm of denominators."""
    m = lcm(*(c.denominator for c in coeffs), rhs.denominator)
    return tuple(int(c * m) for c in coeffs), int(rhs * m)


@dataclass(frozen=True)
class LinearConstraint:
    """``coeffs . x  rel  rhs`` with rel one of ``< <= = >= >``."""

    coeffs: Vector
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise GeometryError(f"unknown relation {self.rel!r}")

    @classmethod
    def make(cls, coeffs: Iterable[Number], rel: str, rhs: Number) -> "LinearConstraint":
        return cls(vec(coeffs), rel, q(rhs))

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    @property
    def strict(self) -> bool:
        return self.rel in ("<", ">")

    @cached_property
    def int_form(self) -> Tuple[Tuple[int, ...], int]:
        """Positive integer multiple of the row, computed once."""
        return integer_row(self.coeffs, self.rhs)

    def holds_scaled(self, num: Sequence[int], den: int) -> bool:
        """``holds(num / den)`` for an integer vector and a positive integer ``den``."""
        a, b = self.int_form
        lhs = sum(x * y for x, y in zip(a, num))
        rhs = b * den
        rel = self.rel
        if rel == "<=":
            return lhs <= rhs
        if rel == "<":
            return lhs < rhs
        if rel == "=":
            return lhs == rhs
        if rel == ">=":
            return lhs >= rhs
        return lhs > rhs

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = dot(self.coeffs, point)
        return {
            "<": lhs < self.rhs,
            "<=": lhs <= self.rhs,
            "=": lhs == self.rhs,
            ">=": lhs >= self.rhs,
            ">": lhs > self.rhs,
        }[self.rel]

    def negations(self) -> Tuple["LinearConstraint", ...]:
        """Constraints whose union is the complement of this one."""
        return tuple(LinearConstraint(self.coeffs, r, self.rhs) for r in _NEGATE[self.rel])

    def translate(self, t: Sequence[Fraction]) -> "LinearConstraint":
        """The constraint satisfied by ``x + t`` exactly when ``x`` satisfies self."""
        return LinearConstraint(self.coeffs, self.rel, self.rhs + dot(self.coeffs, t))

    def upper_form(self) -> Tuple["LinearConstraint", ...]:
        """Rewrite using only ``<=``, ``<`` and ``=``."""
        if self.rel in (">=", ">"):
            return (LinearConstraint(neg(self.coeffs), _FLIP[self.rel], -self.rhs),)
        return (self,)

    def normalized(self) -> "LinearConstraint":
        """Upper form scaled to coprime integers; equalities get a positive leading coefficient."""
        (c,) = self.upper_form()
        ints, r = integer_row(c.coeffs, c.rhs)
        g = gcd(*ints, r)
        if g == 0:
            return c
        if c.rel == "=":
            lead = next((x for x in ints if x), 0)
            if lead < 0:
                g = -g
        return LinearConstraint(tuple(Fraction(x // g) for x in ints), c.rel, Fraction(r // g))

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def trivially_true(self) -> bool:
        return self.is_trivial() and self.holds(zero(self.dimension))

    def __str__(self) -> str:
        terms = [f"{fmt(c)}*x{i + 1}" for i, c in enumerate(self.coeffs) if c]
        return f"{' + '.join(terms) or '0'} {self.rel} {fmt(self.rhs)}"


def check_dimension(constraints: Sequence[LinearConstraint], d: int | None = None) -> int:
    dims = {c.dimension for c in constraints}
    if d is not None:
        dims.add(d)
    if len(dims) > 1:
        raise GeometryError(f"dimension mismatch among constraints: {sorted(dims)}")
    if not dims:
        raise GeometryError("cannot infer dimension of an empty constraint list")
    return dims.pop()

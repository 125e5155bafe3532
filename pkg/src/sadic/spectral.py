"""Eigendirections of matrix products, projections onto the antidiagonal line.

Directions live on the max-norm unit sphere of the positive quadrant.  For
(eventually) periodic sequences the dominant direction of the cycle product
is carried in exact quadratic-field arithmetic (a + b*sqrt(disc) with
rational a, b), which makes rational-independence questions decidable; the
general path uses high-precision floats (mpmath, 128-bit mantissa default).

Points of the line x + y = 0 are represented by their first coordinate
(the pair is (x, -x)); addition of such points is ordinary addition of the
coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .directive import DirectiveSequence, is_primitive
from .errors import (
    ConvergenceError,
    NotOnLineError,
    NotPrimitiveError,
    OrthogonalityError,
)
from .words import Mat2

DEFAULT_PREC = 128


def _sqrt_disc(disc: int, prec: int):
    with mpmath.workprec(prec):
        return mpmath.sqrt(disc)


class Quadratic:
    """Exact element a + b*sqrt(disc) of a real quadratic field.

    ``disc`` is a non-negative integer; perfect squares are folded into the
    rational part at construction, so ``b != 0`` certifies irrationality.
    """

    __slots__ = ("a", "b", "disc")

    def __init__(self, a, b=0, disc: int = 0):
        a, b = Fraction(a), Fraction(b)
        if disc < 0:
            raise ValueError("negative discriminant")
        if b == 0:
            disc = 0
        elif disc == 0:
            b = Fraction(0)
        else:
            r = math.isqrt(disc)
            if r * r == disc:
                a, b, disc = a + b * r, Fraction(0), 0
        self.a, self.b, self.disc = a, b, disc

    def _align(self, other) -> "Quadratic":
        if not isinstance(other, Quadratic):
            other = Quadratic(other)
        if self.disc and other.disc and self.disc != other.disc:
            raise ValueError("mixed discriminants")
        return other

    def __add__(self, other):
        other = self._align(other)
        return Quadratic(self.a + other.a, self.b + other.b, self.disc or other.disc)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._align(other)
        return Quadratic(self.a - other.a, self.b - other.b, self.disc or other.disc)

    def __rsub__(self, other):
        return Quadratic(other).__sub__(self)

    def __neg__(self):
        return Quadratic(-self.a, -self.b, self.disc)

    def __mul__(self, other):
        other = self._align(other)
        d = self.disc or other.disc
        return Quadratic(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._align(other)
        d = self.disc or other.disc
        denom = other.a * other.a - other.b * other.b * d
        if denom == 0:
            raise ZeroDivisionError("division by zero quadratic")
        num = self * Quadratic(other.a, -other.b, d)
        return Quadratic(num.a / denom, num.b / denom, d)

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare |a| with |b| sqrt(disc) exactly
        if a * a > b * b * self.disc:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __eq__(self, other):
        try:
            other = self._align(other)
        except ValueError:
            return False
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        return (self - self._align(other)).sign() < 0

    def __le__(self, other):
        return (self - self._align(other)).sign() <= 0

    def __hash__(self):
        return hash((self.a, self.b, self.disc))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not rational")
        return self.a

    def to_mpf(self, prec: int = DEFAULT_PREC):
        with mpmath.workprec(prec):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * _sqrt_disc(self.disc, prec)

    def __float__(self) -> float:
        return float(self.to_mpf(80))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a} + {self.b}*sqrt({self.disc})"


@dataclass(frozen=True)
class DirectionVec:
    """Non-negative direction on the max-norm unit sphere.

    ``x``/``y`` are mpmath floats at ``prec`` bits; ``exact`` optionally
    carries the same coordinates as quadratic-field elements.
    """

    x: object
    y: object
    prec: int = DEFAULT_PREC
    exact: Optional[tuple[Quadratic, Quadratic]] = None

    @classmethod
    def from_floats(cls, x, y, prec: int = DEFAULT_PREC) -> "DirectionVec":
        with mpmath.workprec(prec):
            x, y = mpmath.mpf(x), mpmath.mpf(y)
            if x < 0 or y < 0 or (x == 0 and y == 0):
                raise ValueError("direction must be non-negative and non-zero")
            m = max(x, y)
            return cls(x / m, y / m, prec)

    @classmethod
    def from_exact(cls, qx: Quadratic, qy: Quadratic, prec: int = DEFAULT_PREC) -> "DirectionVec":
        if qx.sign() < 0 or qy.sign() < 0 or (qx.sign() == 0 and qy.sign() == 0):
            raise ValueError("direction must be non-negative and non-zero")
        m = qx if (qx - qy).sign() >= 0 else qy
        qx, qy = qx / m, qy / m
        return cls(qx.to_mpf(prec), qy.to_mpf(prec), prec, (qx, qy))

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def simplex_coordinate(self):
        """First coordinate after normalizing to coordinate-sum 1."""
        return self.x / (self.x + self.y)

    def simplex_coordinate_exact(self) -> Optional[Quadratic]:
        if self.exact is None:
            return None
        qx, qy = self.exact
        return qx / (qx + qy)

    def ratio(self):
        return self.y / self.x


def angle_between(a: Sequence, b: Sequence) -> float:
    """Angle of two non-zero vectors from their Euclidean cross and inner products.

    The products are formed in the operands' own arithmetic (exact for
    integers, high-precision for mpmath floats), so near-parallel vectors
    with huge coordinates do not suffer cancellation.
    """
    cross = a[0] * b[1] - a[1] * b[0]
    dot = a[0] * b[0] + a[1] * b[1]
    if cross == 0 and dot == 0:
        raise ValueError("zero vector has no direction")
    return float(mpmath.atan2(abs(cross), dot))


def cone_direction(
    D: DirectiveSequence, *, depth: int = 64, tol: float = 1e-12, prec: int = DEFAULT_PREC
) -> DirectionVec:
    """Common direction of the nested cones M_[0,n) R+^2, by column iteration.

    Requires a positive product within ``depth`` (refused otherwise); raises
    ConvergenceError if the cone angle never drops below ``tol``.
    """
    first_pos = is_primitive(D, 0, depth)
    if first_pos is None:
        raise NotPrimitiveError(f"no positive product up to depth {depth}")
    with mpmath.workprec(prec):
        for n in range(first_pos, D.effective_horizon(depth) + 1):
            m = D.product_matrix(0, n)
            c1 = (mpmath.mpf(m.a), mpmath.mpf(m.c))
            c2 = (mpmath.mpf(m.b), mpmath.mpf(m.d))
            if angle_between(c1, c2) < tol:
                u1 = c1[0] / max(c1) + c2[0] / max(c2)
                u2 = c1[1] / max(c1) + c2[1] / max(c2)
                return DirectionVec.from_floats(u1, u2, prec)
    raise ConvergenceError(f"cone not contracted below {tol} within depth {depth}")


def _perron_direction_exact(m: Mat2) -> Optional[tuple[Quadratic, Quadratic]]:
    """Exact dominant eigendirection of a non-negative matrix, if well defined."""
    disc = m.trace() ** 2 - 4 * m.det()
    if disc <= 0:
        return None
    lam = Quadratic(Fraction(m.trace(), 2), Fraction(1, 2), disc)
    if m.b != 0:
        vec = (Quadratic(m.b), lam - m.a)
    elif m.c != 0:
        vec = (lam - m.d, Quadratic(m.c))
    else:
        return None  # diagonal: no unique positive direction
    if vec[0].sign() < 0 or vec[1].sign() < 0:
        return None
    return vec


def right_eigenvector(
    D: DirectiveSequence, *, depth: int = 64, tol: float = 1e-12, prec: int = DEFAULT_PREC
) -> DirectionVec:
    """Generalized right eigenvector of a primitive directive sequence.

    For (eventually) periodic sequences with a positive-discriminant cycle
    product the direction is returned in exact quadratic form; otherwise it
    comes from cone contraction at the working precision.
    """
    if D.cycle:
        if is_primitive(D, len(D.prefix), len(D.prefix) + 4 * len(D.cycle) + 4) is None:
            raise NotPrimitiveError("cycle product has no positive power on the window")
        pre, p = len(D.prefix), len(D.cycle)
        exact = _perron_direction_exact(D.product_matrix(pre, pre + p))
        if exact is not None:
            head = D.product_matrix(0, pre)
            qx = Quadratic(head.a) * exact[0] + Quadratic(head.b) * exact[1]
            qy = Quadratic(head.c) * exact[0] + Quadratic(head.d) * exact[1]
            return DirectionVec.from_exact(qx, qy, prec)
    return cone_direction(D, depth=depth, tol=tol, prec=prec)


@dataclass(frozen=True)
class IndependenceReport:
    status: str  # "independent" | "dependent" | "unknown-leaning-independent"
    provable: bool
    rational: Optional[tuple[int, int]]
    partial_quotients: tuple[int, ...]
    checked_depth: int
    lemma_inference: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "provable": self.provable,
            "rational": list(self.rational) if self.rational else None,
            "partial_quotients": list(self.partial_quotients),
            "checked_depth": self.checked_depth,
            "lemma_inference": self.lemma_inference,
        }


def rational_independence(
    u: DirectionVec,
    *,
    quotient_cap: int = 40,
    huge_quotient: int = 10**6,
    small_denominator: int = 10**4,
    irreducible_and_balanced: Optional[bool] = None,
) -> IndependenceReport:
    """Decide or bound rational independence of the coordinates of ``u``.

    Exact quadratic coordinates settle the question.  Floats are expanded
    as a continued fraction: an exactly terminating expansion, or a huge
    partial quotient while the convergent denominator is still small, flags
    a rational ratio; otherwise the verdict leans independent up to the
    checked depth.  ``irreducible_and_balanced`` reports the inference flag:
    under those window hypotheses independence follows for the right
    eigenvector.
    """
    if u.exact is not None:
        ratio = u.exact[1] / u.exact[0]
        if ratio.is_rational:
            f = ratio.as_fraction()
            return IndependenceReport(
                "dependent", True, (f.numerator, f.denominator), (), 0,
                irreducible_and_balanced,
            )
        return IndependenceReport(
            "independent", True, None, (), 0, irreducible_and_balanced
        )

    with mpmath.workprec(u.prec):
        x = u.y / u.x
        eps = mpmath.mpf(2) ** (-(u.prec - 8))
        quotients: list[int] = []
        h_pp, k_pp, h_p, k_p = 0, 1, 1, 0  # convergent recurrence seeds
        for _ in range(quotient_cap):
            a = int(mpmath.floor(x))
            # a huge partial quotient means x is indistinguishable from the
            # previous convergent h_p/k_p at this precision
            if len(quotients) >= 1 and a > huge_quotient:
                if k_p <= small_denominator:
                    return IndependenceReport(
                        "dependent", False, (h_p, k_p), tuple(quotients),
                        len(quotients), irreducible_and_balanced,
                    )
                break
            quotients.append(a)
            h, k = a * h_p + h_pp, a * k_p + k_pp
            h_pp, k_pp, h_p, k_p = h_p, k_p, h, k
            frac = x - a
            if frac < eps:
                return IndependenceReport(
                    "dependent", False, (h, k), tuple(quotients),
                    len(quotients), irreducible_and_balanced,
                )
            x = 1 / frac
    return IndependenceReport(
        "unknown-leaning-independent", False, None, tuple(quotients),
        len(quotients), irreducible_and_balanced,
    )


@dataclass(frozen=True)
class TraceEntry:
    index: int
    vector: tuple[float, float]
    angle: float


@dataclass(frozen=True)
class LeftVecTrace:
    """Normalized transposed-product images of a candidate left vector."""

    v: tuple[float, float]
    entries: tuple[TraceEntry, ...]

    def angles(self) -> list[float]:
        return [e.angle for e in self.entries]

    def to_json(self) -> dict:
        return {
            "v": list(self.v),
            "trace": [
                {"index": e.index, "vector": list(e.vector), "angle": e.angle}
                for e in self.entries
            ],
        }


def left_vector_trace(
    D: DirectiveSequence, v, indices: Sequence[int], *, prec: int = DEFAULT_PREC
) -> LeftVecTrace:
    """Images t(M_[0,n_k)) v, max-norm normalized, with angles to v."""
    if isinstance(v, DirectionVec):
        vx, vy = v.x, v.y
    else:
        vx, vy = v
    if list(indices) != sorted(indices):
        raise ValueError("indices must be increasing")
    entries = []
    with mpmath.workprec(prec):
        vx, vy = mpmath.mpf(vx), mpmath.mpf(vy)
        for n in indices:
            t = D.product_matrix(0, n).transpose()
            wx = t.a * vx + t.b * vy
            wy = t.c * vx + t.d * vy
            m = max(wx, wy)
            wx, wy = wx / m, wy / m
            entries.append(
                TraceEntry(n, (float(wx), float(wy)), angle_between((wx, wy), (vx, vy)))
            )
    return LeftVecTrace((float(vx), float(vy)), tuple(entries))


def height(x: Sequence, u, w) -> float:
    """Coefficient of u in the decomposition x = H(x) u + (component in w-perp)."""
    ux, uy = _pair(u)
    wx, wy = _pair(w)
    denom = ux * wx + uy * wy
    if abs(denom) < 1e-15 * max(1.0, abs(ux) + abs(uy)) * max(1.0, abs(wx) + abs(wy)):
        raise OrthogonalityError("projection direction is orthogonal to the target line")
    return (float(x[0]) * wx + float(x[1]) * wy) / denom


def project(x: Sequence, u, w) -> tuple[float, float]:
    """Projection of x along direction u onto the line orthogonal to w."""
    h = height(x, u, w)
    ux, uy = _pair(u)
    return (float(x[0]) - h * ux, float(x[1]) - h * uy)


def pi0(point: Sequence, *, tol: float = 1e-9) -> float:
    """First coordinate of a point (x, -x) on the antidiagonal line."""
    if abs(float(point[0]) + float(point[1])) > tol:
        raise NotOnLineError(f"coordinates of {point} do not sum to 0")
    return float(point[0])


def _pair(v) -> tuple[float, float]:
    if isinstance(v, DirectionVec):
        return v.as_floats()
    return float(v[0]), float(v[1])

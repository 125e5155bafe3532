"""Rauzy fractal approximations on the antidiagonal line and rotation checks.

On two letters the fractal lives on the line x + y = 0, so every point is
stored as its first coordinate: the projection of a limit-word prefix p with
counts (a, b) along u is a - (a + b) * u1', where u1' = u1/(u1+u2).  Each
point is labeled by the letter following its prefix, which refines the
fractal into the two subtiles.  The exchange of pieces translates a point
by t_i = pi0(projection of e_i); t1 - t2 = 1 exactly, so both translations
agree modulo the lattice and the circle factor is rotation by t1 mod 1.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .directive import DirectiveSequence
from .language import limit_word_prefix
from .spectral import DirectionVec, Quadratic, rational_independence

__all__ = [
    "RauzyApprox",
    "ExchangeMap",
    "RotationFactor",
    "OrbitReport",
    "OverlapEstimate",
    "ZWalkReport",
    "fractal_points",
    "exchange",
    "rotation_factor",
    "orbit_vs_shift",
    "subtile_overlap",
    "zwalk",
    "minimality_proxy",
]


@dataclass(frozen=True)
class RauzyApprox:
    """Projected prefixes of a limit word, labeled by the following letter."""

    pi0: np.ndarray  # float64, one value per prefix
    labels: str  # labels[k] is the letter after the length-k prefix
    depth: int
    u1_simplex: float

    def max_abs(self) -> float:
        return float(np.abs(self.pi0).max())

    def points_for(self, letter: str) -> np.ndarray:
        mask = np.frombuffer(self.labels.encode(), dtype=np.uint8) == ord(letter)
        return self.pi0[mask]

    def write_csv(self, fh) -> None:
        fh.write("index,pi0,label\n")
        for k in range(self.depth):
            fh.write(f"{k},{self.pi0[k]!r},{self.labels[k]}\n")


def fractal_points(
    D: DirectiveSequence, u: DirectionVec, depth: int, *, seed_letter: str = "1"
) -> RauzyApprox:
    """Projections of the first ``depth`` prefixes of the limit word."""
    word = limit_word_prefix(D, seed_letter, depth)
    u1p = float(u.simplex_coordinate())
    arr = (np.frombuffer(word.encode(), dtype=np.uint8) == ord("1")).astype(np.int64)
    ones = np.zeros(depth, dtype=np.int64)
    if depth > 1:
        np.cumsum(arr[: depth - 1], out=ones[1:])
    points = ones - np.arange(depth, dtype=np.float64) * u1p
    return RauzyApprox(points, word, depth, u1p)


@dataclass(frozen=True)
class ExchangeMap:
    """Piecewise translation on the fractal: shift by t1 on one subtile, t2 on the other.

    t1 - t2 = 1 exactly, reflecting that the two translations are congruent
    modulo the integer lattice of the line.
    """

    t1: float
    t2: float
    u1_simplex: float

    @classmethod
    def from_direction(cls, u: DirectionVec) -> "ExchangeMap":
        u1p = float(u.simplex_coordinate())
        return cls(1.0 - u1p, -u1p, u1p)

    def translation(self, letter: str) -> float:
        return self.t1 if letter == "1" else self.t2


def exchange(emap: ExchangeMap, x: float, letter: str) -> float:
    """One exchange step from a point with known subtile label."""
    return x + emap.translation(letter)


@dataclass(frozen=True)
class RotationFactor:
    """Rotation angle of the circle factor: pi0 of the projected first basis vector, mod 1."""

    angle: float
    exact: Optional[Quadratic]
    is_rational: Optional[bool]

    def to_json(self) -> dict:
        return {
            "angle": self.angle,
            "exact": repr(self.exact) if self.exact is not None else None,
            "is_rational": self.is_rational,
        }


def rotation_factor(u: DirectionVec) -> RotationFactor:
    u1p = float(u.simplex_coordinate())
    angle = (1.0 - u1p) % 1.0
    exact = None
    is_rational: Optional[bool] = None
    q = u.simplex_coordinate_exact()
    if q is not None:
        exact = Quadratic(1) - q
        is_rational = exact.is_rational
    else:
        rep = rational_independence(u)
        if rep.status == "dependent":
            is_rational = True
    return RotationFactor(angle, exact, is_rational)


class _NearestLabel:
    """Deterministic nearest-point classifier over the labeled approximation."""

    def __init__(self, approx: RauzyApprox):
        order = np.argsort(approx.pi0, kind="stable")
        self.xs = approx.pi0[order]
        self.labels = "".join(approx.labels[i] for i in order)

    def label_of(self, y: float) -> str:
        i = bisect.bisect_left(self.xs, y)
        if i == 0:
            return self.labels[0]
        if i == len(self.xs):
            return self.labels[-1]
        # ties broken toward the smaller coordinate
        if y - self.xs[i - 1] <= self.xs[i] - y:
            return self.labels[i - 1]
        return self.labels[i]


@dataclass(frozen=True)
class OrbitReport:
    steps: int
    mismatches: int
    first_mismatch: Optional[int]
    positions: tuple[int, ...]
    angle: float
    coincidence_checked: Optional[bool]

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "mismatches": self.mismatches,
            "first_mismatch": self.first_mismatch,
            "positions": list(self.positions),
            "angle": self.angle,
            "coincidence_checked": self.coincidence_checked,
        }


def orbit_vs_shift(
    D: DirectiveSequence,
    u: DirectionVec,
    steps: int,
    *,
    approx: Optional[RauzyApprox] = None,
    approx_depth: Optional[int] = None,
    angle_perturbation: float = 0.0,
    coincidence_verified: Optional[bool] = None,
) -> OrbitReport:
    """Compare exchange-orbit subtile labels of the origin with the limit word.

    The orbit starts at the projection of the empty prefix (0) and is driven
    geometrically: at each step the current point is classified by the
    nearest labeled approximation point and translated accordingly.  Without
    perturbation, a system conjugate to its exchange map yields 0 mismatches.
    """
    if approx is None:
        depth = approx_depth or max(10 * steps, 1000)
        approx = fractal_points(D, u, depth)
    if approx.depth < steps:
        raise ValueError("approximation shallower than the requested orbit")
    u1p = approx.u1_simplex + angle_perturbation
    emap = ExchangeMap(1.0 - u1p, -u1p, u1p)
    classifier = _NearestLabel(approx)
    word = approx.labels

    y = 0.0
    mismatches = 0
    first: Optional[int] = None
    positions: list[int] = []
    for n in range(steps):
        lab = classifier.label_of(y)
        if lab != word[n]:
            mismatches += 1
            if first is None:
                first = n
            if len(positions) < 20:
                positions.append(n)
        y = exchange(emap, y, lab)
    return OrbitReport(
        steps, mismatches, first, tuple(positions),
        (1.0 - approx.u1_simplex) % 1.0, coincidence_verified,
    )


@dataclass(frozen=True)
class OverlapEstimate:
    measure: float
    bins_both: int
    bins_total: int
    bin_width: float

    def to_json(self) -> dict:
        return {
            "measure": self.measure,
            "bins_both": self.bins_both,
            "bins_total": self.bins_total,
            "bin_width": self.bin_width,
        }


def subtile_overlap(approx: RauzyApprox, bin_width: float) -> OverlapEstimate:
    """Lebesgue measure of bins hit by both subtile labels.

    Under coincidence the subtiles are disjoint in measure, so the estimate
    shrinks as the depth grows and the bins narrow.
    """
    if approx.depth == 0:
        raise ValueError("empty approximation")
    b1 = np.unique(np.floor(approx.points_for("1") / bin_width).astype(np.int64))
    b2 = np.unique(np.floor(approx.points_for("2") / bin_width).astype(np.int64))
    both = np.intersect1d(b1, b2, assume_unique=True)
    total = len(np.union1d(b1, b2))
    return OverlapEstimate(len(both) * bin_width, len(both), total, bin_width)


@dataclass(frozen=True)
class ZWalkReport:
    """Integer walk of prefix-count differences of two equal-length words."""

    z: tuple[int, ...]
    max_abs: int
    step_violations: int
    bound: Optional[int]
    bound_violations: Optional[int]
    sign_changes: int
    first_return_to_zero: Optional[int]

    def to_json(self) -> dict:
        return {
            "max_abs": self.max_abs,
            "step_violations": self.step_violations,
            "bound": self.bound,
            "bound_violations": self.bound_violations,
            "sign_changes": self.sign_changes,
            "first_return_to_zero": self.first_return_to_zero,
            "length": len(self.z) - 1,
        }


def zwalk(word_a: str, word_b: str, steps: int, *, bound: Optional[int] = None) -> ZWalkReport:
    """z_n = |prefix_n(a)|_1 - |prefix_n(b)|_1 for n = 0..steps.

    Same-length prefixes make the projected difference the integer z_n
    directly (the lattice of the line is generated by a vector of
    projection -1).  Steps always lie in {0, +-1}; a balance constant, when
    supplied, bounds |z_n|.
    """
    if len(word_a) < steps or len(word_b) < steps:
        raise ValueError("words shorter than the requested walk")
    ia = np.frombuffer(word_a[:steps].encode(), dtype=np.uint8) == ord("1")
    ib = np.frombuffer(word_b[:steps].encode(), dtype=np.uint8) == ord("1")
    z = np.zeros(steps + 1, dtype=np.int64)
    np.cumsum(ia.astype(np.int64) - ib.astype(np.int64), out=z[1:])
    diffs = np.diff(z)
    step_violations = int((np.abs(diffs) > 1).sum())
    bound_violations = int((np.abs(z) > bound).sum()) if bound is not None else None

    signs = np.sign(z)
    nonzero = signs[signs != 0]
    sign_changes = int((nonzero[1:] != nonzero[:-1]).sum()) if len(nonzero) else 0
    first_return: Optional[int] = None
    seen_nonzero = False
    for n, val in enumerate(z):
        if val != 0:
            seen_nonzero = True
        elif seen_nonzero:
            first_return = n
            break
    return ZWalkReport(
        tuple(int(v) for v in z),
        int(np.abs(z).max()),
        step_violations,
        bound,
        bound_violations,
        sign_changes,
        first_return,
    )


def minimality_proxy(word: str, balance_constant: int) -> bool:
    """Both letters occur in every window of length 10 * C of the word."""
    w = 10 * balance_constant
    if len(word) < w:
        return False
    return all(
        "1" in word[i : i + w] and "2" in word[i : i + w]
        for i in range(len(word) - w + 1)
    )

"""Geometric substitution on unit segments and the strong coincidence test.

A segment [x, i] is the half-open unit segment x + [0,1) e_i with x in Z^2
and i in {1, 2}.  The geometric image of a segment under a substitution has
one output segment per letter occurrence in the image word; the outputs of
a single input chain into a broken line.

Strong coincidence for a directive sequence asks for a depth n at which
the images of [0,1] and [0,2] share a segment, equivalently for prefixes
p1, p2 of the two depth-n letter images with equal abelianization followed
by the same letter.  The decision procedure below works on abelianized
prefixes in a hash set (linear in the image length) rather than on
materialized segment sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .directive import DirectiveSequence
from .errors import DegenerateHeightsError
from .spectral import height
from .words import Substitution, abelianize


class GeomSegment(NamedTuple):
    x: tuple  # (int, int)
    letter: str

    def endpoint(self) -> tuple:
        if self.letter == "1":
            return (self.x[0] + 1, self.x[1])
        return (self.x[0], self.x[1] + 1)


def _float_pair(v) -> tuple[float, float]:
    if hasattr(v, "as_floats"):
        return v.as_floats()
    return (float(v[0]), float(v[1]))


def e1_image(sub: Substitution, seg: GeomSegment) -> list[GeomSegment]:
    """Geometric image of a segment: one output per letter of the image word.

    Outputs are in word order, so consecutive starts differ by the
    abelianization of one letter and the whole list chains from M x to
    M (x + e_i).
    """
    m = sub.incidence()
    base = m.mul_vec(seg.x)
    out: list[GeomSegment] = []
    a = b = 0  # running abelianization of the prefix
    for ch in sub.image(seg.letter):
        out.append(GeomSegment((base[0] + a, base[1] + b), ch))
        if ch == "1":
            a += 1
        else:
            b += 1
    return out


@dataclass(frozen=True)
class CoincidenceWitness:
    n: int
    prefix_abelianization: tuple  # l(p1) = l(p2)
    letter: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "prefix_abelianization": list(self.prefix_abelianization),
            "letter": self.letter,
        }


@dataclass(frozen=True)
class CoincidenceVerdict:
    status: str  # "coincident-at" | "none-up-to"
    n: Optional[int]
    cap: int
    witness: Optional[CoincidenceWitness] = None
    all_coincident: tuple[int, ...] = ()

    def found(self) -> bool:
        return self.status == "coincident-at"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "n": self.n,
            "cap": self.cap,
            "witness": self.witness.to_json() if self.witness else None,
            "all_coincident": list(self.all_coincident),
        }


def _coincidence_at(D: DirectiveSequence, n: int, max_letters: int) -> Optional[CoincidenceWitness]:
    prod = D.product_substitution(0, n, max_letters=max_letters)
    seen: set[tuple] = set()
    a = b = 0
    for ch in prod.image1:
        seen.add((a, b, ch))
        if ch == "1":
            a += 1
        else:
            b += 1
    a = b = 0
    for ch in prod.image2:
        if (a, b, ch) in seen:
            return CoincidenceWitness(n, (a, b), ch)
        if ch == "1":
            a += 1
        else:
            b += 1
    return None


def strong_coincidence(
    D: DirectiveSequence,
    cap: int,
    *,
    collect_all: bool = False,
    max_letters: int = 5_000_000,
) -> CoincidenceVerdict:
    """Search depths 1..cap for a coincidence of the two letter images.

    Returns the least coincident depth with its witness; coincidence at one
    depth does not imply it at larger depths, so ``collect_all`` reports
    every coincident depth up to the cap.
    """
    first: Optional[CoincidenceWitness] = None
    hits: list[int] = []
    top = D.effective_horizon(cap)
    for n in range(1, top + 1):
        w = _coincidence_at(D, n, max_letters)
        if w is not None:
            if first is None:
                first = w
            hits.append(n)
            if not collect_all:
                break
    if first is None:
        return CoincidenceVerdict("none-up-to", None, top)
    return CoincidenceVerdict(
        "coincident-at", first.n, top, first, tuple(hits)
    )


def e1_set(D: DirectiveSequence, n: int, seed: GeomSegment) -> set[GeomSegment]:
    """Depth-n geometric image of a seed segment, by iterated one-step images.

    Applies the innermost substitution first, matching the product
    convention; materializes the full set, so only suitable for small n.
    """
    segs: set[GeomSegment] = {seed}
    for k in range(n - 1, -1, -1):
        sub = D.substitution(k)
        segs = {t for s in segs for t in e1_image(sub, s)}
    return segs


def configuration_iterate(
    D: DirectiveSequence, segments: Iterable[GeomSegment], n: int
) -> dict[GeomSegment, tuple[GeomSegment, ...]]:
    """Depth-n broken lines of each segment, tagged by their source segment."""
    out: dict[GeomSegment, tuple[GeomSegment, ...]] = {}
    for seg in segments:
        chains = [seg]
        for k in range(n - 1, -1, -1):
            sub = D.substitution(k)
            chains = [t for s in chains for t in e1_image(sub, s)]
        out[seg] = tuple(chains)
    return out


@dataclass(frozen=True)
class Configuration:
    """Distinct segments all cut in their interior by one stripe translate."""

    segments: frozenset[GeomSegment]
    w: tuple[float, float]

    @classmethod
    def create(cls, segments: Iterable[GeomSegment], u, w) -> "Configuration":
        segs = frozenset(segments)
        if segs and common_height_interval(segs, u, w) is None:
            raise ValueError("no stripe translate cuts every segment interior")
        return cls(segs, _float_pair(w))

    def sorted_segments(self) -> list[GeomSegment]:
        return sorted(self.segments)

    def translate(self, t: tuple) -> "Configuration":
        return Configuration(
            frozenset(
                GeomSegment((s.x[0] + t[0], s.x[1] + t[1]), s.letter)
                for s in self.segments
            ),
            self.w,
        )


def common_height_interval(
    segments: Iterable[GeomSegment], u, w
) -> Optional[tuple[float, float]]:
    """Open interval of heights t whose stripe line cuts every segment interior."""
    lo, hi = float("-inf"), float("inf")
    for seg in segments:
        h0 = height(seg.x, u, w)
        h1 = height(seg.endpoint(), u, w)
        a, b = min(h0, h1), max(h0, h1)
        lo, hi = max(lo, a), min(hi, b)
    if lo < hi:
        return (lo, hi)
    return None


def stripe_slice(
    tagged: dict[GeomSegment, Sequence[GeomSegment]] | Iterable[GeomSegment],
    v,
    u,
    t: float,
    *,
    eps: float = 1e-9,
) -> Configuration:
    """Sub-collection of segments whose interior meets the line at height t.

    Heights are taken with respect to (u, v).  A height tie with a segment
    endpoint is reported as degenerate rather than tie-broken.
    """
    if isinstance(tagged, dict):
        segments: list[GeomSegment] = [s for chain in tagged.values() for s in chain]
    else:
        segments = list(tagged)
    picked = []
    for seg in segments:
        h0 = height(seg.x, u, v)
        h1 = height(seg.endpoint(), u, v)
        if abs(h0 - t) < eps or abs(h1 - t) < eps:
            raise DegenerateHeightsError(
                f"slice height {t} ties a vertex of {seg} within {eps}"
            )
        if min(h0, h1) < t < max(h0, h1):
            picked.append(seg)
    return Configuration.create(picked, u, v)


def truncation_domain(u, C: float):
    """Membership predicate for integer points with small antidiagonal projection.

    Keeps x in Z^2 whose projection along u onto the antidiagonal line has
    max-norm below C + 1; configuration exploration never needs points
    outside this strip.
    """
    ux, uy = (u.as_floats() if hasattr(u, "as_floats") else (float(u[0]), float(u[1])))
    if ux <= 0 or uy <= 0:
        raise ValueError("direction must be positive")
    s = ux + uy

    def member(x: Sequence) -> bool:
        h = (x[0] + x[1]) / s
        return max(abs(x[0] - h * ux), abs(x[1] - h * uy)) < C + 1

    return member


@dataclass(frozen=True)
class ExplorationReport:
    """Observations from slicing iterated broken lines between vertex heights."""

    depth: int
    sources: tuple[GeomSegment, ...]
    broken_lines: dict[GeomSegment, tuple[GeomSegment, ...]]
    slices: tuple[Configuration, ...]
    slice_heights: tuple[float, ...]
    coincidence_found: bool
    common_segment: Optional[GeomSegment]
    periodicity: Optional[dict] = None
    degenerate: bool = False
    outside_truncation: int = 0

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "sources": [[list(s.x), s.letter] for s in self.sources],
            "slice_count": len(self.slices),
            "slice_sizes": [len(c.segments) for c in self.slices],
            "coincidence_found": self.coincidence_found,
            "common_segment": (
                [list(self.common_segment.x), self.common_segment.letter]
                if self.common_segment
                else None
            ),
            "periodicity": self.periodicity,
            "degenerate_heights": self.degenerate,
            "vertices_outside_truncation": self.outside_truncation,
        }


def explore_configurations(
    D: DirectiveSequence,
    u,
    v,
    depth: int,
    *,
    balance_constant: Optional[float] = None,
) -> ExplorationReport:
    """Iterate the origin segments, slice the broken lines between vertex
    heights, and look for translation periodicity among the slices.

    This instrument reproduces the objects used in coincidence arguments
    for inspection; it reports observations on the computed window and
    proves nothing beyond it.
    """
    sources = (GeomSegment((0, 0), "1"), GeomSegment((0, 0), "2"))
    broken = configuration_iterate(D, sources, depth)

    flat = [s for chain in broken.values() for s in chain]
    seen: set[GeomSegment] = set()
    common = None
    for chain in broken.values():
        inter = seen.intersection(chain)
        if inter:
            common = sorted(inter)[0]
        seen.update(chain)

    vertices = {s.x for s in flat} | {s.endpoint() for s in flat}
    heights = sorted({height(p, u, v) for p in vertices})
    degenerate = any(b - a < 1e-9 for a, b in zip(heights, heights[1:]))

    outside = 0
    if balance_constant is not None:
        member = truncation_domain(u, balance_constant)
        outside = sum(1 for p in vertices if not member(p))

    slices: list[Configuration] = []
    slice_heights: list[float] = []
    for a, b in zip(heights, heights[1:]):
        t = (a + b) / 2
        try:
            cfg = stripe_slice(broken, v, u, t)
        except DegenerateHeightsError:
            degenerate = True
            continue
        # keep the regime where each broken line contributes exactly once
        per_source = [sum(1 for s in chain if s in cfg.segments) for chain in broken.values()]
        if all(c == 1 for c in per_source):
            slices.append(cfg)
            slice_heights.append(t)

    periodicity = _find_translation_period(slices)
    return ExplorationReport(
        depth=depth,
        sources=sources,
        broken_lines=broken,
        slices=tuple(slices),
        slice_heights=tuple(slice_heights),
        coincidence_found=common is not None,
        common_segment=common,
        periodicity=periodicity,
        degenerate=degenerate,
        outside_truncation=outside,
    )


def _find_translation_period(slices: Sequence[Configuration]) -> Optional[dict]:
    """First (a, b, t) with slice[j + b] = slice[j] + t for all j >= a."""
    count = len(slices)
    for b in range(1, count // 2 + 1):
        for a in range(0, count - b):
            s0 = slices[a].sorted_segments()
            s1 = slices[a + b].sorted_segments()
            if len(s0) != len(s1):
                continue
            t = (s1[0].x[0] - s0[0].x[0], s1[0].x[1] - s0[0].x[1])
            if all(
                slices[j + b].segments == slices[j].translate(t).segments
                for j in range(a, count - b)
            ):
                return {"start": a, "period": b, "translation": list(t)}
    return None

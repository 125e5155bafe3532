"""Directive sequences, their partial products, and window-checkable hypotheses.

A directive sequence is an infinite sequence of substitutions described
finitely: periodic, eventually periodic, or a finite window with no
extension.  Every verdict produced here is relative to an explicit window;
only for (eventually) periodic sequences do periodicity arguments extend a
window verdict to the whole sequence, and reports say so via a ``periodic``
witness flag.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Optional

from .errors import HorizonExceededError, ImageTooLargeError
from .words import Mat2, Substitution


@dataclass(frozen=True)
class DirectiveSequence:
    """Finitely described sequence (sigma_n) of substitutions.

    ``prefix`` holds the aperiodic head, ``cycle`` the repeating tail.  An
    empty cycle means a finite window: queries beyond ``len(prefix)`` raise
    :class:`HorizonExceededError`.
    """

    prefix: tuple[Substitution, ...]
    cycle: tuple[Substitution, ...]
    _matrices: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _products: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if not self.prefix and not self.cycle:
            raise ValueError("directive sequence needs at least one substitution")

    @classmethod
    def periodic(cls, cycle) -> "DirectiveSequence":
        cycle = tuple(cycle)
        if not cycle:
            raise ValueError("periodic cycle must be non-empty")
        return cls((), cycle)

    @classmethod
    def eventually_periodic(cls, prefix, cycle) -> "DirectiveSequence":
        cycle = tuple(cycle)
        if not cycle:
            raise ValueError("cycle must be non-empty")
        return cls(tuple(prefix), cycle)

    @classmethod
    def finite_window(cls, prefix) -> "DirectiveSequence":
        prefix = tuple(prefix)
        if not prefix:
            raise ValueError("finite window must be non-empty")
        return cls(prefix, ())

    @property
    def horizon(self) -> Optional[int]:
        """Number of defined indices, or None when the sequence is infinite."""
        return len(self.prefix) if not self.cycle else None

    @property
    def period(self) -> Optional[int]:
        return len(self.cycle) or None

    def effective_horizon(self, requested: int) -> int:
        h = self.horizon
        return requested if h is None else min(requested, h)

    def substitution(self, n: int) -> Substitution:
        if n < 0:
            raise ValueError("index must be non-negative")
        if n < len(self.prefix):
            return self.prefix[n]
        if self.cycle:
            return self.cycle[(n - len(self.prefix)) % len(self.cycle)]
        raise HorizonExceededError(
            f"index {n} beyond finite window of length {len(self.prefix)}"
        )

    def window(self, k: int, l: int) -> tuple[Substitution, ...]:
        return tuple(self.substitution(n) for n in range(k, l))

    def alphabet_of_substitutions(self) -> tuple[Substitution, ...]:
        seen: list[Substitution] = []
        for s in self.prefix + self.cycle:
            if s not in seen:
                seen.append(s)
        return tuple(seen)

    def _normalize_range(self, k: int, l: int) -> tuple[int, int]:
        # For (eventually) periodic sequences, shift k into the first cycle
        # copy so that cache entries are reused across congruent windows.
        p, pre = len(self.cycle), len(self.prefix)
        if p and k >= pre:
            shift = (k - pre) % p
            return pre + shift, pre + shift + (l - k)
        return k, l

    def product_matrix(self, k: int, l: int) -> Mat2:
        """Exact product M_k M_{k+1} ... M_{l-1}; the empty product is I."""
        if not 0 <= k <= l:
            raise ValueError("need 0 <= k <= l")
        if self.horizon is not None and l > self.horizon:
            raise HorizonExceededError(f"product end {l} beyond horizon {self.horizon}")
        k, l = self._normalize_range(k, l)
        with self._lock:
            hit = self._matrices.get((k, l))
        if hit is not None:
            return hit
        # Extend from the longest cached product with the same start.
        start, mat = k, Mat2.identity()
        with self._lock:
            for j in range(l - 1, k, -1):
                cached = self._matrices.get((k, j))
                if cached is not None:
                    start, mat = j, cached
                    break
        for j in range(start, l):
            mat = mat * self.substitution(j).incidence()
            with self._lock:
                self._matrices[(k, j + 1)] = mat
        return mat

    def product_substitution(
        self, k: int, l: int, *, max_letters: int = 5_000_000
    ) -> Substitution:
        """The composed substitution sigma_k sigma_{k+1} ... sigma_{l-1}.

        Images grow exponentially in l - k; ``max_letters`` bounds the
        materialized size.
        """
        if not 0 <= k <= l:
            raise ValueError("need 0 <= k <= l")
        if self.horizon is not None and l > self.horizon:
            raise HorizonExceededError(f"product end {l} beyond horizon {self.horizon}")
        k, l = self._normalize_range(k, l)
        with self._lock:
            hit = self._products.get((k, l))
        if hit is not None:
            return hit
        start, sub = k, Substitution.identity()
        with self._lock:
            for j in range(l - 1, k, -1):
                cached = self._products.get((k, j))
                if cached is not None:
                    start, sub = j, cached
                    break
        for j in range(start, l):
            # sigma_{[k,j+1)} = sigma_{[k,j)} o sigma_j
            nxt = self.substitution(j)
            sub = Substitution(sub.apply(nxt.image1), sub.apply(nxt.image2))
            if len(sub.image1) + len(sub.image2) > max_letters:
                raise ImageTooLargeError(
                    f"product image exceeds {max_letters} letters at depth {j + 1}"
                )
            with self._lock:
                self._products[(k, j + 1)] = sub
        return sub

    def image_prefix(self, k: int, l: int, letter: str, length: int) -> str:
        """Prefix (up to ``length`` letters) of sigma_{[k,l)}(letter).

        Computed by truncated top-down expansion, never materializing the
        full image: images are non-empty, so truncating intermediate words
        to ``length`` letters preserves the prefix.
        """
        if self.horizon is not None and l > self.horizon:
            raise HorizonExceededError(f"expansion end {l} beyond horizon {self.horizon}")
        if length == 0:
            return ""
        word = letter
        for j in range(l - 1, k - 1, -1):
            word = self.substitution(j).apply(word)
            if len(word) > length:
                word = word[:length]
        return word

    def image_length(self, k: int, l: int, letter: str) -> int:
        """Exact |sigma_{[k,l)}(letter)| via column sums of the product matrix."""
        col = self.product_matrix(k, l).column(1 if letter == "1" else 2)
        return col[0] + col[1]

    def describe(self) -> str:
        pre = "; ".join(str(s) for s in self.prefix)
        cyc = "; ".join(str(s) for s in self.cycle)
        if not self.cycle:
            return f"finite[{pre}]"
        if not self.prefix:
            return f"periodic[{cyc}]"
        return f"prefix[{pre}] cycle[{cyc}]"


def is_primitive(D: DirectiveSequence, k: int = 0, horizon: int = 64) -> Optional[int]:
    """Least l <= horizon with M_[k,l) entrywise positive, or None (unknown).

    For (eventually) periodic sequences a positive answer at one k extends
    to all congruent k by periodicity.
    """
    if horizon <= k:
        raise ValueError("horizon must exceed k")
    top = D.effective_horizon(horizon)
    for l in range(k + 1, top + 1):
        if D.product_matrix(k, l).is_positive():
            return l
    return None


def char_poly_irreducible(m: Mat2) -> bool:
    """Irreducibility over Q of x^2 - tr(m) x + det(m).

    A monic integer quadratic is reducible over Q exactly when its
    discriminant is a perfect square (rational roots are then integers).
    """
    disc = m.trace() ** 2 - 4 * m.det()
    if disc < 0:
        return True
    r = math.isqrt(disc)
    return r * r != disc


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str  # "verified-on-window" | "refuted" | "unknown"
    k: int
    window: tuple[int, int]
    reducible_depths: tuple[int, ...]
    refuted_at: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "k": self.k,
            "window": list(self.window),
            "reducible_depths": list(self.reducible_depths),
            "refuted_at": self.refuted_at,
        }


def is_algebraically_irreducible(
    D: DirectiveSequence, k: int, l_min: int, l_max: int
) -> IrreducibilityVerdict:
    """Test char-poly irreducibility of M_[k,l) for every l in [l_min, l_max].

    All l irreducible: verified on the window.  Reducibility persisting at
    the window end: refuted (heuristically; the property quantifies over all
    sufficiently large l, which no finite window settles).  Reducibility
    only in the interior: unknown.
    """
    if not k < l_min <= l_max:
        raise ValueError("need k < l_min <= l_max (empty products excluded)")
    top = D.effective_horizon(l_max)
    if top < l_min:
        return IrreducibilityVerdict("unknown", k, (l_min, l_max), ())
    reducible = tuple(
        l for l in range(l_min, top + 1) if not char_poly_irreducible(D.product_matrix(k, l))
    )
    if not reducible:
        status = "verified-on-window" if top == l_max else "unknown"
        return IrreducibilityVerdict(status, k, (l_min, top), ())
    if reducible[-1] == top:
        return IrreducibilityVerdict("refuted", k, (l_min, top), reducible, refuted_at=top)
    return IrreducibilityVerdict("unknown", k, (l_min, top), reducible)


def recurrence_windows(D: DirectiveSequence, length: int, horizon: int) -> list[int]:
    """All n >= 1 with (sigma_n, ..., sigma_{n+length-1}) equal to the initial window."""
    if length < 1:
        raise ValueError("window length must be >= 1")
    top = D.effective_horizon(horizon)
    if top < length:
        return []
    initial = D.window(0, length)
    return [n for n in range(1, top - length + 1) if D.window(n, n + length) == initial]

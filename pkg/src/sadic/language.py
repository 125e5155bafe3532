"""Factor languages of shifted directive sequences and balance certificates.

The factor set up to a length cap is represented by its length-``cap``
windows: once every letter image is at least ``cap`` letters long, every
shorter factor is a substring of some window.  Windows are generated
level by level through the substitution chain (a length-c factor of an
image s(w) is always a factor of s(g) for a factor g of w with |g| <= c,
because letter images are non-empty), so the full exponential images are
never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .directive import DirectiveSequence
from .errors import NonStabilizingError, NotSaturatedError

_DOC_STATUS_CERTIFIED = "certified-up-to-L"


def limit_word_prefix(
    D: DirectiveSequence, letter: str, length: int, *, max_depth: int = 4096
) -> str:
    """Length-``length`` prefix of the limit word of D seeded at ``letter``.

    The expansion depth is doubled until two successive depths agree on the
    full prefix; a finite window caps the depth at the horizon.
    """
    if length == 0:
        return ""
    top = D.effective_horizon(max_depth)
    prev: Optional[str] = None
    depth = 1
    while depth <= top:
        cur = D.image_prefix(0, depth, letter, length)
        if cur == prev and len(cur) >= length:
            return cur
        prev = cur
        if depth == top:
            break
        depth = min(depth * 2, top)
    raise NonStabilizingError(
        f"prefix of length {length} did not stabilize within depth {top}"
        f" (reached {len(prev or '')} letters)"
    )


def _window_set(D: DirectiveSequence, m: int, n: int, cap: int) -> frozenset[str]:
    """Length-``cap`` factor windows of sigma_[m,n)(i) for both letters i."""
    words = {"1", "2"}
    for k in range(n - 1, m - 1, -1):
        sub = D.substitution(k)
        out: set[str] = set()
        for w in words:
            s = sub.apply(w)
            if len(s) <= cap:
                out.add(s)
            else:
                out.update(s[i : i + cap] for i in range(len(s) - cap + 1))
        words = out
    return frozenset(words)


@dataclass(frozen=True)
class FactorSet:
    """Factors of the shifted language up to length ``cap``.

    ``windows`` are the factors of length exactly ``cap``; every shorter
    factor is one of their substrings (guaranteed by the saturation check,
    which requires all letter images at the generating depth to reach the
    cap).  ``saturated`` records whether two successive generating depths
    produced the same window set.
    """

    shift: int
    cap: int
    windows: frozenset[str]
    depth: int
    saturated: bool

    def __contains__(self, w: str) -> bool:
        if len(w) > self.cap:
            return False
        return any(w in win for win in self.windows)

    def words(self) -> set[str]:
        """All factors of length 1..cap (quadratic in cap; use for small caps)."""
        out: set[str] = set()
        for win in self.windows:
            for n in range(1, len(win) + 1):
                out.update(win[i : i + n] for i in range(len(win) - n + 1))
        return out

    def count(self, n: int) -> int:
        """Number of distinct factors of length n (factor complexity)."""
        if n > self.cap:
            raise ValueError("length beyond the cap")
        seen: set[str] = set()
        for win in self.windows:
            seen.update(win[i : i + n] for i in range(len(win) - n + 1))
        return len(seen)


def factors(
    D: DirectiveSequence, m: int, cap: int, *, max_depth: int = 4096
) -> FactorSet:
    """Factor set of the language of the shift-m tail, saturated up to ``cap``.

    The generating depth grows geometrically until the window set repeats;
    non-saturation within ``max_depth`` yields ``saturated=False``.
    """
    if cap < 1:
        raise ValueError("length cap must be >= 1")
    top = D.effective_horizon(m + max_depth)
    # Skip depths whose shortest image is still below the cap.
    depth = m + 1
    while depth < top and min(
        D.image_length(m, depth, "1"), D.image_length(m, depth, "2")
    ) < cap:
        nxt = min(depth + max(1, depth - m), top)
        if nxt == depth:
            break
        # Bail out early when images stop growing (degenerate sequences).
        if D.image_length(m, nxt, "1") == D.image_length(m, depth, "1") and D.image_length(
            m, nxt, "2"
        ) == D.image_length(m, depth, "2"):
            depth = nxt
            break
        depth = nxt
    prev = _window_set(D, m, depth, cap)
    while depth < top:
        nxt = min(depth + max(1, depth - m), top)
        cur = _window_set(D, m, nxt, cap)
        long_enough = (
            min(D.image_length(m, nxt, "1"), D.image_length(m, nxt, "2")) >= cap
        )
        if cur == prev and long_enough:
            return FactorSet(m, cap, cur, nxt, True)
        prev, depth = cur, nxt
    return FactorSet(m, cap, prev, depth, False)


@dataclass(frozen=True)
class BalanceCertificate:
    """Minimal balance constant certified over all factor lengths up to L.

    On two letters the letter-count spreads of the two coordinates are
    opposite, so the per-length spread of |w|_1 alone determines the
    constant.  ``witness_high``/``witness_low`` realize the spread at
    ``worst_length``.
    """

    constant: int
    length: int
    status: str
    shift: int
    depth: int
    worst_length: int
    witness_high: str
    witness_low: str
    per_length_spread: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "C": self.constant,
            "L": self.length,
            "status": self.status,
            "shift": self.shift,
            "generating_depth": self.depth,
            "worst_length": self.worst_length,
            "witness": [self.witness_high, self.witness_low],
            "per_length_spread": list(self.per_length_spread),
        }


def balance(
    D: DirectiveSequence, m: int, cap: int, *, max_depth: int = 4096
) -> BalanceCertificate:
    """Certify the minimal C such that the shift-m language is C-balanced up to length cap."""
    fs = factors(D, m, cap, max_depth=max_depth)
    if not fs.saturated:
        raise NotSaturatedError(
            f"factor set at shift {m} not saturated up to length {cap}"
            f" within depth {fs.depth}"
        )
    return certificate_from_windows(fs)


def certificate_from_windows(fs: FactorSet) -> BalanceCertificate:
    wins = sorted(fs.windows)
    cap = max(len(w) for w in wins)
    rows = np.zeros((len(wins), cap), dtype=np.int64)
    for i, w in enumerate(wins):
        rows[i, : len(w)] = np.frombuffer(w.encode(), dtype=np.uint8) == ord("1")
    sums = np.zeros((len(wins), cap + 1), dtype=np.int64)
    np.cumsum(rows, axis=1, out=sums[:, 1:])
    lengths = np.array([len(w) for w in wins])

    best_c, worst_n, spreads = 0, 1, []
    hi_loc = lo_loc = (0, 0)
    for n in range(1, fs.cap + 1):
        diffs = sums[:, n:] - sums[:, :-n]
        # Mask positions that run past each window's end (short windows).
        valid = np.arange(diffs.shape[1])[None, :] + n <= lengths[:, None]
        if not valid.any():
            spreads.append(0)
            continue
        mx = int(diffs[valid].max())
        mn = int(diffs[valid].min())
        spreads.append(mx - mn)
        if mx - mn > best_c:
            best_c, worst_n = mx - mn, n
            hi = np.argwhere((diffs == mx) & valid)[0]
            lo = np.argwhere((diffs == mn) & valid)[0]
            hi_loc, lo_loc = (int(hi[0]), int(hi[1])), (int(lo[0]), int(lo[1]))
    return BalanceCertificate(
        constant=best_c,
        length=fs.cap,
        status=_DOC_STATUS_CERTIFIED,
        shift=fs.shift,
        depth=fs.depth,
        worst_length=worst_n,
        witness_high=wins[hi_loc[0]][hi_loc[1] : hi_loc[1] + worst_n],
        witness_low=wins[lo_loc[0]][lo_loc[1] : lo_loc[1] + worst_n],
        per_length_spread=tuple(spreads),
    )

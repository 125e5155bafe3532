"""Window-scale verdicts for the five standing hypotheses on a directive sequence:

  (P) a repeated positive block among the partial products,
  (R) recurrence of every initial window,
  (I) algebraic irreducibility of long products,
  (C) a uniform balance constant for the recurrence-shifted languages,
  (E) convergence of normalized transposed-product images of a left vector.

Every verdict is one of ``verified-on-window`` / ``refuted`` / ``unknown``
and carries a witness; for (eventually) periodic sequences the witness
records that periodicity extends the window claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .directive import (
    DirectiveSequence,
    is_algebraically_irreducible,
    recurrence_windows,
)
from .errors import NotSaturatedError
from .language import balance
from .spectral import DirectionVec, Quadratic, _perron_direction_exact, left_vector_trace
from .words import Mat2

VERIFIED = "verified-on-window"
REFUTED = "refuted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConditionVerdict:
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness}


@dataclass(frozen=True)
class PriceParams:
    block_h_max: int = 8
    block_horizon: int = 32
    recurrence_max_length: int = 6
    recurrence_horizon: int = 64
    irreducibility_ks: tuple[int, ...] = (0, 1, 2)
    irreducibility_depth: int = 24
    balance_length: int = 50
    balance_shift_cap: int = 3
    balance_max_depth: int = 4096
    angle_tol: float = 1e-8
    prec: int = 128


@dataclass(frozen=True)
class PriceReport:
    p: ConditionVerdict
    r: ConditionVerdict
    i: ConditionVerdict
    c: ConditionVerdict
    e: ConditionVerdict
    n_indices: tuple[int, ...]
    l_indices: tuple[int, ...]

    def all_verified(self) -> bool:
        return all(
            v.status == VERIFIED for v in (self.p, self.r, self.i, self.c, self.e)
        )

    def to_json(self) -> dict:
        return {
            "P": self.p.to_json(),
            "R": self.r.to_json(),
            "I": self.i.to_json(),
            "C": self.c.to_json(),
            "E": self.e.to_json(),
            "n_indices": list(self.n_indices),
            "l_indices": list(self.l_indices),
        }


def _is_periodically_repeating(D: DirectiveSequence, start: int) -> bool:
    """Whether the window starting at ``start`` recurs forever by periodicity."""
    return bool(D.cycle) and start >= len(D.prefix)


def _positive_block(D: DirectiveSequence, params: PriceParams):
    """Smallest h, then smallest l1, with M_[l1-h, l1) positive and repeating."""
    horizon = D.effective_horizon(params.block_horizon)
    for h in range(1, params.block_h_max + 1):
        for l1 in range(h, horizon + 1):
            block = D.product_matrix(l1 - h, l1)
            if not block.is_positive():
                continue
            if _is_periodically_repeating(D, l1 - h):
                return h, l1, l1 + len(D.cycle), block, True
            for l2 in range(l1 + 1, horizon + 1):
                if l2 - h >= 0 and D.product_matrix(l2 - h, l2) == block:
                    return h, l1, l2, block, False
    return None


def _left_perron(block: Mat2, prec: int) -> DirectionVec:
    exact = _perron_direction_exact(block.transpose())
    if exact is not None:
        return DirectionVec.from_exact(exact[0], exact[1], prec)
    return DirectionVec.from_floats(1.0, 1.0, prec)


def price_report(D: DirectiveSequence, params: PriceParams = PriceParams()) -> PriceReport:
    """Assemble the five per-condition verdicts at the given window caps."""
    # (P): repeated positive block
    found = _positive_block(D, params)
    if found is None:
        p = ConditionVerdict(UNKNOWN, {"searched_h_max": params.block_h_max})
        block = None
    else:
        h, l1, l2, block, periodic = found
        p = ConditionVerdict(
            VERIFIED,
            {
                "h": h,
                "l1": l1,
                "l2": l2,
                "block": block.rows(),
                "periodic": periodic,
            },
        )

    # (R): each initial window recurs; record the first recurrence index
    pairs: list[tuple[int, int]] = []
    missing: Optional[int] = None
    for length in range(1, params.recurrence_max_length + 1):
        ns = recurrence_windows(D, length, params.recurrence_horizon)
        if not ns:
            missing = length
            break
        pairs.append((length, ns[0]))
    if missing is None:
        r = ConditionVerdict(
            VERIFIED,
            {"pairs": pairs, "periodic": bool(D.cycle) and not D.prefix},
        )
    else:
        r = ConditionVerdict(UNKNOWN, {"pairs": pairs, "first_unmatched_length": missing})

    # (I): irreducibility for several start indices over a depth window
    verdicts = []
    for k in params.irreducibility_ks:
        try:
            verdicts.append(
                is_algebraically_irreducible(D, k, k + 1, k + params.irreducibility_depth)
            )
        except Exception:
            break
    if verdicts and any(v.status == REFUTED for v in verdicts):
        bad = next(v for v in verdicts if v.status == REFUTED)
        i = ConditionVerdict(REFUTED, bad.to_json())
    elif verdicts and all(v.status == VERIFIED for v in verdicts):
        i = ConditionVerdict(
            VERIFIED, {"ks": list(params.irreducibility_ks), "depth": params.irreducibility_depth}
        )
    else:
        i = ConditionVerdict(UNKNOWN, {"windows": [v.to_json() for v in verdicts]})

    # (C): balance of the languages shifted by n_k + l_k
    shifts: list[int] = []
    for length, n in pairs:
        s = n + length
        if D.cycle:
            s = len(D.prefix) + (s - len(D.prefix)) % len(D.cycle) if s >= len(D.prefix) else s
        if s not in shifts:
            shifts.append(s)
        if len(shifts) >= params.balance_shift_cap:
            break
    constants: dict[int, int] = {}
    c_status = VERIFIED if shifts else UNKNOWN
    for s in shifts:
        try:
            constants[s] = balance(
                D, s, params.balance_length, max_depth=params.balance_max_depth
            ).constant
        except NotSaturatedError:
            c_status = UNKNOWN
    if not constants:
        c_status = UNKNOWN
    c = ConditionVerdict(
        c_status,
        {
            "constant": max(constants.values()) if constants else None,
            "per_shift": {str(k): v for k, v in sorted(constants.items())},
            "length": params.balance_length,
        },
    )

    # (E): left-vector trace along the recurrence indices
    n_indices = sorted({n for _, n in pairs})
    if block is not None:
        v = _left_perron(block, params.prec)
    else:
        v = DirectionVec.from_floats(1.0, 1.0, params.prec)
    if n_indices:
        trace = left_vector_trace(D, v, n_indices, prec=params.prec)
        final_angle = trace.entries[-1].angle
        e_status = VERIFIED if final_angle < params.angle_tol else UNKNOWN
        e = ConditionVerdict(
            e_status,
            {
                "v": list(trace.v),
                "angles": trace.angles(),
                "indices": n_indices,
                "final_angle": final_angle,
            },
        )
    else:
        e = ConditionVerdict(UNKNOWN, {"indices": []})

    return PriceReport(
        p, r, i, c, e,
        n_indices=tuple(n_indices),
        l_indices=tuple(length for length, _ in pairs),
    )

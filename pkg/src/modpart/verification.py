"""Finite checks of the partition identities, reported as plain records.

Every checker returns a :class:`VerificationReport`.  A failing report
carries one concrete counterexample; reports depend only on their
parameters, so reruns are byte-identical once serialised.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, asdict
from typing import Iterable

from .bijection import flat_to_regular, p_to_q, regular_to_flat
from .core import (
    Partition,
    alt_sum_type,
    is_m_flat,
    is_m_regular,
    length_type,
)
from .enumeration import (
    BoundExceeded,
    Family,
    count_by_type,
    filtered_partitions,
    partitions_of,
)

MAX_ROUNDTRIP_N = 40
RR_MODULUS = 5


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    params: dict
    status: str
    counts: dict = field(default_factory=dict)
    counterexample: dict | None = None
    conjectural: bool = False

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(**d)


def _report(claim, params, counts, counterexample=None, conjectural=False):
    return VerificationReport(
        claim=claim,
        params=params,
        status="pass" if counterexample is None else "fail",
        counts=counts,
        counterexample=counterexample,
        conjectural=conjectural,
    )


def _first_mismatch(left: dict, right: dict):
    for key in sorted(set(left) | set(right)):
        if left.get(key, 0) != right.get(key, 0):
            return key, left.get(key, 0), right.get(key, 0)
    return None


def verify_main_theorem(n: int, m: int, bijective: bool = True) -> VerificationReport:
    """Alternating sum types over P(m) against length types over Q(m).

    In bijective mode the map ``p_to_q`` is also checked to land in Q with
    the matching type and to hit every member of Q exactly once.
    """
    params = {"n": n, "m": m, "mode": "bijective" if bijective else "count"}
    p_table = count_by_type(n, m, "P")
    q_table = count_by_type(n, m, "Q")
    counts = {"P": p_table.total, "Q": q_table.total, "types": len(p_table.counts)}
    bad = _first_mismatch(p_table.counts, q_table.counts)
    if bad:
        key, a, b = bad
        return _report("THM-2.1", params, counts, {"type": list(key), "P": a, "Q": b})
    if bijective:
        seen = {}
        for lam in filtered_partitions(n, Family("P", m=m)):
            mu = p_to_q(lam, m)
            problem = None
            if not is_m_regular(mu, m) or mu.weight != n:
                problem = "image not an m-regular partition of n"
            elif length_type(mu, m) != alt_sum_type(lam, m):
                problem = "type not preserved"
            elif mu in seen:
                problem = f"collides with {list(seen[mu])}"
            if problem:
                return _report(
                    "THM-2.1", params, counts,
                    {"partition": list(lam), "image": list(mu), "problem": problem},
                )
            seen[mu] = lam
        counts["images"] = len(seen)
        if len(seen) != q_table.total:
            missing = next(mu for mu in filtered_partitions(n, Family("Q", m=m)) if mu not in seen)
            return _report("THM-2.1", params, counts, {"partition": list(missing), "problem": "not hit"})
    return _report("THM-2.1", params, counts)


def verify_glaisher(n: int, m: int) -> VerificationReport:
    """|P(m)| = |Q(m)| at weight n, refined by total alternating sum vs number of parts."""
    params = {"n": n, "m": m}
    p_members = list(filtered_partitions(n, Family("P", m=m)))
    q_members = list(filtered_partitions(n, Family("Q", m=m)))
    counts = {"P": len(p_members), "Q": len(q_members)}
    if len(p_members) != len(q_members):
        return _report("GLAISHER", params, counts, {"problem": "cardinalities differ"})
    by_sum = Counter(sum(alt_sum_type(lam, m)) for lam in p_members)
    by_len = Counter(len(mu) for mu in q_members)
    bad = _first_mismatch(by_sum, by_len)
    if bad:
        key, a, b = bad
        return _report(
            "GLAISHER", params, counts,
            {"problem": "refinement differs", "total": key, "P": a, "Q": b},
        )
    return _report("GLAISHER", params, counts)


def _type_side(n: int, m: int, zero_positions: Iterable[int]) -> list[Partition]:
    zero_positions = list(zero_positions)
    out = []
    for lam in filtered_partitions(n, Family("P", m=m)):
        t = alt_sum_type(lam, m)
        # the all-zero type only occurs for the empty partition
        if lam and all(t[c - 1] == 0 for c in zero_positions):
            out.append(lam)
    return out


def rr_companion_sides(n: int, variant: int) -> tuple[list[Partition], list[Partition]]:
    """Both families of a Rogers-Ramanujan companion at weight ``n``.

    Returns ``(gap_side, type_side)``: partitions with gaps at least two
    (and no part 1 for variant 2) and the modulus-5 P partitions whose
    alternating sum type vanishes at positions 2, 3 (variant 1) or 1, 4
    (variant 2).
    """
    if variant == 1:
        family, zeros = Family("RR1"), (2, 3)
    elif variant == 2:
        family, zeros = Family("RR2"), (1, 4)
    else:
        raise ValueError(f"variant must be 1 or 2, got {variant}")
    gap_side = [lam for lam in filtered_partitions(n, family) if lam]
    return gap_side, _type_side(n, RR_MODULUS, zeros)


def ag_companion_sides(n: int, d: int, i: int) -> tuple[list[Partition], list[Partition]]:
    family = Family("AG", d=d, i=i)
    gap_side = [lam for lam in filtered_partitions(n, family) if lam]
    return gap_side, _type_side(n, 2 * d + 1, (i, 2 * d + 1 - i))


def _compare_sides(claim, params, gap_side, type_side, conjectural=False):
    counts = {"gap_side": len(gap_side), "type_side": len(type_side)}
    if len(gap_side) == len(type_side):
        return _report(claim, params, counts, conjectural=conjectural)
    longer, name = (gap_side, "gap_side") if len(gap_side) > len(type_side) else (type_side, "type_side")
    return _report(
        claim, params, counts,
        {"problem": f"{name} has more members", "example": list(longer[-1])},
        conjectural=conjectural,
    )


def verify_rr_companion(n: int, variant: int) -> VerificationReport:
    gap_side, type_side = rr_companion_sides(n, variant)
    claim = f"RR{variant}"
    return _compare_sides(claim, {"n": n, "variant": variant}, gap_side, type_side)


def verify_ag_companion(n: int, d: int, i: int) -> VerificationReport:
    """Andrews-Gordon companion at modulus ``2d + 1``.

    Always flagged conjectural: the identity is only asserted conditionally.
    """
    gap_side, type_side = ag_companion_sides(n, d, i)
    return _compare_sides("AG", {"n": n, "d": d, "i": i}, gap_side, type_side, conjectural=True)


def verify_roundtrip(n_max: int, m_set: Iterable[int]) -> VerificationReport:
    """Both compositions of the flat/regular maps are the identity, with trace checks."""
    m_set = sorted(set(m_set))
    if n_max > MAX_ROUNDTRIP_N:
        raise BoundExceeded(f"n_max={n_max} exceeds {MAX_ROUNDTRIP_N}")
    params = {"n_max": n_max, "m": m_set}
    flat_checked = regular_checked = 0
    for m in m_set:
        for n in range(n_max + 1):
            for lam in partitions_of(n):
                if is_m_flat(lam, m):
                    flat_checked += 1
                    problem = _check_flat(lam, m)
                    if problem:
                        return _report(
                            "ROUNDTRIP", params,
                            {"flat": flat_checked, "regular": regular_checked},
                            {"m": m, "partition": list(lam), "side": "flat", "problem": problem},
                        )
                if is_m_regular(lam, m):
                    regular_checked += 1
                    problem = _check_regular(lam, m)
                    if problem:
                        return _report(
                            "ROUNDTRIP", params,
                            {"flat": flat_checked, "regular": regular_checked},
                            {"m": m, "partition": list(lam), "side": "regular", "problem": problem},
                        )
    return _report("ROUNDTRIP", params, {"flat": flat_checked, "regular": regular_checked})


def _check_flat(lam: Partition, m: int) -> str | None:
    try:
        mu, trace = flat_to_regular(lam, m)
        back, _ = regular_to_flat(mu, m)
    except Exception as exc:  # any failure is reported as a counterexample
        return f"{type(exc).__name__}: {exc}"
    if back != lam:
        return f"round trip gives {list(back)}"
    problems = trace.check_invariants()
    return "; ".join(problems) if problems else None


def _check_regular(mu: Partition, m: int) -> str | None:
    try:
        lam, _ = regular_to_flat(mu, m)
        again, trace = flat_to_regular(lam, m)
    except Exception as exc:
        return f"{type(exc).__name__}: {exc}"
    if again != mu:
        return f"round trip gives {list(again)}"
    problems = trace.check_invariants()
    return "; ".join(problems) if problems else None

"""Type-preserving bijection between m-flat and m-regular partitions.

Forward direction (``flat_to_regular``):

1. Remove every part divisible by ``m`` whose removal keeps the partition
   m-flat.  A removed part ``k*m`` contributes ``k`` to sigma.
2. Repeatedly take the largest remaining multiple ``k*m`` at 1-based
   position ``i``, delete it, lower parts ``1..i-1`` by ``m`` and contribute
   ``k + i - 1`` to sigma.
3. The leftover core ``pi`` is m-flat and m-regular; the image is
   ``pi + m * conjugate(sigma)``.

The reverse splits the image back into ``pi`` and ``conjugate(sigma)``, then
reinserts sigma parts from the largest down.  A part is undone as a step-2
removal unless ``s*m`` can be inserted whole without breaking flatness, at
which point it and all smaller parts are step-1 parts and go in at once.

Traces use 1-based positions, taken in the partition as it stands at the
moment of each removal.

Composing with conjugation gives ``p_to_q``, the map from partitions with
every multiplicity below ``m`` to m-regular partitions that carries
alternating sum type to length type.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    Partition,
    PartitionError,
    NotAPartition,
    conjugate,
    is_in_P,
    is_m_flat,
    is_m_regular,
    scale_add,
    _check_modulus,
)


class NotFlat(PartitionError):
    pass


class NotRegular(PartitionError):
    pass


class NotInP(PartitionError):
    pass


class Malformed(PartitionError):
    """An intermediate step produced something that is not a partition."""


class NotFound(PartitionError):
    pass


class NotUnique(PartitionError):
    pass


@dataclass(frozen=True)
class Step1Removal:
    value: int
    position: int


@dataclass(frozen=True)
class Step2Removal:
    value: int
    position: int
    sigma_part: int


@dataclass(frozen=True)
class SigmaRecord:
    """Removed multiples of ``m``, stored divided by ``m``."""

    reduced_parts: Partition
    m: int

    @property
    def conjugate(self) -> Partition:
        return conjugate(self.reduced_parts)

    @property
    def scaled_parts(self) -> tuple[int, ...]:
        return tuple(self.m * s for s in self.reduced_parts)

    def to_dict(self) -> dict:
        return {"m": self.m, "reduced_parts": list(self.reduced_parts)}

    @classmethod
    def from_dict(cls, d: dict) -> "SigmaRecord":
        return cls(Partition(d["reduced_parts"]), int(d["m"]))


@dataclass(frozen=True)
class BijectionTrace:
    m: int
    flat: Partition
    step1_removals: tuple[Step1Removal, ...]
    step2_removals: tuple[Step2Removal, ...]
    core: Partition
    sigma: SigmaRecord
    regular: Partition = field(default=Partition())

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "flat": list(self.flat),
            "step1_removals": [
                {"value": r.value, "position": r.position} for r in self.step1_removals
            ],
            "step2_removals": [
                {"value": r.value, "position": r.position, "sigma_part": r.sigma_part}
                for r in self.step2_removals
            ],
            "core": list(self.core),
            "sigma": self.sigma.to_dict(),
            "sigma_conjugate": list(self.sigma.conjugate),
            "regular": list(self.regular),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BijectionTrace":
        return cls(
            m=int(d["m"]),
            flat=Partition(d["flat"]),
            step1_removals=tuple(Step1Removal(**r) for r in d["step1_removals"]),
            step2_removals=tuple(Step2Removal(**r) for r in d["step2_removals"]),
            core=Partition(d["core"]),
            sigma=SigmaRecord.from_dict(d["sigma"]),
            regular=Partition(d["regular"]),
        )

    def check_invariants(self) -> list[str]:
        """Return descriptions of violated ordering and weight invariants."""
        problems = []
        m = self.m
        s2 = [r.sigma_part for r in self.step2_removals]
        s1 = [r.value // m for r in self.step1_removals]
        if any(a > b for a, b in zip(s2, s2[1:])):
            problems.append(f"step-2 sigma parts not nondecreasing: {s2}")
        if s1 and s2 and min(s2) < max(s1):
            problems.append(
                f"step-2 sigma part {min(s2)} smaller than step-1 part {max(s1)}"
            )
        n_regular = sum(1 for p in self.flat if p % m)
        if s2 and max(s2) > n_regular:
            problems.append(
                f"step-2 sigma part {max(s2)} exceeds {n_regular} parts not divisible by {m}"
            )
        if self.flat.weight != self.core.weight + m * self.sigma.reduced_parts.weight:
            problems.append("weight of core plus removed material differs from input")
        return problems


def _step1_eligible(lam: Sequence[int], m: int) -> list[int]:
    """0-based indices of multiples of ``m`` that step 1 removes."""
    out = []
    n = len(lam)
    i = 0
    while i < n:
        if lam[i] % m:
            i += 1
            continue
        end = i
        while end + 1 < n and lam[end + 1] == lam[i]:
            end += 1
        out.extend(range(i, end))
        above = lam[i - 1] if i > 0 else None
        below = lam[end + 1] if end + 1 < n else 0
        if above is None or above - below < m:
            out.append(end)
        i = end + 1
    return out


def step1_extract(lam: Sequence[int], m: int):
    """Remove the multiples of ``m`` whose removal keeps ``lam`` m-flat.

    Returns ``(lam0, removed_values, removals)``.  Removal order is largest
    value first, earliest position among equals; positions are recorded in
    the partition as it stands at each removal.
    """
    _check_modulus(m)
    if not is_m_flat(lam, m):
        raise NotFlat(f"{tuple(lam)} is not {m}-flat")
    eligible = _step1_eligible(lam, m)
    removals = tuple(
        Step1Removal(value=lam[idx], position=idx - n_done + 1)
        for n_done, idx in enumerate(eligible)
    )
    drop = set(eligible)
    lam0 = Partition(p for idx, p in enumerate(lam) if idx not in drop)
    return lam0, [r.value for r in removals], removals


def step2_extract(lam0: Sequence[int], m: int):
    """Peel off the remaining multiples of ``m`` from the largest down.

    Returns ``(pi, sigma_parts, removals)`` with sigma parts in removal order.
    """
    _check_modulus(m)
    parts = list(lam0)
    removals = []
    while True:
        idx = next((j for j, p in enumerate(parts) if p % m == 0), None)
        if idx is None:
            break
        value = parts[idx]
        pos = idx + 1
        new = [p - m for p in parts[:idx]] + parts[idx + 1:]
        try:
            parts = list(Partition(new))
        except NotAPartition as exc:
            raise Malformed(
                f"removing {value} at position {pos} from {tuple(parts)} gives {tuple(new)}"
            ) from exc
        removals.append(Step2Removal(value=value, position=pos, sigma_part=value // m + pos - 1))
    return Partition(parts), [r.sigma_part for r in removals], tuple(removals)


def flat_to_regular(lam: Sequence[int], m: int) -> tuple[Partition, BijectionTrace]:
    """Map an m-flat partition to the m-regular partition of the same length type."""
    lam = Partition(lam)
    lam0, removed, r1 = step1_extract(lam, m)
    pi, s2, r2 = step2_extract(lam0, m)
    sigma = Partition(sorted([v // m for v in removed] + s2, reverse=True))
    record = SigmaRecord(sigma, m)
    mu = scale_add(pi, record.conjugate, m)
    trace = BijectionTrace(m, lam, r1, r2, pi, record, mu)
    return mu, trace


def split_flat_core(mu: Sequence[int], m: int) -> tuple[Partition, Partition]:
    """Write an m-regular ``mu`` as ``pi + m * sigma_conj`` with ``pi`` m-flat.

    Each gap ``mu[i] - mu[i+1]`` (the last against zero) of size ``g`` forces
    ``g // m`` subtractions of ``m`` from parts ``1..i``; the remainders are
    the gaps of ``pi``.  This is the same outcome as repeatedly removing the
    smallest violating gap.
    """
    _check_modulus(m)
    if not is_m_regular(mu, m):
        raise NotRegular(f"{tuple(mu)} has a part divisible by {m}")
    padded = list(mu) + [0]
    sigma_conj = [0] * len(mu)
    acc = 0
    for i in range(len(mu) - 1, -1, -1):
        acc += (padded[i] - padded[i + 1]) // m
        sigma_conj[i] = acc
    pi = Partition(p - m * s for p, s in zip(mu, sigma_conj))
    return pi, Partition(s for s in sigma_conj if s)


def _insert_whole(parts: list[int], values: Sequence[int]) -> list[int]:
    return sorted(parts + list(values), reverse=True)


def _step2_candidates(parts: list[int], s: int, m: int) -> list[tuple[int, list[int]]]:
    """Positions where ``s`` can be undone as a step-2 removal."""
    found = []
    for pos in range(2, len(parts) + 1):
        k = s - pos + 1
        if k < 1:
            break
        value = k * m
        above = [p + m for p in parts[:pos - 1]]
        new = above + [value] + parts[pos - 1:]
        if any(a < b for a, b in zip(new, new[1:])):
            continue
        if not is_m_flat(new, m):
            continue
        if any(p % m == 0 for p in above):
            continue
        a, b = new[pos - 2], new[pos]
        # surviving multiples are distinct and not inside a descent
        if a == value or b == value or a - b < m:
            continue
        found.append((pos, new))
    return found


def regular_to_flat(mu: Sequence[int], m: int) -> tuple[Partition, BijectionTrace]:
    """Inverse of :func:`flat_to_regular`."""
    mu = Partition(mu)
    pi, sigma_conj = split_flat_core(mu, m)
    sigma = conjugate(sigma_conj)
    parts = list(pi)
    undone = []
    step1_parts: list[int] = []
    for idx, s in enumerate(sigma):
        if is_m_flat(_insert_whole(parts, [s * m]), m):
            step1_parts = [t * m for t in sigma[idx:]]
            break
        candidates = _step2_candidates(parts, s, m)
        if not candidates:
            raise NotFound(f"no step-2 position for sigma part {s} in {tuple(parts)}")
        if len(candidates) > 1:
            raise NotUnique(
                f"sigma part {s} fits at positions {[c[0] for c in candidates]} in {tuple(parts)}"
            )
        pos, parts = candidates[0]
        undone.append(Step2Removal(value=(s - pos + 1) * m, position=pos, sigma_part=s))
    lam = Partition(_insert_whole(parts, step1_parts))
    if not is_m_flat(lam, m):
        raise Malformed(f"reinserting {step1_parts} breaks flatness: {tuple(lam)}")
    _, removed, r1 = step1_extract(lam, m)
    if sorted(removed) != sorted(step1_parts):
        raise Malformed(f"step-1 parts {step1_parts} would not be re-extracted from {tuple(lam)}")
    trace = BijectionTrace(m, lam, r1, tuple(reversed(undone)), pi, SigmaRecord(sigma, m), mu)
    return lam, trace


def p_to_q(lam: Sequence[int], m: int) -> Partition:
    """Send a partition with multiplicities below ``m`` to an m-regular one.

    The alternating sum type of ``lam`` becomes the length type of the image.
    """
    _check_modulus(m)
    if not is_in_P(lam, m):
        raise NotInP(_not_in_p_message(lam, m))
    return flat_to_regular(conjugate(lam), m)[0]


def q_to_p(mu: Sequence[int], m: int) -> Partition:
    _check_modulus(m)
    if not is_m_regular(mu, m):
        raise NotRegular(f"{tuple(mu)} has a part divisible by {m}")
    return conjugate(regular_to_flat(mu, m)[0])


def p_to_q_traced(lam: Sequence[int], m: int) -> tuple[Partition, BijectionTrace]:
    _check_modulus(m)
    if not is_in_P(lam, m):
        raise NotInP(_not_in_p_message(lam, m))
    return flat_to_regular(conjugate(lam), m)


def q_to_p_traced(mu: Sequence[int], m: int) -> tuple[Partition, BijectionTrace]:
    _check_modulus(m)
    if not is_m_regular(mu, m):
        raise NotRegular(f"{tuple(mu)} has a part divisible by {m}")
    flat, trace = regular_to_flat(mu, m)
    return conjugate(flat), trace


def _not_in_p_message(lam: Sequence[int], m: int) -> str:
    part, count = max(Counter(lam).items(), key=lambda kv: (kv[1], kv[0]))
    return f"part {part} repeated {count} times"


def invert_by_search(mu: Sequence[int], m: int) -> Partition:
    """Find the preimage of ``mu`` by trying every candidate of the same weight.

    Independent of :func:`regular_to_flat`; intended for small weights only.
    """
    from .enumeration import partitions_of

    _check_modulus(m)
    if not is_m_regular(mu, m):
        raise NotRegular(f"{tuple(mu)} has a part divisible by {m}")
    mu = Partition(mu)
    hits = [lam for lam in partitions_of(mu.weight) if is_in_P(lam, m) and p_to_q(lam, m) == mu]
    if not hits:
        raise NotFound(f"no preimage of {tuple(mu)}")
    if len(hits) > 1:
        raise NotUnique(f"{len(hits)} preimages of {tuple(mu)}")
    return hits[0]

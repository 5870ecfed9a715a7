"""Integer partitions and the statistics defined on them.

A partition is stored as a nonincreasing tuple of positive integers.  The
infinite tail of zeros is implicit and never stored; operations that need
padding (alternating sum types) apply it on the fly.

Type vectors (alternating sum types and length types) are plain tuples of
``m - 1`` nonnegative integers; the modulus is recoverable as ``len + 1``.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

MAX_WEIGHT = 2**63 - 1


class PartitionError(ValueError):
    """Base class for domain errors raised by this package."""


class NegativePart(PartitionError):
    pass


class NotAPartition(PartitionError):
    pass


class LengthMismatch(PartitionError):
    pass


class WeightOverflow(PartitionError):
    pass


class Partition(tuple):
    """A nonincreasing tuple of positive integers.

    Compares and hashes like the underlying tuple, so ``Partition((3, 1)) ==
    (3, 1)`` holds.  Use :func:`make_partition` to normalise arbitrary input.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise NotAPartition(f"parts are not nonincreasing: {parts}")
        if parts and parts[-1] < 1:
            raise NotAPartition(f"parts must be positive: {parts}")
        if sum(parts) > MAX_WEIGHT:
            raise WeightOverflow("weight does not fit in 64 bits")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part access with the implicit zero tail."""
        if i < 1:
            raise IndexError(i)
        return self[i - 1] if i <= len(self) else 0

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return "+".join(map(str, self)) if self else "(empty)"


EMPTY = Partition()


def make_partition(seq: Iterable[int]) -> Partition:
    """Strip zeros and sort ``seq`` into a partition.

    >>> make_partition([1, 3, 0, 2])
    Partition((3, 2, 1))
    """
    values = [int(v) for v in seq]
    negative = [v for v in values if v < 0]
    if negative:
        raise NegativePart(f"negative part {negative[0]}")
    return Partition(sorted((v for v in values if v), reverse=True))


def _check_modulus(m: int) -> None:
    if m < 2:
        raise PartitionError(f"modulus must be at least 2, got {m}")


def conjugate(lam: Sequence[int]) -> Partition:
    """Transpose the Young diagram: the i-th part counts parts >= i."""
    if not lam:
        return EMPTY
    out = []
    r = len(lam)
    for i in range(1, lam[0] + 1):
        while lam[r - 1] < i:
            r -= 1
        out.append(r)
    return Partition(out)


def multiplicities(lam: Sequence[int]) -> Counter:
    return Counter(lam)


def alt_sum_type(lam: Sequence[int], m: int) -> tuple[int, ...]:
    """Blockwise alternating differences over consecutive blocks of ``m`` parts.

    The partition is padded with zeros to a multiple of ``m``; entry ``c``
    (1-based) sums ``lam[(k-1)m + c] - lam[(k-1)m + c + 1]`` over the blocks.
    """
    _check_modulus(m)
    padded = list(lam) + [0] * (-len(lam) % m)
    sums = [0] * (m - 1)
    for start in range(0, len(padded), m):
        block = padded[start:start + m]
        for c in range(m - 1):
            sums[c] += block[c] - block[c + 1]
    return tuple(sums)


def residue_profile(lam: Sequence[int], m: int) -> tuple[int, ...]:
    """Count of parts in each residue class ``0..m-1``."""
    _check_modulus(m)
    counts = [0] * m
    for p in lam:
        counts[p % m] += 1
    return tuple(counts)


def length_type(lam: Sequence[int], m: int) -> tuple[int, ...]:
    """Parts per nonzero residue class; the length type for m-regular input."""
    return residue_profile(lam, m)[1:]


def is_m_flat(lam: Sequence[int], m: int) -> bool:
    _check_modulus(m)
    if not lam:
        return True
    if lam[-1] >= m:
        return False
    return all(a - b < m for a, b in zip(lam, lam[1:]))


def is_m_regular(lam: Sequence[int], m: int) -> bool:
    _check_modulus(m)
    return all(p % m for p in lam)


def is_in_P(lam: Sequence[int], m: int) -> bool:
    """True when no part is repeated ``m`` or more times."""
    _check_modulus(m)
    return all(c <= m - 1 for c in Counter(lam).values())


def descents(lam: Sequence[int], m: int) -> list[int]:
    """1-based positions of descents.

    A part ``k*m + j1`` (``0 < j1 < m``) is a descent when the next smaller
    part not divisible by ``m`` equals ``(k-1)*m + j2`` with ``j1 < j2``.
    Parts divisible by ``m`` are skipped and never descents themselves.
    """
    _check_modulus(m)
    regular = [(i, p) for i, p in enumerate(lam, start=1) if p % m]
    out = []
    for (i, a), (_, b) in zip(regular, regular[1:]):
        k, j1 = divmod(a, m)
        kb, j2 = divmod(b, m)
        if kb == k - 1 and j1 < j2:
            out.append(i)
    return out


def scale_add(pi: Sequence[int], sigma_conj: Sequence[int], m: int) -> Partition:
    """Entrywise ``pi + m * sigma_conj`` (vector sum with zero tails)."""
    _check_modulus(m)
    if len(sigma_conj) > len(pi):
        raise LengthMismatch(
            f"sigma' has {len(sigma_conj)} parts but pi has only {len(pi)}"
        )
    padded = list(sigma_conj) + [0] * (len(pi) - len(sigma_conj))
    return Partition(p + m * s for p, s in zip(pi, padded))

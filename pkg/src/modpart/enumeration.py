"""Exhaustive generation of partitions, restricted families and type counts."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .core import (
    Partition,
    PartitionError,
    alt_sum_type,
    is_in_P,
    is_m_regular,
    length_type,
    _check_modulus,
)

DEFAULT_MAX_N = 10**6
MAX_COEFF_N = 200


class BoundExceeded(PartitionError):
    pass


class BadFamilyParams(PartitionError):
    pass


def max_weight() -> int:
    """Weight guard for enumeration; ``PARTITION_MAX_N`` overrides the default."""
    raw = os.environ.get("PARTITION_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise BoundExceeded(f"PARTITION_MAX_N is not an integer: {raw!r}") from None


def partitions_of(n: int) -> Iterator[Partition]:
    """Every partition of ``n`` once, in decreasing lexicographic order."""
    if n < 0:
        raise PartitionError(f"weight must be nonnegative, got {n}")
    if n > max_weight():
        raise BoundExceeded(f"n={n} exceeds the weight guard {max_weight()}")
    if n == 0:
        yield Partition()
        return
    # stack-free successor rule on the multiplicity-free list representation
    a = [n]
    while True:
        yield Partition(a)
        # drop trailing ones, then decrement the last part larger than one
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        x = a.pop() - 1
        rest = ones + 1
        a.append(x)
        while rest > x:
            a.append(x)
            rest -= x
        if rest:
            a.append(rest)


def _gaps_at_least_two(lam) -> bool:
    return all(a - b >= 2 for a, b in zip(lam, lam[1:]))


@dataclass(frozen=True)
class Family:
    """A named set of partitions.

    ``P`` and ``Q`` take a modulus ``m``; ``AG`` takes ``d >= 1`` and
    ``1 <= i <= 2d`` and means: at most ``i - 1`` ones and
    ``f_j + f_{j+1} <= d - 1`` for every ``j``, where ``f_j`` is the
    multiplicity of ``j``.
    """

    kind: str
    m: int | None = None
    d: int | None = None
    i: int | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        if kind in ("P", "Q"):
            if self.m is None or self.m < 2:
                raise BadFamilyParams(f"family {kind} needs a modulus m >= 2")
        elif kind == "AG":
            if self.d is None or self.i is None or self.d < 1 or not 1 <= self.i <= 2 * self.d:
                raise BadFamilyParams(f"family AG needs d >= 1 and 1 <= i <= 2d, got d={self.d}, i={self.i}")
        elif kind not in ("RR1", "RR2"):
            raise BadFamilyParams(f"unknown family {self.kind!r}")

    def __contains__(self, lam) -> bool:
        kind = self.kind
        if kind == "P":
            return is_in_P(lam, self.m)
        if kind == "Q":
            return is_m_regular(lam, self.m)
        if kind == "RR1":
            return _gaps_at_least_two(lam)
        if kind == "RR2":
            return _gaps_at_least_two(lam) and (not lam or lam[-1] != 1)
        f = Counter(lam)
        if f[1] > self.i - 1:
            return False
        return all(f[j] + f[j + 1] <= self.d - 1 for j in f)

    def __str__(self) -> str:
        if self.kind in ("P", "Q"):
            return f"{self.kind}(m={self.m})"
        if self.kind == "AG":
            return f"AG(d={self.d},i={self.i})"
        return self.kind


def filtered_partitions(n: int, family: Family) -> Iterator[Partition]:
    return (lam for lam in partitions_of(n) if lam in family)


@dataclass(frozen=True)
class CountTable:
    """Number of partitions of ``n`` per type vector (absent keys are zero)."""

    n: int
    m: int
    side: str
    counts: dict = field(default_factory=dict)

    def __getitem__(self, key) -> int:
        return self.counts.get(tuple(key), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "side": self.side,
            "counts": [[list(k), v] for k, v in sorted(self.counts.items())],
        }


def type_of(lam, m: int, side: str) -> tuple[int, ...]:
    side = side.upper()
    if side == "P":
        return alt_sum_type(lam, m)
    if side == "Q":
        return length_type(lam, m)
    raise BadFamilyParams(f"side must be P or Q, got {side!r}")


def count_by_type(n: int, m: int, side: str) -> CountTable:
    """Tabulate alternating sum types over ``P(m)`` or length types over ``Q(m)``."""
    _check_modulus(m)
    side = side.upper()
    family = Family(side, m=m) if side in ("P", "Q") else None
    if family is None:
        raise BadFamilyParams(f"side must be P or Q, got {side!r}")
    counts = Counter(type_of(lam, m, side) for lam in filtered_partitions(n, family))
    return CountTable(n, m, side, dict(counts))


def product_side_coefficients(N: int, m: int) -> dict[tuple[int, tuple[int, ...]], int]:
    """Coefficients of the truncated product over parts ``j`` not divisible by ``m``.

    Each factor is ``1 / (1 - z_{j mod m} q^j)``; the result maps
    ``(n, (l_1, ..., l_{m-1}))`` to the coefficient of
    ``q^n z_1^{l_1} ... z_{m-1}^{l_{m-1}}`` for ``n <= N``.
    """
    _check_modulus(m)
    if N < 0 or N > MAX_COEFF_N:
        raise BoundExceeded(f"N={N} outside 0..{MAX_COEFF_N}")
    zero = (0,) * (m - 1)
    # series[n] maps a z-exponent vector to its coefficient
    series: list[Counter] = [Counter() for _ in range(N + 1)]
    series[0][zero] = 1
    for j in range(1, N + 1):
        r = j % m
        if r == 0:
            continue
        # multiply by the geometric series in place, low degree first
        for n in range(j, N + 1):
            for exps, c in series[n - j].items():
                bumped = exps[:r - 1] + (exps[r - 1] + 1,) + exps[r:]
                series[n][bumped] += c
    return {(n, exps): c for n in range(N + 1) for exps, c in series[n].items()}

"""Multi-index combinatorics: sorting signs, subsets, binomials.

Indices are 1-based throughout. A :class:`MultiIndex` is a strictly
increasing tuple; it compares and hashes like a plain tuple so it can be
used interchangeably as a dictionary key.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError

__all__ = [
    "MultiIndex",
    "SignedIndex",
    "normalize",
    "subsets",
    "binom",
    "interleave_sign",
    "permutation_sign",
]


class MultiIndex(tuple):
    """Strictly increasing tuple of indices in ``[1, bound]``.

    ``bound`` is optional metadata; equality and hashing ignore it.
    """

    def __new__(cls, indices: Iterable[int] = (), bound: int | None = None):
        obj = super().__new__(cls, indices)
        prev = 0
        for i in obj:
            if not isinstance(i, int) or i <= prev:
                raise DomainError(f"indices must be strictly increasing positive integers: {tuple(obj)}")
            prev = i
        if bound is not None and obj and obj[-1] > bound:
            raise DomainError(f"index {obj[-1]} exceeds bound {bound}")
        obj.bound = bound
        return obj

    def __repr__(self):
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class SignedIndex:
    index: MultiIndex
    sign: int


def permutation_sign(seq: Sequence[int]) -> int:
    """Parity (+1/-1) of the permutation sorting ``seq``, or 0 on a repeat."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inversions += 1
    return -1 if inversions & 1 else 1


def normalize(raw: Sequence[int], bound: int) -> SignedIndex:
    """Sort ``raw`` into canonical order and report the sign of the sort.

    >>> normalize([2, 1, 3], 4)
    SignedIndex(index={1,2,3}, sign=-1)
    >>> normalize([1, 1, 2], 4).sign
    0
    """
    for i in raw:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= bound:
            raise DomainError(f"index {i!r} outside [1, {bound}]")
    sign = permutation_sign(raw)
    if sign == 0:
        return SignedIndex(MultiIndex((), bound), 0)
    return SignedIndex(MultiIndex(sorted(raw), bound), sign)


def subsets(ground: Sequence[int], r: int) -> list[MultiIndex]:
    """All ``r``-element subsets of ``ground`` in lexicographic order."""
    ground = MultiIndex(ground, getattr(ground, "bound", None))
    if r < 0 or r > len(ground):
        raise DomainError(f"cannot choose {r} elements from {len(ground)}")
    return [MultiIndex(c, ground.bound) for c in combinations(ground, r)]


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero whenever ``b < 0`` or ``b > a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def interleave_sign(existing: Sequence[int], appended: Sequence[int]) -> int:
    """Sign of sorting ``existing + appended``, both already increasing.

    Counts, for every appended index, how many existing indices exceed it.
    Returns 0 when the two sets meet.
    """
    if set(existing) & set(appended):
        return 0
    crossings = 0
    for a in appended:
        crossings += sum(1 for e in existing if e > a)
    return -1 if crossings & 1 else 1

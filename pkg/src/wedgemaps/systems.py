"""Subset incidence systems and their closed-form one-sided inverses.

Fix a ground set ``K = {1..m+q}`` with ``q = m+p-1-s``. The injectivity
system has one row per m-subset and one column per (m-s)-subset, with a 1
where the column set is contained in the row set; it is tall. The
surjectivity system sends ``x`` on q-subsets to ``y^U = sum_{Q subset U} x^Q``
on (q+s)-subsets; it is wide. Relabelling every index set by its complement
in ``K`` identifies it with the transpose of the injectivity system.

Both inverses use the same coefficients ``C_0..C_q``: the left inverse
``B`` sends ``y`` to::

    x^S = sum_i C_i sum_{D subset S, |D|=i} sum_{L subset K-S, |L|=s+i} y^{(S-D) u L}

so ``B[S, R] = C_{|S - R|}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .indexkit import MultiIndex, binom, subsets
from .matrix import RationalMatrix

__all__ = [
    "SystemParams",
    "CoeffTable",
    "coeffs",
    "inj_system",
    "surj_system",
    "left_inverse",
    "right_inverse",
    "complement",
]


@dataclass(frozen=True)
class SystemParams:
    m: int
    p: int
    s: int

    def __post_init__(self):
        for name in ("m", "p", "s"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        if self.m < self.s:
            raise DomainError(f"need m >= s, got m={self.m}, s={self.s}")
        if self.q < 0:
            raise DomainError(f"q = m+p-1-s is negative for {self}")

    @property
    def q(self) -> int:
        return self.m + self.p - 1 - self.s

    @property
    def ground(self) -> MultiIndex:
        size = self.m + self.q
        return MultiIndex(range(1, size + 1), size)


@dataclass(frozen=True)
class CoeffTable:
    q: int
    s: int
    values: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return " ".join(str(v) for v in self.values)


def coeffs(q: int, s: int, variant: str = "exact") -> CoeffTable:
    """Coefficients ``C_0..C_q`` of the closed-form inverses.

    ``C_0 = 1/binom(q+s, s)`` and, for ``i >= 1``::

        C_i = -binom(q+s-i, s)^-1 * sum_{j<i} binom(i, j) C_j binom(q+s-i, s-i+j)

    which is the statement that ``B @ A`` vanishes between index sets that
    differ in ``i`` elements. ``variant="alternating"`` uses the prefactor
    ``(-1)^i`` in place of ``-1``; it agrees for ``i <= 1`` and is kept for
    comparison only, since it breaks ``B @ A = I`` once ``m - s >= 2``.
    """
    if q < 0 or s < 1:
        raise DomainError(f"need q >= 0 and s >= 1, got q={q}, s={s}")
    if variant not in ("exact", "alternating"):
        raise DomainError(f"unknown coefficient variant {variant!r}")
    C = [Fraction(1, binom(q + s, s))]
    for i in range(1, q + 1):
        total = sum(binom(i, j) * C[j] * binom(q + s - i, s - i + j) for j in range(i))
        sign = (-1) ** i if variant == "alternating" else -1
        C.append(sign * total / binom(q + s - i, s))
    return CoeffTable(q, s, tuple(C))


def complement(subset, params: SystemParams) -> MultiIndex:
    ground = params.ground
    return MultiIndex((x for x in ground if x not in subset), ground.bound)


def inj_system(params: SystemParams) -> RationalMatrix:
    K = params.ground
    rows = subsets(K, params.m)
    cols = subsets(K, params.m - params.s)
    cpos = {c: j for j, c in enumerate(cols)}
    entries = {}
    for i, R in enumerate(rows):
        for T in subsets(R, params.m - params.s):
            entries[i, cpos[T]] = 1
    return RationalMatrix(rows, cols, entries)


def surj_system(params: SystemParams) -> RationalMatrix:
    K = params.ground
    rows = subsets(K, params.q + params.s)
    cols = subsets(K, params.q)
    cpos = {c: j for j, c in enumerate(cols)}
    entries = {}
    for i, U in enumerate(rows):
        for Q in subsets(U, params.q):
            entries[i, cpos[Q]] = 1
    return RationalMatrix(rows, cols, entries)


def left_inverse(params: SystemParams, table: CoeffTable | None = None) -> RationalMatrix:
    """Closed-form ``B`` with ``B @ inj_system(params) == I``."""
    K = params.ground
    m, s, q = params.m, params.s, params.q
    C = table if table is not None else coeffs(q, s)
    rows = subsets(K, m - s)
    cols = subsets(K, m)
    cpos = {c: j for j, c in enumerate(cols)}
    entries = {}
    for a, S in enumerate(rows):
        rest = MultiIndex(x for x in K if x not in S)
        for i in range(0, min(q, m - s) + 1):
            if not C[i]:
                continue
            for D in subsets(S, i):
                kept = tuple(x for x in S if x not in D)
                for L in subsets(rest, s + i):
                    entries[a, cpos[tuple(sorted(kept + L))]] = C[i]
    return RationalMatrix(rows, cols, entries)


def right_inverse(params: SystemParams, table: CoeffTable | None = None) -> RationalMatrix:
    """Closed-form ``B'`` with ``surj_system(params) @ B' == I``.

    Column ``U`` (a (q+s)-subset) drops an (s+i)-subset of ``U`` and adjoins
    an i-subset of its complement, weighted by ``C_i``.
    """
    K = params.ground
    m, s, q = params.m, params.s, params.q
    C = table if table is not None else coeffs(q, s)
    rows = subsets(K, q)
    cols = subsets(K, q + s)
    rpos = {r: i for i, r in enumerate(rows)}
    entries = {}
    for b, U in enumerate(cols):
        rest = MultiIndex(x for x in K if x not in U)
        for i in range(0, min(q, m - s) + 1):
            if not C[i]:
                continue
            for D in subsets(U, s + i):
                kept = tuple(x for x in U if x not in D)
                for L in subsets(rest, i):
                    entries[rpos[tuple(sorted(kept + L))], b] = C[i]
    return RationalMatrix(rows, cols, entries)

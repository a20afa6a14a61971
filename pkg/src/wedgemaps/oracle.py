"""Exact linear algebra over Q: rank, linear solves, one-sided inverses.

Everything here works on integer rows. A rational row is scaled by the lcm
of its denominators, and each row produced during elimination is divided by
the gcd of its entries, so entry growth stays under control without ever
forming a fraction. Rationals appear only at back-substitution.

Pivot columns are taken in increasing column order. Among the rows that
are nonzero in the current column, the pivot row is the sparsest one, with
ties broken by row position, so results are deterministic.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .matrix import RationalMatrix

__all__ = [
    "RankResult",
    "SolveResult",
    "SolveStatus",
    "Side",
    "rank",
    "solve",
    "solve_many",
    "one_sided_inverse",
    "determinant",
]


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_cols: tuple[int, ...]


class SolveStatus(enum.Enum):
    UNIQUE = "UniqueSolution"
    MANY = "ManySolutions"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status is not SolveStatus.INFEASIBLE


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: dict[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = math.lcm(den, v.denominator)
    return _primitive({c: int(v * den) for c, v in row.items() if v})


def _eliminate(rows: list[dict[int, int]], pivot_limit: int):
    """Forward elimination on integer rows, pivoting only in columns < pivot_limit.

    Returns ``(pivots, leftovers)``: ``pivots`` is a list of
    ``(column, row)`` in increasing column order (each row is zero in
    every earlier pivot column), ``leftovers`` the rows never chosen,
    which are zero in every column below ``pivot_limit``.
    """
    active = {rid: row for rid, row in enumerate(rows) if row}
    col_rows: dict[int, set[int]] = {}
    for rid, row in active.items():
        for c in row:
            col_rows.setdefault(c, set()).add(rid)

    pivots = []
    for c in sorted(cc for cc in col_rows if cc < pivot_limit):
        cand = col_rows.get(c)
        if not cand:
            continue
        pid = min(cand, key=lambda r: (len(active[r]), r))
        prow = active.pop(pid)
        for cc in prow:
            col_rows[cc].discard(pid)
        pv = prow[c]
        for rid in sorted(col_rows[c]):
            row = active[rid]
            rv = row[c]
            g = math.gcd(pv, rv)
            a, b = pv // g, rv // g
            new = {cc: a * x for cc, x in row.items()}
            for cc, x in prow.items():
                y = new.get(cc, 0) - b * x
                if y:
                    new[cc] = y
                else:
                    new.pop(cc, None)
            new = _primitive(new)
            for cc in row:
                if cc not in new:
                    col_rows[cc].discard(rid)
            for cc in new:
                if cc not in row:
                    col_rows.setdefault(cc, set()).add(rid)
            if new:
                active[rid] = new
            else:
                del active[rid]
        pivots.append((c, prow))
    return pivots, list(active.values())


def rank(M: RationalMatrix) -> RankResult:
    rows = [_integer_row(r) for r in M.row_dicts()]
    pivots, _ = _eliminate(rows, len(M.cols))
    return RankResult(len(pivots), tuple(c for c, _ in pivots))


def _back_substitute(pivots, ncols: int, rhs_col: int) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for c, prow in reversed(pivots):
        acc = Fraction(prow.get(rhs_col, 0))
        for cc, v in prow.items():
            if cc != c and cc < ncols:
                acc -= v * x[cc]
        x[c] = acc / prow[c]
    return x


def solve_many(M: RationalMatrix, rhs: Sequence[Sequence]) -> list[SolveResult]:
    """Solve ``M x = b`` for every ``b`` in ``rhs`` with one elimination."""
    nrows, ncols = M.shape
    for b in rhs:
        if len(b) != nrows:
            raise DomainError(f"right-hand side has length {len(b)}, expected {nrows}")
    rows = M.row_dicts()
    for t, b in enumerate(rhs):
        for i, v in enumerate(b):
            v = Fraction(v)
            if v:
                rows[i][ncols + t] = v
    pivots, leftovers = _eliminate([_integer_row(r) for r in rows], ncols)
    blocked = {c for row in leftovers for c in row}
    unique = len(pivots) == ncols
    out = []
    for t in range(len(rhs)):
        if ncols + t in blocked:
            out.append(SolveResult(SolveStatus.INFEASIBLE))
            continue
        x = _back_substitute(pivots, ncols, ncols + t)
        out.append(SolveResult(SolveStatus.UNIQUE if unique else SolveStatus.MANY, tuple(x)))
    return out


def solve(M: RationalMatrix, b: Sequence) -> SolveResult:
    """Exact solution of ``M x = b``; free variables are set to zero."""
    result = solve_many(M, [b])[0]
    if result.solution is not None:
        residual = _apply(M, result.solution)
        if residual != [Fraction(v) for v in b]:
            raise AssertionError("nonzero residual in exact solve")
    return result


def _apply(M: RationalMatrix, x: Sequence[Fraction]) -> list[Fraction]:
    y = [Fraction(0)] * len(M.rows)
    for (i, j), v in M.entries.items():
        y[i] += v * x[j]
    return y


def one_sided_inverse(M: RationalMatrix, side: Side | str) -> RationalMatrix | None:
    """``B`` with ``B @ M == I`` (left) or ``M @ B == I`` (right), else None."""
    side = Side(side)
    target = M.T if side is Side.LEFT else M
    n = len(target.rows)
    unit = [[int(i == j) for i in range(n)] for j in range(n)]
    results = solve_many(target, unit)
    if any(not r.feasible for r in results):
        return None
    # column j of X solves target @ X = I
    X = RationalMatrix(
        target.cols,
        target.rows,
        {(i, j): v for j, r in enumerate(results) for i, v in enumerate(r.solution) if v},
    )
    return X.T if side is Side.LEFT else X


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by Bareiss elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for r in rows:
        r = [Fraction(v) for v in r]
        den = 1
        for v in r:
            den = math.lcm(den, v.denominator)
        scale /= den
        a.append([int(v * den) for v in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale

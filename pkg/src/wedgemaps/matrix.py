"""Sparse matrices of exact rationals with labelled row and column bases."""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

from .errors import DomainError

__all__ = ["RationalMatrix", "parse_rational", "format_rational", "to_jsonable", "from_jsonable"]

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(value: Any) -> Fraction:
    """Parse an integer or a ``"p/q"`` string. Decimal notation is rejected."""
    if isinstance(value, bool):
        raise DomainError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise DomainError(f"zero denominator: {value!r}") from None
    raise DomainError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def to_jsonable(key):
    if isinstance(key, tuple):
        return [to_jsonable(k) for k in key]
    return key


def from_jsonable(obj):
    if isinstance(obj, list):
        return tuple(from_jsonable(o) for o in obj)
    return obj


class RationalMatrix:
    """Matrix over Q stored as ``{(row, col): Fraction}`` with no zero entries.

    ``rows`` and ``cols`` are the ordered basis labels of the codomain and
    domain. Labels only need to be hashable.
    """

    __slots__ = ("rows", "cols", "entries", "_row_pos", "_col_pos")

    def __init__(self, rows: Sequence[Hashable], cols: Sequence[Hashable], entries=None):
        self.rows = list(rows)
        self.cols = list(cols)
        self._row_pos = {r: i for i, r in enumerate(self.rows)}
        self._col_pos = {c: j for j, c in enumerate(self.cols)}
        if len(self._row_pos) != len(self.rows) or len(self._col_pos) != len(self.cols):
            raise DomainError("duplicate basis labels")
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < len(self.rows) and 0 <= j < len(self.cols)):
                raise DomainError(f"entry ({i}, {j}) out of range for shape {self.shape}")
            v = Fraction(v)
            if v:
                self.entries[i, j] = v

    # construction -----------------------------------------------------
    @classmethod
    def from_dense(cls, data: Sequence[Sequence], rows=None, cols=None) -> "RationalMatrix":
        nr = len(data)
        nc = len(data[0]) if nr else (len(cols) if cols is not None else 0)
        if any(len(r) != nc for r in data):
            raise DomainError("ragged matrix")
        entries = {(i, j): parse_rational(v) for i, row in enumerate(data) for j, v in enumerate(row)}
        return cls(range(nr) if rows is None else rows, range(nc) if cols is None else cols, entries)

    @classmethod
    def identity(cls, labels: Sequence[Hashable]) -> "RationalMatrix":
        return cls(labels, labels, {(i, i): Fraction(1) for i in range(len(labels))})

    @classmethod
    def zeros(cls, rows: Sequence[Hashable], cols: Sequence[Hashable]) -> "RationalMatrix":
        return cls(rows, cols)

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def row_index(self, label) -> int:
        return self._row_pos[label]

    def col_index(self, label) -> int:
        return self._col_pos[label]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries.get(ij, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * len(self.cols) for _ in self.rows]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in self.rows]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    @property
    def nnz(self) -> int:
        return len(self.entries)

    # algebra ----------------------------------------------------------
    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if len(self.cols) != len(other.rows):
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in right[k].items():
                acc[i, j] = acc.get((i, j), 0) + a * b
        return RationalMatrix(self.rows, other.cols, acc)

    def __mul__(self, t) -> "RationalMatrix":
        t = Fraction(t)
        return RationalMatrix(self.rows, self.cols, {ij: v * t for ij, v in self.entries.items()})

    __rmul__ = __mul__

    def relabel(self, rows=None, cols=None) -> "RationalMatrix":
        """Same entries under new labels (positions unchanged)."""
        return RationalMatrix(self.rows if rows is None else rows, self.cols if cols is None else cols, self.entries)

    def permuted(self, rows: Sequence[Hashable], cols: Sequence[Hashable]) -> "RationalMatrix":
        """Reorder to the given label orders (each a permutation of the current labels)."""
        if sorted(map(repr, rows)) != sorted(map(repr, self.rows)) or sorted(map(repr, cols)) != sorted(
            map(repr, self.cols)
        ):
            raise DomainError("permuted() needs permutations of the existing labels")
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        return RationalMatrix(
            rows,
            cols,
            {(rpos[self.rows[i]], cpos[self.cols[j]]): v for (i, j), v in self.entries.items()},
        )

    def is_identity(self) -> bool:
        if len(self.rows) != len(self.cols):
            return False
        return self.first_identity_violation() is None

    def first_identity_violation(self):
        """First ``(i, j, value)`` at which this differs from the identity, or None."""
        n, m = self.shape
        for i in range(n):
            for j in range(m):
                v = self[i, j]
                if v != (1 if i == j else 0):
                    return i, j, v
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __repr__(self):
        return f"RationalMatrix(shape={self.shape}, nnz={self.nnz})"

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": [to_jsonable(r) for r in self.rows],
            "cols": [to_jsonable(c) for c in self.cols],
            "entries": [[i, j, format_rational(v)] for (i, j), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalMatrix":
        try:
            rows = [from_jsonable(r) for r in obj["rows"]]
            cols = [from_jsonable(c) for c in obj["cols"]]
            entries = {(int(i), int(j)): parse_rational(v) for i, j, v in obj["entries"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed matrix JSON: {exc}") from None
        return cls(rows, cols, entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [_label(c) for c in self.cols])
        for i, row in enumerate(self.to_dense()):
            w.writerow([_label(self.rows[i])] + [format_rational(v) for v in row])
        return buf.getvalue()


def _label(key) -> str:
    if isinstance(key, tuple):
        if key and all(isinstance(k, tuple) for k in key):
            return "|".join(_label(k) for k in key)
        return "{" + " ".join(map(str, key)) + "}"
    return str(key)

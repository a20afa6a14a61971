"""The spaces Lambda^n (V^l)* (x) Lambda^k Z, their elements and coframes.

An element is stored as a finitely supported map from basis keys
``(lower, upper)`` to exact rationals, where ``lower`` indexes the form
factors (values in ``1..N-l``) and ``upper`` the Z factors (``1..N``). The
basis element for a key is ``e_upper (v*)^lower`` with both rows increasing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .indexkit import MultiIndex, binom, normalize, subsets
from .matrix import format_rational, parse_rational

__all__ = [
    "SpaceSig",
    "TensorElement",
    "Coframe",
    "dim",
    "basis_keys",
    "make_element",
    "standard_coframe",
    "restricted_columns",
]

Key = tuple[MultiIndex, MultiIndex]


@dataclass(frozen=True, order=True)
class SpaceSig:
    N: int
    l: int
    n: int
    k: int

    def __post_init__(self):
        for name in ("N", "l", "n", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise DomainError(f"{name} must be an integer, got {v!r}")
        if self.N < 1:
            raise DomainError(f"N must be positive, got {self.N}")
        if not 0 <= self.l < self.N:
            raise DomainError(f"need 0 <= l < N, got l={self.l}, N={self.N}")
        if not 0 <= self.n <= self.N - self.l:
            raise DomainError(f"need 0 <= n <= N-l, got n={self.n}")
        if not 0 <= self.k <= self.N:
            raise DomainError(f"need 0 <= k <= N, got k={self.k}")

    @property
    def form_bound(self) -> int:
        """Largest admissible lower (form) index."""
        return self.N - self.l

    def shifted(self, s: int) -> "SpaceSig":
        return SpaceSig(self.N, self.l, self.n + s, self.k + s)


def dim(sig: SpaceSig) -> int:
    return binom(sig.N - sig.l, sig.n) * binom(sig.N, sig.k)


def basis_keys(sig: SpaceSig) -> list[Key]:
    """Basis keys ordered lexicographically by (lower, upper)."""
    lowers = subsets(MultiIndex(range(1, sig.form_bound + 1), sig.form_bound), sig.n)
    uppers = subsets(MultiIndex(range(1, sig.N + 1), sig.N), sig.k)
    return [(J, I) for J in lowers for I in uppers]


@dataclass(frozen=True)
class TensorElement:
    sig: SpaceSig
    terms: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (J, I), v in self.terms.items():
            J = MultiIndex(J, self.sig.form_bound)
            I = MultiIndex(I, self.sig.N)
            if len(J) != self.sig.n or len(I) != self.sig.k:
                raise DomainError(f"key {(J, I)} has wrong degree for {self.sig}")
            v = Fraction(v)
            if v:
                clean[J, I] = v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def unit(cls, sig: SpaceSig, lower: Sequence[int], upper: Sequence[int]) -> "TensorElement":
        return cls(sig, {(tuple(lower), tuple(upper)): Fraction(1)})

    @classmethod
    def zero(cls, sig: SpaceSig) -> "TensorElement":
        return cls(sig, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if other.sig != self.sig:
            raise DomainError(f"cannot add elements of {self.sig} and {other.sig}")
        acc = dict(self.terms)
        for key, v in other.terms.items():
            acc[key] = acc.get(key, 0) + v
        return TensorElement(self.sig, acc)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, t) -> "TensorElement":
        t = Fraction(t)
        return TensorElement(self.sig, {key: v * t for key, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def coordinates(self, keys: Sequence[Key]) -> list[Fraction]:
        """Coefficient vector in the given key order."""
        pos = {key: i for i, key in enumerate(keys)}
        out = [Fraction(0)] * len(keys)
        for key, v in self.terms.items():
            out[pos[key]] = v
        return out

    # JSON ------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "N": self.sig.N,
            "l": self.sig.l,
            "n": self.sig.n,
            "k": self.sig.k,
            "terms": [
                {"mu": list(J), "c": list(I), "coeff": format_rational(v)}
                for (J, I), v in sorted(self.terms.items())
            ],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, obj: Mapping) -> "TensorElement":
        try:
            sig = SpaceSig(obj["N"], obj["l"], obj["n"], obj["k"])
            raw = [(t["mu"], t["c"], parse_rational(t["coeff"])) for t in obj["terms"]]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed element JSON: missing or bad field {exc}") from None
        return make_element(sig, raw)

    @classmethod
    def loads(cls, text: str) -> "TensorElement":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from None
        return cls.from_json(obj)

    def __repr__(self):
        body = " + ".join(f"({v})[{J}|{I}]" for (J, I), v in sorted(self.terms.items())) or "0"
        return f"TensorElement<{self.sig.N},{self.sig.l},{self.sig.n},{self.sig.k}>({body})"


def make_element(sig: SpaceSig, raw_terms: Iterable[tuple[Sequence[int], Sequence[int], object]]) -> TensorElement:
    """Build an element from possibly unsorted index rows.

    Each row is sorted with its permutation sign folded into the
    coefficient; repeated indices give zero; equal keys accumulate.
    """
    acc: dict[Key, Fraction] = {}
    for lower, upper, coeff in raw_terms:
        lower, upper = list(lower), list(upper)
        if len(lower) != sig.n or len(upper) != sig.k:
            raise DomainError(f"term {lower}, {upper} has wrong degree for {sig}")
        lo = normalize(lower, sig.form_bound)
        up = normalize(upper, sig.N)
        sign = lo.sign * up.sign
        if sign == 0:
            continue
        key = (lo.index, up.index)
        acc[key] = acc.get(key, 0) + sign * parse_rational(coeff)
    return TensorElement(sig, acc)


@dataclass(frozen=True)
class Coframe:
    """Invertible N x N rational matrix; column mu is e(v_mu) in the Z basis."""

    N: int
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(parse_rational(x) for x in row) for row in self.matrix)
        if len(rows) != self.N or any(len(r) != self.N for r in rows):
            raise DomainError(f"coframe matrix must be {self.N}x{self.N}")
        object.__setattr__(self, "matrix", rows)
        from .oracle import determinant

        if determinant([list(r) for r in rows]) == 0:
            raise DomainError("coframe matrix is singular")

    def entry(self, c: int, mu: int) -> Fraction:
        """Component of e(v_mu) along e_c (1-based)."""
        return self.matrix[c - 1][mu - 1]

    def is_standard(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(self.N) for j in range(self.N))

    def scaled(self, t) -> "Coframe":
        t = Fraction(t)
        return Coframe(self.N, tuple(tuple(x * t for x in row) for row in self.matrix))

    def to_json(self) -> dict:
        return {"N": self.N, "matrix": [[format_rational(x) for x in row] for row in self.matrix]}

    @classmethod
    def from_json(cls, obj) -> "Coframe":
        if isinstance(obj, list):
            return cls(len(obj), obj)
        try:
            return cls(obj["N"], obj["matrix"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed coframe JSON: {exc}") from None


def standard_coframe(N: int) -> Coframe:
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    return Coframe(N, tuple(tuple(Fraction(int(i == j)) for j in range(N)) for i in range(N)))


def restricted_columns(cf: Coframe, l: int) -> list[list[Fraction]]:
    """The N x (N-l) block of columns spanning the image of V^l."""
    if not 0 <= l < cf.N:
        raise DomainError(f"need 0 <= l < N, got l={l}, N={cf.N}")
    return [list(row[: cf.N - l]) for row in cf.matrix]


def random_coframe(N: int, rng, span: int = 3) -> Coframe:
    """Random invertible coframe with entries ``a/b``, ``|a| <= span``, ``1 <= b <= span``."""
    while True:
        rows = [[Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(N)] for _ in range(N)]
        try:
            return Coframe(N, rows)
        except DomainError:
            continue

"""The maps X -> X ^ e ^ ... ^ e (s factors) and their matrices.

Sign conventions
----------------
Basis elements are written ``e_I (v*)^J`` with the Z factors first. Products
follow the Koszul rule: moving a Z factor past a form of degree ``n`` costs
``(-1)^n``. With these rules a single wedge with ``e = sum E^c_mu e_c (v*)^mu``
contributes ``(-1)^n`` times the two sorting signs (see :func:`wedge_once`).

The map ``W_s`` is wedge with the normalized power::

    e^(s) = sum_{S} e_S (v*)^S,    S an increasing s-subset,

for the standard coframe, i.e. ``e^(s) = (-1)^(s(s-1)/2) / s! * e^s``. The
``s!`` removes the overcounting of ordered tuples and the sign undoes the
reordering of ``e_mu1 (v*)^mu1 e_mu2 (v*)^mu2 ...`` into Z-first form. With
that normalization the closed formula of :func:`expand_term` agrees exactly
with ``s`` applications of :func:`wedge_once`.
"""
from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError
from .indexkit import MultiIndex, interleave_sign
from .matrix import RationalMatrix
from .space import Coframe, SpaceSig, TensorElement, basis_keys, dim, standard_coframe

__all__ = [
    "MapSpec",
    "expand_term",
    "wedge_once",
    "apply",
    "build_matrix",
    "power_normalization",
]


@dataclass(frozen=True, order=True)
class MapSpec:
    """Parameters ``(N, l, s, n, k)`` of one map ``Omega_l^{n,k} -> Omega_l^{n+s,k+s}``."""

    N: int
    l: int
    s: int
    n: int
    k: int

    def __post_init__(self):
        for name in ("N", "l", "s", "n", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise DomainError(f"{name} must be a nonnegative integer, got {v!r}")
        N, l, s, n, k = self.astuple()
        if not 1 <= s < N:
            raise DomainError(f"need 1 <= s < N, got s={s}, N={N}")
        if l >= N:
            raise DomainError(f"need l < N, got l={l}, N={N}")
        if n > N - s - l:
            raise DomainError(f"need n <= N-s-l = {N - s - l}, got n={n}")
        if k > N - s:
            raise DomainError(f"need k <= N-s = {N - s}, got k={k}")

    def astuple(self) -> tuple[int, int, int, int, int]:
        return self.N, self.l, self.s, self.n, self.k

    @property
    def domain(self) -> SpaceSig:
        return SpaceSig(self.N, self.l, self.n, self.k)

    @property
    def codomain(self) -> SpaceSig:
        return SpaceSig(self.N, self.l, self.n + self.s, self.k + self.s)

    @property
    def dims(self) -> tuple[int, int]:
        return dim(self.domain), dim(self.codomain)

    def __str__(self):
        return f"W(N={self.N}, l={self.l}, s={self.s}, n={self.n}, k={self.k})"


def power_normalization(s: int) -> Fraction:
    """Factor turning the plain s-fold product into the normalized power."""
    return Fraction((-1) ** (s * (s - 1) // 2), math.factorial(s))


def expand_term(spec: MapSpec, lower, upper) -> TensorElement:
    """Image of the unit element at ``(lower, upper)`` under the standard coframe.

    Sums over s-subsets ``S`` of ``{1..N-l}`` disjoint from both rows.
    """
    dom = spec.domain
    lower = MultiIndex(lower, dom.form_bound)
    upper = MultiIndex(upper, dom.N)
    if len(lower) != spec.n or len(upper) != spec.k:
        raise DomainError(f"key ({lower}, {upper}) has wrong degree for {spec}")
    taken = set(lower) | set(upper)
    free = [mu for mu in range(1, dom.form_bound + 1) if mu not in taken]
    prefactor = -1 if (spec.n * spec.s) & 1 else 1
    terms = {}
    for S in combinations(free, spec.s):
        sign = prefactor * interleave_sign(lower, S) * interleave_sign(upper, S)
        terms[tuple(sorted(lower + S)), tuple(sorted(upper + S))] = Fraction(sign)
    return TensorElement(spec.codomain, terms)


def wedge_once(x: TensorElement, cf: Coframe | None = None) -> TensorElement:
    """``x ^ e`` for a coframe ``e`` restricted to ``V^l`` (default: standard)."""
    sig = x.sig
    if cf is None:
        cf = standard_coframe(sig.N)
    if cf.N != sig.N:
        raise DomainError(f"coframe dimension {cf.N} does not match N={sig.N}")
    if sig.n + 1 > sig.form_bound or sig.k + 1 > sig.N:
        raise DomainError(f"degree overflow wedging {sig} with the coframe")
    out_sig = SpaceSig(sig.N, sig.l, sig.n + 1, sig.k + 1)
    koszul = -1 if sig.n & 1 else 1
    acc: dict = {}
    for (J, I), v in x.terms.items():
        for mu in range(1, sig.form_bound + 1):
            if mu in J:
                continue
            sj = interleave_sign(J, (mu,))
            J2 = tuple(sorted(J + (mu,)))
            for c in range(1, sig.N + 1):
                if c in I:
                    continue
                E = cf.entry(c, mu)
                if not E:
                    continue
                key = (J2, tuple(sorted(I + (c,))))
                acc[key] = acc.get(key, 0) + koszul * sj * interleave_sign(I, (c,)) * E * v
    return TensorElement(out_sig, acc)


def apply(x: TensorElement, s: int, cf: Coframe | None = None) -> TensorElement:
    """Image of ``x`` under ``W_s`` for the given coframe (default standard)."""
    sig = x.sig
    spec = MapSpec(sig.N, sig.l, s, sig.n, sig.k)
    if cf is None or cf.is_standard():
        out = TensorElement.zero(spec.codomain)
        for (J, I), v in x.terms.items():
            out = out + expand_term(spec, J, I) * v
        return out
    if cf.N != sig.N:
        raise DomainError(f"coframe dimension {cf.N} does not match N={sig.N}")
    y = x
    for _ in range(s):
        y = wedge_once(y, cf)
    return y * power_normalization(s)


def _column(spec: MapSpec, key, cf: Coframe | None, iterated: bool) -> TensorElement:
    J, I = key
    if not iterated:
        return expand_term(spec, J, I)
    y = TensorElement.unit(spec.domain, J, I)
    for _ in range(spec.s):
        y = wedge_once(y, cf)
    return y * power_normalization(spec.s)


def build_matrix(
    spec: MapSpec,
    cf: Coframe | None = None,
    *,
    iterated: bool | None = None,
    executor: Executor | None = None,
) -> RationalMatrix:
    """Matrix of ``W_s`` in the lexicographic (lower, upper) bases.

    The standard coframe uses the closed formula; any other coframe (or
    ``iterated=True``) applies :func:`wedge_once` ``s`` times. Columns are
    independent, so an ``executor`` may evaluate them in parallel; assembly
    order is fixed by the basis order either way.
    """
    if cf is None:
        cf = standard_coframe(spec.N)
    if cf.N != spec.N:
        raise DomainError(f"coframe dimension {cf.N} does not match N={spec.N}")
    if iterated is None:
        iterated = not cf.is_standard()
    cols = basis_keys(spec.domain)
    rows = basis_keys(spec.codomain)
    rpos = {key: i for i, key in enumerate(rows)}
    if executor is None:
        images = [_column(spec, key, cf, iterated) for key in cols]
    else:
        images = list(executor.map(_column, [spec] * len(cols), cols, [cf] * len(cols), [iterated] * len(cols)))
    entries = {}
    for j, img in enumerate(images):
        for key, v in img.terms.items():
            entries[rpos[key], j] = v
    return RationalMatrix(rows, cols, entries)

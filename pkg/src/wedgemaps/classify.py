"""Closed-form injectivity/surjectivity criteria and explicit witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, PreconditionError, UnsupportedError
from .indexkit import MultiIndex
from .space import TensorElement, dim
from .wedge import MapSpec

__all__ = [
    "Classification",
    "classify",
    "classify_by_dims",
    "dual",
    "kernel_witness",
    "cokernel_witness",
    "iter_specs",
]


@dataclass(frozen=True)
class Classification:
    injective: bool
    surjective: bool

    @property
    def kind(self) -> str:
        if self.injective and self.surjective:
            return "bijective"
        if self.injective:
            return "injective"
        if self.surjective:
            return "surjective"
        return "neither"

    @property
    def arrow(self) -> str:
        """Arrow style used in tables: hook, two-heads, hook+two-heads or plain."""
        return {
            "bijective": "hook+two-heads",
            "injective": "hook",
            "surjective": "two-heads",
            "neither": "plain",
        }[self.kind]

    @classmethod
    def from_rank(cls, rank: int, dom_dim: int, cod_dim: int) -> "Classification":
        return cls(rank == dom_dim, rank == cod_dim)


def classify(spec: MapSpec) -> Classification:
    """Injective iff ``n+k <= N-l-s``; surjective iff ``n+k >= N-s``."""
    total = spec.n + spec.k
    return Classification(
        injective=total <= spec.N - spec.l - spec.s,
        surjective=total >= spec.N - spec.s,
    )


def dual(spec: MapSpec) -> MapSpec:
    """The map whose surjectivity matches this one's injectivity (and back)."""
    n2 = spec.N - spec.l - spec.n - spec.s
    k2 = spec.N - spec.k - spec.s
    if n2 < 0 or k2 < 0:
        raise DomainError(f"{spec} has no dual: dual degrees ({n2}, {k2})")
    return MapSpec(spec.N, spec.l, spec.s, n2, k2)


def classify_by_dims(spec: MapSpec) -> Classification:
    """Compare dimensions of domain and codomain. Only valid in codimension 0."""
    if spec.l != 0:
        raise UnsupportedError(f"dimension criterion does not hold for l > 0 (got l={spec.l})")
    d, c = dim(spec.domain), dim(spec.codomain)
    return Classification(injective=d <= c, surjective=d >= c)


def kernel_witness(spec: MapSpec) -> TensorElement:
    """A single unit component killed by the map.

    Takes ``J = {1..n}`` and fills ``I`` upward from ``n+1`` (wrapping to
    ``1..n`` once ``N`` is reached), so fewer than ``s`` indices of
    ``{1..N-l}`` stay free and no s-subset can be appended.
    """
    if spec.n + spec.k <= spec.N - spec.l - spec.s:
        raise PreconditionError(f"{spec} is injective; no kernel witness exists")
    J = list(range(1, spec.n + 1))
    I = _fill(spec.k, start=spec.n + 1, N=spec.N)
    free = set(range(1, spec.N - spec.l + 1)) - set(J) - set(I)
    assert len(free) <= spec.s - 1
    return TensorElement.unit(spec.domain, J, I)


def cokernel_witness(spec: MapSpec) -> tuple[MultiIndex, MultiIndex]:
    """A codomain basis key whose rows share fewer than ``s`` indices.

    Every image component shares the ``s`` appended indices between its two
    rows, so this basis element lies outside the image.
    """
    if spec.n + spec.k >= spec.N - spec.s:
        raise PreconditionError(f"{spec} is surjective; no cokernel witness exists")
    cod = spec.codomain
    J = MultiIndex(range(1, cod.n + 1), cod.form_bound)
    I = MultiIndex(_fill(cod.k, start=cod.n + 1, N=spec.N), spec.N)
    assert len(set(J) & set(I)) < spec.s
    return J, I


def _fill(count: int, start: int, N: int) -> list[int]:
    picked = list(range(start, N + 1))[:count]
    picked += list(range(1, start))[: count - len(picked)]
    return sorted(picked)


def iter_specs(max_N: int, max_s: int | None = None, max_l: int | None = None, min_N: int = 2) -> Iterator[MapSpec]:
    """All valid specs with ``N <= max_N`` (and optional caps on s, l), sorted."""
    for N in range(max(min_N, 2), max_N + 1):
        for l in range(0, N if max_l is None else min(N - 1, max_l) + 1):
            for s in range(1, N if max_s is None else min(N - 1, max_s) + 1):
                for n in range(0, N - s - l + 1):
                    for k in range(0, N - s + 1):
                        yield MapSpec(N, l, s, n, k)

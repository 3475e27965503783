"""
Divisor classes on M_{0,n} written as Σ a_i ψ_i − Σ c_{I,J} D_{I,J}, and the
first Chern class of a conformal blocks bundle in that basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError
from .fusion import _fuse, rank, validate_weights
from .lie import (
    AlgebraTables,
    Weight,
    dual_weight,
    level_weights,
    tables_for,
    trace_anomaly,
)


@dataclass(frozen=True, order=True)
class Partition:
    """Unordered split I | J of {1..n}, stored by the block containing 1."""

    n: int
    side: tuple[int, ...]

    def __post_init__(self):
        side = tuple(sorted(set(self.side)))
        if self.n < 4:
            raise DomainError(f"boundary divisors need n >= 4, got n = {self.n}")
        if not side or side[0] != 1 or side[-1] > self.n:
            raise DomainError(f"side {list(side)} must contain 1 and lie in 1..{self.n}")
        if not 2 <= len(side) <= self.n - 2:
            raise DomainError(f"side {list(side)} must have between 2 and n-2 elements")
        object.__setattr__(self, "side", side)

    @classmethod
    def from_block(cls, n: int, block: Iterable[int]) -> "Partition":
        block = set(block)
        if 1 not in block:
            block = set(range(1, n + 1)) - block
        return cls(n, tuple(block))

    @property
    def complement(self) -> tuple[int, ...]:
        s = set(self.side)
        return tuple(i for i in range(1, self.n + 1) if i not in s)

    def sort_key(self):
        return (len(self.side), self.side)

    def relabel(self, perm: Mapping[int, int]) -> "Partition":
        return Partition.from_block(self.n, (perm[i] for i in self.side))


def all_partitions(n: int) -> list[Partition]:
    """Canonical partitions of {1..n}, ordered by (|side|, side)."""
    if n < 4:
        raise DomainError(f"boundary divisors need n >= 4, got n = {n}")
    out = []
    for size in range(2, n - 1):
        for tail in combinations(range(2, n + 1), size - 1):
            out.append(Partition(n, (1,) + tail))
    return out


@dataclass(frozen=True)
class DivisorClass:
    """Element of Pic(M_{0,n}) ⊗ Q; ``boundary`` holds the c_{I,J} (zeros omitted)."""

    n: int
    psi: tuple[Fraction, ...]
    boundary: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 4:
            raise DomainError(f"Pic(M_0,n) basis needs n >= 4, got n = {self.n}")
        psi = tuple(Fraction(x) for x in self.psi)
        if len(psi) != self.n:
            raise DomainError(f"expected {self.n} psi coefficients, got {len(psi)}")
        bnd = {}
        for p, c in self.boundary.items():
            if p.n != self.n:
                raise DomainError(f"partition {p} does not belong to n = {self.n}")
            c = Fraction(c)
            if c:
                bnd[p] = c
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "boundary", dict(sorted(bnd.items(), key=lambda kv: kv[0].sort_key())))

    @classmethod
    def zero(cls, n: int) -> "DivisorClass":
        return cls(n, (Fraction(0),) * n, {})

    def coefficient(self, p: Partition) -> Fraction:
        return self.boundary.get(p, Fraction(0))

    def scaled(self, k) -> "DivisorClass":
        k = Fraction(k)
        return DivisorClass(self.n, tuple(k * a for a in self.psi),
                            {p: k * c for p, c in self.boundary.items()})

    def is_zero(self) -> bool:
        return not any(self.psi) and not self.boundary

    def relabel(self, perm: Mapping[int, int]) -> "DivisorClass":
        """Push forward along the relabeling i ↦ perm[i] of marked points."""
        psi = [Fraction(0)] * self.n
        for i, a in enumerate(self.psi, start=1):
            psi[perm[i] - 1] = a
        return DivisorClass(self.n, tuple(psi), {p.relabel(perm): c for p, c in self.boundary.items()})


def _side_weights(weights, indices) -> tuple[Weight, ...]:
    # fusion is commutative, so a sorted key maximizes cache reuse
    return tuple(sorted(weights[i - 1] for i in indices))


def boundary_coefficient(
    tables: AlgebraTables, level: int, weights: Sequence[Weight], p: Partition
) -> Fraction:
    """c_{I,J} = Σ_Λ Δ_Λ · rk V(Λ_I, Λ) · rk V(Λ_J, Λ*)."""
    weights = validate_weights(tables, level, weights)
    if len(weights) != p.n:
        raise DomainError(f"tuple has {len(weights)} entries but partition is for n = {p.n}")
    left = dict(_fuse(tables.id, level, _side_weights(weights, p.side)))
    right = dict(_fuse(tables.id, level, _side_weights(weights, p.complement)))
    total = Fraction(0)
    for lam in level_weights(tables, level):
        r_left = left.get(dual_weight(tables, lam), 0)
        if not r_left:
            continue
        r_right = right.get(lam, 0)
        if r_right:
            total += trace_anomaly(tables, level, lam) * r_left * r_right
    return total


def conformal_blocks_divisor(tables: AlgebraTables, level: int, weights: Sequence[Weight]) -> DivisorClass:
    """First Chern class 𝔻(Λ, 𝔤, ℓ) of the conformal blocks bundle on M_{0,n}.

    Each unordered boundary divisor is visited once through its canonical
    partition, so no extra 1/2 weight is applied when |I| = n/2.
    """
    weights = validate_weights(tables, level, weights)
    n = len(weights)
    if n < 4:
        raise DomainError(f"conformal blocks divisors need n >= 4, got n = {n}")
    rk = rank(tables, level, weights)
    if rk == 0:
        return DivisorClass.zero(n)
    psi = tuple(rk * trace_anomaly(tables, level, w) for w in weights)
    boundary = {p: boundary_coefficient(tables, level, weights, p) for p in all_partitions(n)}
    return DivisorClass(n, psi, boundary)


class ScaleCheck(NamedTuple):
    holds: bool
    level_n: DivisorClass
    level_one: DivisorClass


def scale_check(r: int, n: int, N: int) -> ScaleCheck:
    """Compare 𝔻((Nω_1)^n, B_r, N) with N · 𝔻((ω_1)^n, B_r, 1)."""
    if n % 2 or n < 4:
        raise DomainError(f"scaling comparison needs an even n >= 4, got n = {n}")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    tables = tables_for("B", r)
    top = conformal_blocks_divisor(tables, N, [Weight.fundamental(r, 1, N)] * n)
    base = conformal_blocks_divisor(tables, 1, [Weight.fundamental(r, 1)] * n)
    return ScaleCheck(top == base.scaled(N), top, base)

"""
Exact structure tables for the classical simple Lie algebras A_r, B_r, C_r, D_r.

Weights are stored by Dynkin labels. Orthogonal coordinates use the usual
e_i realization (R^{r+1} for A_r, R^r otherwise) and the invariant form is
rescaled so that the highest root has squared length 2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .errors import DomainError

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True, order=True)
class AlgebraId:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _MIN_RANK:
            raise DomainError(f"unknown family {self.family!r}; expected one of A, B, C, D")
        if not isinstance(self.rank, int) or self.rank < _MIN_RANK[self.family]:
            raise DomainError(
                f"{self.family}_r requires rank >= {_MIN_RANK[self.family]}, got {self.rank}"
            )

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, order=True)
class Weight:
    """Dominant integral weight given by its Dynkin labels."""

    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(a) for a in self.labels)
        if any(a < 0 for a in labels):
            raise DomainError(f"weight {list(labels)} is not dominant")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def fundamental(cls, rank: int, i: int, k: int = 1) -> "Weight":
        """k times the i-th fundamental weight; i = 0 gives the zero weight."""
        if not 0 <= i <= rank:
            raise DomainError(f"fundamental weight index {i} outside 0..{rank}")
        labels = [0] * rank
        if i:
            labels[i - 1] = k
        return cls(tuple(labels))

    @property
    def is_zero(self) -> bool:
        return not any(self.labels)

    def __str__(self):
        return format_weight(self)


def _vec(*xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def _unit(dim: int, i: int, scale=1) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(scale)
    return tuple(v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(k, v):
    return tuple(k * a for a in v)


class AlgebraTables:
    """Root-system data of a classical simple Lie algebra.

    Attributes
    ----------
    id : AlgebraId
    dim : int
        Length of the orthogonal coordinate vectors.
    simple_roots, fundamental_weights : tuple of rational vectors
    positive_roots : tuple of rational vectors
    rho, theta : rational vectors
    cartan : tuple of tuples of int
        ``cartan[i][j] = <alpha_i, alpha_j^vee>``, so that
        ``alpha_i = sum_j cartan[i][j] omega_j``.
    comarks : tuple of int
    dual_coxeter : int
    """

    def __init__(self, algebra_id: AlgebraId):
        self.id = algebra_id
        r = algebra_id.rank
        fam = algebra_id.family
        dim = r + 1 if fam == "A" else r
        self.dim = dim
        self.rank = r

        e = [_unit(dim, i) for i in range(dim)]
        simple = [_sub(e[i], e[i + 1]) for i in range(r - 1)]
        if fam == "A":
            simple.append(_sub(e[r - 1], e[r]))
        elif fam == "B":
            simple.append(e[r - 1])
        elif fam == "C":
            simple.append(_scale(2, e[r - 1]))
        else:
            simple.append(_add(e[r - 2], e[r - 1]))
        self.simple_roots = tuple(simple)

        pos = []
        if fam == "A":
            pos = [_sub(e[i], e[j]) for i in range(dim) for j in range(i + 1, dim)]
        else:
            for i in range(r):
                for j in range(i + 1, r):
                    pos.append(_sub(e[i], e[j]))
                    pos.append(_add(e[i], e[j]))
                if fam == "B":
                    pos.append(e[i])
                elif fam == "C":
                    pos.append(_scale(2, e[i]))
        self.positive_roots = tuple(sorted(pos, reverse=True))

        half = Fraction(1, 2)
        fw = []
        for i in range(1, r + 1):
            w = [Fraction(0)] * dim
            for j in range(i):
                w[j] = Fraction(1)
            if fam == "A":
                w = [x - Fraction(i, r + 1) for x in w]
            elif fam == "B" and i == r:
                w = [half] * r
            elif fam == "D" and i == r - 1:
                w = [half] * (r - 1) + [-half]
            elif fam == "D" and i == r:
                w = [half] * r
            fw.append(tuple(w))
        self.fundamental_weights = tuple(fw)

        if fam == "A":
            theta = _sub(e[0], e[r])
        elif fam == "C":
            theta = _scale(2, e[0])
        else:
            theta = _add(e[0], e[1])
        self.theta = theta
        # Euclidean dot product times this factor gives the normalized form.
        self.form_scale = Fraction(2) / _dot(theta, theta)

        self.cartan = tuple(
            tuple(int(self.coroot_pairing(a, b)) for b in self.simple_roots)
            for a in self.simple_roots
        )
        self.comarks = tuple(int(self.inner(w, theta)) for w in fw)
        self.dual_coxeter = 1 + sum(self.comarks)
        self.rho = tuple(sum(col, Fraction(0)) for col in zip(*fw))
        self.theta_labels = self.to_labels(theta)
        self._cartan_inverse = _invert(self.cartan)

    def __repr__(self):
        return f"AlgebraTables({self.id})"

    # -- form and coordinates ------------------------------------------------

    def inner(self, u, v) -> Fraction:
        return self.form_scale * _dot(u, v)

    def coroot_pairing(self, v, alpha) -> Fraction:
        """<v, alpha^vee> = 2 (v, alpha) / (alpha, alpha)."""
        return 2 * _dot(v, alpha) / _dot(alpha, alpha)

    def coordinates(self, weight: Weight | Sequence[int]) -> tuple[Fraction, ...]:
        labels = weight.labels if isinstance(weight, Weight) else tuple(weight)
        self._check_length(labels)
        out = [Fraction(0)] * self.dim
        for a, w in zip(labels, self.fundamental_weights):
            if a:
                out = [x + a * y for x, y in zip(out, w)]
        return tuple(out)

    def to_labels(self, coords) -> tuple[int, ...]:
        """Dynkin labels of a lattice vector given in orthogonal coordinates."""
        labels = []
        for alpha in self.simple_roots:
            x = self.coroot_pairing(coords, alpha)
            if x.denominator != 1:
                raise DomainError(f"{coords} is not an integral weight")
            labels.append(int(x))
        return tuple(labels)

    def weight_from_coordinates(self, coords) -> Weight:
        return Weight(self.to_labels(coords))

    def label_inner(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """Normalized form on two label vectors (integral, not necessarily dominant)."""
        return self.inner(self.coordinates(x), self.coordinates(y))

    def root_coefficients(self, labels: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of a label vector in the simple-root basis."""
        inv = self._cartan_inverse
        r = self.rank
        return tuple(sum(labels[j] * inv[j][i] for j in range(r)) for i in range(r))

    def reflect(self, labels: Sequence[int], i: int) -> tuple[int, ...]:
        """Simple reflection s_i (0-based) acting on Dynkin labels."""
        a = labels[i]
        if not a:
            return tuple(labels)
        row = self.cartan[i]
        return tuple(x - a * c for x, c in zip(labels, row))

    def root_labels(self, root) -> tuple[int, ...]:
        return self.to_labels(root)

    def _check_length(self, labels):
        if len(labels) != self.rank:
            raise DomainError(
                f"weight has {len(labels)} labels but {self.id} has rank {self.rank}"
            )

    def check_weight(self, weight: Weight) -> Weight:
        self._check_length(weight.labels)
        return weight


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _invert(matrix) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@lru_cache(maxsize=None)
def build_tables(algebra_id: AlgebraId) -> AlgebraTables:
    return AlgebraTables(algebra_id)


def tables_for(family: str, rank: int) -> AlgebraTables:
    return build_tables(AlgebraId(family.upper(), rank))


def weight_level(tables: AlgebraTables, weight: Weight) -> int:
    """Level of a dominant weight: its pairing with the highest coroot."""
    tables.check_weight(weight)
    return sum(a * c for a, c in zip(weight.labels, tables.comarks))


def level_weights(tables: AlgebraTables, level: int) -> list[Weight]:
    """All dominant weights of level at most ``level``, sorted by labels."""
    if level < 0:
        raise DomainError(f"level must be non-negative, got {level}")
    return list(_level_weights(tables.id, level))


@lru_cache(maxsize=None)
def _level_weights(algebra_id: AlgebraId, level: int) -> tuple[Weight, ...]:
    tables = build_tables(algebra_id)
    ranges = [range(level // c + 1) for c in tables.comarks]
    out = [
        Weight(labels)
        for labels in product(*ranges)
        if sum(a * c for a, c in zip(labels, tables.comarks)) <= level
    ]
    return tuple(sorted(out))


def dominant_conjugate(tables: AlgebraTables, labels: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Reflect an integral weight into the dominant chamber.

    Returns the dominant labels and the parity (0 or 1) of the number of
    simple reflections used.
    """
    labels = tuple(labels)
    parity = 0
    while True:
        for i, a in enumerate(labels):
            if a < 0:
                labels = tables.reflect(labels, i)
                parity ^= 1
                break
        else:
            return labels, parity


def dual_weight(tables: AlgebraTables, weight: Weight) -> Weight:
    """-w_0(weight): the highest weight of the dual module."""
    tables.check_weight(weight)
    labels, _ = dominant_conjugate(tables, tuple(-a for a in weight.labels))
    return Weight(labels)


def trace_anomaly(tables: AlgebraTables, level: int, weight: Weight) -> Fraction:
    """Conformal weight (λ, λ + 2ρ) / (2(ℓ + h∨)) of a level-ℓ weight."""
    if level < 1:
        raise DomainError(f"level must be positive, got {level}")
    lev = weight_level(tables, weight)
    if lev > level:
        raise DomainError(f"weight {weight} has level {lev} > {level}")
    lam = tables.coordinates(weight)
    shifted = tuple(a + 2 * b for a, b in zip(lam, tables.rho))
    return tables.inner(lam, shifted) / (2 * (level + tables.dual_coxeter))


# -- text syntax ---------------------------------------------------------------

_FUND = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?[wW](\d+)\s*$")
_LABELS = re.compile(r"^\s*\[([-\d,\s]*)\]\s*$")


def parse_weight(text: str, tables: AlgebraTables) -> Weight:
    """Parse ``w0``, ``wi``, ``k*wi`` or ``[a1,...,ar]``."""
    m = _FUND.match(text)
    if m:
        k = int(m.group(1)) if m.group(1) else 1
        return Weight.fundamental(tables.rank, int(m.group(2)), k)
    m = _LABELS.match(text)
    if m:
        parts = [p for p in m.group(1).split(",") if p.strip()]
        try:
            labels = tuple(int(p) for p in parts)
        except ValueError:
            raise DomainError(f"malformed weight {text!r}") from None
        return tables.check_weight(Weight(labels))
    raise DomainError(f"malformed weight {text!r}; expected wi, k*wi or [a1,...,ar]")


def split_weight_list(text: str) -> list[str]:
    """Split a comma-separated weight list, keeping bracketed labels intact."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur))
    items = [s.strip() for s in items]
    if depth != 0 or any(not s for s in items):
        raise DomainError(f"malformed weight list {text!r}")
    return items


def parse_weights(text: str, tables: AlgebraTables) -> list[Weight]:
    return [parse_weight(s, tables) for s in split_weight_list(text)]


def format_weight(weight: Weight) -> str:
    nz = [(i + 1, a) for i, a in enumerate(weight.labels) if a]
    if not nz:
        return "w0"
    if len(nz) == 1:
        i, a = nz[0]
        return f"w{i}" if a == 1 else f"{a}*w{i}"
    return "[" + ",".join(str(a) for a in weight.labels) + "]"

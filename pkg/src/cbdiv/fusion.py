"""
Ranks of conformal blocks bundles on genus-zero curves.

The main path is exact: Freudenthal multiplicities feed a Brauer-Klimyk
tensor decomposition, which is truncated to level ℓ by the Kac-Walton
affine reflection rule. n-point ranks are iterated fusion products.
``verlinde_rank_numeric`` is an independent floating-point oracle built
from the Kac-Peterson S-matrix and is only meant for cross-checks.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .errors import DomainError
from .lie import (
    AlgebraId,
    AlgebraTables,
    Weight,
    build_tables,
    dominant_conjugate,
    dual_weight,
    level_weights,
    weight_level,
)

FusionVector = dict[Weight, int]

# Refuse weight systems larger than this; keeps desk-scale runs bounded.
MAX_WEIGHT_SYSTEM = 2_000_000


def weyl_dimension(tables: AlgebraTables, weight: Weight) -> int:
    lam_rho = [a + 1 for a in weight.labels]
    rho = [1] * tables.rank
    num = Fraction(1)
    for root in tables.positive_roots:
        rl = tables.root_labels(root)
        num *= tables.label_inner(lam_rho, rl) / tables.label_inner(rho, rl)
    assert num.denominator == 1
    return int(num)


def _positive_root_labels(tables: AlgebraTables) -> tuple[tuple[int, ...], ...]:
    return _root_labels_cached(tables.id)


@lru_cache(maxsize=None)
def _root_labels_cached(algebra_id: AlgebraId):
    tables = build_tables(algebra_id)
    return tuple(tables.root_labels(a) for a in tables.positive_roots)


@lru_cache(maxsize=None)
def dominant_multiplicities(algebra_id: AlgebraId, labels: tuple[int, ...]) -> dict:
    """Freudenthal multiplicities of the dominant weights of V_λ.

    Returns a dict from dominant label tuples to multiplicities.
    """
    tables = build_tables(algebra_id)
    roots = _positive_root_labels(tables)
    r = tables.rank

    # Dominant weights below λ are connected to λ by positive-root steps
    # through dominant weights (Stembridge), so a BFS finds all of them.
    seen = {labels}
    frontier = [labels]
    while frontier:
        nxt = []
        for mu in frontier:
            for beta in roots:
                nu = tuple(a - b for a, b in zip(mu, beta))
                if min(nu) >= 0 and nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt

    def height(mu):
        diff = [a - b for a, b in zip(labels, mu)]
        return sum(tables.root_coefficients(diff))

    order = sorted(seen, key=height)
    lam_rho = tuple(a + 1 for a in labels)
    norm_top = tables.label_inner(lam_rho, lam_rho)
    mult = {labels: 1}
    for mu in order[1:]:
        mu_rho = tuple(a + 1 for a in mu)
        denom = norm_top - tables.label_inner(mu_rho, mu_rho)
        total = Fraction(0)
        for beta in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, beta))
                dom, _ = dominant_conjugate(tables, nu)
                m = mult.get(dom, 0) if dom in seen else 0
                if not m:
                    # weight strings are unbroken, so the first gap ends the string
                    break
                total += m * tables.label_inner(nu, beta)
                k += 1
        value = 2 * total / denom
        assert value.denominator == 1, (mu, value)
        if value:
            mult[mu] = int(value)
    return mult


def _orbit(tables: AlgebraTables, labels: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen = {labels}
    stack = [labels]
    while stack:
        mu = stack.pop()
        for i in range(tables.rank):
            if mu[i]:
                nu = tables.reflect(mu, i)
                if nu not in seen:
                    seen.add(nu)
                    stack.append(nu)
    return list(seen)


def weight_system(tables: AlgebraTables, weight: Weight) -> dict[tuple[int, ...], int]:
    """All weights of V_λ (as label tuples) with their multiplicities."""
    tables.check_weight(weight)
    return dict(_weight_system(tables.id, weight.labels))


@lru_cache(maxsize=4096)
def _weight_system(algebra_id: AlgebraId, labels: tuple[int, ...]):
    tables = build_tables(algebra_id)
    dim = weyl_dimension(tables, Weight(labels))
    if dim > MAX_WEIGHT_SYSTEM:
        raise DomainError(f"module of dimension {dim} exceeds the weight-system guard")
    out = {}
    for mu, m in dominant_multiplicities(algebra_id, labels).items():
        for nu in _orbit(tables, mu):
            out[nu] = m
    return tuple(sorted(out.items()))


def tensor_decompose(tables: AlgebraTables, lam: Weight, mu: Weight) -> FusionVector:
    """Classical decomposition of V_λ ⊗ V_μ (Brauer-Klimyk)."""
    tables.check_weight(lam)
    tables.check_weight(mu)
    return dict(_tensor(tables.id, lam, mu))


@lru_cache(maxsize=65536)
def _tensor(algebra_id: AlgebraId, lam: Weight, mu: Weight):
    tables = build_tables(algebra_id)
    # iterate over the weights of the smaller factor
    if weyl_dimension(tables, mu) > weyl_dimension(tables, lam):
        lam, mu = mu, lam
    out: Counter = Counter()
    for nu, m in _weight_system(algebra_id, mu.labels):
        shifted = tuple(a + b + 1 for a, b in zip(lam.labels, nu))
        if 0 in shifted:
            continue
        dom, parity = dominant_conjugate(tables, shifted)
        if 0 in dom:
            continue
        out[Weight(tuple(a - 1 for a in dom))] += -m if parity else m
    return tuple(sorted((w, c) for w, c in out.items() if c))


def _alcove_reduce(tables: AlgebraTables, shifted: tuple[int, ...], k: int):
    """Move a ρ-shifted weight into the open level-k alcove.

    Returns (labels, sign) or None when the weight lies on a wall.
    """
    theta = tables.theta_labels
    comarks = tables.comarks
    sign = 1
    x = shifted
    while True:
        x, parity = dominant_conjugate(tables, x)
        if parity:
            sign = -sign
        if 0 in x:
            return None
        lev = sum(a * c for a, c in zip(x, comarks))
        if lev < k:
            return x, sign
        if lev == k:
            return None
        x = tuple(a - (lev - k) * t for a, t in zip(x, theta))
        sign = -sign


def fusion_product(tables: AlgebraTables, level: int, lam: Weight, mu: Weight) -> FusionVector:
    """Level-ℓ fusion coefficients of λ and μ (Kac-Walton)."""
    _check_in_level(tables, level, lam)
    _check_in_level(tables, level, mu)
    return dict(_fusion(tables.id, level, lam, mu))


@lru_cache(maxsize=65536)
def _fusion(algebra_id: AlgebraId, level: int, lam: Weight, mu: Weight):
    if lam.is_zero:
        return ((mu, 1),)
    if mu.is_zero:
        return ((lam, 1),)
    tables = build_tables(algebra_id)
    k = level + tables.dual_coxeter
    out: Counter = Counter()
    for nu, c in _tensor(algebra_id, lam, mu):
        red = _alcove_reduce(tables, tuple(a + 1 for a in nu.labels), k)
        if red is None:
            continue
        x, sign = red
        out[Weight(tuple(a - 1 for a in x))] += sign * c
    if any(c < 0 for c in out.values()):
        raise ArithmeticError(f"negative fusion coefficient for {lam} x {mu}")
    return tuple(sorted((w, c) for w, c in out.items() if c))


def _check_in_level(tables: AlgebraTables, level: int, weight: Weight):
    if level < 1:
        raise DomainError(f"level must be positive, got {level}")
    lev = weight_level(tables, weight)
    if lev > level:
        raise DomainError(f"weight {weight} has level {lev} > {level}")


def validate_weights(tables: AlgebraTables, level: int, weights: Sequence[Weight]) -> tuple[Weight, ...]:
    """Check that ``weights`` is a non-empty tuple of level-ℓ weights."""
    weights = tuple(weights)
    if not weights:
        raise DomainError("weight tuple must have at least one entry")
    for w in weights:
        tables.check_weight(w)
        _check_in_level(tables, level, w)
    return weights


def fuse(tables: AlgebraTables, level: int, weights: Sequence[Weight]) -> FusionVector:
    """Iterated fusion Λ_1 · Λ_2 · … · Λ_k, associated left to right."""
    weights = validate_weights(tables, level, weights)
    return dict(_fuse(tables.id, level, weights))


@lru_cache(maxsize=200_000)
def _fuse(algebra_id: AlgebraId, level: int, weights: tuple[Weight, ...]):
    if len(weights) == 1:
        return ((weights[0], 1),)
    head = _fuse(algebra_id, level, weights[:-1])
    last = weights[-1]
    out: Counter = Counter()
    for w, m in head:
        for nu, c in _fusion(algebra_id, level, w, last):
            out[nu] += m * c
    return tuple(sorted(out.items()))


def rank(tables: AlgebraTables, level: int, weights: Sequence[Weight]) -> int:
    """Rank of the conformal blocks bundle V_Λ(𝔤, ℓ) on M_{0,n}."""
    weights = validate_weights(tables, level, weights)
    if len(weights) == 1:
        return int(weights[0].is_zero)
    head = dict(_fuse(tables.id, level, weights[:-1]))
    return head.get(dual_weight(tables, weights[-1]), 0)


# -- level one closed forms -----------------------------------------------------

def _fundamental_index(weight: Weight) -> int:
    """Index i with weight = ω_i (0 for the zero weight)."""
    nz = [i for i, a in enumerate(weight.labels) if a]
    if not nz:
        return 0
    if len(nz) != 1 or weight.labels[nz[0]] != 1:
        raise DomainError(f"{weight} is not a fundamental weight")
    return nz[0] + 1


def rank_level_one_closed_form(tables: AlgebraTables, weights: Sequence[Weight]) -> int:
    """Level-one ranks for types A, B and D without running the fusion engine."""
    fam, r = tables.id.family, tables.rank
    if fam not in ("A", "B", "D"):
        raise DomainError(f"no level-one closed form for type {fam}; use rank()")
    weights = validate_weights(tables, 1, weights)
    if fam == "A":
        return int(sum(_fundamental_index(w) for w in weights) % (r + 1) == 0)
    if fam == "B":
        idx = [_fundamental_index(w) for w in weights]
        n1 = idx.count(1)
        n2 = idx.count(r)
        if n2 % 2:
            return 0
        if n2 == 0:
            return int(n1 % 2 == 0)
        return 2 ** (n2 // 2 - 1)
    total = [Fraction(0)] * tables.dim
    for w in weights:
        total = [a + b for a, b in zip(total, tables.coordinates(w))]
    if any(x.denominator != 1 for x in total):
        return 0
    return int(sum(total) % 2 == 0)


# -- numeric Verlinde oracle ----------------------------------------------------

def weyl_group_matrices(tables: AlgebraTables) -> list[tuple[tuple, int]]:
    """All Weyl group elements as (matrix on orthogonal coordinates, sign)."""
    dim = tables.dim

    def refl_matrix(alpha):
        aa = sum(a * a for a in alpha)
        return tuple(
            tuple(Fraction(int(i == j)) - 2 * alpha[i] * alpha[j] / aa for j in range(dim))
            for i in range(dim)
        )

    def mul(p, q):
        return tuple(
            tuple(sum(p[i][k] * q[k][j] for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )

    gens = [refl_matrix(a) for a in tables.simple_roots]
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
    seen = {ident: 1}
    stack = [ident]
    while stack:
        g = stack.pop()
        for s in gens:
            h = mul(s, g)
            if h not in seen:
                seen[h] = -seen[g]
                stack.append(h)
    return list(seen.items())


def s_matrix(tables: AlgebraTables, level: int, dps: int = 40):
    """Unitary modular S-matrix on P_ℓ (mpmath complex entries).

    Returns (weights, S) with S[i][j] indexed like ``weights``.
    """
    import mpmath

    weights = level_weights(tables, level)
    if len(weights) > 2000:
        raise DomainError(f"|P_ℓ| = {len(weights)} exceeds the oracle guard of 2000")
    with mpmath.workdps(dps):
        k = level + tables.dual_coxeter
        group = weyl_group_matrices(tables)
        shifted = [tuple(a + b for a, b in zip(tables.coordinates(w), tables.rho)) for w in weights]
        raw = []
        for x in shifted:
            row = []
            for y in shifted:
                acc = mpmath.mpc(0)
                for g, sign in group:
                    gx = [sum(g[i][j] * x[j] for j in range(len(x))) for i in range(len(x))]
                    phase = tables.inner(gx, y) / k
                    acc += sign * mpmath.expjpi(-2 * mpmath.mpf(phase.numerator) / phase.denominator)
                row.append(acc)
            raw.append(row)
        norm = mpmath.sqrt(mpmath.fsum(abs(v) ** 2 for v in raw[0]))
        phase = abs(raw[0][0]) / raw[0][0]
        S = [[v * phase / norm for v in row] for row in raw]
    return weights, S


def verlinde_rank_numeric(
    tables: AlgebraTables, level: int, weights: Sequence[Weight], tol: float = 1e-12
) -> int:
    """Rank from the Verlinde sum, rounded with an integrality check."""
    import mpmath

    weights = validate_weights(tables, level, weights)
    basis, S = _s_matrix_cached(tables.id, level)
    index = {w: i for i, w in enumerate(basis)}
    n = len(weights)
    with mpmath.workdps(40):
        total = mpmath.mpc(0)
        for j in range(len(basis)):
            term = S[0][j] ** (2 - n)
            for w in weights:
                term *= S[index[w]][j]
            total += term
    value = round(float(total.real))
    residual = abs(total - value)
    if residual > tol:
        raise ArithmeticError(f"Verlinde sum {total} not within {tol} of an integer")
    return value


@lru_cache(maxsize=None)
def _s_matrix_cached(algebra_id: AlgebraId, level: int):
    return s_matrix(build_tables(algebra_id), level)


def factorization_channels(
    tables: AlgebraTables, level: int, left: Sequence[Weight], right: Sequence[Weight]
) -> dict[Weight, int]:
    """Channel Λ ↦ rank(left, Λ) · rank(right, Λ*), zero channels dropped."""
    fl = dict(_fuse(tables.id, level, tuple(left)))
    fr = dict(_fuse(tables.id, level, tuple(right)))
    out = {}
    for lam in level_weights(tables, level):
        # rank(left, Λ) is the multiplicity of Λ* in the left fusion
        lhs = fl.get(dual_weight(tables, lam), 0)
        rhs = fr.get(lam, 0)
        if lhs and rhs:
            out[lam] = lhs * rhs
    return out


def bipartitions(n: int, min_size: int = 1):
    """Index sets I containing 0 with min_size <= |I| <= n - min_size."""
    rest = range(1, n)
    for size in range(min_size, n - min_size + 1):
        for tail in combinations(rest, size - 1):
            yield (0,) + tail

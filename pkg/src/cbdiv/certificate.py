"""
Edge-weighting certificates on the complete graph with vertices 1..n.

A weighting w certifies that D = Σ a_i ψ_i − Σ c_{I,J} D_{I,J} is an
effective sum of boundary divisors when the flow through each vertex i is
a_i and the flow across each cut I | J is at least c_{I,J}. Using
ψ_i + ψ_j = Σ_{i ∈ I, j ∈ J} D_{I,J}, such a w rewrites D as
Σ (w(I|J) − c_{I,J}) D_{I,J}; see ``boundary_expansion``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, NamedTuple, Sequence

from .divisor import DivisorClass, Partition, all_partitions, conformal_blocks_divisor
from .errors import DomainError
from .fusion import rank
from .lie import AlgebraTables, Weight, tables_for, trace_anomaly
from .lp import find_feasible

DEFAULT_LP_CAP = 14


@dataclass(frozen=True)
class EdgeWeighting:
    """Rational weights on the edges {i, j}, 1 <= i < j <= n."""

    n: int
    weights: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        if self.n < 4:
            raise DomainError(f"edge weightings are defined for n >= 4, got {self.n}")
        full = {}
        for (i, j), v in self.weights.items():
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise DomainError(f"invalid edge ({i}, {j}) for n = {self.n}")
            key = (min(i, j), max(i, j))
            if key in full:
                raise DomainError(f"edge {key} given twice")
            full[key] = Fraction(v)
        if len(full) != self.n * (self.n - 1) // 2:
            raise DomainError(f"expected {self.n * (self.n - 1) // 2} edges, got {len(full)}")
        object.__setattr__(self, "weights", dict(sorted(full.items())))

    @classmethod
    def zero(cls, n: int) -> "EdgeWeighting":
        return cls(n, {e: Fraction(0) for e in combinations(range(1, n + 1), 2)})

    def __getitem__(self, edge) -> Fraction:
        i, j = edge
        return self.weights[(min(i, j), max(i, j))]

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))


def vertex_flow(w: EdgeWeighting, i: int) -> Fraction:
    if not 1 <= i <= w.n:
        raise DomainError(f"vertex {i} outside 1..{w.n}")
    return sum((w[i, j] for j in range(1, w.n + 1) if j != i), Fraction(0))


def cut_flow(w: EdgeWeighting, p: Partition) -> Fraction:
    if p.n != w.n:
        raise DomainError(f"partition is for n = {p.n}, weighting for n = {w.n}")
    return sum((w[i, j] for i in p.side for j in p.complement), Fraction(0))


@dataclass(frozen=True)
class CertificateReport:
    vertex_residuals: tuple[Fraction, ...]
    min_slack: Fraction
    failing: tuple[tuple[Partition, Fraction], ...]
    verdict: bool
    argmin: Partition | None = None


def check_certificate(D: DivisorClass, w: EdgeWeighting) -> CertificateReport:
    """Evaluate the vertex and cut conditions of ``w`` against ``D``.

    Every canonical partition is checked, including those with c = 0.
    """
    if D.n != w.n:
        raise DomainError(f"divisor is on M_0,{D.n} but weighting has n = {w.n}")
    residuals = tuple(vertex_flow(w, i) - D.psi[i - 1] for i in range(1, w.n + 1))
    failing = []
    min_slack = None
    argmin = None
    for p in all_partitions(w.n):
        slack = cut_flow(w, p) - D.coefficient(p)
        if min_slack is None or slack < min_slack:
            min_slack, argmin = slack, p
        if slack < 0:
            failing.append((p, slack))
    failing.sort(key=lambda ps: (ps[1], ps[0].sort_key()))
    verdict = not any(residuals) and min_slack >= 0
    return CertificateReport(residuals, min_slack, tuple(failing), verdict, argmin)


def boundary_expansion(D: DivisorClass, w: EdgeWeighting) -> dict[Partition, Fraction]:
    """Coefficients w(I|J) − c_{I,J} of D as a boundary combination.

    Only valid when the vertex residuals of ``w`` vanish.
    """
    report = check_certificate(D, w)
    if any(report.vertex_residuals):
        raise DomainError("vertex flows do not match the psi coefficients")
    out = {}
    for p in all_partitions(D.n):
        c = cut_flow(w, p) - D.coefficient(p)
        if c:
            out[p] = c
    return out


# -- the explicit constructions for B_r and D_r at level one ---------------------

@dataclass(frozen=True)
class LabeledTuple:
    """Level-one labels of the marked points, as fundamental-weight indices.

    ``kinds[i]`` is 1 for ω_1 and r (or r - 1 in type D) for a spinor weight.
    """

    family: str
    rank: int
    kinds: tuple[int, ...]

    def __post_init__(self):
        r = self.rank
        allowed = {"B": {1, r}, "D": {1, r - 1, r}}.get(self.family)
        if allowed is None:
            raise DomainError(f"labeled tuples exist for types B and D, not {self.family}")
        tables_for(self.family, r)  # rank bounds
        bad = [k for k in self.kinds if k not in allowed]
        if bad:
            raise DomainError(f"labels {bad} are not nonzero level-one weights of {self.family}{r}")
        if len(self.kinds) < 4:
            raise DomainError(f"need n >= 4 marked points, got {len(self.kinds)}")

    @classmethod
    def from_weights(cls, tables: AlgebraTables, weights: Sequence[Weight]) -> "LabeledTuple":
        kinds = []
        for w in weights:
            nz = [i for i, a in enumerate(w.labels) if a]
            if len(nz) != 1 or w.labels[nz[0]] != 1:
                raise DomainError(f"{w} is not a nonzero fundamental weight")
            kinds.append(nz[0] + 1)
        return cls(tables.id.family, tables.rank, tuple(kinds))

    @classmethod
    def from_counts(cls, family: str, rank: int, n1: int, n2: int, n_minus: int = 0) -> "LabeledTuple":
        """ω_1 entries first, then n_minus copies of ω_{r-1} (type D), then ω_r."""
        if not 0 <= n_minus <= n2 or (n_minus and family != "D"):
            raise DomainError(f"invalid spinor split n_minus = {n_minus}")
        kinds = (1,) * n1 + (rank - 1,) * n_minus + (rank,) * (n2 - n_minus)
        return cls(family, rank, kinds)

    @property
    def n(self) -> int:
        return len(self.kinds)

    @property
    def n1(self) -> int:
        return self.kinds.count(1)

    @property
    def n2(self) -> int:
        return self.n - self.n1

    @property
    def m(self) -> int:
        return self.n2 // 2

    def is_vector(self, i: int) -> bool:
        """Whether vertex i (1-based) carries ω_1."""
        return self.kinds[i - 1] == 1

    def weights(self) -> list[Weight]:
        return [Weight.fundamental(self.rank, k) for k in self.kinds]

    def tables(self) -> AlgebraTables:
        return tables_for(self.family, self.rank)

    def anomalies(self) -> tuple[Fraction, Fraction]:
        """Level-one trace anomalies of ω_1 and ω_r."""
        t = self.tables()
        return (trace_anomaly(t, 1, Weight.fundamental(self.rank, 1)),
                trace_anomaly(t, 1, Weight.fundamental(self.rank, self.rank)))


def _three_value_weighting(lt: LabeledTuple, same_vec, same_spin, mixed) -> EdgeWeighting:
    weights = {}
    for i, j in combinations(range(1, lt.n + 1), 2):
        vi, vj = lt.is_vector(i), lt.is_vector(j)
        weights[i, j] = same_vec if vi and vj else same_spin if not (vi or vj) else mixed
    return EdgeWeighting(lt.n, weights)


def _edge_values_B(lt: LabeledTuple):
    n1, n2 = lt.n1, lt.n2
    d1, dr = lt.anomalies()
    scale = Fraction(2) ** (lt.m - 1)
    same_vec = d1 * scale / (n1 - 1) - scale / (n1 * (n1 - 1)) if n1 > 1 else Fraction(0)
    same_spin = dr * scale / (n2 - 1) - scale / (n2 * (n2 - 1)) if n2 > 1 else Fraction(0)
    mixed = scale / (n1 * n2)
    return same_vec, same_spin, mixed


def _edge_values_D(lt: LabeledTuple):
    n1, n2 = lt.n1, lt.n2
    d1, dr = lt.anomalies()
    same_vec = d1 / (n1 - 1) - Fraction(1, n1 * (n1 - 1))
    same_spin = dr / (n2 - 1) - Fraction(1, n2 * (n2 - 1))
    mixed = Fraction(1, n1 * n2)
    return same_vec, same_spin, mixed


def paper_weighting_B(lt: LabeledTuple) -> EdgeWeighting:
    """Three-value weighting for B_r at level one with n_1 ω_1's and 2m spinors.

    Vertex flows are 2^{m-1} Δ_{Λ_i}.
    """
    if lt.family != "B":
        raise DomainError(f"expected type B, got {lt.family}")
    if lt.n2 == 0 or lt.n2 % 2:
        raise DomainError(
            f"construction needs an even positive number of spinor weights (got {lt.n2}); use the LP search"
        )
    if lt.n1 < 2:
        raise DomainError(f"construction needs at least two ω_1 entries (got {lt.n1}); use the LP search")
    return _three_value_weighting(lt, *_edge_values_B(lt))


def paper_weighting_D(lt: LabeledTuple) -> EdgeWeighting:
    """Three-value weighting for D_r at level one; vertex flows are Δ_{Λ_i}."""
    if lt.family != "D":
        raise DomainError(f"expected type D, got {lt.family}")
    if lt.n1 < 2 or lt.n2 < 2:
        raise DomainError(
            f"construction needs n_1 >= 2 and n_2 >= 2 (got {lt.n1}, {lt.n2}); use the LP search"
        )
    if rank(lt.tables(), 1, lt.weights()) == 0:
        raise DomainError("the conformal blocks bundle has rank 0; the divisor is zero")
    return _three_value_weighting(lt, *_edge_values_D(lt))


def _check_counts(lt: LabeledTuple, a1, a2, b1, b2):
    if min(a1, a2, b1, b2) < 0 or a1 + b1 != lt.n1 or a2 + b2 != lt.n2:
        raise DomainError(
            f"counts ({a1},{a2},{b1},{b2}) do not split n_1 = {lt.n1}, n_2 = {lt.n2}"
        )


def _closed_form(lt, a1, a2, b1, b2, scale):
    n1, n2 = lt.n1, lt.n2
    d1, dr = lt.anomalies()
    total = Fraction((a1 * b2 + a2 * b1) * scale, n1 * n2)
    if a1 * b1:
        total += Fraction(a1 * b1) / (n1 - 1) * (d1 * scale - scale / n1)
    if a2 * b2:
        total += Fraction(a2 * b2) / (n2 - 1) * (dr * scale - scale / n2)
    return total


def closed_form_cut_B(lt: LabeledTuple, a1: int, a2: int, b1: int, b2: int) -> Fraction:
    """Cut flow of ``paper_weighting_B`` as a function of the label counts."""
    _check_counts(lt, a1, a2, b1, b2)
    return _closed_form(lt, a1, a2, b1, b2, Fraction(2) ** (lt.m - 1))


def closed_form_cut_D(lt: LabeledTuple, a1: int, a2: int, b1: int, b2: int) -> Fraction:
    _check_counts(lt, a1, a2, b1, b2)
    return _closed_form(lt, a1, a2, b1, b2, Fraction(1))


def closed_form_boundary_B(lt: LabeledTuple, a1: int, a2: int, b1: int, b2: int) -> Fraction:
    """c_{I,J} for B_r at level one from the factorization channels.

    Odd spinor count on a side leaves the single channel ω_r; even counts on
    both sides give ω_0 and ω_1 with 2^{m-2} blocks each; a side with no
    spinors fuses to ω_0 or ω_1 by the parity of its ω_1 count.
    """
    _check_counts(lt, a1, a2, b1, b2)
    d1, dr = lt.anomalies()
    half_rank = Fraction(2) ** (lt.m - 1)
    if a2 % 2:
        return dr * half_rank
    if a2 and b2:
        return d1 * half_rank / 2
    pure = a1 if a2 == 0 else b1
    return d1 * half_rank if pure % 2 else Fraction(0)


class SplitCheck(NamedTuple):
    split: tuple[int, int, int, int]
    case: str
    flow: Fraction
    bound: Fraction
    margin: Fraction
    holds: bool


class Corner(NamedTuple):
    split: tuple[int, int, int, int]
    flow: Fraction
    stated_bound: Fraction
    required: Fraction
    flow_meets_required: bool


@dataclass
class PropositionReport:
    family: str
    rank: int
    n1: int
    n2: int
    checks: list[SplitCheck]
    corners: list[Corner] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def minimum(self, case: str | None = None) -> SplitCheck | None:
        """Check with the smallest margin (first in enumeration order on ties)."""
        best = None
        for c in self.checks:
            if case is not None and c.case != case:
                continue
            if best is None or c.margin < best.margin:
                best = c
        return best


def _splits(lt: LabeledTuple):
    for a1 in range(lt.n1 + 1):
        for a2 in range(lt.n2 + 1):
            b1, b2 = lt.n1 - a1, lt.n2 - a2
            if a1 + a2 >= 2 and b1 + b2 >= 2:
                yield a1, a2, b1, b2


def verify_proposition(lt: LabeledTuple) -> PropositionReport:
    """Test the stated lower bounds on the cut flows, split by split.

    Type B: flow >= 2^{m-1} Δ_{ω_r} when the spinor counts are odd and
    >= 2^{m-2} Δ_{ω_1} when they are even. Type D: flow >= Δ_{ω_1} when one
    side has no spinor, >= Δ_{ω_r} otherwise.

    Corners are splits where the stated bound is smaller than a boundary
    coefficient that can occur there; they are reported with the flow
    compared against that larger value.
    """
    d1, dr = lt.anomalies()
    checks, corners = [], []
    if lt.family == "B":
        paper_weighting_B(lt)  # preconditions
        scale = Fraction(2) ** (lt.m - 1)
        for s in _splits(lt):
            a1, a2, b1, b2 = s
            flow = closed_form_cut_B(lt, *s)
            case = "odd" if a2 % 2 else "even"
            bound = dr * scale if case == "odd" else d1 * scale / 2
            checks.append(SplitCheck(s, case, flow, bound, flow - bound, flow >= bound))
            required = closed_form_boundary_B(lt, *s)
            if required > bound:
                corners.append(Corner(s, flow, bound, required, flow >= required))
    else:
        paper_weighting_D(lt)
        for s in _splits(lt):
            a1, a2, b1, b2 = s
            flow = closed_form_cut_D(lt, *s)
            case = "pure" if a2 == 0 or b2 == 0 else "mixed"
            bound = d1 if case == "pure" else dr
            checks.append(SplitCheck(s, case, flow, bound, flow - bound, flow >= bound))
            # an even spinor count may fuse into the ω_1 channel
            if case == "mixed" and a2 % 2 == 0 and bound < d1:
                corners.append(Corner(s, flow, bound, d1, flow >= d1))
    return PropositionReport(lt.family, lt.rank, lt.n1, lt.n2, checks, corners)


# -- LP search and the end-to-end decision -------------------------------------

def lp_feasible(
    D: DivisorClass,
    cap: int = DEFAULT_LP_CAP,
    strategy: str = "full",
    number_type: str | None = None,
) -> EdgeWeighting | None:
    """Search for a certificate of D with an exact phase-one simplex.

    Returns a weighting passing ``check_certificate`` or None when no
    weighting satisfies the vertex and cut constraints.

    ``strategy="full"`` (default) hands every cut constraint to one simplex
    run. ``strategy="cuts"`` keeps a working set instead: solve, evaluate
    all cuts exactly, add the most violated ones, repeat. Both are exact.
    """
    n = D.n
    if n > cap:
        raise DomainError(f"n = {n} exceeds the LP cap of {cap} (raise it with --lp-cap)")
    if strategy not in ("cuts", "full"):
        raise DomainError(f"unknown LP strategy {strategy!r}")
    edges = list(combinations(range(1, n + 1), 2))
    index = {e: k for k, e in enumerate(edges)}
    eq_rows = []
    for i in range(1, n + 1):
        row = [0] * len(edges)
        for j in range(1, n + 1):
            if j != i:
                row[index[min(i, j), max(i, j)]] = 1
        eq_rows.append(row)
    cut_rows, cut_rhs = [], []
    for p in all_partitions(n):
        row = [0] * len(edges)
        for i in p.side:
            for j in p.complement:
                row[index[min(i, j), max(i, j)]] = 1
        cut_rows.append(row)
        cut_rhs.append(D.coefficient(p))

    if strategy == "full":
        x = find_feasible(eq_rows, D.psi, cut_rows, cut_rhs, len(edges), number_type=number_type)
    else:
        active: list[int] = []
        batch = max(n, 4)
        while True:
            x = find_feasible(eq_rows, D.psi, [cut_rows[k] for k in active],
                              [cut_rhs[k] for k in active], len(edges), number_type=number_type)
            if x is None:
                break
            violated = []
            for k, (row, c) in enumerate(zip(cut_rows, cut_rhs)):
                slack = sum((x[e] for e, a in enumerate(row) if a), Fraction(0)) - c
                if slack < 0:
                    violated.append((slack, k))
            if not violated:
                break
            violated.sort()
            active.extend(k for _, k in violated[:batch])
    if x is None:
        return None
    w = EdgeWeighting(n, dict(zip(edges, x)))
    if not check_certificate(D, w).verdict:
        raise ArithmeticError("LP returned a point that fails the certificate check")
    return w


@dataclass(frozen=True)
class EffectivityResult:
    """Outcome of ``decide_effectivity``.

    ``status`` is "effective", "not-certified" (a candidate failed the
    check), "infeasible" (LP proved no weighting exists) or "undecided"
    (LP cap exceeded). ``method`` names how the witness was obtained.
    """

    divisor: DivisorClass
    status: str
    method: str
    report: CertificateReport | None = None
    witness: EdgeWeighting | None = None


def explicit_construction(tables: AlgebraTables, level: int, weights: Sequence[Weight]) -> EdgeWeighting | None:
    """The explicit weighting when its preconditions hold, else None."""
    fam = tables.id.family
    if level != 1 or fam not in ("B", "D"):
        return None
    try:
        lt = LabeledTuple.from_weights(tables, weights)
        return paper_weighting_B(lt) if fam == "B" else paper_weighting_D(lt)
    except DomainError:
        return None


def decide_effectivity(
    tables: AlgebraTables, level: int, weights: Sequence[Weight], lp_cap: int = DEFAULT_LP_CAP
) -> EffectivityResult:
    D = conformal_blocks_divisor(tables, level, weights)
    if D.is_zero():
        w = EdgeWeighting.zero(D.n)
        return EffectivityResult(D, "effective", "zero-divisor", check_certificate(D, w), w)
    w = explicit_construction(tables, level, weights)
    if w is not None:
        report = check_certificate(D, w)
        status = "effective" if report.verdict else "not-certified"
        return EffectivityResult(D, status, f"explicit-{tables.id.family}", report, w)
    if D.n > lp_cap:
        return EffectivityResult(D, "undecided", "lp")
    w = lp_feasible(D, cap=lp_cap)
    if w is None:
        return EffectivityResult(D, "infeasible", "lp")
    return EffectivityResult(D, "effective", "lp", check_certificate(D, w), w)

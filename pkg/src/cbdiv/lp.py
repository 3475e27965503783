"""
Exact rational phase-one simplex for feasibility of

    A_eq x = b_eq,   A_ge x >= b_ge,   x free.

The free variables are first pivoted into the equality rows. Each remaining
inequality gets a surplus variable and all of them share one artificial
t >= 0 (``a.x - s + t = b``), so a single pivot on t gives a feasible
starting basis; phase one then minimizes t and stops as soon as it hits 0.
Dense tableau; Dantzig pricing with a switch to Bland's rule on stalling.
Entries are gmpy2 ``mpq`` when available and ``fractions.Fraction``
otherwise; results are always returned as Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None


def _number_type(exact: str | None):
    if exact == "fraction" or (exact is None and _mpq is None):
        return Fraction
    if _mpq is None:
        raise ImportError("gmpy2 is not installed")
    return _mpq


def _to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(int(x.numerator), int(x.denominator))


def find_feasible(
    eq_rows: Sequence[Sequence],
    eq_rhs: Sequence,
    ge_rows: Sequence[Sequence],
    ge_rhs: Sequence,
    nvars: int,
    number_type: str | None = None,
    max_pivots: int = 1_000_000,
    bland_after: int = 50,
) -> list[Fraction] | None:
    """Return a feasible point of the system, or None if it is infeasible.

    Parameters
    ----------
    eq_rows, eq_rhs : equality constraints ``row . x == rhs``.
    ge_rows, ge_rhs : inequality constraints ``row . x >= rhs``.
    nvars : number of (free) variables.
    number_type : ``"mpq"``, ``"fraction"`` or None for the fastest available.
    """
    Q = _number_type(number_type)
    zero, one = Q(0), Q(1)
    nge = len(ge_rows)
    # column layout: [x_0..x_{nvars-1} | surplus s_0.. | t | rhs]
    t_col = nvars + nge
    ncols = t_col + 1

    tab = []
    basis = []
    for row, b in zip(eq_rows, eq_rhs):
        tab.append([Q(v) for v in row] + [zero] * (nge + 1) + [Q(b)])
        basis.append(None)
    for k, (row, b) in enumerate(zip(ge_rows, ge_rhs)):
        # a.x - s + t = b, stored as -a.x + s - t = -b with s basic
        line = [-Q(v) for v in row] + [zero] * (nge + 1) + [-Q(b)]
        line[nvars + k] = one
        line[t_col] = -one
        tab.append(line)
        basis.append(nvars + k)
    cost = [zero] * (ncols + 1)

    # equalities: Gauss-Jordan on the free columns; basic free variables never leave
    dead = []
    for i in range(len(eq_rows)):
        line = tab[i]
        col = next((j for j in range(nvars) if line[j] and j not in basis), None)
        if col is None:
            if line[-1]:
                return None
            dead.append(i)
            continue
        _pivot(tab, cost, i, col)
        basis[i] = col
    for i in reversed(dead):
        del tab[i]
        del basis[i]
    m = len(tab)
    free = [j < nvars for j in range(ncols)]
    is_basic = [False] * ncols
    for b in basis:
        is_basic[b] = True
    negated = [False] * nvars

    # a single pivot on t makes every surplus non-negative
    worst = min((i for i in range(m) if not free[basis[i]]), key=lambda i: tab[i][-1], default=None)
    if worst is not None and tab[worst][-1] < 0:
        cost[t_col] = one
        _pivot(tab, cost, worst, t_col)
        is_basic[basis[worst]] = False
        basis[worst] = t_col
        is_basic[t_col] = True

    degenerate_run = 0
    for _ in range(max_pivots):
        if not is_basic[t_col] or cost[-1] == 0:
            break
        bland = degenerate_run >= bland_after
        enter = -1
        best_d = zero
        for j in range(ncols):
            if is_basic[j]:
                continue
            d = cost[j]
            score = -d if (d < 0 or not free[j]) else d
            if score > best_d:
                enter, best_d = j, score
                if bland:
                    break
        if enter < 0:
            break
        if cost[enter] > 0:
            # free column entering downwards: substitute x_j -> -x_j
            for line in tab:
                line[enter] = -line[enter]
            cost[enter] = -cost[enter]
            negated[enter] = not negated[enter]

        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0 and not free[basis[i]]:
                ratio = tab[i][-1] / a
                if best is None or ratio < best:
                    best, leave = ratio, i
                elif ratio == best and (basis[i] == t_col or (basis[leave] != t_col and basis[i] < basis[leave])):
                    # ties: let t leave first, otherwise the lowest index
                    leave = i
        if leave < 0:
            # t >= 0 bounds the objective, so no improving ray exists
            raise ArithmeticError("unbounded phase-one direction")
        degenerate_run = degenerate_run + 1 if best == 0 else 0
        _pivot(tab, cost, leave, enter)
        is_basic[basis[leave]] = False
        basis[leave] = enter
        is_basic[enter] = True
    else:
        raise ArithmeticError("pivot limit reached")

    if is_basic[t_col] and cost[-1] != 0:
        return None

    x = [zero] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            x[b] = tab[i][-1]
    return [_to_fraction(-v if neg else v) for v, neg in zip(x, negated)]


def _pivot(tab, cost, r, c):
    prow = tab[r]
    p = prow[c]
    if p != 1:
        prow = [v / p for v in prow]
        tab[r] = prow
    nz = [k for k, v in enumerate(prow) if v]
    dense = len(nz) * 3 > len(prow)
    for i, line in enumerate(tab):
        if i == r:
            continue
        f = line[c]
        if not f:
            continue
        if dense:
            tab[i] = [a - f * b for a, b in zip(line, prow)]
        else:
            for k in nz:
                line[k] -= f * prow[k]
    f = cost[c]
    if f:
        if dense:
            cost[:] = [a - f * b for a, b in zip(cost, prow)]
        else:
            for k in nz:
                cost[k] -= f * prow[k]

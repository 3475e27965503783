from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbdiv.lp import find_feasible


def fourier_motzkin(eq_rows, eq_rhs, ge_rows, ge_rhs, nvars):
    """Exact feasibility by eliminating variables one at a time."""
    cons = [([F(a) for a in r], F(b)) for r, b in zip(ge_rows, ge_rhs)]
    for r, b in zip(eq_rows, eq_rhs):
        cons.append(([F(a) for a in r], F(b)))
        cons.append(([-F(a) for a in r], -F(b)))
    for k in range(nvars):
        pos = [c for c in cons if c[0][k] > 0]
        neg = [c for c in cons if c[0][k] < 0]
        out = [c for c in cons if c[0][k] == 0]
        for rp, bp in pos:
            for rn, bn in neg:
                s, t = -rn[k], rp[k]
                out.append(([s * x + t * y for x, y in zip(rp, rn)], s * bp + t * bn))
        cons = out
    return all(b <= 0 for _, b in cons)


def satisfies(x, eq_rows, eq_rhs, ge_rows, ge_rhs):
    dot = lambda r: sum(F(a) * v for a, v in zip(r, x))
    return all(dot(r) == b for r, b in zip(eq_rows, eq_rhs)) and all(
        dot(r) >= b for r, b in zip(ge_rows, ge_rhs))


def test_trivial_systems():
    assert find_feasible([], [], [], [], 2) == [0, 0]
    assert find_feasible([[1, 1]], [3], [[1, -1]], [1], 2) is not None
    assert find_feasible([], [], [[1], [-1]], [1, 0], 1) is None


def test_free_variables_can_go_negative():
    x = find_feasible([[1, 0]], [-5], [[0, -1]], [F(7, 2)], 2)
    assert x[0] == -5 and x[1] <= F(-7, 2)


def test_returns_fractions():
    x = find_feasible([[3]], [1], [], [], 1)
    assert x == [F(1, 3)] and isinstance(x[0], F)


def test_redundant_equalities():
    rows = [[1, 1, 0], [2, 2, 0], [0, 1, 1]]
    x = find_feasible(rows, [1, 2, 4], [[1, 0, 0]], [2], 3)
    assert satisfies(x, rows, [1, 2, 4], [[1, 0, 0]], [2])
    assert find_feasible(rows, [1, 3, 4], [], [], 3) is None


def test_degenerate_cycling_prone_system():
    # many parallel constraints through the origin
    ge = [[1, k, -k] for k in range(-6, 7)] + [[-1, 0, 0]]
    x = find_feasible([], [], ge, [0] * len(ge), 3, bland_after=0)
    assert satisfies(x, [], [], ge, [0] * len(ge))


@pytest.mark.parametrize("number_type", ["mpq", "fraction"])
def test_number_types(number_type):
    eq, b = [[1, 2, 3]], [F(1, 7)]
    ge, c = [[1, 0, 0], [0, 1, 0]], [F(-1, 3), F(2, 5)]
    x = find_feasible(eq, b, ge, c, 3, number_type=number_type)
    assert satisfies(x, eq, b, ge, c)


coef = st.integers(-3, 3)


@st.composite
def small_system(draw):
    nvars = draw(st.integers(1, 3))
    neq = draw(st.integers(0, 2))
    nge = draw(st.integers(0, 4))
    row = st.lists(coef, min_size=nvars, max_size=nvars)
    eq_rows = draw(st.lists(row, min_size=neq, max_size=neq))
    ge_rows = draw(st.lists(row, min_size=nge, max_size=nge))
    eq_rhs = draw(st.lists(coef, min_size=neq, max_size=neq))
    ge_rhs = draw(st.lists(coef, min_size=nge, max_size=nge))
    return eq_rows, eq_rhs, ge_rows, ge_rhs, nvars


@settings(max_examples=300, deadline=None)
@given(small_system())
def test_agrees_with_fourier_motzkin(system):
    x = find_feasible(*system)
    assert (x is not None) == fourier_motzkin(*system)
    if x is not None:
        assert satisfies(x, *system[:4])


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.integers(-4, 4), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=12),
    st.lists(st.integers(0, 3), min_size=12, max_size=12),
)))
def test_planted_feasible_point(data):
    n, point, rows, slack = data
    rhs = [sum(a * p for a, p in zip(r, point)) - s for r, s in zip(rows, slack)]
    eq = rows[:1]
    eq_rhs = [sum(a * p for a, p in zip(eq[0], point))]
    x = find_feasible(eq, eq_rhs, rows, rhs, n)
    assert x is not None and satisfies(x, eq, eq_rhs, rows, rhs)

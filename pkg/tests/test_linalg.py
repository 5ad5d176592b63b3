from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from qserre.field import ZERO, RatF
from qserre.linalg import (SparseEchelon, echelon_form, matrix_rank, nullspace, rank, solve,
                           sparse_nullspace, span_equal)

from strategies import ratfs


def _frac_rank(rows):
    """Plain Fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rk = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c]:
                f = m[i][c] / m[rk][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


int_matrix = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@given(int_matrix)
def test_rank_matches_fraction_oracle(rows):
    assert matrix_rank(rows) == _frac_rank(rows)


@given(st.lists(st.lists(ratfs(), min_size=3, max_size=3), min_size=1, max_size=4))
def test_nullspace_vectors_are_in_kernel(rows):
    cols = [{i: rows[i][j] for i in range(len(rows))} for j in range(3)]
    ker = nullspace(cols)
    assert len(ker) + rank(cols) == 3
    for v in ker:
        for i in range(len(rows)):
            assert sum((rows[i][j] * v[j] for j in range(3)), ZERO) == ZERO


@given(st.lists(st.lists(ratfs(), min_size=3, max_size=3), min_size=1, max_size=4))
def test_sparse_and_dense_nullspaces_agree(rows):
    cols = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(3)]
    dense = nullspace(cols)
    sparse = sparse_nullspace(cols)
    assert span_equal(dense, [[v.get(j, ZERO) for j in range(3)] for v in sparse])


def test_solve_symbolic_system():
    r, s = RatF.parse("r"), RatF.parse("s")
    # x + r y = 1, s x - y = 0
    cols = [{0: RatF(1), 1: s}, {0: r, 1: RatF(-1)}]
    x, y = solve(cols, {0: RatF(1)})
    assert x + r * y == 1 and s * x - y == 0
    assert solve([{0: RatF(1)}, {0: RatF(2)}], {1: RatF(1)}) is None


def test_sparse_echelon_expresses_combinations():
    ech = SparseEchelon()
    a = {"u": RatF(1), "v": RatF.parse("r")}
    b = {"v": RatF(1), "w": RatF.parse("s")}
    assert ech.insert(a) and ech.insert(b)
    target = {"u": RatF(2), "v": RatF.parse("2*r + 3"), "w": RatF.parse("3*s")}
    combo = ech.express(target)
    assert combo == {0: RatF(2), 1: RatF(3)}
    assert ech.express({"w": RatF(1)}) is None
    assert not ech.insert({"u": RatF(1), "v": RatF.parse("r + 1"), "w": RatF.parse("s")})


def test_echelon_form_rank():
    rows = [[RatF(1), RatF.parse("r")], [RatF.parse("s"), RatF.parse("r s")]]
    assert echelon_form(rows).rank == 1

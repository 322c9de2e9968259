"""Exact linear algebra: echelon, nullspace, solve, charpoly, roots."""

import random
from fractions import Fraction

from liepoisson import linalg

F = Fraction


def _dense_to_rows(mat):
    return [{j: F(v) for j, v in enumerate(row) if v} for row in mat]


def test_nullspace_annihilates():
    rng = random.Random(7)
    for _ in range(30):
        rows_dense = [
            [rng.randint(-3, 3) for _ in range(5)] for _ in range(rng.randint(1, 4))
        ]
        rows = _dense_to_rows(rows_dense)
        for vec in linalg.nullspace(rows, 5):
            for row in rows_dense:
                assert sum(F(a) * b for a, b in zip(row, vec)) == 0


def test_nullspace_dimension():
    rows = _dense_to_rows([[1, 2, 3], [2, 4, 6]])
    assert len(linalg.nullspace(rows, 3)) == 2
    assert linalg.rank(rows) == 1


def test_solve_consistency():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(1, 4)
        mat = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n + 1)]
        x = [F(rng.randint(-2, 2)) for _ in range(n)]
        rhs = [sum(F(a) * b for a, b in zip(row, x)) for row in mat]
        sol = linalg.solve(_dense_to_rows(mat), rhs, n)
        assert sol is not None
        for row, b in zip(mat, rhs):
            assert sum(F(a) * c for a, c in zip(row, sol)) == b


def test_solve_inconsistent():
    assert linalg.solve([{0: F(1)}, {0: F(1)}], [F(1), F(2)], 1) is None


def test_charpoly_and_roots():
    rot = [[F(0), F(-1)], [F(1), F(0)]]
    assert linalg.charpoly(rot) == [F(1), F(0), F(1)]  # t^2 + 1
    assert linalg.rational_roots(linalg.charpoly(rot)) == []
    diag = [[F(2), F(0)], [F(0), F(-3)]]
    assert linalg.rational_roots(linalg.charpoly(diag)) == [F(-3), F(2)]
    half = [[F(1, 2)]]
    assert linalg.rational_roots(linalg.charpoly(half)) == [F(1, 2)]


def test_charpoly_matches_trace_det():
    rng = random.Random(99)
    for _ in range(20):
        a, b, c, d = (F(rng.randint(-4, 4)) for _ in range(4))
        cp = linalg.charpoly([[a, b], [c, d]])
        assert cp[2] == 1
        assert cp[1] == -(a + d)
        assert cp[0] == a * d - b * c


def test_mat_inverse():
    m = [[F(1), F(2)], [F(3), F(4)]]
    inv = linalg.mat_inverse(m)
    assert linalg.mat_mul(m, inv) == linalg.identity(2)
    assert linalg.mat_inverse([[F(1), F(2)], [F(2), F(4)]]) is None


def test_echelon_membership():
    ech = linalg.Echelon()
    assert ech.add({0: F(1), 2: F(1)})
    assert ech.add({1: F(1)})
    assert not ech.add({0: F(2), 1: F(3), 2: F(2)})
    assert ech.contains({0: F(5), 1: F(-1), 2: F(5)})
    assert not ech.contains({2: F(1)})


def test_echelon_fully_reduced():
    # rows added out of order must still leave a fully reduced basis
    ech = linalg.Echelon()
    ech.add({1: F(1), 2: F(1)})
    ech.add({0: F(1), 1: F(1)})
    for piv, row in ech.rows.items():
        assert min(row) == piv
        for other in ech.rows:
            if other != piv:
                assert other not in row

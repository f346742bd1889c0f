from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from nashjet.linalg import nullspace, rank, row_echelon


def as_rows(mat):
    return [{j: c for j, c in enumerate(r) if c} for r in mat]


matrices = st.integers(1, 6).flatmap(
    lambda ncols: st.lists(
        st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=ncols, max_size=ncols),
        min_size=0, max_size=6,
    ).map(lambda rows: (rows, ncols))
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_and_nullspace_match_sympy(data):
    mat, ncols = data
    ref = sp.Matrix(mat) if mat else sp.zeros(0, ncols)
    assert rank(as_rows(mat)) == (ref.rank() if mat else 0)
    ns = nullspace(as_rows(mat), ncols)
    assert len(ns) == ncols - (ref.rank() if mat else 0)
    for v in ns:
        assert all(isinstance(c, int) for c in v)
        assert next(c for c in v if c) > 0
        for r in mat:
            assert sum(Fraction(a) * b for a, b in zip(r, v)) == 0


def test_echelon_is_reduced():
    ech = row_echelon([{0: 2, 1: 4, 2: 6}, {0: 1, 1: 3}, {1: Fraction(1, 2), 2: 1}])
    assert list(ech) == [0, 1, 2]
    for p, row in ech.items():
        assert all(q == p or q not in row for q in ech)


def test_empty_system():
    assert nullspace([], 3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert nullspace([{0: 1}], 1) == []

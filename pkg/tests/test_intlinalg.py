import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_os.intlinalg import (
    IntMatrix,
    column_hermite_form,
    exact_rank,
    hnf_solve,
    int_rank,
    kernel_lattice,
    multiplicity,
    saturation,
    smith_normal_form,
    torsion_cosets,
)


# independent oracles, sharing no code with the package


def laplace_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total


def minor_gcd_multiplicity(mat):
    """gcd of all minors of the largest nonvanishing size, exhaustively."""
    for size in range(min(mat.rows, mat.cols), 0, -1):
        g = 0
        for rsel in itertools.combinations(range(mat.rows), size):
            for csel in itertools.combinations(range(mat.cols), size):
                sub = [[mat.entries[i][j] for j in csel] for i in rsel]
                g = gcd(g, abs(laplace_det(sub)))
        if g:
            return g
    return 1


small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
).map(IntMatrix)


def test_snf_diag_examples():
    d = smith_normal_form(IntMatrix([[3, 0], [1, 1]])).D
    assert d.diagonal() == [1, 3]

    snf = smith_normal_form(IntMatrix.identity(2))
    assert snf.D == IntMatrix.identity(2)

    d = smith_normal_form(IntMatrix([[3, 0, 1], [1, 1, 0]])).D
    assert d.entries == ((1, 0, 0), (0, 1, 0))


def test_snf_empty_shapes():
    for shape in [(0, 0), (0, 3), (3, 0)]:
        m = IntMatrix.zero(*shape)
        snf = smith_normal_form(m)
        assert snf.U @ m @ snf.V == snf.D
    assert multiplicity(IntMatrix.zero(3, 0)) == 1


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_reconstruction_and_chain(m):
    snf = smith_normal_form(m)
    assert snf.U @ m @ snf.V == snf.D
    diag = snf.D.diagonal()
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    # off-diagonal entries vanish
    for i, row in enumerate(snf.D.entries):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert abs(laplace_det([list(r) for r in snf.U.entries])) == 1
    assert abs(laplace_det([list(r) for r in snf.V.entries])) == 1


def test_snf_deterministic():
    m = IntMatrix([[6, 4, 2], [2, 8, 4]])
    assert smith_normal_form(m) == smith_normal_form(IntMatrix([[6, 4, 2], [2, 8, 4]]))


def test_multiplicity_examples():
    assert multiplicity(IntMatrix.from_columns([(3, 1), (0, 1)])) == 3
    assert multiplicity(IntMatrix.from_columns([], rows=2)) == 1
    assert multiplicity(IntMatrix.from_columns([(1, 1), (0, 1), (1, 0)])) == 1


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_multiplicity_matches_minor_gcd(m):
    assert multiplicity(m) == minor_gcd_multiplicity(m)


def test_saturation_examples():
    assert saturation(IntMatrix.from_columns([(3, 1), (0, 1)])) == IntMatrix.identity(2)
    assert saturation(IntMatrix.from_columns([(2, 4)])) == IntMatrix.from_columns([(1, 2)])
    assert saturation(IntMatrix.from_columns([(0, 1)])) == IntMatrix.from_columns([(0, 1)])


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_saturation_idempotent(m):
    s = saturation(m)
    assert saturation(s) == s
    assert int_rank(s) == s.cols == int_rank(m)


def test_kernel_examples():
    k = kernel_lattice(IntMatrix([[3, 0, 1], [1, 1, 0]]))
    assert k.columns() == [(1, -1, -3)]
    assert kernel_lattice(IntMatrix.identity(3)).cols == 0
    assert kernel_lattice(IntMatrix([[1, 1]])).columns() == [(1, -1)]


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_kernel_properties(m):
    k = kernel_lattice(m)
    for j in range(k.cols):
        assert not any(m.mat_vec(k.column(j)))
    assert k.cols == m.cols - int_rank(m)
    # first nonzero entry of each basis column is positive
    for col in k.columns():
        lead = next(x for x in col if x)
        assert lead > 0


def test_torsion_coset_examples():
    cosets = torsion_cosets(IntMatrix.from_columns([(3, 1), (0, 1)]))
    assert cosets == [
        (Fraction(0), Fraction(0)),
        (Fraction(1, 3), Fraction(0)),
        (Fraction(2, 3), Fraction(0)),
    ]
    assert torsion_cosets(IntMatrix.from_columns([(1, 0)])) == [(Fraction(0), Fraction(0))]
    assert torsion_cosets(IntMatrix.from_columns([(1, 1), (0, 1)])) == [
        (Fraction(0), Fraction(0))
    ]


def test_torsion_cosets_reject_dependent():
    with pytest.raises(ValueError):
        torsion_cosets(IntMatrix.from_columns([(1, 0), (2, 0)]))


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_torsion_coset_count(m):
    if int_rank(m) != m.cols:
        return
    cosets = torsion_cosets(m)
    assert len(cosets) == multiplicity(m)
    assert len(set(cosets)) == len(cosets)
    at = m.transpose()
    for x in cosets:
        assert all(0 <= c < 1 for c in x)
        assert all(v.denominator == 1 for v in at.mat_vec(list(x)))


def test_column_hermite_canonical():
    # same column lattice, different generating sets
    a = IntMatrix.from_columns([(2, 1), (0, 3)])
    b = IntMatrix.from_columns([(2, 4), (2, 1), (0, 3)])
    assert column_hermite_form(a) == column_hermite_form(b)
    h = column_hermite_form(a)
    # pivots positive, pivot rows strictly increasing
    pivots = []
    for j in range(h.cols):
        col = h.column(j)
        lead = next(i for i, x in enumerate(col) if x)
        assert col[lead] > 0
        pivots.append(lead)
    assert pivots == sorted(pivots)


def test_hnf_solve_membership():
    h = column_hermite_form(IntMatrix.from_columns([(2, 1), (0, 3)]))
    assert hnf_solve(h, (2, 1)) is not None
    assert hnf_solve(h, (2, 4)) is not None
    assert hnf_solve(h, (1, 0)) is None


def test_exact_rank_with_fractions():
    rows = [
        [Fraction(1, 2), Fraction(1, 3)],
        [Fraction(3, 2), Fraction(1)],
        [Fraction(2), Fraction(4, 3)],
    ]
    assert exact_rank(rows) == 1

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supercoh.ratlin import (CompositionNonzero, Echelon, SparseMatrix, Span, kernel_basis, rank,
                             rank_of_vectors, subquotient_dim)

from conftest import random_dense, sympy_rank


def test_rank_trivial_cases():
    assert rank(SparseMatrix.zeros(0, 0)) == 0
    assert rank(SparseMatrix.identity(3)) == 3
    assert rank(SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6]])) == 1


def test_no_stored_zeros():
    m = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(2, 4)})
    assert m.entries == {(1, 1): Fraction(1, 2)}
    with pytest.raises(Exception):
        SparseMatrix(2, 2, {(2, 0): 1})


def test_kernel_small():
    assert kernel_basis(SparseMatrix.identity(2)) == []
    (v,) = kernel_basis(SparseMatrix.from_dense([[1, -1]]))
    assert v[0] == v[1] != 0


def test_kernel_random_20x30(rng):
    dense = random_dense(rng, 20, 30, density=0.15)
    m = SparseMatrix.from_dense(dense)
    ker = kernel_basis(m)
    r = rank(m)
    assert r == sympy_rank(dense)
    assert len(ker) == 30 - r
    assert all(not m.apply(v) for v in ker)
    assert rank_of_vectors(ker, 30) == len(ker)


def test_subquotient_examples():
    z_in, z_out = SparseMatrix.zeros(4, 3), SparseMatrix.zeros(2, 4)
    assert subquotient_dim(z_in, z_out) == 4
    assert subquotient_dim(SparseMatrix.identity(3), SparseMatrix.zeros(1, 3)) == 0
    # d_in of rank 2 into C^5, d_out of nullity 4 vanishing on the image
    d_in = SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 0], [1, 1, 0]])
    d_out = SparseMatrix.from_dense([[0, 0, 1, 0, 0], [0, 0, 2, 0, 0]])
    assert (d_out @ d_in).is_zero()
    assert subquotient_dim(d_in, d_out) == (5 - sympy_rank(d_out.to_dense())) - sympy_rank(d_in.to_dense()) == 2


def test_subquotient_rejects_noncomplex():
    with pytest.raises(CompositionNonzero):
        subquotient_dim(SparseMatrix.identity(2), SparseMatrix.identity(2))


matrices = st.integers(1, 7).flatmap(lambda r: st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices, st.integers(0, 10 ** 6))
def test_rank_matches_sympy_and_is_invariant(rows, seed):
    m = SparseMatrix.from_dense(rows)
    r = rank(m)
    assert r == sympy_rank(rows)
    rng = random.Random(seed)
    perm_r = list(range(len(rows)))
    perm_c = list(range(len(rows[0])))
    rng.shuffle(perm_r)
    rng.shuffle(perm_c)
    factors = [Fraction(rng.choice([1, -2, 3]), rng.choice([1, 5])) for _ in rows]
    scaled = [[factors[i] * rows[i][j] for j in perm_c] for i in perm_r]
    assert rank(SparseMatrix.from_dense(scaled)) == r
    ker = kernel_basis(m)
    assert len(ker) + r == m.ncols
    assert all(not m.apply(v) for v in ker)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_subquotient_bounds(rows):
    d_in = SparseMatrix.from_dense(rows)
    # d_out kills exactly the column space of d_in
    d_out = SparseMatrix.from_rows(len(kernel_basis(d_in.transpose())), d_in.nrows, kernel_basis(d_in.transpose()))
    h = subquotient_dim(d_in, d_out)
    assert 0 <= h <= d_in.nrows
    assert h == 0


def test_echelon_and_span():
    e = Echelon(3)
    assert e.insert({0: 1, 1: 1})
    assert not e.insert({0: 2, 1: 2})
    assert e.contains({0: -1, 1: -1})
    assert e.rank == 1
    s = Span([{0: 1, 1: 1}, {1: 1, 2: Fraction(1, 2)}])
    v = {0: 2, 1: 5, 2: Fraction(3, 2)}
    assert v in s
    c = s.coordinates(v)
    assert c == {0: 2, 1: 3}
    assert {2: 1} not in s


def test_json_roundtrip():
    m = SparseMatrix.from_dense([[Fraction(1, 3), 0], [0, -2]])
    assert SparseMatrix.from_json(m.to_json()) == m

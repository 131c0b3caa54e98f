import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from arrcoh.fields import PrimeField, Rationals
from arrcoh.linalg import (
    kernel_basis,
    matrix_rank,
    row_reduce,
    smith_normal_form,
    solve_affine,
)

int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-6, 6), min_size=m, max_size=m),
            min_size=n,
            max_size=n,
        )
    )
)


@given(int_matrices)
@settings(max_examples=60)
def test_rank_matches_sympy(rows):
    q = Rationals()
    qrows = [[Fraction(x) for x in row] for row in rows]
    assert matrix_rank(qrows, q) == sympy.Matrix(rows).rank()


@given(int_matrices)
@settings(max_examples=40)
def test_smith_matches_sympy(rows):
    rank, divs = smith_normal_form(rows)
    m = sympy.Matrix(rows)
    expected = [int(d) for d in invariant_factors(m) if d != 0]
    assert divs == expected
    assert rank == m.rank()
    for i in range(len(divs) - 1):
        assert divs[i + 1] % divs[i] == 0


@given(int_matrices)
@settings(max_examples=40)
def test_kernel_vectors_annihilate(rows):
    q = Rationals()
    qrows = [[Fraction(x) for x in row] for row in rows]
    for v in kernel_basis(qrows, q):
        for row in qrows:
            assert sum(a * b for a, b in zip(row, v)) == 0
    assert len(kernel_basis(qrows, q)) == len(qrows[0]) - matrix_rank(qrows, q)


def test_solve_affine():
    q = Rationals()
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    x = solve_affine(rows, [Fraction(2), Fraction(0)], q)
    assert x == [Fraction(1), Fraction(1)]
    assert solve_affine([[Fraction(1)], [Fraction(1)]], [Fraction(0), Fraction(1)], q) is None


def test_full_pivoting_agrees():
    rng = random.Random(5)
    q = Rationals()
    for _ in range(30):
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(3)]
        assert row_reduce(rows, q)[0] == row_reduce(rows, q, full_pivoting=True)[0]


def test_prime_field_rank():
    f = PrimeField(5)
    rows = [[1, 2], [3, 6]]  # second row = 3 * first mod 5
    assert matrix_rank(rows, f) == 1

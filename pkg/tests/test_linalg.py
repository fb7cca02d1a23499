import pytest

from shared.errors import DimensionMismatchError
from shared.linalg import (
    Subspace, basis_tuples, flatten, kernel, leg_apply, matrix_from_columns, rank, rref_kernel_solve, solve,
    unflatten,
)
from shared.scalars import RATIONALS, prime_field

F = RATIONALS


def vec(*values):
    return {i: F.convert(v) for i, v in enumerate(values) if v}


def test_span_is_canonical():
    a = Subspace.span(F, 3, [vec(1, 1, 0), vec(0, 1, 1)])
    b = Subspace.span(F, 3, [vec(1, 0, -1), vec(0, 2, 2), vec(1, 1, 0)])
    assert a == b
    assert a.dim == 2
    assert a.pivots == (0, 1)


def test_membership_and_coordinates():
    V = Subspace.span(F, 3, [vec(1, 0, 2), vec(0, 1, 3)])
    assert vec(2, 1, 7) in V
    assert vec(0, 0, 1) not in V
    assert V.coordinates(vec(2, 1, 7)) == [F.convert(2), F.convert(1)]
    assert V.complement_indices() == [2]


def test_lattice_operations():
    U = Subspace.span(F, 3, [vec(1, 0, 0), vec(0, 1, 0)])
    V = Subspace.span(F, 3, [vec(0, 1, 0), vec(0, 0, 1)])
    assert (U & V) == Subspace.span(F, 3, [vec(0, 1, 0)])
    assert (U + V).is_full()
    assert (U & V) <= U
    assert not U <= V
    assert (U & Subspace.zero(F, 3)).is_zero()


def test_lattice_rejects_different_ambients():
    with pytest.raises(DimensionMismatchError):
        Subspace.full(F, 2) + Subspace.full(F, 3)


def test_kernel_and_rank():
    columns = [vec(1, 2), vec(2, 4)]
    K = kernel(columns, 2, F)
    assert K.dim == 1
    assert vec(-2, 1) in K
    assert rank(columns, 2, F) == 1
    elimination = rref_kernel_solve(matrix_from_columns(columns, 2, F), F)
    assert elimination.rank == 1 and elimination.pivots == (0,)


def test_kernel_over_a_prime_field():
    F3 = prime_field(3)
    columns = [{0: F3.one, 1: F3.one}, {0: F3.convert(2), 1: F3.convert(2)}]
    assert kernel(columns, 2, F3).dim == 1
    assert kernel([{0: F3.one, 1: F3.convert(2)}, {0: F3.one, 1: F3.one}], 2, F3).dim == 0


def test_solve_feasible_and_infeasible():
    matrix = matrix_from_columns([vec(1, 1), vec(1, -1)], 2, F)
    x = solve(matrix, vec(3, 1), F)
    assert x == vec(2, 1)
    singular = matrix_from_columns([vec(1, 1), vec(2, 2)], 2, F)
    assert solve(singular, vec(1, 0), F) is None


def test_flatten_is_row_major():
    assert flatten((1, 2), 3) == 5
    assert unflatten(5, 3, 2) == (1, 2)
    assert unflatten(flatten((2, 0, 1), 3), 3, 3) == (2, 0, 1)
    with pytest.raises(DimensionMismatchError):
        flatten((3,), 3)


def test_leg_apply_acts_on_chosen_legs():
    swap = [vec(0, 1), vec(1, 0)]
    one = F.one
    assert leg_apply(swap, (2,), {(0, 0): one}, 2) == {(0, 1): one}
    assert leg_apply(swap, (1,), {(0, 1, 1): one}, 2) == {(1, 1, 1): one}
    # flip on the pair of legs (1, 3): (a, c) -> (c, a)
    flip = [{flatten((a % 2, a // 2), 2): one} for a in range(4)]
    assert leg_apply(flip, (1, 3), {(0, 1, 1): one}, 2) == {(1, 1, 0): one}


def test_leg_apply_rejects_bad_legs():
    with pytest.raises(DimensionMismatchError):
        leg_apply([vec(1, 0), vec(0, 1)], (3,), {(0, 0): F.one}, 2)
    with pytest.raises(DimensionMismatchError):
        leg_apply([vec(1, 0), vec(0, 1)], (1, 1), {(0, 0): F.one}, 2)


def test_basis_tuples_exhaustive_then_sampled():
    assert basis_tuples(2, 3, seed=0, exhaustive_limit=8, sample_size=4) == [
        (a, b, c) for a in range(2) for b in range(2) for c in range(2)
    ]
    sample = basis_tuples(10, 3, seed=7, exhaustive_limit=100, sample_size=20)
    assert len(sample) == 20
    assert sample == sorted(sample)
    assert sample == basis_tuples(10, 3, seed=7, exhaustive_limit=100, sample_size=20)

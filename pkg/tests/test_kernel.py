import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zrec import corpus, oracle
from zrec.dsl import SystemSpec
from zrec.errors import (IndexOutOfRange, MissingInitial, NotASchedule,
                         NotReduced)
from zrec.field import PrimeField
from zrec.kernel import (adj_entry, derived, extend_solution, initial_rows,
                         is_schedule, kernel_basis, py_entry, sol_entry,
                         solve_affine, solve_one_sided, spl_entry, t_set,
                         upper_adj_entry)
from zrec.linalg import rank
from zrec.recmat import EPSeq, RecMat, compose_banded
from zrec.reduction import reduce
from strategies import periodic_recmats

fib = corpus.fibonacci()
two = corpus.two_class()
piv = corpus.pivots()
Id = RecMat.identity()
EF = compose_banded(RecMat.periodic([{0: 1, 1: 3}, {0: 1}]), fib, as_recmat=True)


def test_adj_examples():
    assert adj_entry(fib, 2, 0) == 2
    assert adj_entry(two, 1, 0) == 2
    for a in range(-4, 5):
        assert adj_entry(piv, a, a) == 1
        assert adj_entry(fib, a - 1, a) == 0


def test_upper_adj_examples():
    for a in range(-4, 5):
        assert upper_adj_entry(fib, a, a) == 1
        assert py_entry(fib, a, a) == 0
        for b in range(-4, 5):
            assert upper_adj_entry(Id, a, b) == (1 if a == b else 0)
    with pytest.raises(NotReduced):
        upper_adj_entry(EF, 0, 0)


def test_sol_examples():
    for a in range(-4, 5):
        assert sol_entry(fib, a, a) == 1
        assert sol_entry(fib, a - 1, a) == 0
        assert sol_entry(fib, a - 3, a) == -1
    assert sol_entry(piv, 0, 0) == 0
    with pytest.raises(NotReduced):
        sol_entry(EF, 0, 0)


def test_spl_examples():
    assert spl_entry(fib, 3, 0) == 3
    assert spl_entry(fib, -3, -1) == -1
    for C in (fib, two, piv, corpus.cover()):
        assert all(spl_entry(C, a, b) == 0 for a in range(0, 6) for b in range(-6, 0))
        assert all(spl_entry(C, a, b) == 0 for a in range(-6, 0) for b in range(0, 6))


def test_spl_row_support():
    for C in (fib, two, piv):
        for a in range(-6, 7):
            lo, hi = min(0, a), max(0, a)
            assert all(spl_entry(C, a, b) == 0 for b in range(-10, 11) if not lo <= b <= hi)


def test_t_set_examples():
    for b in range(-3, 4):
        assert t_set(fib, b).J == (b - 1, b)
        assert t_set(Id, b).J == ()
    assert t_set(piv, 0).J == (-2, -1)
    assert len(t_set(corpus.cover(), 5)) == 4


def test_is_schedule_examples():
    assert is_schedule(fib, [4, 5])
    assert not is_schedule(fib, [3, 5])  # no chain of intervals growing by one
    assert not is_schedule(fib, [4])
    assert not is_schedule(fib, [4, 6])
    for C in (fib, two, piv, corpus.cover(), Id):
        for b in (-3, 0, 4):
            assert is_schedule(C, list(t_set(C, b).J))


def test_is_schedule_on_interval():
    assert is_schedule(fib, [1, 2], (0, 3))
    assert is_schedule(fib, [2], (2, 2))
    assert not is_schedule(fib, [0, 1, 2], (0, 3))


def test_extend_examples():
    assert extend_solution(fib, {-1: 0, 0: 1}, (-1, 5)) == [0, 1, 1, 2, 3, 5, 8]
    seq = [1, 2, 1, 0, -1, 0]
    T = t_set(two, 0).J
    got = extend_solution(two, {t: seq[t % 6] for t in T}, (2, 13))
    assert got == [1, 0, -1, 0, 1, 2, 1, 0, -1, 0, 1, 2]
    assert extend_solution(corpus.cover(), {t: 0 for t in t_set(corpus.cover(), 0).J},
                           (-8, 8)) == [0] * 17


def test_extend_not_a_schedule():
    with pytest.raises(NotASchedule):
        extend_solution(fib, {0: 1}, (0, 4))
    with pytest.raises(NotReduced):
        extend_solution(EF, {-1: 0, 0: 1}, (0, 4))


def test_kernel_basis_examples():
    B = kernel_basis(fib, 0, (-2, 4))
    assert B.ncols == 2
    for j in range(2):
        col = B.column(j)
        assert all(col[i] == col[i - 1] + col[i - 2] for i in range(2, len(col)))
    assert kernel_basis(Id, 0, (-2, 2)).ncols == 0
    P = kernel_basis(piv, 0, (-4, 4))
    assert P.ncols == 2
    assert all(v == 0 for v in P.grid[4])


def test_solve_affine_examples():
    e0 = SystemSpec(fib, EPSeq([Fraction(0)], 0, [Fraction(1)], [Fraction(0)]))
    x = solve_affine(e0, (-4, 4))
    assert x[3 + 4] == 3
    zero = solve_affine(SystemSpec(fib), (-4, 4))
    assert zero == [0] * 9
    ones = SystemSpec(fib, EPSeq([Fraction(1)]))
    x = solve_affine(ones, (-6, 6))
    assert all(x[i] - x[i - 1] - x[i - 2] == 1 for i in range(2, 13))


def test_solve_affine_non_reduced():
    # same kernel as Fibonacci; the rhs is transformed along with the matrix
    spec = SystemSpec(EF, EPSeq([Fraction(1)]))
    x = solve_affine(spec, (-8, 8))
    for i in range(-5, 9):
        lhs = sum(EF.entry(i, j) * x[j + 8] for j in range(i - 3, i + 1))
        assert lhs == 1


def test_one_sided_examples():
    C = corpus.one_sided_fibonacci()
    assert initial_rows(C, 10) == [0, 1]
    assert solve_one_sided(C, {0: 0, 1: 1}, 7) == [0, 1, 1, 2, 3, 5, 8, 13]
    assert solve_one_sided(C, {0: 1, 1: 0}, 5) == [1, 0, 1, 1, 2, 3]
    assert solve_one_sided(C, {0: 0, 1: 0}, 9) == [0] * 10
    with pytest.raises(MissingInitial):
        solve_one_sided(C, {0: 1}, 5)
    with pytest.raises(IndexOutOfRange):
        solve_one_sided(C, {0: 1, 1: 1, 2: 3}, 5)
    with pytest.raises(IndexOutOfRange):
        solve_one_sided(C, {0: 1, 1: 1, 9: 3}, 5)


def test_one_sided_plain_fibonacci_rows():
    # truncating x_0 = x_{-1} + x_{-2} and x_1 = x_0 + x_{-1} leaves x_0 = 0
    assert initial_rows(fib, 5) == [0]
    assert solve_one_sided(fib, {0: 0}, 4) == [0, 0, 0, 0, 0]


def test_derived_kinds():
    for kind in ("c", "adj", "cp", "p", "upper", "py", "sol", "spl"):
        assert derived(fib, kind).entry(0, 0) is not None
    with pytest.raises(ValueError):
        derived(fib, "nope")


def test_prime_field():
    F = PrimeField(5)
    C = corpus.fibonacci(F)
    assert adj_entry(C, 4, 0) == 0  # F_5 = 5
    assert sol_entry(C, -3, 0) == -1
    assert extend_solution(C, {-1: 0, 0: 1}, (0, 6)) == [F(v) for v in (1, 1, 2, 3, 5, 8, 13)]


@settings(max_examples=30, deadline=None)
@given(periodic_recmats(), st.integers(-3, 3))
def test_solution_matrix_properties(C, b):
    R = reduce(C)
    n = len(t_set(R, b))
    assert n == len(t_set(R, b + 7))
    B = kernel_basis(R, b, (b - 8, b + 8))
    assert B.ncols == n
    assert rank(B.to_lists(), n) == n
    for j in range(n):
        col = B.column(j)
        for i in range(b - 8 + R.band, b + 9):
            assert sum(R.entry(i, k) * col[k - (b - 8)] for k in range(i - R.band, i + 1)) == 0
    # the original matrix has the same kernel
    for j in range(n):
        col = B.column(j)
        for i in range(b - 8 + C.band + R.band, b + 9):
            lo = max(b - 8, i - C.band)
            assert sum(C.entry(i, k) * col[k - (b - 8)] for k in range(lo, i + 1)) == 0


@settings(max_examples=30, deadline=None)
@given(periodic_recmats(), st.integers(-3, 3))
def test_adjugate_matches_minors(C, a):
    for d in range(0, 11):
        assert adj_entry(C, a, a - d) == oracle.det_minor_adjugate(C, a, a - d)


@settings(max_examples=20, deadline=None)
@given(periodic_recmats(field=PrimeField(7)), st.integers(-3, 3))
def test_adjugate_matches_minors_mod_p(C, a):
    for d in range(0, 11):
        assert adj_entry(C, a, a - d) == oracle.det_minor_adjugate(C, a, a - d)


@settings(max_examples=30, deadline=None)
@given(periodic_recmats(), st.integers(-4, 4), st.integers(0, 1000))
def test_extend_restricts_to_values(C, b, seed):
    R = reduce(C)
    rng = random.Random(seed)
    T = t_set(R, b).J
    vals = {t: Fraction(rng.randint(-5, 5)) for t in T}
    x = extend_solution(R, vals, (b - 10, b + 10))
    assert [x[t - b + 10] for t in T] == [vals[t] for t in T]

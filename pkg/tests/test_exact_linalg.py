import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbint.exact_linalg import (
    ExactMatrix,
    SingularMatrixError,
    comb_identity,
    det,
    format_rational,
    iden_exponent,
    inverse,
    kron,
    monomial_indices,
    mu_gram,
    parse_rational,
    random_symmetric_forms,
    solve,
    sym_power_gram,
    verify_iden,
    verify_sympower_det,
)
from hilbint.partitions import Partition

from oracles import brute_sym_power_pairing


def square(n, lo=-4, hi=4):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: ExactMatrix(rows, n)
    )


squares = st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n)))


def leibniz(m: ExactMatrix) -> Fraction:
    n = m.nrows
    total = Fraction(0)
    for sigma in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])
        total += (-1) ** inversions * math.prod(m[i, sigma[i]] for i in range(n))
    return total


def test_rational_format_round_trip():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4/1"
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("3/")
    with pytest.raises(TypeError):
        parse_rational(3)


def test_det_examples():
    assert det(ExactMatrix([[2, 1], [1, 1]])) == 1
    assert det(ExactMatrix([[0, 1], [1, 0]])) == -1
    assert det(ExactMatrix([[Fraction(1, 2), 0], [0, 4]])) == 2
    assert det(ExactMatrix([[1, 2], [2, 4]])) == 0
    assert det(ExactMatrix([], 0)) == 1


@settings(max_examples=60)
@given(squares)
def test_det_matches_leibniz_and_is_multiplicative(ab):
    a, b = ab
    assert det(a) == leibniz(a)
    assert det(a @ b) == det(a) * det(b)
    assert det(a.T) == det(a)


@settings(max_examples=40)
@given(squares)
def test_congruence_scales_by_square(tm):
    t, m = tm
    sym = ExactMatrix([[m[i, j] + m[j, i] for j in range(m.ncols)] for i in range(m.nrows)])
    assert det(t @ sym @ t.T) == det(t) ** 2 * det(sym)


@settings(max_examples=40)
@given(square(3))
def test_inverse_and_solve(a):
    if det(a) == 0:
        with pytest.raises(SingularMatrixError):
            inverse(a)
        return
    assert a @ inverse(a) == ExactMatrix.identity(3)
    b = ExactMatrix([[1], [2], [-3]])
    assert a @ solve(a, b) == b


def test_kron_shape_and_det():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix([[0, 1], [1, 0]])
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert k[1, 0] == 1 and k[0, 3] == 2
    assert det(k) == det(a) ** 2 * det(b) ** 2


def test_matrix_json_round_trip():
    m = ExactMatrix([[1, Fraction(-1, 2)], [0, 3]])
    data = m.to_json()
    assert data == {"rows": 2, "cols": 2, "entries": [["1/1", "-1/2"], ["0/1", "3/1"]]}
    assert ExactMatrix.from_json(data) == m


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])


def test_monomial_indices():
    assert monomial_indices(2, 2) == [(0, 0), (0, 1), (1, 1)]
    assert len(monomial_indices(3, 4)) == math.comb(6, 4)


def test_sym_power_gram_examples():
    assert sym_power_gram(ExactMatrix.identity(2), 2) == ExactMatrix([[2, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert sym_power_gram(ExactMatrix([[3]]), 4) == ExactMatrix([[24 * 81]])
    with pytest.raises(ValueError):
        sym_power_gram(ExactMatrix([[0, 1], [2, 0]]), 2)


@pytest.mark.parametrize("k, n", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_sym_power_gram_matches_brute_oracle(k, n):
    g = random_symmetric_forms(k, 1, seed=7)[0]
    gram = sym_power_gram(g, n)
    rows = [[x for x in r] for r in g.rows()]
    basis = monomial_indices(k, n)
    for i, left in enumerate(basis):
        for j, right in enumerate(basis):
            assert gram[i, j] == brute_sym_power_pairing(rows, left, right)


@pytest.mark.parametrize("n", range(1, 5))
def test_sympower_rank_one_constant_is_factorial(n):
    c, constant = verify_sympower_det(1, n, samples=3, seed=1)
    assert constant and c == math.factorial(n)


def test_sympower_rank_two_degree_two():
    c, constant = verify_sympower_det(2, 2, samples=3, seed=0)
    assert constant and c == 4


def test_random_forms_are_seeded_and_distinct():
    a = random_symmetric_forms(2, 3, seed=5)
    assert a == random_symmetric_forms(2, 3, seed=5)
    assert len({det(g) for g in a}) == 3
    assert all(g.is_symmetric() and det(g) != 0 for g in a)


def test_mu_gram_examples():
    g = ExactMatrix([[5]])
    assert mu_gram(g, Partition([2])) == ExactMatrix([[-10]])
    assert mu_gram(g, Partition([1, 1])) == ExactMatrix([[50]])
    assert mu_gram(g, Partition([3, 1])) == ExactMatrix([[75]])


@pytest.mark.parametrize("mu, k, d", [((1,), 2, 1), ((1, 1), 2, 3), ((2, 1), 2, 4), ((2,), 3, 1)])
def test_iden_exponent_examples(mu, k, d):
    assert iden_exponent(Partition(mu), k) == d


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("mu", [(1,), (2,), (1, 1), (2, 1), (2, 2), (3, 1)])
def test_mu_gram_det_is_power_of_form_det(mu, k):
    c, d, ok = verify_iden(k, Partition(mu), samples=3, seed=0)
    assert ok and d >= 1 and c != 0


def test_comb_identity():
    assert all(comb_identity(n, k) for n in range(15) for k in range(2, 7))
    with pytest.raises(ValueError):
        comb_identity(3, 1)
    with pytest.raises(ValueError):
        comb_identity(-1, 3)

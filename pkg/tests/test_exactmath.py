import random
from fractions import Fraction
from itertools import permutations

import pytest

from prefixpoly.exactmath import (
    MultivariatePolynomial,
    RationalMatrix,
    determinant,
    hook_count_rectangular,
    lagrange_interpolate,
    multichoose,
    poly_eval,
)

F = Fraction
P = MultivariatePolynomial


def random_poly(rng, nvars, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        terms[exps] = F(rng.randint(-6, 6), rng.randint(1, 4))
    return P(nvars, terms)


def test_multichoose_small_values():
    assert multichoose(3, 2) == 6
    assert multichoose(3, 2) == F(4 * 3, 2)  # binomial(4, 2)
    assert multichoose(7, 0) == 1
    assert multichoose(F(-5, 2), 0) == 1


def test_multichoose_vanishing_window():
    for j in range(1, 6):
        for k in range(-j + 1, 1):
            assert multichoose(k, j) == 0
    assert multichoose(0, 2) == 0
    assert multichoose(-1, 2) == 0
    # outside the window the product is nonzero again
    assert multichoose(-3, 2) == 3


def test_multichoose_matches_binomial():
    import math

    for k in range(1, 9):
        for j in range(0, 9):
            assert multichoose(k, j) == math.comb(k + j - 1, j)


def test_multichoose_symbolic_is_polynomial_identity():
    t = P.variable(1, 0)
    poly = multichoose(t, 3)
    for k in range(-4, 5):
        assert poly.evaluate([k]) == multichoose(k, 3)
    assert multichoose(t, 0) == P.constant(1, 1)


def test_determinant_examples():
    eye = RationalMatrix.from_rows(
        [[F(int(i == j)) for j in range(3)] for i in range(3)]
    )
    assert determinant(eye) == 1
    assert determinant(RationalMatrix.from_rows([[F(2), F(3)], [F(1), F(4)]])) == 5


def test_determinant_steck_matrix_n2():
    # 2x2 prefix-sum matrix at u = (1, 3); must equal the area of the
    # planar polytope with x = (1, 2): x1 x2 + x1^2 / 2 = 5/2
    u1, u2 = F(1), F(3)
    m = RationalMatrix.from_rows([[u1, u1**2 / 2], [F(1), u2]])
    assert determinant(m) == F(5, 2)
    v2 = P(2, {(1, 1): F(1), (2, 0): F(1, 2)})
    assert poly_eval(v2, [1, 2]) == F(5, 2)


def test_determinant_multiplicative():
    rng = random.Random(123)
    for _ in range(25):
        n = rng.randint(1, 4)
        a = RationalMatrix.from_rows(
            [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        )
        b = RationalMatrix.from_rows(
            [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        )
        assert determinant(a @ b) == determinant(a) * determinant(b)


def test_determinant_polynomial_matches_permanent_expansion():
    # cross-check the symbolic path against the permutation-sum oracle
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 3)
        rows = [[random_poly(rng, 2, max_terms=2, max_exp=2) for _ in range(n)] for _ in range(n)]
        m = RationalMatrix.from_rows(rows)
        expected = P.zero(2)
        for perm in permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            term = P.constant(2, sign)
            for i in range(n):
                term = term * rows[i][perm[i]]
            expected = expected + term
        assert determinant(m) == expected


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        determinant(RationalMatrix.from_rows([[F(1), F(2)]]))


def brute_standard_tableaux(rows, cols):
    """Count standard fillings of the rows x cols rectangle directly."""
    cells = [(i, j) for i in range(rows) for j in range(cols)]
    count = 0
    grid = {}

    def rec(value):
        nonlocal count
        if value > rows * cols:
            count += 1
            return
        for (i, j) in cells:
            if (i, j) in grid:
                continue
            if i > 0 and (i - 1, j) not in grid:
                continue
            if j > 0 and (i, j - 1) not in grid:
                continue
            grid[(i, j)] = value
            rec(value + 1)
            del grid[(i, j)]

    rec(1)
    return count


def test_hook_counts():
    for n in range(1, 6):
        assert hook_count_rectangular(1, n) == 1
        assert hook_count_rectangular(n, 1) == 1
    assert hook_count_rectangular(2, 2) == brute_standard_tableaux(2, 2) == 2
    assert hook_count_rectangular(2, 3) == brute_standard_tableaux(3, 2)
    assert hook_count_rectangular(3, 3) == brute_standard_tableaux(3, 3) == 42


def test_poly_eval_examples():
    assert poly_eval(P.zero(3), [1, 2, 3]) == 0
    quad = P(2, {(1, 1): F(1), (2, 0): F(1, 2)})
    assert poly_eval(quad, [1, 2]) == F(5, 2)
    v3 = P(
        3,
        {
            (1, 1, 1): F(1),
            (2, 1, 0): F(1, 2),
            (1, 2, 0): F(1, 2),
            (2, 0, 1): F(1, 2),
            (3, 0, 0): F(1, 6),
        },
    )
    assert poly_eval(v3, [1, 1, 1]) == F(8, 3)


def test_poly_eval_dimension_error():
    with pytest.raises(ValueError):
        poly_eval(P.variable(2, 0), [1])


def test_ring_laws():
    rng = random.Random(99)
    for _ in range(40):
        nvars = rng.randint(1, 3)
        a = random_poly(rng, nvars)
        b = random_poly(rng, nvars)
        c = random_poly(rng, nvars)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == P.zero(nvars)
        point = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(nvars)]
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


def test_substitute_shift():
    # substituting x1 - 1 then x1 + 1 is the identity
    rng = random.Random(3)
    for _ in range(10):
        a = random_poly(rng, 2)
        x1 = P.variable(2, 0)
        x2 = P.variable(2, 1)
        shifted = a.substitute([x1 - 1, x2])
        assert shifted.substitute([x1 + 1, x2]) == a


def test_text_and_json_forms():
    v3 = P(
        3,
        {
            (1, 1, 1): F(1),
            (2, 1, 0): F(1, 2),
            (1, 2, 0): F(1, 2),
            (2, 0, 1): F(1, 2),
            (3, 0, 0): F(1, 6),
        },
    )
    assert v3.to_text() == "1/6 x1^3 + 1/2 x1^2 x2 + 1/2 x1^2 x3 + 1/2 x1 x2^2 + x1 x2 x3"
    assert P.zero(2).to_text() == "0"
    assert P.from_json_dict(v3.to_json_dict()) == v3


def test_lagrange_interpolation():
    # interpolate r^2 + 1/2 through three points
    pts = [(F(0), F(1, 2)), (F(1), F(3, 2)), (F(2), F(9, 2))]
    poly = lagrange_interpolate(pts)
    assert poly == P(1, {(2,): F(1), (0,): F(1, 2)})
    with pytest.raises(ValueError):
        lagrange_interpolate([(F(0), F(0)), (F(0), F(1))])

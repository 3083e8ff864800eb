import math
from fractions import Fraction
from itertools import product

import pytest

from prefixpoly.exactmath import poly_eval
from prefixpoly.probability import (
    BandSpec,
    band_prob,
    daniels_band,
    daniels_identity_poly,
    lower_band_prob,
    mc_band,
    multinomial_ballot,
    pyke_formula,
    pyke_vector,
    upper_band_prob,
)
from prefixpoly.volume import special_ab, special_abc, volume_poly

F = Fraction


def test_upper_band_examples():
    assert upper_band_prob([1, 1, 1]) == 1
    assert upper_band_prob([0, 0, 0]) == 0
    assert upper_band_prob([F(1, 2), 1]) == F(3, 4)


def test_lower_band_examples():
    assert lower_band_prob([0, 0, 0]) == 1
    # hand-computed: 6 V_3(1/2, 1/6, 1/3) = 17/24
    assert lower_band_prob([0, F(1, 3), F(1, 2)]) == F(17, 24)
    for n in range(1, 6):
        for p in [F(0), F(3, 10), F(1, 2), F(1)]:
            assert lower_band_prob(daniels_band(n, p)) == 1 - p


def test_daniels_polynomial_identity():
    for n in range(1, 7):
        assert daniels_identity_poly(n)


def test_band_validation():
    with pytest.raises(ValueError):
        upper_band_prob([F(1, 2), F(1, 4)])  # not increasing
    with pytest.raises(ValueError):
        lower_band_prob([F(-1, 2), F(1, 4)])
    with pytest.raises(ValueError):
        BandSpec([0, F(1, 2)], [F(1, 4), F(1, 4)])  # r > s at index 2
    with pytest.raises(ValueError):
        BandSpec(None, None)


def test_band_monotone():
    # widening the band never lowers the probability
    s_values = [F(1, 4), F(1, 2), F(3, 4)]
    wider = [F(1, 2), F(3, 4), F(7, 8)]
    assert upper_band_prob(s_values) <= upper_band_prob(wider)
    r_values = [F(1, 4), F(1, 2), F(3, 4)]
    lower = [F(1, 8), F(1, 4), F(1, 2)]
    assert lower_band_prob(r_values) <= lower_band_prob(lower)


def test_band_prob_determinant():
    # one-sided cases reduce to the volume evaluations
    assert band_prob([0, 0], [F(1, 2), 1]) == upper_band_prob([F(1, 2), 1])
    r = [0, F(1, 3), F(1, 2)]
    assert band_prob(r, [1, 1, 1]) == lower_band_prob(r)
    # two-sided: exhaustively verified on a 1-dim case: P(r <= U <= s)
    assert band_prob([F(1, 4)], [F(3, 4)]) == F(1, 2)
    # two-sided 2-dim value, cross-checked by inclusion-exclusion:
    # P(r <= U <= s) = P(U <= s) - P(not all U_(j) >= r_j, U <= s)
    value = band_prob([F(1, 4), F(1, 2)], [F(1, 2), 1])
    assert 0 <= value <= 1


def test_multinomial_examples():
    assert multinomial_ballot([1, 0, 0, 0]) == (1, 0)
    n = 3
    p = [F(1, n + 1)] * (n + 1)
    ahead, behind = multinomial_ballot(p)
    assert ahead == special_ab(n, F(1, n + 1), F(1, n + 1))
    with pytest.raises(ValueError):
        multinomial_ballot([F(1, 2), F(1, 4)])


def multinomial_oracle(p):
    """Exact ballot probabilities by summing the multinomial mass."""
    n = len(p) - 1
    ahead = behind = F(0)
    for counts in product(range(n + 1), repeat=n + 1):
        if sum(counts) != n:
            continue
        mass = F(math.factorial(n))
        for ci, pi in zip(counts, p):
            mass *= pi**ci / math.factorial(ci)
        prefix = 0
        ge = lt = True
        for i in range(n):
            prefix += counts[i]
            ge &= prefix >= i + 1
            lt &= prefix < i + 1
        ahead += mass if ge else 0
        behind += mass if lt else 0
    return ahead, behind


def test_multinomial_against_enumeration():
    for p in [
        [F(1, 4)] * 4,
        [F(1, 2), F(1, 6), F(1, 6), F(1, 6)],
        [F(1, 10), F(2, 10), F(3, 10), F(4, 10)],
    ]:
        assert multinomial_ballot(p) == multinomial_oracle(p)


def test_pyke_single_term_reduces_to_product_form():
    # floor(x/b) = 0: one-term sum equals the two-parameter closed form
    n, b, x = 3, F(1, 3), F(1, 4)
    assert x < b
    assert pyke_formula(n, b, x) == special_ab(n, 1 + x - n * b, b)


def test_pyke_two_terms_reduce_to_three_value_form():
    # b <= x < 2b: matches the a, b, c evaluation with c = 2b - x
    n, b, x = 4, F(1, 4), F(3, 10)
    assert b <= x < 2 * b
    assert pyke_formula(n, b, x) == special_abc(n, 1 + x - n * b, b, 2 * b - x)


def test_pyke_matches_volume():
    cases = [
        (2, F(1, 2), F(1, 4)),
        (3, F(1, 3), F(1, 2)),
        (4, F(1, 4), F(3, 4)),
        (5, F(1, 5), F(2, 5)),
        (5, F(1, 6), F(1, 2)),
    ]
    for n, b, x in cases:
        vec = pyke_vector(n, b, x)
        assert all(v >= 0 for v in vec) and sum(vec) <= 1
        lhs = pyke_formula(n, b, x)
        rhs = math.factorial(n) * poly_eval(volume_poly(n), vec)
        assert lhs == rhs


def test_pyke_validation():
    with pytest.raises(ValueError):
        pyke_formula(3, F(3, 2), F(1, 2))  # b > 1
    with pytest.raises(ValueError):
        pyke_formula(3, F(1, 3), F(3, 2))  # nb - x < 0


def test_mc_band_trivial():
    result = mc_band(BandSpec(None, [1, 1, 1]), trials=500, seed=9)
    assert result.estimate == 1.0
    assert result.std_error == 0.0


def test_mc_band_matches_exact():
    band = BandSpec(None, [F(1, 2), 1])
    exact = upper_band_prob([F(1, 2), 1])
    result = mc_band(band, trials=40_000, seed=123)
    assert result.within(exact)
    daniels = BandSpec(daniels_band(5, F(3, 10)), None)
    result = mc_band(daniels, trials=40_000, seed=321)
    assert result.within(F(7, 10))


def test_mc_band_two_sided_matches_determinant():
    r = [F(1, 8), F(1, 4), F(1, 2)]
    s = [F(1, 2), F(3, 4), F(9, 10)]
    exact = band_prob(r, s)
    result = mc_band(BandSpec(r, s), trials=40_000, seed=77)
    assert result.within(exact)


def test_mc_determinism():
    a = mc_band(BandSpec(None, [F(1, 2), 1]), trials=2000, seed=5)
    b = mc_band(BandSpec(None, [F(1, 2), 1]), trials=2000, seed=5)
    assert a == b

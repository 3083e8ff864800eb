import math
import random
from itertools import permutations, product

import pytest

from prefixpoly.errors import ResourceLimitError
from prefixpoly.exactmath import poly_eval
from prefixpoly.parking import (
    ParkingSequence,
    count_x_parking,
    enumerate_parking,
    is_x_parking,
    weighted_parking_sum,
)
from prefixpoly.volume import PolytopeSpec, volume_poly


def test_is_x_parking_examples():
    ones = PolytopeSpec([1, 1, 1])
    # with unit increments this is the classical condition b_i <= i
    assert is_x_parking([1, 1, 2], ones)
    assert not is_x_parking([2, 2, 3], ones)
    assert is_x_parking([1] * 4, PolytopeSpec([1, 0, 0, 0]))
    zero_first = PolytopeSpec([0, 2, 2])
    for a in product(range(1, 5), repeat=3):
        assert not is_x_parking(a, zero_first)
    with pytest.raises(ValueError):
        is_x_parking([0, 1], PolytopeSpec([1, 1]))
    with pytest.raises(ValueError):
        is_x_parking([1], PolytopeSpec([1, 1]))


def test_count_examples():
    assert count_x_parking(PolytopeSpec([2, 1])) == 8
    assert count_x_parking(PolytopeSpec([1, 1, 1])) == 16
    assert count_x_parking(PolytopeSpec([1, 1, 1, 1])) == 125
    assert count_x_parking(PolytopeSpec([0, 1])) == 0
    with pytest.raises(ResourceLimitError):
        count_x_parking(PolytopeSpec([9, 9]))


def test_three_way_identity():
    for n in range(1, 4):
        for xs in product(range(4), repeat=n):
            spec = PolytopeSpec(xs)
            scan = count_x_parking(spec, max_total=12)
            exact = math.factorial(n) * poly_eval(volume_poly(n), xs)
            assert scan == exact == weighted_parking_sum(spec)


def test_enumerate_parking():
    assert [p.values for p in enumerate_parking(1)] == [(1,)]
    assert {p.values for p in enumerate_parking(2)} == {(1, 1), (1, 2), (2, 1)}
    for n in range(1, 6):
        assert len(enumerate_parking(n)) == (n + 1) ** (n - 1)
    with pytest.raises(ResourceLimitError):
        enumerate_parking(7)


def test_permutation_closure():
    rng = random.Random(12)
    for _ in range(30):
        n = rng.randint(1, 4)
        xs = [rng.randint(0, 3) for _ in range(n)]
        spec = PolytopeSpec(xs)
        a = [rng.randint(1, max(1, sum(xs))) for _ in range(n)] if sum(xs) else [1] * n
        flags = {is_x_parking(list(p), spec) for p in permutations(a)}
        assert len(flags) == 1


def test_monotone_in_x():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(1, 4)
        xs = [rng.randint(0, 2) for _ in range(n)]
        bigger = [v + rng.randint(0, 1) for v in xs]
        assert count_x_parking(PolytopeSpec(xs), max_total=12) <= count_x_parking(
            PolytopeSpec(bigger), max_total=12
        )


def test_sequence_type():
    seq = ParkingSequence([2, 1, 1])
    assert len(seq) == 3 and seq == (2, 1, 1)
    with pytest.raises(ValueError):
        ParkingSequence([0, 1])
